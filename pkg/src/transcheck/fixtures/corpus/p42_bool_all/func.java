boolean boolAll(boolean a, boolean b, boolean c) {
    return a && b && c;
}
