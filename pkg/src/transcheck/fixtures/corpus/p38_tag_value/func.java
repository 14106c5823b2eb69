String tagValue(int v) {
    return "v=" + v;
}
