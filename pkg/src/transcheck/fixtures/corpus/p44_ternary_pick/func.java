int ternaryPick(int a, int b) {
    return a > b ? a : b;
}
