int loopInIf(boolean go, int n) {
    int total = 0;
    if (go) {
        for (int i = 0; i < n; i++) {
            total += 2;
        }
    }
    return total;
}
