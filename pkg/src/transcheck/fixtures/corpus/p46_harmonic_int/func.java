int harmonicInt(int n) {
    int total = 0;
    for (int i = 1; i <= n; i++) {
        total += 100 / i;
    }
    return total;
}
