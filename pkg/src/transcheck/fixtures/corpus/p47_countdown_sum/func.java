int countdownSum(int n) {
    int total = 0;
    for (int i = n; i > 0; i--) {
        total += i;
    }
    return total;
}
