int stepSum(int a, int b) {
    int total = 0;
    for (int i = a; i < b; i += 2) {
        total += i;
    }
    return total;
}
