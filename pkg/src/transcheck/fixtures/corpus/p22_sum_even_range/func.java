int sumEvenRange(int a, int b) {
    int total = 0;
    for (int i = a; i < b; i++) {
        if (i % 2 == 0) {
            total += i;
        }
    }
    return total;
}
