int countPositive(int[] xs) {
    int count = 0;
    for (int i = 0; i < xs.length; i++) {
        if (xs[i] > 0) {
            count++;
        }
    }
    return count;
}
