boolean anyNegative(int[] xs) {
    for (int i = 0; i < xs.length; i++) {
        if (xs[i] < 0) {
            return true;
        }
    }
    return false;
}
