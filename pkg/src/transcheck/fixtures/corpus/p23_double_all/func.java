int[] doubleAll(int[] xs) {
    int[] result = new int[xs.length];
    for (int i = 0; i < xs.length; i++) {
        result[i] = xs[i] * 2;
    }
    return result;
}
