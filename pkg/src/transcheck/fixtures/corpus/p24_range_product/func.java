int rangeProduct(int a, int b) {
    int result = 1;
    for (int i = a; i <= b; i++) {
        result = result * i;
    }
    return result;
}
