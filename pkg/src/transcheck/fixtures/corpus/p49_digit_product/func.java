int digitProduct(int n) {
    int result = 1;
    while (n > 0) {
        result = result * (n % 10);
        n = n / 10;
    }
    return result;
}
