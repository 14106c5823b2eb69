double scaleBlend(double x, int n) {
    double total = 0.0;
    for (int i = 0; i < n; i++) {
        total += x;
    }
    return total / 2.0;
}
