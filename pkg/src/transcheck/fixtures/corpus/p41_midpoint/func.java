double midpoint(double a, double b) {
    return a + (b - a) * 0.5;
}
