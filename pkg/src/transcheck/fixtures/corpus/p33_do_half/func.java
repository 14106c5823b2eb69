int doHalf(int n) {
    int steps = 0;
    do {
        n = n / 2;
        steps++;
    } while (n > 0);
    return steps;
}
