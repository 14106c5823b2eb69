int absValue(int a) {
    if (a < 0) {
        return -a;
    }
    return a;
}
