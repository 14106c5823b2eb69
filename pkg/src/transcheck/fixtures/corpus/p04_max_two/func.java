int maxTwo(int a, int b) {
    if (a > b) {
        return a;
    } else {
        return b;
    }
}
