int constFive() {
    return 5;
}
