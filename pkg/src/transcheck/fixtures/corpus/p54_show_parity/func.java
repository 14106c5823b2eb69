void showParity(int n) {
    if (n % 2 == 0) {
        System.out.println("even");
    } else {
        System.out.println("odd");
    }
}
