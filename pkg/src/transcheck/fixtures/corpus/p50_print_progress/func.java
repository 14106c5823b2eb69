int printProgress(int n) {
    int total = 0;
    for (int i = 0; i < n; i++) {
        System.out.println(i);
        total += i;
    }
    System.out.println(total);
    return total;
}
