int whileTwoIfs(int n) {
    int score = 0;
    while (n > 0) {
        if (n % 3 == 0) {
            score += 2;
        }
        if (n % 5 == 0) {
            score += 3;
        }
        n--;
    }
    return score;
}
