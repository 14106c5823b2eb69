int voteWinner(int[] votes) {
    int best = 0;
    int bestIndex = -1;
    for (int i = 0; i < votes.length; i++) {
        if (votes[i] > best) {
            best = votes[i];
            bestIndex = i;
        }
    }
    return bestIndex;
}
