int dayKind(int day) {
    switch (day) {
        case 6:
        case 7:
            return 1;
        default:
            return 0;
    }
}
