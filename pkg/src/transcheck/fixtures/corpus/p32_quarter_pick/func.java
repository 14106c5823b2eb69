int quarterPick(int q, int bonus) {
    int base = 0;
    switch (q) {
        case 1:
            base = 10;
            break;
        case 2:
            base = 20;
            break;
        case 3:
            base = 30;
            break;
        default:
            base = 0;
            break;
    }
    if (bonus > 0) {
        base += bonus;
    }
    return base;
}
