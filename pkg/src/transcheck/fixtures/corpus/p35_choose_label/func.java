String chooseLabel(boolean flag) {
    if (flag) {
        return "yes";
    }
    return "no";
}
