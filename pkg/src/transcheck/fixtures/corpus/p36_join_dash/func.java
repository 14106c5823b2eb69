String joinDash(String left, String right) {
    return left + "-" + right;
}
