String codeWord(String code) {
    switch (code) {
        case "a":
            return "alpha";
        case "b":
            return "beta";
        default:
            return "other";
    }
}
