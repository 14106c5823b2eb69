String greetCount(String name, int times) {
    String result = "";
    for (int i = 0; i < times; i++) {
        result += name;
    }
    return result;
}
