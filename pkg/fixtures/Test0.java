class Test0 {
    public static int testMethod() {
        int a = 1;
        int b = 2;
        int c = a + b;
        b = a - b;
        return b * c;
    }
}
