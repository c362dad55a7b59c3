public class A {
  protected int x = 1;
  public A(int x) {
    this.x = x;
  }
  void m() {
    int x = 3;
  }
}
public class B extends A {
  int x = 4;
  class C {
    private int x = 5;
  }
}
