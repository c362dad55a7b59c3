package p;

import q.Consumer;

public class Producer {
  Consumer sink;

  void push() {
    sink = new Consumer();
  }
}
