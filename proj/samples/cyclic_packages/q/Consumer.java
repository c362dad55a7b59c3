package q;

import p.Producer;

public class Consumer {
  Producer source;
}
