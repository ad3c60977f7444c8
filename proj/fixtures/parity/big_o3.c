// flags: -O3
// site: caller -> callee
volatile int sink;

int callee(int x) {
  int acc = 0;
  for (int i = 0; i < x; ++i) {
    acc += i * x;
    if (acc & 1) sink = acc; else sink = acc + i;
    if (acc > 100) sink = acc - 1; else sink = acc + 2;
    if (acc % 7) sink = acc ^ i; else sink = acc | i;
    if (acc % 3) sink = acc * i; else sink = acc - i;
    if (acc % 5) sink = acc + 9; else sink = acc - 9;
    if (acc % 11) sink = acc << 1; else sink = acc >> 1;
    if (acc % 13) sink = acc / 3; else sink = acc / 5;
    if (acc % 17) sink = acc / 7; else sink = acc / 9;
    if (acc % 19) sink = acc + 17; else sink = acc - 17;
    if (acc % 23) sink = acc + 23; else sink = acc - 23;
    if (acc % 29) sink = acc ^ 29; else sink = acc | 29;
    if (acc % 31) sink = acc * 31; else sink = acc - 31;
    if (acc % 37) sink = acc / 37; else sink = acc / 41;
    if (acc % 43) sink = acc + 43; else sink = acc - 43;
    if (acc % 47) sink = acc << 2; else sink = acc >> 2;
  }
  return acc;
}

int caller(int x) { return callee(x) + 1; }
