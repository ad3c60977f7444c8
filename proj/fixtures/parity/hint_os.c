// flags: -Os
// site: caller -> callee
volatile int sink;

inline int callee(int x) {
  int acc = 0;
  for (int i = 0; i < x; ++i) {
    acc += i * x;
    if (acc & 1) sink = acc; else sink = acc + i;
    if (acc > 100) sink = acc - 1; else sink = acc + 2;
    if (acc % 7) sink = acc ^ i; else sink = acc | i;
  }
  return acc;
}
extern int callee(int x);

int caller(int x) { return callee(x) + 1; }
