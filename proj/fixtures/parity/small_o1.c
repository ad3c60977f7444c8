// flags: -O1
// site: caller -> callee
volatile int sink;

int callee(int x) {
  int acc = 0;
  for (int i = 0; i < x; ++i) acc += i * x;
  return acc;
}

int caller(int x) { return callee(x) + 1; }
