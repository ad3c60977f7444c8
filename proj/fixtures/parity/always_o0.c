// flags: -O0
// site: caller -> callee
__attribute__((always_inline)) inline int callee(int a) {
  if (a > 3) return a + 1;
  return a - 1;
}
extern int callee(int a);

int caller(int x) { return callee(x) + 1; }
