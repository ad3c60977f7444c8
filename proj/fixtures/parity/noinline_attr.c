// flags: -O2
// site: caller -> callee
__attribute__((noinline)) int callee(int x) { return x * 3; }

int caller(int x) { return callee(x) + 1; }
