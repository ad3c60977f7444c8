// Exactly three inliner remarks at -O2.
static int twice(int x) { return x + x; }
static int thrice(int x) { return x * 3; }
__attribute__((noinline)) int keep(int x) { return x - 1; }

int entry(int x) { return twice(x) + thrice(x) + keep(x); }
