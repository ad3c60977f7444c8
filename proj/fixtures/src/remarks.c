// Remark fixture: one call site per interesting inliner outcome.
#include <stdarg.h>

volatile int sink;

static int helper(int x) {
  int acc = 0;
  for (int i = 0; i < x; ++i)
    acc += i * x;
  return acc;
}

__attribute__((always_inline)) static inline int util(int a) { return a + 1; }

__attribute__((noinline)) int nope(int x) { return x * 3; }

int big(int x) {
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
  }
  return acc;
}

int rec(int n) { return n <= 1 ? 1 : n * rec(n - 1); }

int va(int n, ...) {
  va_list ap;
  va_start(ap, n);
  int total = 0;
  for (int i = 0; i < n; ++i) total += va_arg(ap, int);
  va_end(ap);
  return total;
}

int main(int argc, char **argv) {
  int unused;
  (void)argv;
  return helper(argc) + util(argc) + nope(argc) + big(argc) + rec(argc) +
         va(2, argc, argc);
}
