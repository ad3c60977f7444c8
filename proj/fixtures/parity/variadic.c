// flags: -O2
// site: caller -> callee
#include <stdarg.h>

int callee(int n, ...) {
  va_list ap;
  va_start(ap, n);
  int total = 0;
  for (int i = 0; i < n; ++i) total += va_arg(ap, int);
  va_end(ap);
  return total;
}

int caller(int x) { return callee(2, x, x); }
