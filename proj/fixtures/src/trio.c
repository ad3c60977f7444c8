// Three-function shared-object fixture: a static helper called once, an
// always_inline external util, and a noinline worker.

#ifdef NO_ALWAYS_INLINE
#define UTIL_ATTR
#else
#define UTIL_ATTR __attribute__((always_inline))
#endif

int util(int a, int b);

static int helper(int x) {
  int acc = 0;
  for (int i = 0; i < x; ++i)
    acc += i * x;
  return acc;
}

UTIL_ATTR inline int util(int a, int b) {
  return a * b + (a ^ b);
}

__attribute__((noinline)) int worker(int n) {
  return helper(n) + util(n, n + 1);
}
