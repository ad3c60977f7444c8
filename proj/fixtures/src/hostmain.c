// Executable fixture: helper is inlined into main exactly once.
#include <stdio.h>

static int helper(int x) {
  int acc = 0;
  for (int i = 0; i < x; ++i)
    acc += i ^ x;
  return acc;
}

__attribute__((noinline)) int worker(int n) {
  volatile int sink = n * 3;
  return sink;
}

int main(int argc, char **argv) {
  (void)argv;
  printf("%d\n", helper(argc) + worker(argc));
  return 0;
}
