// flags: -O2
// site: callee -> callee
int callee(int n) {
  if (n <= 1) return 1;
  return n * callee(n - 1) + callee(n - 2);
}
