// Small numeric helpers; most are good inlining candidates.
#include "corpus.h"

static int clamp(int v, int lo, int hi) {
  if (v < lo) return lo;
  if (v > hi) return hi;
  return v;
}

static int square(int v) { return v * v; }

int sum_squares(const int *xs, int n) {
  int total = 0;
  for (int i = 0; i < n; ++i) total += square(clamp(xs[i], -1000, 1000));
  return total;
}

static int max_of(const int *xs, int n) {
  int best = xs[0];
  for (int i = 1; i < n; ++i)
    if (xs[i] > best) best = xs[i];
  return best;
}

static int min_of(const int *xs, int n) {
  int best = xs[0];
  for (int i = 1; i < n; ++i)
    if (xs[i] < best) best = xs[i];
  return best;
}

int spread(const int *xs, int n) { return max_of(xs, n) - min_of(xs, n); }

int mean(const int *xs, int n) {
  if (n == 0) return 0;
  long acc = 0;
  for (int i = 0; i < n; ++i) acc += xs[i];
  return (int)(acc / n);
}
