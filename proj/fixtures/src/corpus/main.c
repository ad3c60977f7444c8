// Driver for the corpus fixture.
#include <stdio.h>

#include "corpus.h"

static int report(const char *label, int value) {
  return printf("%s=%d\n", label, value);
}

int main(int argc, char **argv) {
  int xs[4] = {argc, 3, -7, 12};
  const char *text = argc > 1 ? argv[1] : "  -42 Hello World";
  report("sum", sum_squares(xs, 4));
  report("spread", spread(xs, 4));
  report("mean", mean(xs, 4));
  report("words", count_words(text));
  report("int", parse_int(text));
  table_put(hash_lower(text), 7);
  report("get", table_get(hash_lower(text), -1));
  return 0;
}
