// String utilities.
#include "corpus.h"

static int is_space(char c) { return c == ' ' || c == '\t' || c == '\n'; }

static int is_digit(char c) { return c >= '0' && c <= '9'; }

static char lower(char c) { return (c >= 'A' && c <= 'Z') ? c + 32 : c; }

int count_words(const char *s) {
  int words = 0, in_word = 0;
  for (; *s; ++s) {
    if (is_space(*s)) {
      in_word = 0;
    } else if (!in_word) {
      in_word = 1;
      ++words;
    }
  }
  return words;
}

int parse_int(const char *s) {
  int value = 0, sign = 1;
  while (is_space(*s)) ++s;
  if (*s == '-') {
    sign = -1;
    ++s;
  }
  while (is_digit(*s)) value = value * 10 + (*s++ - '0');
  return sign * value;
}

unsigned hash_lower(const char *s) {
  unsigned h = 5381;
  for (; *s; ++s) h = h * 33 + (unsigned char)lower(*s);
  return h;
}
