#ifndef CORPUS_H_
#define CORPUS_H_

int sum_squares(const int *xs, int n);
int spread(const int *xs, int n);
int mean(const int *xs, int n);
int count_words(const char *s);
int parse_int(const char *s);
unsigned hash_lower(const char *s);
void table_put(unsigned key, int value);
int table_get(unsigned key, int fallback);

#endif
