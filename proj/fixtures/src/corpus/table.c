// A tiny open-addressing table.
#include "corpus.h"

#define SLOTS 64

static unsigned keys[SLOTS];
static int values[SLOTS];
static int used[SLOTS];

static unsigned slot_of(unsigned key) { return (key * 2654435761u) % SLOTS; }

static unsigned next_slot(unsigned slot) { return (slot + 1) % SLOTS; }

void table_put(unsigned key, int value) {
  unsigned slot = slot_of(key);
  for (int probes = 0; probes < SLOTS; ++probes) {
    if (!used[slot] || keys[slot] == key) {
      used[slot] = 1;
      keys[slot] = key;
      values[slot] = value;
      return;
    }
    slot = next_slot(slot);
  }
}

int table_get(unsigned key, int fallback) {
  unsigned slot = slot_of(key);
  for (int probes = 0; probes < SLOTS; ++probes) {
    if (!used[slot]) return fallback;
    if (keys[slot] == key) return values[slot];
    slot = next_slot(slot);
  }
  return fallback;
}
