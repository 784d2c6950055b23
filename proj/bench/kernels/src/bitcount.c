#include "rt.h"

static int pop_loop(uint32_t x) {
  int n = 0;
  while (x) {
    n += x & 1;
    x >>= 1;
  }
  return n;
}

static int pop_kernighan(uint32_t x) {
  int n = 0;
  for (; x; x &= x - 1) ++n;
  return n;
}

static int pop_swar(uint32_t x) {
  x = x - ((x >> 1) & 0x55555555u);
  x = (x & 0x33333333u) + ((x >> 2) & 0x33333333u);
  x = (x + (x >> 4)) & 0x0F0F0F0Fu;
  return (int)((x + (x >> 8) + (x >> 16) + (x >> 24)) & 0x3F);
}

int kernel(void) {
  uint32_t s = 0xACE1u, total = 0;
  for (int i = 0; i < 1500; ++i) {
    s = (s >> 1) ^ (-(s & 1u) & 0xD0000001u);
    const int a = pop_loop(s), b = pop_kernighan(s), c = pop_swar(s);
    if (a != b || b != c) return -1;
    total += (uint32_t)a;
  }
  return (int)total;
}
