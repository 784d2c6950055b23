#include "rt.h"

static const char* const kWords[] = {"pipeline", "fetch", "branch", "predictor", "compressed",
                                     "halfword", "register", "forward", "stall", "commit"};
static char text[3000];

static int find_all(const char* hay, int n, const char* needle) {
  int m = 0;
  while (needle[m]) ++m;
  int hits = 0;
  for (int i = 0; i + m <= n; ++i) {
    int k = 0;
    while (k < m && hay[i + k] == needle[k]) ++k;
    hits += k == m;
  }
  return hits;
}

int kernel(void) {
  uint32_t s = 4242;
  int n = 0;
  while (n < (int)sizeof text - 16) {
    s = s * 1664525u + 1013904223u;
    const char* w = kWords[(s >> 24) % 10];
    while (*w && n < (int)sizeof text - 1) text[n++] = *w++;
    text[n++] = (s >> 8) & 1 ? ' ' : 'x';
  }
  uint32_t h = 0;
  for (int w = 0; w < 10; ++w) h = h * 17 + (uint32_t)find_all(text, n, kWords[w]);
  return (int)h;
}
