#include "rt.h"

#define N 600
static int32_t v[N];

static void sort(int32_t* x, int lo, int hi) {
  while (lo < hi) {
    const int32_t pivot = x[(lo + hi) >> 1];
    int i = lo, j = hi;
    while (i <= j) {
      while (x[i] < pivot) ++i;
      while (x[j] > pivot) --j;
      if (i <= j) {
        const int32_t t = x[i];
        x[i++] = x[j];
        x[j--] = t;
      }
    }
    if (j - lo < hi - i) {
      sort(x, lo, j);
      lo = i;
    } else {
      sort(x, i, hi);
      hi = j;
    }
  }
}

int kernel(void) {
  uint32_t s = 99;
  for (int i = 0; i < N; ++i) {
    s ^= s << 13;
    s ^= s >> 17;
    s ^= s << 5;
    v[i] = (int32_t)(s & 0xFFFFF) - 0x80000;
  }
  sort(v, 0, N - 1);
  uint32_t h = 0;
  for (int i = 0; i < N; ++i) {
    if (i && v[i - 1] > v[i]) return -1;
    h = h * 31 + (uint32_t)v[i];
  }
  return (int)h;
}
