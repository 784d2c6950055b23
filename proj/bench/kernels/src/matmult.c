#include "rt.h"

#define N 20
static int32_t a[N][N], b[N][N], c[N][N];

int kernel(void) {
  int32_t seed = 7;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      seed = (seed * 133 + 81) % 8095;
      a[i][j] = seed % 100 - 50;
      seed = (seed * 133 + 81) % 8095;
      b[i][j] = seed % 100 - 50;
    }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int32_t s = 0;
      for (int k = 0; k < N; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  uint32_t h = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) h = (h << 5 | h >> 27) ^ (uint32_t)c[i][j];
  return (int)h;
}
