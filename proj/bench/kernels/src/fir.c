#include "rt.h"

#define TAPS 16
#define SAMPLES 700
static const int16_t coeff[TAPS] = {3, -7, 12, -20, 31, -45, 70, 120, 120, 70, -45, 31, -20, 12, -7, 3};
static int16_t in[SAMPLES];
static int32_t out[SAMPLES];

int kernel(void) {
  int32_t s = 1;
  for (int i = 0; i < SAMPLES; ++i) {
    s = s * 75 % 65537;
    in[i] = (int16_t)((s & 0x3FF) - 512);
  }
  for (int i = TAPS; i < SAMPLES; ++i) {
    int32_t acc = 0;
    for (int t = 0; t < TAPS; ++t) acc += coeff[t] * in[i - t];
    out[i] = acc >> 4;
  }
  uint32_t h = 0;
  for (int i = 0; i < SAMPLES; ++i) h = (h ^ (uint32_t)out[i]) * 0x01000193u;
  return (int)h;
}
