#include "rt.h"

#define LIMIT 16000
static uint8_t composite[LIMIT];

int kernel(void) {
  int count = 0;
  uint32_t sum = 0;
  for (int i = 2; i < LIMIT; ++i) {
    if (composite[i]) continue;
    ++count;
    sum += (uint32_t)i;
    for (int j = i + i; j < LIMIT; j += i) composite[j] = 1;
  }
  return (int)(sum ^ ((uint32_t)count << 20));
}
