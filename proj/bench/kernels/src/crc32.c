#include "rt.h"

static uint8_t buf[2048];

int kernel(void) {
  uint32_t seed = 12345;
  for (unsigned i = 0; i < sizeof buf; ++i) {
    seed = seed * 1103515245u + 12345u;
    buf[i] = (uint8_t)(seed >> 16);
  }
  uint32_t crc = 0xFFFFFFFFu;
  for (int rep = 0; rep < 4; ++rep)
    for (unsigned i = 0; i < sizeof buf; ++i) {
      crc ^= buf[i];
      for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ (0xEDB88320u & -(crc & 1));
    }
  return (int)~crc;
}
