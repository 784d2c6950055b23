// Minimal bare-metal runtime for the simulator's MMIO console and exit port.
#pragma once
#include <stdint.h>

#ifdef RVCSIM_NATIVE
#include <stdio.h>
#include <stdlib.h>
static inline void out_char(char c) { putchar(c); }
#else
#define MMIO_EXIT ((volatile uint32_t*)0xFFFF0000u)
#define MMIO_PUTCHAR ((volatile uint32_t*)0xFFFF0004u)
static inline void out_char(char c) { *MMIO_PUTCHAR = (uint8_t)c; }
#endif

static inline void out_hex(uint32_t v) {
  for (int s = 28; s >= 0; s -= 4) out_char("0123456789abcdef"[(v >> s) & 15]);
  out_char('\n');
}

int kernel(void);

#ifdef RVCSIM_NATIVE
int main(void) {
  out_hex((uint32_t)kernel());
  return 0;
}
#else
void rt_main(void) {
  out_hex((uint32_t)kernel());
  *MMIO_EXIT = 0;
  for (;;) {
  }
}
#endif
