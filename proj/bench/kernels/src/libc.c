// Integer helpers the compiler emits calls to on RV32IC.
#include <stddef.h>
#include <stdint.h>

uint32_t __mulsi3(uint32_t a, uint32_t b) {
  uint32_t r = 0;
  while (b) {
    if (b & 1) r += a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

uint32_t __udivsi3(uint32_t n, uint32_t d) {
  uint32_t q = 0, r = 0;
  for (int i = 31; i >= 0; --i) {
    r = (r << 1) | ((n >> i) & 1);
    if (r >= d) {
      r -= d;
      q |= 1u << i;
    }
  }
  return q;
}

uint32_t __umodsi3(uint32_t n, uint32_t d) { return n - __mulsi3(__udivsi3(n, d), d); }

int32_t __divsi3(int32_t n, int32_t d) {
  const int neg = (n < 0) ^ (d < 0);
  const uint32_t q = __udivsi3(n < 0 ? -(uint32_t)n : (uint32_t)n, d < 0 ? -(uint32_t)d : (uint32_t)d);
  return neg ? -(int32_t)q : (int32_t)q;
}

int32_t __modsi3(int32_t n, int32_t d) { return n - (int32_t)__mulsi3((uint32_t)__divsi3(n, d), (uint32_t)d); }

void* memset(void* p, int c, size_t n) {
  unsigned char* b = p;
  while (n--) *b++ = (unsigned char)c;
  return p;
}

void* memcpy(void* dst, const void* src, size_t n) {
  unsigned char* d = dst;
  const unsigned char* s = src;
  while (n--) *d++ = *s++;
  return dst;
}
