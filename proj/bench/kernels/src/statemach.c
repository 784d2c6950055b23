#include "rt.h"

// Tokenizer state machine over generated input: many data-dependent branches.
int kernel(void) {
  uint32_t s = 2024;
  int state = 0, idents = 0, numbers = 0, ops = 0;
  uint32_t h = 0;
  for (int i = 0; i < 6000; ++i) {
    s = s * 214013u + 2531011u;
    const unsigned r = (s >> 16) % 40;
    const char c = r < 20 ? (char)('a' + r) : r < 30 ? (char)('0' + r - 20) : r < 36 ? "+-*/=;"[r - 30] : ' ';
    const int letter = c >= 'a' && c <= 'z', digit = c >= '0' && c <= '9';
    switch (state) {
      case 0:
        if (letter) state = 1;
        else if (digit) state = 2;
        else if (c != ' ') ++ops;
        break;
      case 1:
        if (!letter && !digit) {
          ++idents;
          state = 0;
          if (c != ' ') ++ops;
        }
        break;
      case 2:
        if (letter) state = 3;
        else if (!digit) {
          ++numbers;
          state = 0;
          if (c != ' ') ++ops;
        }
        break;
      default:
        if (c == ' ' || c == ';') state = 0;
        break;
    }
    h = (h << 3) ^ (h >> 29) ^ (uint32_t)state;
  }
  return (int)(h ^ ((uint32_t)idents << 16) ^ ((uint32_t)numbers << 8) ^ (uint32_t)ops);
}
