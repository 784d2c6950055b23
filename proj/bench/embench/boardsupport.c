// Board hooks for running Embench programs on rvcsim. Timing comes from the
// simulator's cycle counter, so the triggers are empty.
#include <support.h>

void initialise_board(void) {}
void __attribute__((noinline)) start_trigger(void) {}
void __attribute__((noinline)) stop_trigger(void) {}
