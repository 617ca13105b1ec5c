#include <stdint.h>

#define SWAP(x, y) { int64_t tmp = a[x]; a[x] = a[y]; a[y] = tmp; }
#define COMP(x, y) if (a[y] < a[x]) SWAP(x, y)

static inline void sort5_oblivious_unrolled(int64_t *a) {
  COMP(0, 1)
  COMP(1, 2)  COMP(0, 1)
  COMP(2, 3)  COMP(1, 2)  COMP(0, 1)
  COMP(3, 4)  COMP(2, 3)  COMP(1, 2)  COMP(0, 1)
}
