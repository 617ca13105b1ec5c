#include <stdint.h>

#define SWAP(x, y) { int64_t tmp = a[x]; a[x] = a[y]; a[y] = tmp; }

static inline void sort5_loops(int64_t *a) {
  for (int i = 1; i < 5; i++)
    for (int j = i; j > 0 && a[j] < a[j-1]; j--)
      SWAP(j-1, j)
}
