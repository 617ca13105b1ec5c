#include <stdint.h>

#define SWAP(x, y) { int64_t tmp = a[x]; a[x] = a[y]; a[y] = tmp; }

static inline void sort5_oblivious(int64_t *a) {
  for (int j = 1; j > 0; j--)
    if (a[j] < a[j-1]) SWAP(j-1, j)
  for (int j = 2; j > 0; j--)
    if (a[j] < a[j-1]) SWAP(j-1, j)
  for (int j = 3; j > 0; j--)
    if (a[j] < a[j-1]) SWAP(j-1, j)
  for (int j = 4; j > 0; j--)
    if (a[j] < a[j-1]) SWAP(j-1, j)
}
