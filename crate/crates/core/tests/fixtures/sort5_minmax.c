#include <stdint.h>
#define MIN(x, y) ((y) < (x) ? (y) : (x))
#define MAX(x, y) ((y) < (x) ? (x) : (y))

static inline void sort5_minmax(int64_t *a) {
  { int64_t t0 = a[0]; a[0] = MIN(t0, a[1]); a[1] = MAX(t0, a[1]); }  { int64_t t1 = a[3]; a[3] = MIN(t1, a[4]); a[4] = MAX(t1, a[4]); }
  { int64_t t2 = a[0]; a[0] = MIN(t2, a[2]); a[2] = MAX(t2, a[2]); }
  { int64_t t3 = a[0]; a[0] = MIN(t3, a[3]); a[3] = MAX(t3, a[3]); }  { int64_t t4 = a[1]; a[1] = MIN(t4, a[2]); a[2] = MAX(t4, a[2]); }
  { int64_t t5 = a[1]; a[1] = MIN(t5, a[4]); a[4] = MAX(t5, a[4]); }
  { int64_t t6 = a[1]; a[1] = MIN(t6, a[3]); a[3] = MAX(t6, a[3]); }  { int64_t t7 = a[2]; a[2] = MIN(t7, a[4]); a[4] = MAX(t7, a[4]); }
  { int64_t t8 = a[2]; a[2] = MIN(t8, a[3]); a[3] = MAX(t8, a[3]); }
}
