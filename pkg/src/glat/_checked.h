/* int64 arithmetic that reports overflow instead of wrapping. LLONG_MIN is
   rejected too so that negation and abs() stay safe. */
#include <limits.h>

static inline int glat_mul(long long a, long long b, long long *out) {
    return __builtin_mul_overflow(a, b, out) || *out == LLONG_MIN;
}
static inline int glat_add(long long a, long long b, long long *out) {
    return __builtin_add_overflow(a, b, out) || *out == LLONG_MIN;
}
/* out = a - q * b */
static inline int glat_submul(long long a, long long q, long long b, long long *out) {
    long long t;
    if (__builtin_mul_overflow(q, b, &t)) return 1;
    return __builtin_sub_overflow(a, t, out) || *out == LLONG_MIN;
}
/* out = x * a + y * b */
static inline int glat_lincomb(long long x, long long a, long long y, long long b, long long *out) {
    long long s, t;
    if (__builtin_mul_overflow(x, a, &s) || __builtin_mul_overflow(y, b, &t)) return 1;
    return __builtin_add_overflow(s, t, out) || *out == LLONG_MIN;
}
static inline long long glat_floordiv(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}
