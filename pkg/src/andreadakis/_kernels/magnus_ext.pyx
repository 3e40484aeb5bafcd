# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Magnus expansion kernel on int64 with overflow detection.

Same dense layout as ``magnus_py``; all degree blocks share one flat buffer.
Reports overflow as soon as any product or sum leaves the int64 range, in
which case the caller recomputes with arbitrary-precision integers.
"""

cdef extern from *:
    """
    static inline int mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int mul_ovf(long long a, long long b, long long *r) nogil
    int add_ovf(long long a, long long b, long long *r) nogil


cdef enum:
    MAX_DEPTH = 62


cdef int _expand(long long[::1] buf, const long long[::1] gens,
                 const long long[:, ::1] coeffs, long long *offs,
                 long long *powers, long long *reps, int depth) noexcept nogil:
    cdef Py_ssize_t s, idx, nsyl = gens.shape[0]
    cdef int d, k, top = 0
    cdef long long i, c, v, t, stride, base, src, nsrc
    buf[0] = 1
    for s in range(nsyl):
        i = gens[s] - 1
        d = depth - 1 if top > depth - 1 else top
        while d >= 0:
            src = offs[d]
            nsrc = powers[d]
            for k in range(1, depth - d + 1):
                c = coeffs[s, k]
                if c == 0:
                    continue
                stride = powers[k]
                base = offs[d + k] + i * reps[k]
                for idx in range(nsrc):
                    v = buf[src + idx]
                    if v == 0:
                        continue
                    if mul_ovf(c, v, &t):
                        return 1
                    if add_ovf(buf[base + idx * stride], t, &buf[base + idx * stride]):
                        return 1
            d -= 1
        top = depth
    return 0


def expand_into(long long[::1] buf, const long long[::1] gens,
                const long long[:, ::1] coeffs, int rank, int depth):
    """Right-multiply the unit by every syllable series; 1 on overflow, else 0."""
    cdef long long offs[MAX_DEPTH + 2]
    cdef long long powers[MAX_DEPTH + 2]
    cdef long long reps[MAX_DEPTH + 2]
    cdef int k, status
    if depth > MAX_DEPTH or depth < 0:
        raise ValueError("truncation out of range for the compiled kernel")
    powers[0] = 1
    reps[0] = 0
    offs[0] = 0
    for k in range(1, depth + 2):
        powers[k] = powers[k - 1] * rank
        reps[k] = reps[k - 1] + powers[k - 1]
        offs[k] = offs[k - 1] + powers[k - 1]
    with nogil:
        status = _expand(buf, gens, coeffs, offs, powers, reps, depth)
    return status


cdef int _series_mul(long long[::1] out, const long long[::1] a,
                     const long long[::1] b, long long *offs, long long *powers,
                     int depth) noexcept nogil:
    cdef int d1, d2
    cdef long long i, j, x, t, base
    for d1 in range(depth + 1):
        for i in range(powers[d1]):
            x = a[offs[d1] + i]
            if x == 0:
                continue
            for d2 in range(depth - d1 + 1):
                base = offs[d1 + d2] + i * powers[d2]
                for j in range(powers[d2]):
                    if b[offs[d2] + j] == 0:
                        continue
                    if mul_ovf(x, b[offs[d2] + j], &t):
                        return 1
                    if add_ovf(out[base + j], t, &out[base + j]):
                        return 1
    return 0


def series_mul_into(long long[::1] out, const long long[::1] a,
                    const long long[::1] b, int rank, int depth):
    """``out += a * b`` for flat dense truncated series; 1 on overflow, else 0."""
    cdef long long offs[MAX_DEPTH + 2]
    cdef long long powers[MAX_DEPTH + 2]
    cdef int k, status
    if depth > MAX_DEPTH or depth < 0:
        raise ValueError("truncation out of range for the compiled kernel")
    powers[0] = 1
    offs[0] = 0
    for k in range(1, depth + 2):
        powers[k] = powers[k - 1] * rank
        offs[k] = offs[k - 1] + powers[k - 1]
    with nogil:
        status = _series_mul(out, a, b, offs, powers, depth)
    return status
