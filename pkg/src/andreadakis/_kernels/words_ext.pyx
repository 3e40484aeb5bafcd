# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled free-group substitution with free reduction at the junctions."""

from libc.stdlib cimport malloc, realloc, free
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF


cdef struct Buf:
    long long *g
    long long *e
    Py_ssize_t n
    Py_ssize_t cap


cdef int _grow(Buf *b) except -1:
    cdef Py_ssize_t cap = b.cap * 2 + 16
    cdef long long *g = <long long *>realloc(b.g, cap * sizeof(long long))
    if g == NULL:
        raise MemoryError()
    b.g = g
    cdef long long *e = <long long *>realloc(b.e, cap * sizeof(long long))
    if e == NULL:
        raise MemoryError()
    b.e = e
    b.cap = cap
    return 0


cdef inline int _push(Buf *b, long long gen, long long exp) except -1:
    if exp == 0:
        return 0
    if b.n and b.g[b.n - 1] == gen:
        exp += b.e[b.n - 1]
        if exp:
            b.e[b.n - 1] = exp
        else:
            b.n -= 1
        return 0
    if b.n == b.cap:
        _grow(b)
    b.g[b.n] = gen
    b.e[b.n] = exp
    b.n += 1
    return 0


cdef int _load(Buf *b, tuple syl) except -1:
    cdef tuple s
    for item in syl:
        s = <tuple>item
        if b.n == b.cap:
            _grow(b)
        b.g[b.n] = <long long>s[0]
        b.e[b.n] = <long long>s[1]
        b.n += 1
    return 0


def substitute(tuple syllables, list forward, list backward):
    """Reduced syllables of ``w(images)``; ``backward[i]`` is ``forward[i]^-1``."""
    cdef Py_ssize_t r = len(forward), i, j, k
    cdef Buf *imgs = <Buf *>malloc(2 * r * sizeof(Buf))
    cdef Buf out
    cdef Buf *src
    cdef long long g, e, reps
    cdef tuple s, pair
    if imgs == NULL:
        raise MemoryError()
    out.g = NULL; out.e = NULL; out.n = 0; out.cap = 0
    for i in range(2 * r):
        imgs[i].g = NULL; imgs[i].e = NULL; imgs[i].n = 0; imgs[i].cap = 0
    try:
        for i in range(r):
            _load(&imgs[i], <tuple>forward[i])
            _load(&imgs[r + i], <tuple>backward[i])
        for item in syllables:
            s = <tuple>item
            g = <long long>s[0]
            e = <long long>s[1]
            if g < 1 or g > r:
                raise IndexError(f"generator x{g} outside the substitution")
            src = &imgs[g - 1] if e > 0 else &imgs[r + g - 1]
            reps = e if e > 0 else -e
            for k in range(reps):
                for j in range(src.n):
                    _push(&out, src.g[j], src.e[j])
        result = PyTuple_New(out.n)
        for j in range(out.n):
            pair = (out.g[j], out.e[j])
            Py_INCREF(pair)
            PyTuple_SET_ITEM(result, j, pair)
        return result
    finally:
        for i in range(2 * r):
            free(imgs[i].g)
            free(imgs[i].e)
        free(imgs)
        free(out.g)
        free(out.e)


cdef int _subst_buf(Buf *out, Buf *w, Buf *imgs, Py_ssize_t r) except -1:
    cdef Py_ssize_t s, j
    cdef long long g, e, k, reps
    cdef Buf *src
    out.n = 0
    for s in range(w.n):
        g = w.g[s]
        e = w.e[s]
        if g < 1 or g > r:
            raise IndexError(f"generator x{g} outside the substitution")
        src = &imgs[g - 1] if e > 0 else &imgs[r + g - 1]
        reps = e if e > 0 else -e
        for k in range(reps):
            for j in range(src.n):
                _push(out, src.g[j], src.e[j])
    return 0


def apply_chain(list images, list steps):
    """Apply substitutions in order: each step maps every current image.

    ``steps`` holds ``(forward, backward)`` pairs of image lists.
    """
    cdef Py_ssize_t n = len(images), r, i, j, t
    cdef Buf *cur = <Buf *>malloc(n * sizeof(Buf))
    cdef Buf *nxt = <Buf *>malloc(n * sizeof(Buf))
    cdef Buf *imgs = NULL
    cdef Buf *swap
    cdef tuple pair
    if cur == NULL or nxt == NULL:
        free(cur); free(nxt)
        raise MemoryError()
    for i in range(n):
        cur[i].g = NULL; cur[i].e = NULL; cur[i].n = 0; cur[i].cap = 0
        nxt[i].g = NULL; nxt[i].e = NULL; nxt[i].n = 0; nxt[i].cap = 0
    try:
        for i in range(n):
            _load(&cur[i], <tuple>images[i])
        for step in steps:
            forward, backward = step
            r = len(forward)
            imgs = <Buf *>malloc(2 * r * sizeof(Buf))
            if imgs == NULL:
                raise MemoryError()
            for j in range(2 * r):
                imgs[j].g = NULL; imgs[j].e = NULL; imgs[j].n = 0; imgs[j].cap = 0
            try:
                for j in range(r):
                    _load(&imgs[j], <tuple>forward[j])
                    _load(&imgs[r + j], <tuple>backward[j])
                for i in range(n):
                    _subst_buf(&nxt[i], &cur[i], imgs, r)
            finally:
                for j in range(2 * r):
                    free(imgs[j].g)
                    free(imgs[j].e)
                free(imgs)
                imgs = NULL
            swap = cur
            cur = nxt
            nxt = swap
        out = []
        for i in range(n):
            result = PyTuple_New(cur[i].n)
            for j in range(cur[i].n):
                pair = (cur[i].g[j], cur[i].e[j])
                Py_INCREF(pair)
                PyTuple_SET_ITEM(result, j, pair)
            out.append(result)
        return out
    finally:
        for i in range(n):
            free(cur[i].g); free(cur[i].e)
            free(nxt[i].g); free(nxt[i].e)
        free(cur)
        free(nxt)
