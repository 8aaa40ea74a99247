# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _kernel_py; same arithmetic, same operation order."""
from libc.math cimport atan, cos, sin, fabs, INFINITY

cdef double TWO_PI = 6.283185307179586
cdef double INV_PI = 0.3183098861837907
cdef int NPAR = 8


cdef inline int _step(const double[:] p, int l, double *mid, double *rad) noexcept nogil:
    cdef int b = NPAR * l
    cdef double a_m = p[b], a_r = p[b + 1], br = p[b + 2], bi = p[b + 3]
    cdef double b_r = p[b + 4], a2_lo = p[b + 5], rmax = p[b + 6], shift = p[b + 7]
    cdef double m = mid[0], r = rad[0]
    cdef double phi, ec, c, s, wr, wi, sb, ew, den, at, e_arg, tot, disp, e_disp
    cdef double t1, out, err, wmin, lip

    phi = TWO_PI * m
    ec = fabs(m) * 2.5e-16 + fabs(phi) * 2.3e-16 + 2.3e-16
    c = cos(phi)
    s = sin(phi)
    wr = 1.0 + (br * c + bi * s)
    wi = bi * c - br * s
    sb = fabs(br) + fabs(bi)
    ew = sb * ec + 2.0 * b_r + 4.5e-16 * (1.0 + sb)
    den = wr - ew
    if not den > 0.0:
        return 0
    at = atan(wi / wr)
    e_arg = 1.5 * ew / den + 6e-16
    tot = a_m + at
    disp = tot * INV_PI
    e_disp = (a_r + e_arg + 2.3e-16 * fabs(tot)) * 0.3184 + 2.3e-16 * fabs(disp)
    t1 = m + disp
    out = t1 + shift
    err = e_disp + 2.3e-16 * (fabs(t1) + fabs(out))
    if r > 0.0:
        wmin = den - rmax * TWO_PI * r * 1.0000001
        if not wmin > 0.0:
            return 0
        lip = 1.000001 / (a2_lo * wmin * wmin)
        r = (err + r * lip) * 1.000001 + 1e-300
    else:
        r = err * 1.000001 + 1e-300
    mid[0] = out
    rad[0] = r
    return 1


def eval_letters(const double[:] params, const int[:] letters, double mid, double rad):
    cdef Py_ssize_t i, n = letters.shape[0]
    with nogil:
        for i in range(n):
            if not _step(params, letters[i], &mid, &rad):
                rad = INFINITY
                break
    return mid, rad


def eval_many(const double[:] params, list words, double mid, double rad):
    return [eval_letters(params, w, mid, rad) for w in words]
