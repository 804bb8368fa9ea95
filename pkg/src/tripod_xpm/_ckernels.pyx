# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled tripod susceptibility braces; same contract as ``_kernels_py``."""

import numpy as np

cdef extern from "<complex.h>" nogil:
    double cabs(double complex)
    double complex conj(double complex)


cdef inline int _over(double a, double complex d, double complex *out) noexcept nogil:
    # returns 1 when the term is infinite
    if a == 0.0:
        out[0] = 0.0
        return 0
    if d == 0.0:
        out[0] = 0.0
        return 1
    out[0] = a / d
    return 0


cdef inline int _inv(double complex den, int inf, double tol, double complex *out) noexcept nogil:
    # returns 1 when the finite denominator is degenerate
    if inf:
        out[0] = 0.0
        return 0
    out[0] = 1.0 / den
    return cabs(den) < tol


cdef inline int _cross(double num, double complex lead,
                       double complex ix, int sx, double complex iy, int sy,
                       int any_inf, double complex *out) noexcept nogil:
    out[0] = 0.0
    if num == 0.0:
        return 0
    if any_inf:
        return (lead == 0.0) or sx or sy
    if sx or sy or lead == 0.0:
        return 1
    out[0] = num * ix * iy / lead
    return 0


def closed_form_subsystem(dp, dt, dc, gammas, double op, double ot, double oc, ra, rb, re, double tol):
    cdef const double[::1] vdp = np.ascontiguousarray(dp, dtype=np.float64).ravel()
    cdef const double[::1] vdt = np.ascontiguousarray(dt, dtype=np.float64).ravel()
    cdef const double[::1] vdc = np.ascontiguousarray(dc, dtype=np.float64).ravel()
    cdef Py_ssize_t n = vdp.shape[0]
    shape = np.shape(dp)
    cdef const double[::1] vra = np.ascontiguousarray(np.broadcast_to(ra, shape), dtype=np.float64).ravel()
    cdef const double[::1] vrb = np.ascontiguousarray(np.broadcast_to(rb, shape), dtype=np.float64).ravel()
    cdef const double[::1] vre = np.ascontiguousarray(np.broadcast_to(re, shape), dtype=np.float64).ravel()
    out_p = np.empty(n, dtype=np.complex128)
    out_t = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] vp = out_p
    cdef double complex[::1] vt = out_t
    cdef double g0 = gammas[0], g1 = gammas[1], g2 = gammas[2], g3 = gammas[3]
    cdef double ap = op * op / 4.0, at = ot * ot / 4.0, ac = oc * oc / 4.0
    cdef Py_ssize_t j
    cdef Py_ssize_t first = -1
    cdef double complex Dp, Dt, Dpt, Dpc, Dtc
    cdef double complex t_pt, t_pc, t_tc, t_ptc, t_pcc, t_tcc
    cdef int i_pt, i_pc, i_tc, i_ptc, i_pcc, i_tcc
    cdef double complex d1, ix, iy, e1, jx, jy, cross_p, cross_t
    cdef int s1, sx, sy, s2, r1, rx, ry, r2
    cdef double pop_p, pop_t

    with nogil:
        for j in range(n):
            Dp = vdp[j] + 1j * g0
            Dt = vdt[j] + 1j * g0
            Dpt = (vdp[j] - vdt[j]) + 1j * g1
            Dpc = (vdp[j] - vdc[j]) + 1j * g2
            Dtc = (vdt[j] - vdc[j]) + 1j * g3
            pop_p = vra[j] - vre[j]
            pop_t = vrb[j] - vre[j]

            i_pt = _over(at, Dpt, &t_pt)
            i_pc = _over(ac, Dpc, &t_pc)
            i_tc = _over(ac, Dtc, &t_tc)
            i_ptc = _over(ap, conj(Dpt), &t_ptc)
            i_pcc = _over(ac, conj(Dpc), &t_pcc)
            i_tcc = _over(ac, conj(Dtc), &t_tcc)

            s1 = _inv(-Dp + t_pt + t_pc, i_pt or i_pc, tol, &d1)
            sx = _inv(-conj(Dt) + t_tcc, i_tcc, tol, &ix)
            sy = _inv(-Dp + t_pc, i_pc, tol, &iy)
            s2 = _cross(at * pop_t, -Dpt, ix, sx, iy, sy, i_tcc or i_pc, &cross_p)
            vp[j] = pop_p * d1 - cross_p

            r1 = _inv(-Dt - t_ptc + t_tc, i_ptc or i_tc, tol, &e1)
            rx = _inv(-conj(Dp) + t_pcc, i_pcc, tol, &jx)
            ry = _inv(-Dt + t_tc, i_tc, tol, &jy)
            r2 = _cross(ap * pop_p, conj(Dpt), jx, rx, jy, ry, i_pcc or i_tc, &cross_t)
            vt[j] = pop_t * e1 - cross_t

            if first < 0 and (s1 or s2 or r1 or r2):
                first = j

    return out_p.reshape(shape), out_t.reshape(shape), first
