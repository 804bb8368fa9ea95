"""Vectorised numpy implementation of the tripod susceptibility braces.

Mirrors ``_ckernels.pyx`` operation for operation.  All inputs are angular
frequencies (rad/s); the populations are arrays broadcast to the grid.

Singular handling, shared with the compiled kernel:

* a term ``a / d`` with ``a == 0`` is dropped; with ``d == 0`` and ``a != 0``
  it is infinite, which sends the enclosing composite denominator to
  infinity and the corresponding contribution to zero;
* a finite composite denominator smaller than ``tol`` marks the point
  singular.
"""

import numpy as np


def _over(a, d):
    """``a / d`` elementwise, with the infinity flag described above."""
    a = np.broadcast_to(a, d.shape)
    out = np.zeros(d.shape, dtype=complex)
    zero = d == 0
    inf = (a != 0) & zero
    ok = (a != 0) & ~zero
    out[ok] = a[ok] / d[ok]
    return out, inf


def _inv(den, inf, tol):
    out = np.zeros(den.shape, dtype=complex)
    fin = ~inf
    out[fin] = 1.0 / den[fin]
    singular = fin & (np.abs(den) < tol)
    return out, singular


def closed_form_subsystem(dp, dt, dc, gammas, op, ot, oc, ra, rb, re, tol):
    """Return ``(brace_p, brace_t, first_singular_index)``.

    ``brace_*`` are the curly-bracket factors of the probe and trigger
    susceptibilities in s/rad; ``first_singular_index`` is -1 when every grid
    point is regular.
    """
    dp = np.asarray(dp, dtype=float)
    dt = np.asarray(dt, dtype=float)
    dc = np.asarray(dc, dtype=float)
    g0, g1, g2, g3 = gammas
    Dp = dp + 1j * g0
    Dt = dt + 1j * g0
    Dpt = (dp - dt) + 1j * g1
    Dpc = (dp - dc) + 1j * g2
    Dtc = (dt - dc) + 1j * g3

    ap = op * op / 4.0
    at = ot * ot / 4.0
    ac = oc * oc / 4.0
    pop_p = np.broadcast_to(ra, dp.shape) - np.broadcast_to(re, dp.shape)
    pop_t = np.broadcast_to(rb, dp.shape) - np.broadcast_to(re, dp.shape)

    t_pt, i_pt = _over(at, Dpt)
    t_pc, i_pc = _over(ac, Dpc)
    t_tc, i_tc = _over(ac, Dtc)
    t_ptc, i_ptc = _over(ap, np.conj(Dpt))
    t_pcc, i_pcc = _over(ac, np.conj(Dpc))
    t_tcc, i_tcc = _over(ac, np.conj(Dtc))

    # probe: first term
    d1, s1 = _inv(-Dp + t_pt + t_pc, i_pt | i_pc, tol)
    first_p = pop_p * d1
    # probe: cross term  -(at pop_t) / (-Dpt * X * Y)
    ix, sx = _inv(-np.conj(Dt) + t_tcc, i_tcc, tol)
    iy, sy = _inv(-Dp + t_pc, i_pc, tol)
    cross_p, s2 = _cross(at * pop_t, -Dpt, ix, sx, iy, sy, i_tcc | i_pc)
    brace_p = first_p - cross_p

    # trigger: first term
    e1, r1 = _inv(-Dt - t_ptc + t_tc, i_ptc | i_tc, tol)
    first_t = pop_t * e1
    jx, rx = _inv(-np.conj(Dp) + t_pcc, i_pcc, tol)
    jy, ry = _inv(-Dt + t_tc, i_tc, tol)
    cross_t, r2 = _cross(ap * pop_p, np.conj(Dpt), jx, rx, jy, ry, i_pcc | i_tc)
    brace_t = first_t - cross_t

    singular = s1 | s2 | r1 | r2
    idx = np.flatnonzero(singular.ravel())
    return brace_p, brace_t, int(idx[0]) if idx.size else -1


def _cross(num, lead, ix, sx, iy, sy, any_inf):
    """``num * ix * iy / lead`` with the zero/infinity bookkeeping."""
    num = np.broadcast_to(num, lead.shape)
    out = np.zeros(lead.shape, dtype=complex)
    active = num != 0
    # an infinite factor kills the term unless another factor is degenerate
    dead = active & any_inf
    lead_zero = lead == 0
    singular = active & ((sx | sy) | (lead_zero & ~dead))
    singular |= dead & (lead_zero | sx | sy)
    ok = active & ~dead & ~singular
    out[ok] = num[ok] * ix[ok] * iy[ok] / lead[ok]
    return out, singular
