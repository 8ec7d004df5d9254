"""Vectorised inner loops with a numba path and a pure numpy path.

Set ``FANOCERT_NO_NUMBA=1`` to force the numpy implementations (they are
always importable; numba is optional at runtime).  Both paths compute the
same numbers: interval bounds are rounded outward one ulp per operation
with ``nextafter``, and path counts are exact int64.
"""

from __future__ import annotations

import os

import numpy as np

NO_NUMBA_ENV = "FANOCERT_NO_NUMBA"

_disabled = os.environ.get(NO_NUMBA_ENV, "").strip().lower() in ("1", "true", "yes", "on")
try:
    if _disabled:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False

_NINF = -np.inf
_PINF = np.inf


# -- box bounds for the two-variable objectives ---------------------------------
#
# Objective: g(nu) + h(theta) with g = max(nu^2, clamp) and
# h(theta) = theta^2/(theta - 1), defined for theta > 1.  h decreases on
# (1, 2] and increases on [2, oo), with h(2) = 4.


def _h_down_np(x):
    num = np.nextafter(x * x, _NINF)
    den = np.nextafter(x - 1.0, _PINF)
    return np.nextafter(num / den, _NINF)


def box_bounds_numpy(nu_lo, nu_hi, th_lo, th_hi, clamp, A, C, B):
    """Lower bound of the objective and a feasibility mask per box.

    Constraints are ``A[k]*nu + C[k]*theta <= B[k]`` with exactly
    representable data; a box is discarded only when its rounded-down
    minimum of some left side exceeds the right side, or when it lies in
    ``theta <= 1``.
    """
    feasible = th_hi > 1.0
    for k in range(A.shape[0]):
        a, c, b = A[k], C[k], B[k]
        t1 = np.nextafter(a * np.where(a >= 0, nu_lo, nu_hi), _NINF)
        t2 = np.nextafter(c * np.where(c >= 0, th_lo, th_hi), _NINF)
        feasible &= ~(np.nextafter(t1 + t2, _NINF) > b)
    straddle = (nu_lo <= 0.0) & (nu_hi >= 0.0)
    m = np.minimum(np.abs(nu_lo), np.abs(nu_hi))
    g = np.where(straddle, 0.0, np.nextafter(m * m, _NINF))
    g = np.maximum(g, clamp)
    safe_hi = np.where(th_hi > 1.0, th_hi, 2.0)
    safe_lo = np.where(th_lo > 1.0, th_lo, 2.0)
    h = np.where(
        safe_hi <= 2.0,
        _h_down_np(safe_hi),
        np.where(safe_lo >= 2.0, _h_down_np(safe_lo), 4.0),
    )
    lb = np.nextafter(g + h, _NINF)
    return lb, feasible


def path_counts_numpy(adj, src):
    """Number of directed paths from ``src`` to every vertex.

    ``adj[i, j] = 1`` for an arrow ``i -> j`` (``i > j``); vertices are
    ``1..K`` in a ``(K+1) x (K+1)`` matrix, row/column 0 unused.
    """
    K = adj.shape[0] - 1
    p = np.zeros(K + 1, dtype=np.int64)
    p[src] = 1
    for i in range(src, 0, -1):
        if p[i]:
            p[:i] += p[i] * adj[i, :i]
    return p


def path_counts_batch_numpy(adjs, srcs):
    out = np.zeros((adjs.shape[0], adjs.shape[1]), dtype=np.int64)
    for g in range(adjs.shape[0]):
        out[g] = path_counts_numpy(adjs[g], srcs[g])
    return out


if HAVE_NUMBA:

    @njit(cache=False)
    def _h_down_nb(x):
        num = np.nextafter(x * x, _NINF)
        den = np.nextafter(x - 1.0, _PINF)
        return np.nextafter(num / den, _NINF)

    @njit(cache=False)
    def _box_bounds_nb(nu_lo, nu_hi, th_lo, th_hi, clamp, A, C, B):
        n = nu_lo.shape[0]
        lb = np.empty(n)
        feasible = np.empty(n, dtype=np.bool_)
        for i in range(n):
            ok = th_hi[i] > 1.0
            for k in range(A.shape[0]):
                if not ok:
                    break
                a, c, b = A[k], C[k], B[k]
                x = nu_lo[i] if a >= 0 else nu_hi[i]
                y = th_lo[i] if c >= 0 else th_hi[i]
                t1 = np.nextafter(a * x, _NINF)
                t2 = np.nextafter(c * y, _NINF)
                if np.nextafter(t1 + t2, _NINF) > b:
                    ok = False
            feasible[i] = ok
            if nu_lo[i] <= 0.0 and nu_hi[i] >= 0.0:
                g = 0.0
            else:
                m = min(abs(nu_lo[i]), abs(nu_hi[i]))
                g = np.nextafter(m * m, _NINF)
            if g < clamp:
                g = clamp
            hi = th_hi[i] if th_hi[i] > 1.0 else 2.0
            lo = th_lo[i] if th_lo[i] > 1.0 else 2.0
            if hi <= 2.0:
                h = _h_down_nb(hi)
            elif lo >= 2.0:
                h = _h_down_nb(lo)
            else:
                h = 4.0
            lb[i] = np.nextafter(g + h, _NINF)
        return lb, feasible

    @njit(cache=False)
    def _path_counts_nb(adj, src):
        K = adj.shape[0] - 1
        p = np.zeros(K + 1, dtype=np.int64)
        p[src] = 1
        for i in range(src, 0, -1):
            if p[i] != 0:
                for j in range(1, i):
                    if adj[i, j] != 0:
                        p[j] += p[i] * adj[i, j]
        return p

    @njit(cache=False)
    def _path_counts_batch_nb(adjs, srcs):
        out = np.zeros((adjs.shape[0], adjs.shape[1]), dtype=np.int64)
        for g in range(adjs.shape[0]):
            out[g] = _path_counts_nb(adjs[g], srcs[g])
        return out


def box_bounds(nu_lo, nu_hi, th_lo, th_hi, clamp, A, C, B, use_numba=None):
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and HAVE_NUMBA:
        return _box_bounds_nb(nu_lo, nu_hi, th_lo, th_hi, float(clamp), A, C, B)
    return box_bounds_numpy(nu_lo, nu_hi, th_lo, th_hi, float(clamp), A, C, B)


def path_counts_batch(adjs, srcs, use_numba=None):
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and HAVE_NUMBA:
        return _path_counts_batch_nb(adjs, srcs)
    return path_counts_batch_numpy(adjs, srcs)
