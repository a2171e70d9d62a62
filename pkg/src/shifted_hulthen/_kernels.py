"""Compiled inner loops for the finite-difference and Numerov oracles."""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def sturm_count(diag, off2, x):
    """Number of eigenvalues below x of the tridiagonal (diag, off) with off2 = off^2."""
    count = 0
    d = diag[0] - x
    if d < 0.0:
        count += 1
    for i in range(1, diag.size):
        if d == 0.0:
            d = 1e-300
        d = diag[i] - x - off2[i - 1] / d
        if d < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def bisect_lowest(diag, off, k, rel_tol, max_iter):
    """Lowest k eigenvalues by Sturm-sequence bisection."""
    n = diag.size
    off2 = off * off
    lo0 = np.inf
    hi0 = -np.inf
    for i in range(n):
        radius = 0.0
        if i > 0:
            radius += abs(off[i - 1])
        if i < n - 1:
            radius += abs(off[i])
        lo0 = min(lo0, diag[i] - radius)
        hi0 = max(hi0, diag[i] + radius)
    out = np.empty(k)
    lo = lo0
    for j in range(k):
        a = lo
        b = hi0
        for _ in range(max_iter):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if b - a <= rel_tol * max(abs(a), abs(b)):
                break
            if sturm_count(diag, off2, mid) > j:
                b = mid
            else:
                a = mid
        out[j] = 0.5 * (a + b)
        lo = a
    return out


@numba.njit(cache=True)
def numerov_outward(f, h, m, start_mode, nu, c1, f0u0):
    """Outward Numerov solution u[0..m+1] with u[0] = 0.

    start_mode 0: regular start u ~ r (1 + c1 r), origin term f0u0 supplied.
    start_mode 1: power-law start u ~ r^nu (1 + c1 r), recurrence from i = 2.
    """
    u = np.zeros(m + 2)
    c = h * h / 12.0
    if start_mode == 0:
        u[1] = h
        u[2] = (2.0 * u[1] * (1.0 + 5.0 * c * f[1]) + c * f0u0) / (1.0 - c * f[2])
    else:
        u[1] = 1.0 * (1.0 + c1 * h)
        u[2] = 2.0**nu * (1.0 + 2.0 * c1 * h)
    for i in range(2, m + 1):
        u[i + 1] = (2.0 * u[i] * (1.0 + 5.0 * c * f[i]) - u[i - 1] * (1.0 - c * f[i - 1])) / (
            1.0 - c * f[i + 1]
        )
        if abs(u[i + 1]) > 1e200:
            for j in range(i + 2):
                u[j] *= 1e-200
    return u


@numba.njit(cache=True)
def numerov_inward(f, h, m):
    """Inward Numerov solution on [m-1, N-1] with u[N-1] = 0."""
    n = f.size
    u = np.zeros(n)
    c = h * h / 12.0
    u[n - 1] = 0.0
    u[n - 2] = 1e-30
    for i in range(n - 2, m - 1, -1):
        u[i - 1] = (2.0 * u[i] * (1.0 + 5.0 * c * f[i]) - u[i + 1] * (1.0 - c * f[i + 1])) / (
            1.0 - c * f[i - 1]
        )
        if abs(u[i - 1]) > 1e200:
            for j in range(i - 1, n):
                u[j] *= 1e-200
    return u
