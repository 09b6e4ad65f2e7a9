"""Independent oracles used by the tests.

Eigenvalue oracles go through the characteristic polynomial: closed-form
coefficients plus sign-change bisection for 2x2/3x3, Faddeev-LeVerrier
coefficients plus companion-matrix roots for general n. Neither route shares
code with the Jacobi solver under test.
"""

from __future__ import annotations

import math

import numpy as np


def _bisect(f, lo: float, hi: float, iters: int = 200) -> float:
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
        if abs(hi - lo) <= 1e-15 * max(1.0, abs(lo), abs(hi)):
            break
    return 0.5 * (lo + hi)


def _gershgorin(a: np.ndarray) -> tuple[float, float]:
    radii = np.sum(np.abs(a), axis=1) - np.abs(np.diag(a))
    lo = float(np.min(np.diag(a) - radii))
    hi = float(np.max(np.diag(a) + radii))
    pad = 1e-6 * max(1.0, abs(lo), abs(hi))
    return lo - pad, hi + pad


def eig2_bisect(a: np.ndarray) -> np.ndarray:
    """Both eigenvalues of a symmetric 2x2 matrix by charpoly bisection."""
    tr = float(a[0, 0] + a[1, 1])
    det = float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    p = lambda x: x * x - tr * x + det
    lo, hi = _gershgorin(a)
    vertex = tr / 2.0
    if p(vertex) > 0.0:  # numerically a double root at the vertex
        return np.array([vertex, vertex])
    small = _bisect(p, lo, vertex)
    large = _bisect(p, hi, vertex)
    return np.array(sorted([small, large], reverse=True))


def eig3_bisect(a: np.ndarray) -> np.ndarray:
    """All eigenvalues of a symmetric 3x3 matrix by charpoly bisection."""
    c2 = float(np.trace(a))
    c1 = float(
        a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        + a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
        + a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1]
    )
    c0 = float(
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )
    p = lambda x: ((x - c2) * x + c1) * x - c0
    lo, hi = _gershgorin(a)
    # critical points of the cubic bracket its middle root
    disc = 4.0 * c2 * c2 - 12.0 * c1
    if disc <= 0.0:
        root = _bisect(p, lo, hi)
        return np.array([root, root, root])
    t1 = (2.0 * c2 - math.sqrt(disc)) / 6.0
    t2 = (2.0 * c2 + math.sqrt(disc)) / 6.0
    roots = []
    for a_, b_ in ((lo, t1), (t1, t2), (t2, hi)):
        if p(a_) == 0.0:
            roots.append(a_)
        elif p(b_) == 0.0:
            roots.append(b_)
        elif (p(a_) < 0.0) != (p(b_) < 0.0):
            roots.append(_bisect(p, a_, b_))
        else:  # nearly multiple root pinched at a critical point
            roots.append(a_ if abs(p(a_)) < abs(p(b_)) else b_)
    return np.array(sorted(roots, reverse=True))


def eig_bisect(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if n == 1:
        return np.array([float(a[0, 0])])
    if n == 2:
        return eig2_bisect(a)
    if n == 3:
        return eig3_bisect(a)
    raise ValueError("bisection oracle implemented for n <= 3")


def charpoly_coeffs(a: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients via Faddeev-LeVerrier."""
    n = a.shape[0]
    coeffs = [1.0]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-float(np.trace(a @ m)) / k)
    return np.array(coeffs)


def eig_companion(a: np.ndarray) -> np.ndarray:
    """Eigenvalues via companion-matrix roots of the characteristic polynomial."""
    roots = np.roots(charpoly_coeffs(a))
    return np.sort(roots.real)[::-1]


def rand_sym(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    g = rng.standard_normal((n, n)) * scale
    return (g + g.T) / 2.0


def rand_pd(rng: np.random.Generator, n: int, kappa: float = 100.0,
            scale: float = 1.0) -> np.ndarray:
    """Random PD matrix built independently of the package generator."""
    lam = np.exp(rng.uniform(0.0, np.log(kappa), size=n)) if kappa > 1 else np.ones(n)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    a = (q * lam) @ q.T * scale
    return (a + a.T) / 2.0


def rand_psd(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    k = rank if rank is not None else n
    g = rng.standard_normal((n, k))
    return g @ g.T


def majorization_pair(rng: np.random.Generator, n: int,
                      positive: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """(x, y) with x majorized by y: y random, x from Robin Hood transfers."""
    if positive:
        y = rng.uniform(0.5, 3.0, size=n)
    else:
        y = rng.standard_normal(n)
    x = np.sort(y)[::-1].copy()
    for _ in range(3 * n):
        i, j = sorted(rng.choice(n, size=2, replace=False))
        if x[i] <= x[j]:
            continue
        delta = rng.uniform(0.0, 0.5) * (x[i] - x[j])
        x[i] -= delta
        x[j] += delta
        x = np.sort(x)[::-1]
    return x, y
