"""Numeric primitives: log-gamma, associated Laguerre polynomials,
composite Gauss-Legendre quadrature and a symmetric tridiagonal
eigensolver.
"""
import math

import numpy as np
from scipy import linalg, special

from .errors import DomainError, GridError

GL_ORDER = 16
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)


def ln_gamma(x):
    """ln Gamma(x) for x > 0 (scalar or array)."""
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    out = special.gammaln(arr)
    return float(out) if out.ndim == 0 else out


def assoc_laguerre(n, nu, z):
    """Generalized Laguerre polynomial L_n^(nu)(z) by forward recurrence.

    `z` may be an array; `nu` is a real scalar.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + nu - z
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + nu - z) * cur - (k + nu) * prev) / (k + 1)
    return cur if np.ndim(cur) else float(cur)


def quadrature(f, a, b, panels=1):
    """Composite 16-point Gauss-Legendre estimate of the integral of f on [a, b].

    `f` must accept a 1-D array of abscissae and return values of the
    same shape (real or complex).
    """
    if not a < b:
        raise DomainError(f"quadrature needs a < b, got a={a}, b={b}")
    if panels < 1:
        raise ValueError("panels must be >= 1")
    edges = np.linspace(a, b, panels + 1)
    return quadrature_on_edges(f, edges)


def quadrature_on_edges(f, edges):
    """Gauss-Legendre sum over consecutive panels [edges[i], edges[i+1]]."""
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = np.asarray(f(pts.ravel())).reshape(pts.shape)
    total = np.sum(vals * _GL_WEIGHTS[None, :] * half[:, None])
    return complex(total) if np.iscomplexobj(total) else float(total)


def gamma_tail_edges(lam, panels=200, grading=40):
    """Panel edges on [0, z_max] for integrands shaped like z**(lam-1) e**-z.

    z_max = z_peak + 40 sqrt(lam). Panels are geometrically graded toward
    z = 0 so fractional powers at the origin are resolved.
    """
    lam = float(lam)
    z_peak = max(lam - 1.0, 0.0)
    z_max = z_peak + 40.0 * math.sqrt(max(lam, 1.0))
    z_first = z_max / panels
    graded = z_first * np.logspace(-12, 0, grading)
    return np.concatenate(([0.0], graded[:-1], np.linspace(z_first, z_max, panels)))


def integrate_gamma_like(f, lam, panels=200):
    """Integrate f(z) over (0, inf) when |f| is bounded by a Gamma(lam) shape."""
    return quadrature_on_edges(f, gamma_tail_edges(lam, panels))


def tridiag_lowest_eigen(diag, offdiag, k, vectors=False):
    """k smallest eigenvalues (ascending) of a symmetric tridiagonal matrix.

    Returns ``vals`` or ``(vals, vecs)`` with eigenvectors as columns.
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    if diag.ndim != 1 or offdiag.shape != (max(diag.size - 1, 0),):
        raise GridError(
            f"offdiag must have length {diag.size - 1}, got {offdiag.size}")
    if not 1 <= k <= diag.size:
        raise ValueError(f"k must be in [1, {diag.size}], got {k}")
    if diag.size == 1:
        vals = diag.copy()
        return (vals, np.ones((1, 1))) if vectors else vals
    # bisection to full accuracy: the default tolerance eps*|T| is swamped
    # by large diagonal entries far out in a steep potential
    out = linalg.eigh_tridiagonal(
        diag, offdiag, eigvals_only=not vectors, select="i",
        select_range=(0, k - 1), lapack_driver="stebz", tol=2 * np.finfo(float).tiny)
    return out
