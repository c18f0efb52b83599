"""Adjacency spectra: cyclic Jacobi in floating point, exact checks for
integer eigenvalues.

Floating results only ever *flag* an integer candidate; discrete decisions
are taken from the exact rank of ``A - kI``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

from . import exact
from .errors import ConvergenceError, NotAnEigenvalueError
from .graph import Graph

INT_TOL = 1e-6
MAX_SWEEPS = 100


@njit(cache=True)
def _jacobi(a, tol, max_sweeps):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    norm = np.sqrt((a * a).sum())
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        off = np.sqrt(2.0 * off)
        if off <= tol * max(norm, 1.0):
            return a, v, sweep, off
        # threshold: skip rotations whose element is tiny relative to the rest
        thresh = 0.2 * off / (n * n) if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= thresh or apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    off = 0.0
    for p in range(n):
        for q in range(p + 1, n):
            off += a[p, q] * a[p, q]
    return a, v, max_sweeps, np.sqrt(2.0 * off)


def jacobi_eigh(m: np.ndarray, tol: float = 1e-12, max_sweeps: int = MAX_SWEEPS):
    """Eigenpairs of a symmetric matrix, values in non-increasing order."""
    m = np.ascontiguousarray(m, dtype=np.float64)
    if m.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0))
    d, v, sweeps, off = _jacobi(m, tol, max_sweeps)
    if sweeps >= max_sweeps:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
        )
    vals = np.diag(d).copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], v[:, order]


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray
    vectors: np.ndarray

    @property
    def lambda_min(self) -> float:
        return float(self.values[-1]) if len(self.values) else 0.0

    @property
    def lambda_max(self) -> float:
        return float(self.values[0]) if len(self.values) else 0.0

    def float_multiplicity(self, k: float, tol: float = INT_TOL) -> int:
        return int(np.sum(np.abs(self.values - k) <= tol))

    def distinct(self, tol: float = INT_TOL) -> list[tuple[float, int]]:
        """Distinct eigenvalues (descending) with their multiplicities."""
        groups: list[list[float]] = []
        for x in self.values:
            if groups and abs(groups[-1][-1] - x) <= tol:
                groups[-1].append(float(x))
            else:
                groups.append([float(x)])
        return [(float(np.mean(gr)), len(gr)) for gr in groups]


@dataclass(frozen=True)
class IntegerEigenCertificate:
    value: int
    is_eigenvalue: bool
    multiplicity: int
    basis: tuple[tuple[Fraction, ...], ...] | None = None


def eigen_sym(g: Graph) -> Spectrum:
    vals, vecs = jacobi_eigh(g.adjacency_matrix())
    return Spectrum(vals, vecs)


def eigenvalues(g: Graph) -> np.ndarray:
    return eigen_sym(g).values


def lambda_min(g: Graph) -> float:
    if g.m == 0:
        return 0.0
    return eigen_sym(g).lambda_min


def integer_eigen_check(g: Graph, k: int, with_basis: bool = False) -> IntegerEigenCertificate:
    rows = exact.shifted_adjacency(g, int(k))
    mult = g.n - exact.bareiss_rank(rows)
    basis = None
    if with_basis:
        basis = tuple(tuple(v) for v in exact.nullspace(rows))
    return IntegerEigenCertificate(int(k), mult > 0, mult, basis)


def eigenspace_basis(g: Graph, k: int) -> list[list[Fraction]]:
    basis = exact.nullspace(exact.shifted_adjacency(g, int(k)))
    if not basis:
        raise NotAnEigenvalueError(f"{k} is not an eigenvalue")
    return basis


def integer_candidate(x: float, tol: float = INT_TOL) -> int | None:
    k = round(x)
    return int(k) if abs(x - k) <= tol else None


def exact_lambda_min(g: Graph) -> tuple[float, int | None]:
    """``(lambda_min, k)`` where ``k`` is set iff ``lambda_min`` is the integer ``k``
    (confirmed by exact rank)."""
    lam = lambda_min(g)
    k = integer_candidate(lam)
    if k is not None and g.n and integer_eigen_check(g, k).is_eigenvalue:
        return float(k), k
    return lam, None
