"""Brute-force point counts of graph hypersurfaces over prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .graph_core import Multigraph, SearchBoundError, spanning_trees
from .kirchhoff import kirchhoff
from .multipoly import MultiPoly, is_prime

__all__ = [
    "CountRecord",
    "count_points",
    "count_range",
    "count_points_reference",
    "polynomial_fit",
    "evaluate_poly",
]

WORK_BOUND = 10**8
CHUNK = 1 << 18


@dataclass(frozen=True)
class CountRecord:
    graph_id: str
    q: int
    affine_count: int
    projective_count: int

    def to_json(self) -> dict:
        return {
            "graph": self.graph_id,
            "q": self.q,
            "affine": self.affine_count,
            "projective": self.projective_count,
        }


def _check(q: int, n: int, work_bound: int) -> None:
    if not is_prime(q):
        raise ValueError(f"{q} is not prime; only prime fields are supported")
    if q**n > work_bound:
        raise SearchBoundError(f"{q}^{n} evaluations exceed the work bound {work_bound}")


def count_range(f: MultiPoly, q: int, start: int, stop: int) -> int:
    """Zeros of ``f`` mod ``q`` among points ``start..stop-1`` of the odometer.

    Point ``k`` has coordinates given by the base-``q`` digits of ``k``, the
    first coordinate most significant.
    """
    n = f.nvars
    terms = [(c % q, e) for e, c in f.terms.items() if c % q]
    total = 0
    for lo in range(start, stop, CHUNK):
        idx = np.arange(lo, min(stop, lo + CHUNK), dtype=np.int64)
        coords = np.empty((n, idx.size), dtype=np.int64)
        rest = idx.copy()
        for j in range(n - 1, -1, -1):
            coords[j] = rest % q
            rest //= q
        acc = np.zeros(idx.size, dtype=np.int64)
        for c, e in terms:
            t = np.full(idx.size, c, dtype=np.int64)
            for j, a in enumerate(e):
                for _ in range(a):
                    t = (t * coords[j]) % q
            acc = (acc + t) % q
        total += int(np.count_nonzero(acc == 0))
    return total


def _record(graph_id: str, q: int, affine: int) -> CountRecord:
    num = affine - 1
    if num % (q - 1):
        raise AssertionError(f"cone identity fails: {affine} - 1 not divisible by {q - 1}")
    return CountRecord(graph_id, q, affine, num // (q - 1))


def count_points(g: Multigraph, q: int, graph_id: str = "", work_bound: int = WORK_BOUND) -> CountRecord:
    _check(q, g.n, work_bound)
    f = kirchhoff(g)
    return _record(graph_id, q, count_range(f, q, 0, q**g.n))


def count_points_reference(g: Multigraph, q: int, graph_id: str = "", work_bound: int = WORK_BOUND) -> CountRecord:
    """Independent route: spanning-tree sum in pure Python, last coordinate slowest."""
    _check(q, g.n, work_bound)
    complements = [[e - 1 for e in g.labels if e not in t] for t in spanning_trees(g)]
    zeros = 0
    for rev in product(range(q), repeat=g.n):
        x = rev[::-1]
        s = 0
        for comp in complements:
            t = 1
            for k in comp:
                t *= x[k]
            s += t
        if s % q == 0:
            zeros += 1
    return _record(graph_id, q, zeros)


def evaluate_poly(coeffs, q: int) -> Fraction:
    return sum((Fraction(c) * q**k for k, c in enumerate(coeffs)), Fraction(0))


def _interpolate(xs, ys) -> list[Fraction]:
    """Coefficients, lowest degree first, of the Lagrange interpolant."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i in range(k):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(k):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(k):
            coeffs[t] += ys[i] * basis[t] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def polynomial_fit(records: list[CountRecord]) -> list[int] | None:
    """Integer polynomial in ``q`` through all but the largest prime, if it
    also predicts the held-out count; ``None`` otherwise."""
    if len(records) < 2:
        raise ValueError("need at least two records")
    qs = [r.q for r in records]
    if len(set(qs)) != len(qs):
        raise ValueError("duplicate primes")
    recs = sorted(records, key=lambda r: r.q)
    fit, hold = recs[:-1], recs[-1]
    coeffs = _interpolate([Fraction(r.q) for r in fit], [Fraction(r.projective_count) for r in fit])
    if any(c.denominator != 1 for c in coeffs):
        return None
    if evaluate_poly(coeffs, hold.q) != hold.projective_count:
        return None
    return [int(c) for c in coeffs]
