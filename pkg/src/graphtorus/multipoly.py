"""Sparse multivariate polynomials with exact integer coefficients.

Variables are numbered ``1..n`` to line up with edge labels. Terms are kept in
graded-lex order (higher degree first, then lexicographically larger exponent
vectors first) whenever they are listed or rendered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .intlinalg import rank

__all__ = [
    "PolyError",
    "MultiPoly",
    "LinearForm",
    "SymbolicMatrix",
    "determinant",
    "permutation_determinant",
    "eval_mod_p",
    "span_dimension",
    "is_prime",
]

Exponent = tuple[int, ...]


class PolyError(ValueError):
    pass


def _grlex_key(exps: Exponent):
    return (sum(exps), exps)


@dataclass(frozen=True, eq=False)
class MultiPoly:
    nvars: int
    terms: Mapping[Exponent, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise PolyError("exponent vector has the wrong length")
            if c:
                clean[exps] = int(c)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, c: int, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        if not 1 <= i <= nvars:
            raise PolyError(f"variable x{i} outside 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): c})

    # -- inspection --

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def exponents(self) -> list[Exponent]:
        return [e for e, _ in self.sorted_terms()]

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> int | None:
        """Common total degree of all terms, or ``None``; zero reports 0."""
        degrees = {sum(e) for e in self.terms}
        if not degrees:
            return 0
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def variables(self) -> set[int]:
        return {i + 1 for e in self.terms for i, a in enumerate(e) if a}

    # -- arithmetic --

    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise PolyError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly.constant(other, self.nvars)
        if isinstance(other, LinearForm):
            other = other.to_poly()
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        out = MultiPoly.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def extend(self, nvars: int) -> "MultiPoly":
        """Same polynomial viewed in ``nvars >= self.nvars`` variables."""
        if nvars < self.nvars:
            raise PolyError("cannot shrink the variable count")
        pad = (0,) * (nvars - self.nvars)
        return MultiPoly(nvars, {e + pad: c for e, c in self.terms.items()})

    def substitute(self, var: int, form: "LinearForm | MultiPoly") -> "MultiPoly":
        """Replace ``x_var`` by ``form``; the result lives in the larger ring."""
        if not 1 <= var <= self.nvars:
            raise PolyError(f"variable x{var} outside 1..{self.nvars}")
        repl = form.to_poly() if isinstance(form, LinearForm) else form
        n = max(self.nvars, repl.nvars)
        base = self.extend(n)
        repl = repl.extend(n)
        powers = [MultiPoly.constant(1, n)]
        out = MultiPoly.zero(n)
        for e, c in base.terms.items():
            k = e[var - 1]
            while len(powers) <= k:
                powers.append(powers[-1] * repl)
            rest = list(e)
            rest[var - 1] = 0
            out = out + MultiPoly(n, {tuple(rest): c}) * powers[k]
        return out

    def compose(self, forms: Sequence["LinearForm"]) -> "MultiPoly":
        """Simultaneously substitute ``x_i -> forms[i-1]``."""
        if len(forms) != self.nvars:
            raise PolyError("need one form per variable")
        polys = [f.to_poly() for f in forms]
        n = polys[0].nvars if polys else 0
        out = MultiPoly.zero(n)
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, n)
            for p, a in zip(polys, e):
                for _ in range(a):
                    term = term * p
            out = out + term
        return out

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise PolyError("point has the wrong dimension")
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, a in zip(point, e):
                if a:
                    t *= x**a
            total += t
        return total

    # -- serialization --

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_str()!r})"

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            factors = []
            for i, a in enumerate(e, 1):
                if a == 1:
                    factors.append(f"x{i}")
                elif a > 1:
                    factors.append(f"x{i}^{a}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if idx == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def to_json(self) -> list:
        return [[c, list(e)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list, nvars: int | None = None) -> "MultiPoly":
        if not data and nvars is None:
            raise PolyError("variable count needed for the zero polynomial")
        n = nvars if nvars is not None else len(data[0][1])
        return cls(n, {tuple(e): c for c, e in data})


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, n: int) -> "LinearForm":
        return cls((0,) * n)

    @classmethod
    def var(cls, i: int, n: int, c: int = 1) -> "LinearForm":
        coeffs = [0] * n
        coeffs[i - 1] = c
        return cls(tuple(coeffs))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if len(other.coeffs) != len(self.coeffs):
            raise PolyError("variable count mismatch")
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return LinearForm(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int) -> "LinearForm":
        return LinearForm(tuple(a * k for a in self.coeffs))

    __rmul__ = __mul__

    def support(self) -> set[int]:
        return {i for i, c in enumerate(self.coeffs, 1) if c}

    def to_poly(self) -> MultiPoly:
        n = len(self.coeffs)
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return MultiPoly(n, terms)

    def __str__(self):
        return self.to_poly().to_str()


@dataclass(frozen=True)
class SymbolicMatrix:
    """Symmetric ``h x h`` matrix of linear forms in ``nvars`` variables."""

    entries: tuple[tuple[LinearForm, ...], ...]
    nvars: int

    def __post_init__(self):
        h = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != h:
                raise PolyError("matrix is not square")
            for j, f in enumerate(row):
                if f.nvars != self.nvars:
                    raise PolyError("entry has the wrong variable count")
                if self.entries[j][i] != f:
                    raise PolyError(f"matrix is not symmetric at ({i + 1}, {j + 1})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Sequence[int]]], nvars: int | None = None) -> "SymbolicMatrix":
        """Build from nested coefficient vectors ``rows[i][j] = [c_1, ..., c_n]``."""
        if nvars is None:
            nvars = len(rows[0][0]) if rows else 0
        return cls(tuple(tuple(LinearForm(tuple(f)) for f in row) for row in rows), nvars)

    @property
    def h(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> LinearForm:
        i, j = ij
        return self.entries[i][j]

    def diagonal(self) -> list[LinearForm]:
        return [self.entries[i][i] for i in range(self.h)]

    def upper_positions(self, nonzero: bool = True) -> list[tuple[int, int]]:
        """0-based ``(i, j)`` with ``i <= j`` in row-major order."""
        return [
            (i, j)
            for i in range(self.h)
            for j in range(i, self.h)
            if not nonzero or self.entries[i][j]
        ]

    def upper_entries(self, nonzero: bool = True) -> list[LinearForm]:
        return [self.entries[i][j] for i, j in self.upper_positions(nonzero)]

    def congruent(self, s: Sequence[Sequence[int]]) -> "SymbolicMatrix":
        """``S^T M S`` for an integer ``h x h`` matrix ``S``."""
        h = self.h
        zero = LinearForm.zero(self.nvars)
        out = []
        for a in range(h):
            row = []
            for b in range(h):
                acc = zero
                for i in range(h):
                    if s[i][a] == 0:
                        continue
                    for j in range(h):
                        if s[j][b]:
                            acc = acc + self.entries[i][j] * (s[i][a] * s[j][b])
                row.append(acc)
            out.append(tuple(row))
        return SymbolicMatrix(tuple(out), self.nvars)

    def to_strings(self) -> list[list[str]]:
        return [[str(f) for f in row] for row in self.entries]


def determinant(m: SymbolicMatrix, bound: int = 8) -> MultiPoly:
    """Exact determinant by cofactor expansion along rows.

    The minor on rows ``k..h-1`` and a column set of size ``h-k`` is memoized
    by its column bitmask.
    """
    h = m.h
    if h > bound:
        raise PolyError(f"matrix dimension {h} exceeds the determinant bound {bound}")
    n = m.nvars
    polys = [[f.to_poly() for f in row] for row in m.entries]
    memo: dict[int, MultiPoly] = {0: MultiPoly.constant(1, n)}

    def minor(cols: int) -> MultiPoly:
        if cols in memo:
            return memo[cols]
        row = h - bin(cols).count("1")
        total = MultiPoly.zero(n)
        sign = 1
        for c in range(h):
            bit = 1 << c
            if not cols & bit:
                continue
            entry = polys[row][c]
            if entry:
                total = total + entry * minor(cols & ~bit) * sign
            sign = -sign
        memo[cols] = total
        return total

    return minor((1 << h) - 1)


def permutation_determinant(m: SymbolicMatrix) -> MultiPoly:
    """Leibniz expansion; only for cross-checking small matrices."""
    from itertools import permutations

    h, n = m.h, m.nvars
    polys = [[f.to_poly() for f in row] for row in m.entries]
    total = MultiPoly.zero(n)
    for perm in permutations(range(h)):
        inversions = sum(1 for a in range(h) for b in range(a + 1, h) if perm[a] > perm[b])
        term = MultiPoly.constant(-1 if inversions % 2 else 1, n)
        for i, j in enumerate(perm):
            term = term * polys[i][j]
            if not term:
                break
        total = total + term
    return total


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def eval_mod_p(f: MultiPoly, point: Sequence[int], p: int) -> int:
    if not is_prime(p):
        raise PolyError(f"{p} is not prime")
    if len(point) != f.nvars:
        raise PolyError("point has the wrong dimension")
    total = 0
    for e, c in f.terms.items():
        t = c % p
        for x, a in zip(point, e):
            if a:
                t = t * pow(x, a, p) % p
        total += t
    return total % p


def span_dimension(forms: Iterable[LinearForm]) -> int:
    return rank([f.coeffs for f in forms])
