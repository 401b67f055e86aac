"""Exact arithmetic: sparse polynomials in the ``A_{ji}``, truncated loop polynomials, determinants.

Rationals are :class:`fractions.Fraction` throughout.  A polynomial for rank
``n`` lives in ``Q[A_{ji} : 1 <= i < j <= n]``; its monomials are exponent
tuples indexed by :func:`variables`, which lists the ``A_{ji}`` by decreasing
span ``j - i`` and then decreasing ``j``.  Lexicographic comparison of exponent
tuples is therefore the "largest span first" priority, and the monomial order
used everywhere is graded lex on top of it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def variables(n: int) -> tuple[tuple[int, int], ...]:
    pairs = [(j, i) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return tuple(sorted(pairs, key=lambda p: (-(p[0] - p[1]), -p[0], -p[1])))


@lru_cache(maxsize=None)
def variable_index(n: int) -> dict[tuple[int, int], int]:
    return {v: k for k, v in enumerate(variables(n))}


def monomial_key(m: Monomial) -> tuple:
    return (sum(m), m)


def to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class Poly:
    """Sparse polynomial over Q in the variables ``A_{ji}`` of rank ``n``."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.n = n
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = to_fraction(c)

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Poly":
        c = to_fraction(c)
        return cls._raw(n, {(0,) * len(variables(n)): c} if c else {})

    @classmethod
    def var(cls, n: int, j: int, i: int) -> "Poly":
        m = [0] * len(variables(n))
        m[variable_index(n)[(j, i)]] = 1
        return cls._raw(n, {tuple(m): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, exps: Mapping[tuple[int, int], int], coeff=1) -> "Poly":
        return cls(n, {monomial_from_pairs(n, exps): coeff})

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self.terms, key=monomial_key)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        m = self.leading_monomial()
        return m, self.terms[m]

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def constant_value(self) -> Fraction:
        if any(any(m) for m in self.terms):
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError("rank mismatch")
            return other
        return Poly.constant(self.n, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = to_fraction(other)
            if not c:
                return Poly.zero(self.n)
            return Poly._raw(self.n, {m: v * c for m, v in self.terms.items()})
        if other.n != self.n:
            raise ValueError("rank mismatch")
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises if ``other`` does not divide ``self``."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_term()
        if len(other.terms) == 1:
            out = {}
            for m, c in self.terms.items():
                q = tuple(a - b for a, b in zip(m, lm))
                if min(q, default=0) < 0:
                    raise ArithmeticError("inexact polynomial division")
                out[q] = c / lc
            return Poly._raw(self.n, out)
        rem = Poly._raw(self.n, dict(self.terms))
        quot: dict[Monomial, Fraction] = {}
        while rem.terms:
            m, c = rem.leading_term()
            q = tuple(a - b for a, b in zip(m, lm))
            if min(q, default=0) < 0:
                raise ArithmeticError("inexact polynomial division")
            qc = c / lc
            quot[q] = qc
            rem = rem - other * Poly._raw(self.n, {q: qc})
        return Poly._raw(self.n, quot)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def eval_at(self, assignment: Mapping[tuple[int, int], Fraction]) -> Fraction:
        vars_ = variables(self.n)
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for k, e in enumerate(m):
                if e:
                    try:
                        v *= to_fraction(assignment[vars_[k]]) ** e
                    except KeyError:
                        raise KeyError(f"no value for A_{vars_[k][0]}{vars_[k][1]}") from None
            total += v
        return total

    def variables_used(self) -> set[tuple[int, int]]:
        vars_ = variables(self.n)
        return {vars_[k] for m in self.terms for k, e in enumerate(m) if e}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=monomial_key, reverse=True):
            c = self.terms[m]
            mono = format_monomial(self.n, m)
            parts.append(f"{c}" if mono == "1" else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts)


def monomial_from_pairs(n: int, exps: Mapping[tuple[int, int], int]) -> Monomial:
    m = [0] * len(variables(n))
    idx = variable_index(n)
    for pair, e in exps.items():
        m[idx[pair]] += e
    return tuple(m)


def monomial_to_triples(n: int, m: Monomial) -> list[list[int]]:
    """Serialise as sorted ``[j, i, exponent]`` triples."""
    vars_ = variables(n)
    return sorted([vars_[k][0], vars_[k][1], e] for k, e in enumerate(m) if e)


def monomial_from_triples(n: int, triples: Iterable[Sequence[int]]) -> Monomial:
    return monomial_from_pairs(n, {(j, i): e for j, i, e in triples})


def format_monomial(n: int, m: Monomial) -> str:
    parts = []
    for j, i, e in monomial_to_triples(n, m):
        parts.append(f"A{j}{i}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) or "1"


def coefficient_of(p: Poly, m: Monomial) -> Fraction:
    return p.coefficient(m)


def eval_at(p: Poly, assignment: Mapping[tuple[int, int], Fraction]) -> Fraction:
    return p.eval_at(assignment)


def vandermonde_det(values: Sequence) -> Fraction:
    """``prod_{i<j} (v_j - v_i)``."""
    out = Fraction(1)
    for j in range(len(values)):
        for i in range(j):
            out *= to_fraction(values[j]) - to_fraction(values[i])
    return out


# truncated loop polynomials

class LoopPoly:
    """A series ``sum_k t^k p_k`` with polynomial coefficients.

    ``hi is None`` marks an exact (finite) polynomial in ``t``; otherwise the
    series is only known modulo ``t^{hi+1}``.  Products refuse to report
    coefficients the operands do not determine.
    """

    __slots__ = ("n", "terms", "hi")

    def __init__(self, n: int, terms: Mapping[int, Poly] | None = None, hi: int | None = None):
        self.n = n
        self.hi = hi
        self.terms: dict[int, Poly] = {}
        for k, p in (terms or {}).items():
            if hi is not None and k > hi:
                continue
            if not p.is_zero():
                self.terms[k] = p

    @classmethod
    def zero(cls, n: int) -> "LoopPoly":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "LoopPoly":
        return cls(n, {0: Poly.constant(n, 1)})

    @classmethod
    def monomial(cls, n: int, k: int, p: Poly) -> "LoopPoly":
        return cls(n, {k: p})

    @property
    def lo(self) -> int | None:
        return min(self.terms) if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, k: int) -> Poly:
        if self.hi is not None and k > self.hi:
            raise ValueError(f"t^{k} lies beyond the known window (hi={self.hi})")
        return self.terms.get(k, Poly.zero(self.n))

    def truncate(self, hi: int) -> "LoopPoly":
        if self.hi is not None and hi > self.hi:
            raise ValueError(f"cannot extend precision from {self.hi} to {hi}")
        return LoopPoly(self.n, self.terms, hi)

    @staticmethod
    def _min_hi(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "LoopPoly") -> "LoopPoly":
        hi = self._min_hi(self.hi, other.hi)
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return LoopPoly(self.n, out, hi)

    def __neg__(self) -> "LoopPoly":
        return LoopPoly(self.n, {k: -p for k, p in self.terms.items()}, self.hi)

    def __sub__(self, other: "LoopPoly") -> "LoopPoly":
        return self + (-other)

    def scale(self, c) -> "LoopPoly":
        return LoopPoly(self.n, {k: p * c for k, p in self.terms.items()}, self.hi)

    def shift(self, k: int) -> "LoopPoly":
        return LoopPoly(self.n, {e + k: p for e, p in self.terms.items()},
                        None if self.hi is None else self.hi + k)

    def _valuation(self) -> int | None:
        """Lowest possibly-nonzero exponent; ``None`` for the exact zero series."""
        if self.terms:
            return min(self.terms)
        return None if self.hi is None else self.hi + 1

    def __mul__(self, other: "LoopPoly") -> "LoopPoly":
        va, vb = self._valuation(), other._valuation()
        if va is None or vb is None:
            return LoopPoly.zero(self.n)
        # a factor known up to hi times a series of valuation v is known up to hi + v
        his = []
        if self.hi is not None:
            his.append(self.hi + vb)
        if other.hi is not None:
            his.append(other.hi + va)
        hi = min(his) if his else None
        out: dict[int, Poly] = {}
        for k1, p1 in self.terms.items():
            for k2, p2 in other.terms.items():
                k = k1 + k2
                if hi is not None and k > hi:
                    continue
                out[k] = out[k] + p1 * p2 if k in out else p1 * p2
        return LoopPoly(self.n, out, hi)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopPoly):
            return NotImplemented
        return self.hi == other.hi and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        body = " + ".join(f"t^{k}*({p!r})" for k, p in sorted(self.terms.items()))
        return body if self.hi is None else f"{body} + O(t^{self.hi + 1})"


LoopMatrix = list  # list[list[LoopPoly]]


def loop_matmul(a: Sequence[Sequence[LoopPoly]], b: Sequence[Sequence[LoopPoly]]) -> LoopMatrix:
    n = a[0][0].n
    rows, inner, cols = len(a), len(b), len(b[0])
    if len(a[0]) != inner:
        raise ValueError("shape mismatch")
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            acc = LoopPoly.zero(n)
            for k in range(inner):
                if a[r][k].is_zero() or b[k][c].is_zero():
                    continue
                acc = acc + a[r][k] * b[k][c]
            row.append(acc)
        out.append(row)
    return out


def loop_identity(n: int, size: int) -> LoopMatrix:
    return [[LoopPoly.one(n) if r == c else LoopPoly.zero(n) for c in range(size)]
            for r in range(size)]


# polynomial matrices and determinants

class PolyMatrix:
    """A rectangular matrix of :class:`Poly` entries with optional row/column labels."""

    def __init__(self, n: int, rows: Sequence[Sequence[Poly]],
                 row_labels: Sequence | None = None, col_labels: Sequence | None = None):
        self.n = n
        self.rows = [list(r) for r in rows]
        width = len(self.rows[0]) if self.rows else len(col_labels or ())
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged matrix")
        self.ncols = width
        self.row_labels = list(row_labels) if row_labels is not None else list(range(len(self.rows)))
        self.col_labels = list(col_labels) if col_labels is not None else list(range(width))
        if len(self.row_labels) != len(self.rows) or len(self.col_labels) != width:
            raise ValueError("label count does not match matrix shape")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.n, [[self.rows[r][c] for c in cols] for r in rows],
                          [self.row_labels[r] for r in rows], [self.col_labels[c] for c in cols])

    def evaluate(self, assignment) -> list[list[Fraction]]:
        return [[p.eval_at(assignment) for p in row] for row in self.rows]

    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]


def _as_rows(m) -> list[list]:
    return m.rows if isinstance(m, PolyMatrix) else [list(r) for r in m]


def poly_det(m) -> Poly:
    """Determinant by fraction-free (Bareiss) elimination with exact division."""
    rows = _as_rows(m)
    n = m.n if isinstance(m, PolyMatrix) else rows[0][0].n
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if size == 0:
        return Poly.constant(n, 1)
    a = [list(r) for r in rows]
    sign = 1
    prev = Poly.constant(n, 1)
    for k in range(size - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, size) if not a[r][k].is_zero()), None)
            if swap is None:
                return Poly.zero(n)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * piv - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = Poly.zero(n)
        prev = piv
    det = a[size - 1][size - 1]
    return det if sign > 0 else -det


def cofactor_det(m):
    """Laplace expansion along the first row; entries may be ``Poly`` or ``Fraction``."""
    rows = _as_rows(m)
    size = len(rows)
    if size == 0:
        return Fraction(1)
    if size == 1:
        return rows[0][0]
    total = None
    for c in range(size):
        entry = rows[0][c]
        if not entry:
            continue
        minor = [r[:c] + r[c + 1:] for r in rows[1:]]
        term = entry * cofactor_det(minor)
        if c % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total


def permutation_det(m):
    """Leibniz formula; a slow reference for tiny matrices."""
    rows = _as_rows(m)
    size = len(rows)
    total = None
    for perm in permutations(range(size)):
        inv = sum(1 for a in range(size) for b in range(a + 1, size) if perm[a] > perm[b])
        term = None
        for r, c in enumerate(perm):
            term = rows[r][c] if term is None else term * rows[r][c]
        if term is None:
            term = Fraction(1)
        if inv % 2:
            term = -term
        total = term if total is None else total + term
    return total


def fraction_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a rational matrix by Gaussian elimination."""
    a = [[to_fraction(v) for v in r] for r in rows]
    size = len(a)
    det = Fraction(1)
    for k in range(size):
        piv = next((r for r in range(k, size) if a[r][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, size):
            f = a[i][k] * inv
            if f:
                for j in range(k, size):
                    a[i][j] -= f * a[k][j]
    return det


def fraction_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][c]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank
