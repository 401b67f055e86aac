"""Explicit parametrisation of the open part of a component.

For ``w`` a minimal coset representative the lower unitriangular matrix
``M^w`` has entries

    M^w_{ji} = sum over chains i = i_1 < ... < i_k = j of
               c(i_1..i_k) * prod_l t^{a_{i_{l+1} i_l}} A_{i_{l+1} i_l},

and ``(M^w)^{-1} (t s) M^w`` lies in the Lie algebra of ``w B w^{-1}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import (LoopPoly, Poly, PolyMatrix, loop_identity, loop_matmul, to_fraction)
from .roots import AffineRoot, FiniteRoot
from .weyl import AffineWeylElement, is_min_coset_rep, longest_box_element

C_PRIME_READINGS = ("first", "literal")


@dataclass(frozen=True)
class SpectralParameters:
    s: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(to_fraction(v) for v in self.s)
        object.__setattr__(self, "s", vals)
        if len(set(vals)) != len(vals):
            raise ValueError(f"spectral parameters {vals} are not pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.s)

    def __getitem__(self, i: int) -> Fraction:
        """1-based access ``s_i``."""
        return self.s[i - 1]

    def permuted(self, z: AffineWeylElement) -> "SpectralParameters":
        """Spectral parameters of ``z^{-1} s z`` for a finite Weyl element ``z``."""
        return SpectralParameters(z.unpermute(self.s))

    def encode(self) -> list[str]:
        return [f"{v.numerator}/{v.denominator}" for v in self.s]


def default_spectral(n: int) -> SpectralParameters:
    """``(0, 1, 3, 7, 15, ...)``."""
    return SpectralParameters(tuple(Fraction(2 ** k - 1) for k in range(n)))


def random_spectral(n: int, rng: random.Random, bound: int = 1000) -> SpectralParameters:
    while True:
        vals = tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 50)) for _ in range(n))
        if len(set(vals)) == n:
            return SpectralParameters(vals)


# exponents and chain constants

def a_exponent(w: AffineWeylElement, j: int, i: int) -> int:
    """Smallest ``k`` with ``w^{-1}(e_j - e_i) + (k+1) delta`` positive (``i < j``).

    For ``w`` in the dominant chamber this is ``floor <lam, e_i - e_j>`` on ``w A_0``,
    the largest ``k`` with ``w^{-1}(e_i - e_j) - k delta`` still positive.
    """
    if not i < j:
        raise ValueError("need i < j")
    r = w.inverse_act_on_affine_root(AffineRoot(FiniteRoot(j, i), 0))
    first_positive = 0 if r.root.positive else 1
    return first_positive - r.level - 1


def exponent_table(w: AffineWeylElement) -> dict[tuple[int, int], int]:
    n = w.n
    return {(j, i): a_exponent(w, j, i) for i in range(1, n + 1) for j in range(i + 1, n + 1)}


def increasing_chains(i: int, j: int):
    """All chains ``i = i_1 < ... < i_k = j``."""
    if i == j:
        yield (i,)
        return
    inner = range(i + 1, j)
    for size in range(len(inner) + 1):
        for mid in combinations(inner, size):
            yield (i, *mid, j)


def chain_constant_c(chain: Sequence[int], s: SpectralParameters) -> Fraction:
    out = Fraction(1)
    last = chain[-1]
    for a, b in zip(chain, chain[1:]):
        out *= (s[a] - s[b]) / (s[a] - s[last])
    return out


def chain_constant_c_prime(chain: Sequence[int], s: SpectralParameters,
                           reading: str = "first") -> Fraction:
    """Constants of the inverse matrix.

    ``reading="first"`` uses ``s_{i_1}`` in every denominator; ``"literal"``
    uses ``s_1``.  Only the first one inverts ``M`` (see :func:`resolve_c_prime_reading`).
    """
    if reading not in C_PRIME_READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    base = s[chain[0]] if reading == "first" else s[1]
    out = Fraction(-1) ** (len(chain) - 1)
    for a, b in zip(chain, chain[1:]):
        out *= (s[a] - s[b]) / (base - s[b])
    return out


def orthogonality_sum(chain: Sequence[int], s: SpectralParameters, weighted: bool = False,
                      reading: str = "first") -> Fraction:
    """``sum_l c(i_1..i_l) [s_{i_l}] c'(i_l..i_k)``."""
    total = Fraction(0)
    for l in range(len(chain)):
        term = chain_constant_c(chain[:l + 1], s) * chain_constant_c_prime(chain[l:], s, reading)
        if weighted:
            term *= s[chain[l]]
        total += term
    return total


# matrices

@dataclass
class SpringerMatrix:
    w: AffineWeylElement
    s: SpectralParameters
    entries: list  # n x n LoopPoly, lower unitriangular
    exponents: dict

    @property
    def n(self) -> int:
        return self.w.n

    def __getitem__(self, ji):
        j, i = ji
        return self.entries[j - 1][i - 1]


def _chain_matrix(exps: dict, s: SpectralParameters, constant) -> list:
    n = s.n
    mat = loop_identity(n, n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            terms: dict[int, Poly] = {}
            for chain in increasing_chains(i, j):
                c = constant(chain)
                if not c:
                    continue
                tpow = 0
                mono = Poly.constant(n, c)
                for a, b in zip(chain, chain[1:]):
                    tpow += exps[(b, a)]
                    mono = mono * Poly.var(n, b, a)
                terms[tpow] = terms[tpow] + mono if tpow in terms else mono
            mat[j - 1][i - 1] = LoopPoly(n, terms)
    return mat


def _check_dominant(w: AffineWeylElement):
    if not is_min_coset_rep(w):
        raise ValueError(f"{w} is not a minimal coset representative")


def build_M(w: AffineWeylElement, s: SpectralParameters) -> SpringerMatrix:
    _check_dominant(w)
    if s.n != w.n:
        raise ValueError("rank mismatch")
    exps = exponent_table(w)
    return SpringerMatrix(w, s, _chain_matrix(exps, s, lambda ch: chain_constant_c(ch, s)), exps)


def build_M_inverse(w: AffineWeylElement, s: SpectralParameters,
                    reading: str = "first") -> SpringerMatrix:
    _check_dominant(w)
    exps = exponent_table(w)
    entries = _chain_matrix(exps, s, lambda ch: chain_constant_c_prime(ch, s, reading))
    return SpringerMatrix(w, s, entries, exps)


def unitriangular_inverse(mat: Sequence[Sequence[LoopPoly]]) -> list:
    """Inverse of a lower unitriangular matrix by forward substitution."""
    size = len(mat)
    n = mat[0][0].n
    inv = loop_identity(n, size)
    for i in range(size):
        for j in range(i + 1, size):
            acc = LoopPoly.zero(n)
            for m in range(i, j):
                if mat[j][m].is_zero() or inv[m][i].is_zero():
                    continue
                acc = acc + mat[j][m] * inv[m][i]
            inv[j][i] = -acc
    return inv


def is_identity_matrix(mat) -> bool:
    n = mat[0][0].n
    one = LoopPoly.one(n)
    return all((entry == one) if r == c else entry.is_zero()
               for r, row in enumerate(mat) for c, entry in enumerate(row))


def resolve_c_prime_reading(n: int, spectral: Sequence[SpectralParameters]) -> str | None:
    """The reading of the inverse constants for which ``M M^{-1} = I`` holds for all inputs.

    Checked with ``w = identity`` at every given set of spectral parameters.
    """
    w = AffineWeylElement.identity(n)
    passing = []
    for reading in C_PRIME_READINGS:
        ok = True
        for s in spectral:
            m = build_M(w, s).entries
            minv = build_M_inverse(w, s, reading).entries
            if not (is_identity_matrix(loop_matmul(m, minv))
                    and is_identity_matrix(loop_matmul(minv, m))):
                ok = False
                break
        if ok:
            passing.append(reading)
    return passing[0] if passing else None


class ConjugationError(AssertionError):
    pass


def conjugate_ts(w: AffineWeylElement, s: SpectralParameters, check: bool = True) -> list:
    """``(M^w)^{-1} (t s) M^w``, checked entry by entry when ``check`` is set."""
    n = w.n
    m = build_M(w, s)
    minv = build_M_inverse(w, s)
    ts = [[LoopPoly.monomial(n, 1, Poly.constant(n, s[r + 1])) if r == c else LoopPoly.zero(n)
           for c in range(n)] for r in range(n)]
    out = loop_matmul(minv.entries, loop_matmul(ts, m.entries))
    if not check:
        return out
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            entry = out[j - 1][i - 1]
            if j == i:
                expected = LoopPoly.monomial(n, 1, Poly.constant(n, s[i]))
            elif j > i:
                expected = LoopPoly.monomial(
                    n, m.exponents[(j, i)] + 1, Poly.var(n, j, i) * (s[j] - s[i]))
            else:
                expected = LoopPoly.zero(n)
            if entry != expected:
                raise ConjugationError(f"entry ({j},{i}) is {entry!r}, expected {expected!r}")
            if j != i:
                for level in entry.terms:
                    root = AffineRoot(FiniteRoot(j, i), level)
                    if not w.inverse_act_on_affine_root(root).positive:
                        raise ConjugationError(
                            f"entry ({j},{i}) at t^{level} leaves the conjugated Iwahori")
    return out


def t_coefficient_matrix(M: SpringerMatrix, k: int) -> PolyMatrix:
    n = M.n
    if k < 0:
        raise ValueError("t-exponent must be nonnegative")
    return PolyMatrix(n, [[M.entries[r][c].coefficient(k) for c in range(n)] for r in range(n)])


def box_coefficient_closed_form(n: int, s: SpectralParameters, k: int, j: int, i: int) -> Poly:
    """``t^k`` coefficient of ``M^{w_F}_{ji}``: chains from ``i`` to ``j`` with ``j - i - k`` steps."""
    if j < i:
        return Poly.zero(n)
    if j == i:
        return Poly.constant(n, 1 if k == 0 else 0)
    steps = j - i - k
    if steps < 1:
        return Poly.zero(n)
    out = Poly.zero(n)
    for mid in combinations(range(i + 1, j), steps - 1):
        chain = (i, *mid, j)
        term = Poly.constant(n, chain_constant_c(chain, s))
        for a, b in zip(chain, chain[1:]):
            term = term * Poly.var(n, b, a)
        out = out + term
    return out


def box_matrix(n: int, s: SpectralParameters) -> SpringerMatrix:
    return build_M(longest_box_element(n), s)
