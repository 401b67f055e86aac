"""Brute-force membership test in attracting neighbourhoods.

A point ``g`` of the affine flag variety is the chain of lattices
``g V_i`` with ``V_i = <e_1..e_i, t e_{i+1}..t e_n>_O`` (``i = 0..n-1``).
It lies in the attracting neighbourhood ``U_y`` exactly when
``g V_i`` meets ``y N_i`` only in zero for every ``i``, where
``N_i = <t^{-1} e_1..t^{-1} e_i, e_{i+1}..e_n>`` over ``C[t^{-1}]``.

Lattices are stored through exact generators (vectors of Laurent polynomials
with rational coefficients).  Intersections are decided in a finite window of
degrees ``[lo, P]``: once ``t^P O^n`` lies inside the lattice, a nonzero
intersection always has a nonzero truncation in the window, so comparing the
rank of the two truncated spans with the sum of their ranks is exact.

Nothing here goes through the block matrices or determinants.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .springer import SpectralParameters, box_matrix
from .weyl import AffineWeylElement, bruhat_interval_below, in_fundamental_box, w0

# a vector is a tuple of n dicts {degree: coefficient}
Vector = tuple


class PrecisionError(ValueError):
    """The truncation window is too small or the verdict changed with it."""


def _clean(d: Mapping[int, Fraction]) -> dict[int, Fraction]:
    return {k: v for k, v in d.items() if v}


def _vector_valuation(v: Vector) -> int | None:
    degs = [k for coord in v for k in coord]
    return min(degs) if degs else None


def _shift(v: Vector, q: int) -> Vector:
    return tuple({k + q: c for k, c in coord.items()} for coord in v)


def _rank(rows: list[list[Fraction]]) -> int:
    """Rank over the rationals by plain row reduction."""
    rows = [list(r) for r in rows if any(r)]
    rank, col = 0, 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col] / p[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], p)]
        rank += 1
        col += 1
    return rank


@dataclass
class Lattice:
    """The O-span of finitely many generators."""
    n: int
    generators: list[Vector]

    @property
    def valuation(self) -> int:
        vals = [_vector_valuation(g) for g in self.generators]
        return min(v for v in vals if v is not None)

    def truncated_span(self, lo: int, hi: int) -> list[list[Fraction]]:
        """Coordinates of ``t^q g`` (``q >= 0``) in the window of degrees ``[lo, hi]``."""
        index = {(j, k): j * (hi - lo + 1) + (k - lo) for j in range(self.n) for k in range(lo, hi + 1)}
        rows = []
        for g in self.generators:
            val = _vector_valuation(g)
            if val is None:
                continue
            for q in range(0, hi - val + 1):
                row = [Fraction(0)] * len(index)
                for j, coord in enumerate(g):
                    for k, c in coord.items():
                        if lo <= k + q <= hi:
                            row[index[(j, k + q)]] = c
                rows.append(row)
        return rows

    def contains_power(self, p: int) -> bool:
        """Whether ``t^p O^n`` lies in the lattice."""
        lo = min(self.valuation, p)
        span = self.truncated_span(lo, p)
        width = len(span[0]) if span else self.n * (p - lo + 1)
        base = _rank(span)
        extra = []
        for j in range(self.n):
            row = [Fraction(0)] * width
            row[j * (p - lo + 1) + (p - lo)] = Fraction(1)
            extra.append(row)
        return _rank(span + extra) == base

    def contains(self, other: "Lattice", precision: int) -> bool:
        if not self.contains_power(precision):
            raise PrecisionError(f"t^{precision} O^n is not inside the lattice")
        lo = min(self.valuation, other.valuation)
        mine = self.truncated_span(lo, precision)
        theirs = other.truncated_span(lo, precision)
        return _rank(mine + theirs) == _rank(mine)


@dataclass
class LatticeChain:
    """``g V_0 ⊂ g V_1 ⊂ .. ⊂ g V_{n-1} ⊂ t^{-1} g V_0``."""
    n: int
    lattices: list[Lattice]
    precision: int
    label: dict = field(default_factory=dict)

    def containments_hold(self) -> bool:
        chain = self.lattices + [Lattice(self.n, [_shift(g, -1) for g in self.lattices[0].generators])]
        p = self.precision
        return all(chain[i + 1].contains(chain[i], p) for i in range(self.n))

    def t_stable(self) -> bool:
        """``t V_{n-1} ⊂ V_0``, the closing condition of the chain."""
        top = Lattice(self.n, [_shift(g, 1) for g in self.lattices[-1].generators])
        return self.lattices[0].contains(top, self.precision)

    def gamma_stable(self, s: SpectralParameters) -> bool:
        """``(t s) g V_i ⊂ g V_i`` for every ``i``."""
        for lat in self.lattices:
            image = Lattice(self.n, [tuple({k + 1: c * s[j + 1] for k, c in coord.items()}
                                           for j, coord in enumerate(g)) for g in lat.generators])
            if not lat.contains(image, self.precision):
                return False
        return True


def base_generators(n: int, i: int) -> list[Vector]:
    """Generators of ``V_i``: ``e_1..e_i`` and ``t e_{i+1}..t e_n``."""
    out = []
    for k in range(n):
        deg = 0 if k < i else 1
        out.append(tuple({deg: Fraction(1)} if j == k else {} for j in range(n)))
    return out


def apply_element(w: AffineWeylElement, v: Vector) -> Vector:
    """``w = wbar t^mu`` sends ``t^q e_k`` to ``t^{q - mu_k} e_{wbar(k)}``."""
    n = w.n
    out: list[dict] = [{} for _ in range(n)]
    for k, coord in enumerate(v):
        target = w.perm[k] - 1
        out[target] = {q - w.trans[k]: c for q, c in coord.items()}
    return tuple(out)


def apply_matrix(mat: Sequence[Sequence[Mapping[int, Fraction]]], v: Vector) -> Vector:
    """Multiply by a matrix of Laurent polynomials given as degree dictionaries."""
    n = len(v)
    out = []
    for j in range(n):
        acc: dict[int, Fraction] = {}
        for k in range(n):
            for a, ca in mat[j][k].items():
                for b, cb in v[k].items():
                    acc[a + b] = acc.get(a + b, Fraction(0)) + ca * cb
        out.append(_clean(acc))
    return tuple(out)


def evaluated_box_matrix(n: int, assignment: Mapping[tuple[int, int], Fraction],
                         s: SpectralParameters) -> list[list[dict[int, Fraction]]]:
    springer = box_matrix(n, s)
    out = []
    for row in springer.entries:
        out.append([_clean({k: p.eval_at(assignment) for k, p in entry.terms.items()}) for entry in row])
    return out


def default_precision(x: AffineWeylElement) -> int:
    verts = x.vertex_images()
    return max(max(v) - min(v) for v in verts) + 2


def chain_of_point(matrix, x: AffineWeylElement, precision: int | None = None,
                   label: dict | None = None) -> LatticeChain:
    n = x.n
    p = default_precision(x) if precision is None else precision
    lattices = []
    for i in range(n):
        gens = [apply_element(x, g) for g in base_generators(n, i)]
        if matrix is not None:
            gens = [apply_matrix(matrix, g) for g in gens]
        lattices.append(Lattice(n, gens))
    return LatticeChain(n, lattices, p, label or {})


def lattice_chain_from_A(x: AffineWeylElement, assignment: Mapping[tuple[int, int], Fraction],
                         s: SpectralParameters, precision: int | None = None) -> LatticeChain:
    """The point ``M^{w_F}(A) x`` of the component indexed by ``x``."""
    if not in_fundamental_box(x):
        raise ValueError(f"{x} is not in the fundamental box")
    mat = evaluated_box_matrix(x.n, assignment, s)
    return chain_of_point(mat, x, precision, {"x": x.encode()})


def fixed_point_chain(z: AffineWeylElement, precision: int | None = None) -> LatticeChain:
    """The torus fixed point ``z`` itself."""
    return chain_of_point(None, z, precision, {"fixed": z.encode()})


def opposite_module_basis(y: AffineWeylElement, i: int, lo: int, hi: int) -> list[Vector]:
    """Basis of ``y N_i`` in degrees ``[lo, hi]``, images of ``t^k e_m`` with ``k <= -(omega_i)_m``."""
    n = y.n
    out = []
    for m in range(n):
        top = -1 if m < i else 0
        # y (t^k e_m) = t^{k - mu_m} e_{ybar(m)}
        target, shift = y.perm[m] - 1, -y.trans[m]
        for k in range(lo - shift, min(top, hi - shift) + 1):
            out.append(tuple({k + shift: Fraction(1)} if j == target else {} for j in range(n)))
    return out


def _meets_trivially(lat: Lattice, y: AffineWeylElement, i: int, precision: int) -> bool:
    if not lat.contains_power(precision):
        raise PrecisionError(f"precision {precision} does not reach the conductor of the lattice")
    lo = lat.valuation
    mine = lat.truncated_span(lo, precision)
    basis = opposite_module_basis(y, i, lo, precision)
    if not basis:
        return True
    width = lat.n * (precision - lo + 1)
    theirs = []
    for b in basis:
        row = [Fraction(0)] * width
        for j, coord in enumerate(b):
            for k, c in coord.items():
                row[j * (precision - lo + 1) + (k - lo)] = c
        theirs.append(row)
    return _rank(mine + theirs) == _rank(mine) + len(theirs)


def in_attracting_nbhd(chain: LatticeChain, y: AffineWeylElement, precision: int | None = None,
                       recheck: bool = True) -> bool:
    """Whether the chain lies in ``U_y``; rechecked at ``P + 1`` and ``2P``."""
    p = chain.precision if precision is None else precision

    def verdict(q: int) -> bool:
        return all(_meets_trivially(lat, y, i, q) for i, lat in enumerate(chain.lattices))

    first = verdict(p)
    if recheck:
        for q in (p + 1, 2 * p):
            if verdict(q) != first:
                raise PrecisionError(f"verdict for {y} changed between precision {p} and {q}")
    return first


def random_assignment(n: int, rng: random.Random, bound: int = 1000) -> dict[tuple[int, int], Fraction]:
    return {(j, i): Fraction(rng.randint(-bound, bound))
            for i in range(1, n + 1) for j in range(i + 1, n + 1)}


def trial_rng(seed: int, x: AffineWeylElement, y: AffineWeylElement, trial: int) -> random.Random:
    """Generator split per task so results do not depend on scheduling."""
    return random.Random(f"oracle|{seed}|{x.encode()}|{y.encode()}|{trial}")


@dataclass
class SampleResult:
    member: bool
    trial: int | None  # first successful trial, 1-based
    assignment: dict | None


def membership_sample_detail(x: AffineWeylElement, y: AffineWeylElement, s: SpectralParameters,
                             trials: int = 5, seed: int = 0, precision: int | None = None,
                             recheck: bool = True) -> SampleResult:
    for t in range(trials):
        assignment = random_assignment(x.n, trial_rng(seed, x, y, t))
        chain = lattice_chain_from_A(x, assignment, s, precision)
        if in_attracting_nbhd(chain, y, recheck=recheck):
            return SampleResult(True, t + 1, assignment)
    return SampleResult(False, None, None)


def membership_sample(x, y, s, trials: int = 5, seed: int = 0, precision: int | None = None) -> bool:
    """One-sided: ``True`` proves that ``y`` is in the closure of the component."""
    return membership_sample_detail(x, y, s, trials, seed, precision).member


def orbit_closure_fixed_points(x: AffineWeylElement) -> frozenset:
    """The outer bound ``{y <= w0 x}``."""
    if not in_fundamental_box(x):
        raise ValueError(f"{x} is not in the fundamental box")
    return bruhat_interval_below(w0(x.n) * x)


def oracle_fixed_points(x: AffineWeylElement, s: SpectralParameters, trials: int = 5,
                        seed: int = 0) -> set:
    """Sampled fixed points among the outer bound."""
    return {y for y in orbit_closure_fixed_points(x) if membership_sample(x, y, s, trials, seed)}


def conjugated_membership(x: AffineWeylElement, y: AffineWeylElement, z: AffineWeylElement,
                          s: SpectralParameters, trials: int = 5, seed: int = 0) -> bool:
    """Sampled membership of ``z y`` through the fiber of the conjugated parameters.

    A point ``g`` of the component of ``x`` for ``z^{-1} s z`` is translated to
    ``z g``, which must be stable under ``t s``; the result is whether some
    translated point lies in ``U_{z y}``.
    """
    conj = s.permuted(z)
    for t in range(trials):
        assignment = random_assignment(x.n, trial_rng(seed, x, z * y, t))
        base = lattice_chain_from_A(x, assignment, conj)
        moved = LatticeChain(x.n, [Lattice(x.n, [apply_element(z, g) for g in lat.generators])
                                   for lat in base.lattices], base.precision + 2)
        if not moved.gamma_stable(s):
            raise AssertionError(f"translated point is not stable under t*s for z={z}")
        if in_attracting_nbhd(moved, z * y):
            return True
    return False


__all__ = [
    "Lattice", "LatticeChain", "PrecisionError", "SampleResult", "apply_element", "apply_matrix",
    "base_generators", "chain_of_point", "conjugated_membership", "default_precision",
    "evaluated_box_matrix", "fixed_point_chain", "in_attracting_nbhd",
    "lattice_chain_from_A", "membership_sample", "membership_sample_detail",
    "orbit_closure_fixed_points", "oracle_fixed_points", "random_assignment", "trial_rng",
]
