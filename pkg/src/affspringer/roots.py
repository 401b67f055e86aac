"""Type A root data: finite and affine roots, dominance order on weights.

Indices are 1-based so that ``FiniteRoot(i, j)`` stands for ``e_i - e_j``.
Weights are plain integer tuples of length ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence


@dataclass(frozen=True, order=True)
class FiniteRoot:
    """The root ``e_i - e_j`` of ``gl_n`` (``i != j``)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise ValueError(f"invalid root e_{self.i} - e_{self.j}")

    @property
    def positive(self) -> bool:
        return self.i < self.j

    def __neg__(self) -> "FiniteRoot":
        return FiniteRoot(self.j, self.i)

    def pair(self, v: Sequence) -> object:
        """``<v, e_i - e_j>`` for a coordinate vector ``v``."""
        return v[self.i - 1] - v[self.j - 1]


@dataclass(frozen=True, order=True)
class AffineRoot:
    """``root + level * delta``; as an affine function ``lam -> <lam, root> + level``."""

    root: FiniteRoot
    level: int

    @property
    def positive(self) -> bool:
        return affine_root_positive(self)

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(-self.root, -self.level)

    def __call__(self, point: Sequence) -> object:
        return self.root.pair(point) + self.level


def positive_roots(n: int) -> list[FiniteRoot]:
    if n < 2:
        raise ValueError("rank n must be at least 2")
    return [FiniteRoot(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def simple_roots(n: int) -> list[FiniteRoot]:
    if n < 2:
        raise ValueError("rank n must be at least 2")
    return [FiniteRoot(i, i + 1) for i in range(1, n)]


def affine_root_positive(r: AffineRoot) -> bool:
    return r.level > 0 or (r.level == 0 and r.root.positive)


def fundamental_weight(n: int, i: int) -> tuple[int, ...]:
    """``omega_i = (1,..,1,0,..,0)`` with ``i`` ones; ``omega_0`` is the origin."""
    if not 0 <= i <= n:
        raise ValueError(f"no fundamental weight omega_{i} for n={n}")
    return (1,) * i + (0,) * (n - i)


def is_dominant(v: Sequence[int]) -> bool:
    return all(v[k] >= v[k + 1] for k in range(len(v) - 1))


def _check_pair(lam: Sequence[int], mu: Sequence[int]):
    if len(lam) != len(mu):
        raise ValueError(f"length mismatch: {len(lam)} != {len(mu)}")


def dominance_leq_star(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """Prefix-sum form: every partial sum of ``lam`` is at most that of ``mu``.

    Vectors with different totals are never comparable, since then
    ``mu - lam`` is not in the root lattice.
    """
    _check_pair(lam, mu)
    if sum(lam) != sum(mu):
        return False
    return all(a <= b for a, b in zip(accumulate(lam), accumulate(mu)))


def tail_count(lam: Sequence[int], r: int) -> int:
    """``sum_{j >= r} #{k : lam_k >= j}`` for a weakly decreasing ``lam``."""
    return sum(x - r + 1 for x in lam if x >= r)


def dominance_leq_dagger(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """Tail-count form of the dominance order, compared threshold by threshold.

    Only thresholds between the smallest entry and one past the largest need
    checking: below that both sides are affine in ``r`` with equal slope, above
    it both vanish.
    """
    _check_pair(lam, mu)
    if sum(lam) != sum(mu):
        return False
    if not lam:
        return True
    lo = min(min(lam), min(mu))
    hi = max(max(lam), max(mu)) + 1
    return all(tail_count(lam, r) <= tail_count(mu, r) for r in range(lo, hi + 1))
