"""The affine Weyl group ``W = S_n x| Q^vee`` of type ``A_{n-1}``.

An element ``w = wbar * t^mu`` acts on weights by ``lam -> wbar(lam + mu)``
and on affine roots (viewed as affine functions) by precomposition, so that

    w^{-1}(alpha + k delta) = wbar^{-1}(alpha) + (k + <mu, wbar^{-1}(alpha)>) delta.

``perm`` stores ``wbar`` in one-line notation with 1-based values
(``perm[k-1] = wbar(k)``); ``wbar`` permutes coordinates by sending
``e_k`` to ``e_{wbar(k)}``.  Simple reflections are ``s_1 .. s_{n-1}``
(adjacent transpositions) and ``s_0``, the reflection in ``<lam, e_1 - e_n> = 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from .roots import (AffineRoot, FiniteRoot, dominance_leq_star, fundamental_weight,
                    is_dominant, simple_roots)


@dataclass(frozen=True, order=True)
class AffineWeylElement:
    perm: tuple[int, ...]
    trans: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation: {self.perm}")
        if len(self.trans) != n:
            raise ValueError("translation has the wrong length")
        if sum(self.trans) != 0:
            raise ValueError(f"translation {self.trans} is not in the coroot lattice")

    @property
    def n(self) -> int:
        return len(self.perm)

    # constructors

    @classmethod
    def identity(cls, n: int) -> "AffineWeylElement":
        return cls(tuple(range(1, n + 1)), (0,) * n)

    @classmethod
    def translation(cls, mu: Sequence[int]) -> "AffineWeylElement":
        n = len(mu)
        return cls(tuple(range(1, n + 1)), tuple(mu))

    @classmethod
    def finite(cls, perm: Sequence[int]) -> "AffineWeylElement":
        return cls(tuple(perm), (0,) * len(perm))

    @classmethod
    def simple_reflection(cls, n: int, i: int) -> "AffineWeylElement":
        if n < 2 or not 0 <= i < n:
            raise ValueError(f"no simple reflection s_{i} for n={n}")
        if i == 0:
            perm = list(range(1, n + 1))
            perm[0], perm[-1] = n, 1
            trans = [0] * n
            trans[0], trans[-1] = -1, 1
            return cls(tuple(perm), tuple(trans))
        perm = list(range(1, n + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return cls.finite(perm)

    @classmethod
    def from_word(cls, n: int, word: Iterable[int]) -> "AffineWeylElement":
        w = cls.identity(n)
        for i in word:
            w = w * cls.simple_reflection(n, i)
        return w

    # group structure

    def permute(self, v: Sequence) -> tuple:
        """``wbar(v)``: the entry at position ``k`` moves to position ``wbar(k)``."""
        out = [None] * self.n
        for k, p in enumerate(self.perm):
            out[p - 1] = v[k]
        return tuple(out)

    def unpermute(self, v: Sequence) -> tuple:
        """``wbar^{-1}(v)``."""
        return tuple(v[p - 1] for p in self.perm)

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        if not isinstance(other, AffineWeylElement):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("rank mismatch")
        perm = tuple(self.perm[q - 1] for q in other.perm)
        shifted = other.unpermute(self.trans)
        return AffineWeylElement(perm, tuple(a + b for a, b in zip(shifted, other.trans)))

    def inverse(self) -> "AffineWeylElement":
        inv = [0] * self.n
        for k, p in enumerate(self.perm):
            inv[p - 1] = k + 1
        return AffineWeylElement(tuple(inv), tuple(-c for c in self.permute(self.trans)))

    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, self.n + 1)) and not any(self.trans)

    def finite_part(self) -> "AffineWeylElement":
        return AffineWeylElement.finite(self.perm)

    # actions

    def act_on_vertex(self, v: Sequence) -> tuple:
        if len(v) != self.n:
            raise ValueError("vector has the wrong length")
        return self.permute([a + b for a, b in zip(v, self.trans)])

    def inverse_act_on_affine_root(self, r: AffineRoot) -> AffineRoot:
        """``w^{-1}(r)``."""
        inv = self.inverse().perm
        root = FiniteRoot(inv[r.root.i - 1], inv[r.root.j - 1])
        return AffineRoot(root, r.level + root.pair(self.trans))

    def act_on_affine_root(self, r: AffineRoot) -> AffineRoot:
        return self.inverse().inverse_act_on_affine_root(r)

    def vertex_images(self) -> list[tuple[int, ...]]:
        """``[w(omega_0), .., w(omega_{n-1})]`` with ``omega_0 = 0``."""
        return [self.act_on_vertex(fundamental_weight(self.n, i)) for i in range(self.n)]

    def scaled_barycenter(self) -> tuple[int, ...]:
        """``n * w(p)`` for the interior point ``p = (n-1, .., 1, 0)/n`` of ``A_0``."""
        n = self.n
        return self.permute([n - 1 - k + n * m for k, m in enumerate(self.trans)])

    # text encoding

    def encode(self) -> str:
        return (f"perm=[{','.join(map(str, self.perm))}];"
                f"trans=[{','.join(map(str, self.trans))}]")

    def __str__(self) -> str:
        return self.encode()


_CANON = re.compile(r"^\s*perm=\[([-\d,\s]*)\]\s*;\s*trans=\[([-\d,\s]*)\]\s*$")


def parse_element(text: str, n: int | None = None) -> AffineWeylElement:
    """Parse ``perm=[..];trans=[..]`` or a word like ``"s0 s1 s2"`` (``n`` required)."""
    m = _CANON.match(text)
    if m:
        perm = tuple(int(c) for c in m.group(1).split(",") if c.strip())
        trans = tuple(int(c) for c in m.group(2).split(",") if c.strip())
        w = AffineWeylElement(perm, trans)
        if n is not None and w.n != n:
            raise ValueError(f"element has rank {w.n}, expected {n}")
        return w
    tokens = text.replace(",", " ").split()
    if all(re.fullmatch(r"s\d+", tok) for tok in tokens):
        if n is None:
            raise ValueError("a reduced word needs an explicit rank n")
        return AffineWeylElement.from_word(n, (int(tok[1:]) for tok in tokens))
    raise ValueError(f"cannot parse affine Weyl element: {text!r}")


# length and reduced words

def length(w: AffineWeylElement) -> int:
    """Number of affine hyperplanes separating ``A_0`` from ``w A_0``."""
    n = w.n
    q = w.scaled_barycenter()
    return sum(abs((q[i] - q[j]) // n) for i in range(n) for j in range(i + 1, n))


def separating_hyperplanes(w: AffineWeylElement) -> list[AffineRoot]:
    """Positive affine roots ``beta`` with ``beta < 0`` on ``w A_0``."""
    n = w.n
    q = w.scaled_barycenter()
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            m = (q[i - 1] - q[j - 1]) // n
            root = FiniteRoot(i, j)
            # <lam, e_i - e_j> lies in (m, m+1) on w A_0
            if m > 0:
                out.extend(AffineRoot(-root, k) for k in range(1, m + 1))
            elif m < 0:
                out.extend(AffineRoot(root, k) for k in range(0, -m))
    return out


def reflection(n: int, beta: AffineRoot) -> AffineWeylElement:
    """The reflection ``lam -> lam - beta(lam) alpha`` in the hyperplane ``beta = 0``."""
    i, j = beta.root.i, beta.root.j
    perm = list(range(1, n + 1))
    perm[i - 1], perm[j - 1] = j, i
    mu = [0] * n
    mu[i - 1], mu[j - 1] = beta.level, -beta.level
    return AffineWeylElement(tuple(perm), tuple(mu))


def bruhat_interval_by_reflections(w: AffineWeylElement) -> frozenset[AffineWeylElement]:
    """Downward closure of ``w`` under ``u -> t u`` with ``t`` a reflection in a hyperplane
    separating ``A_0`` from ``u A_0`` (each such step lowers the length)."""
    seen = {w}
    todo = [w]
    while todo:
        u = todo.pop()
        for beta in separating_hyperplanes(u):
            v = reflection(w.n, beta) * u
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return frozenset(seen)


@lru_cache(maxsize=None)
def reduced_word(w: AffineWeylElement) -> tuple[int, ...]:
    word = []
    cur = w
    ell = length(cur)
    while ell:
        for i in range(w.n):
            nxt = cur * AffineWeylElement.simple_reflection(w.n, i)
            if length(nxt) < ell:
                word.append(i)
                cur, ell = nxt, ell - 1
                break
        else:  # pragma: no cover - every nonidentity element has a descent
            raise AssertionError(f"no right descent found for {cur}")
    return tuple(reversed(word))


@lru_cache(maxsize=None)
def bruhat_interval_below(w: AffineWeylElement) -> frozenset[AffineWeylElement]:
    """All products of subwords of a reduced word of ``w``."""
    n = w.n
    reached = {AffineWeylElement.identity(n)}
    for i in reduced_word(w):
        s = AffineWeylElement.simple_reflection(n, i)
        reached |= {u * s for u in reached}
    return frozenset(reached)


def bruhat_leq(y: AffineWeylElement, w: AffineWeylElement) -> bool:
    """Subword criterion."""
    if y.n != w.n:
        raise ValueError("rank mismatch")
    if length(y) > length(w):
        return False
    return y in bruhat_interval_below(w)


# minimal coset representatives and the fundamental box

def is_min_coset_rep(w: AffineWeylElement) -> bool:
    """``w^{-1}(alpha_i) > 0`` for every finite simple root."""
    return all(w.inverse_act_on_affine_root(AffineRoot(a, 0)).positive
               for a in simple_roots(w.n))


def is_min_coset_rep_by_vertices(w: AffineWeylElement) -> bool:
    """``w A_0`` lies in the dominant chamber."""
    return all(is_dominant(v) for v in w.vertex_images())


def in_fundamental_box(w: AffineWeylElement) -> bool:
    if not is_min_coset_rep(w):
        return False
    return all(w.inverse_act_on_affine_root(AffineRoot(-a, 1)).positive
               for a in simple_roots(w.n))


def in_fundamental_box_by_vertices(w: AffineWeylElement) -> bool:
    return all(all(v[k] - v[k + 1] in (0, 1) for k in range(w.n - 1))
               for v in w.vertex_images())


def bruhat_leq_fw(y: AffineWeylElement, w: AffineWeylElement) -> bool:
    """Vertex-wise dominance comparison, valid on minimal coset representatives."""
    if y.n != w.n:
        raise ValueError("rank mismatch")
    for u in (y, w):
        if not is_min_coset_rep(u):
            raise ValueError(f"{u} is not a minimal coset representative")
    return all(dominance_leq_star(a, b) for a, b in zip(y.vertex_images(), w.vertex_images()))


def translations_in_window(n: int, c: int) -> Iterable[tuple[int, ...]]:
    for head in product(range(-c, c + 1), repeat=n - 1):
        last = -sum(head)
        if -c <= last <= c:
            yield head + (last,)


def _scan_box(n: int, c: int) -> list[AffineWeylElement]:
    found = []
    for mu in translations_in_window(n, c):
        # w(0) = wbar(mu) must be dominant with steps 0 or 1
        srt = sorted(mu, reverse=True)
        if any(srt[k] - srt[k + 1] > 1 for k in range(n - 1)):
            continue
        for perm in permutations(range(1, n + 1)):
            w = AffineWeylElement(perm, mu)
            if in_fundamental_box(w):
                found.append(w)
    return sorted(found)


def scan_window(n: int, predicate, start: int = 2, max_window: int = 64) -> tuple[list, int]:
    """Scan translations in ``[-c, c]``, doubling ``c`` until the result repeats twice.

    Returns the stable result and the final window.
    """
    c = start
    history = []
    while c <= max_window:
        found = predicate(n, c)
        history.append(found)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return found, c
        c *= 2
    raise RuntimeError(f"window scan did not stabilise up to c={max_window}")


@lru_cache(maxsize=None)
def _enumerate_F(n: int) -> tuple[AffineWeylElement, ...]:
    found, _ = scan_window(n, _scan_box)
    return tuple(found)


def enumerate_F(n: int) -> list[AffineWeylElement]:
    """The alcoves of the fundamental box, sorted by (length, element)."""
    if n < 2:
        raise ValueError("rank n must be at least 2")
    return sorted(_enumerate_F(n), key=lambda w: (length(w), w))


@lru_cache(maxsize=None)
def longest_box_element(n: int) -> AffineWeylElement:
    box = enumerate_F(n)
    top = max(length(w) for w in box)
    longest = [w for w in box if length(w) == top]
    if len(longest) != 1:
        raise AssertionError(f"fundamental box has {len(longest)} longest elements")
    wf = longest[0]
    for x in box:
        z = x.inverse() * wf
        if length(wf) != length(x) + length(z):
            raise AssertionError(f"{wf} does not factor through {x} with additive length")
    return wf


def w0(n: int) -> AffineWeylElement:
    return AffineWeylElement.finite(tuple(range(n, 0, -1)))


def finite_weyl_group(n: int) -> list[AffineWeylElement]:
    return [AffineWeylElement.finite(p) for p in permutations(range(1, n + 1))]


def min_coset_rep(w: AffineWeylElement) -> AffineWeylElement:
    """The minimal-length element of ``W_f w``: sort the barycenter to be dominant."""
    q = w.scaled_barycenter()
    order = sorted(range(w.n), key=lambda k: -q[k])
    # z moves coordinate order[r] to position r
    perm = [0] * w.n
    for r, k in enumerate(order):
        perm[k] = r + 1
    return AffineWeylElement.finite(perm) * w


def elements_up_to_length(n: int, max_length: int) -> list[AffineWeylElement]:
    """All elements of length at most ``max_length`` (breadth-first over simple reflections)."""
    gens = [AffineWeylElement.simple_reflection(n, i) for i in range(n)]
    layer = {AffineWeylElement.identity(n)}
    seen = set(layer)
    for _ in range(max_length):
        nxt = set()
        for u in layer:
            for s in gens:
                v = u * s
                if v not in seen:
                    nxt.add(v)
        seen |= nxt
        layer = nxt
    return sorted(seen, key=lambda w: (length(w), w))
