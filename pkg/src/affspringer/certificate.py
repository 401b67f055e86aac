"""Greedy monomial certificates for the membership determinants.

Given ``x`` in the fundamental box, a candidate ``y <= x`` among minimal coset
representatives and a vertex index ``i``, the membership determinant is the
square submatrix of :func:`blocks.build_block_matrix` cut out by
:func:`blocks.select_rows`.  The greedy algorithm assigns to each level a
square set of columns: first the level's own valuation set, then the unused
columns of earlier sets, newest first, taking the first columns of the last
set it touches.

Inside a level the columns coming from the set ``s`` levels back are matched
with a block of rows: the oldest set takes the bottom rows, the next oldest the
rows above, and the level's own columns keep the top rows with unit pivots.
An entry in the block of offset ``s >= 1`` at row ``j``, column ``m`` then
contributes the chain ``m -> m+1 -> .. -> j-s-1 -> j`` (unit steps followed
by one step of span ``s+1``).  The product of these chain monomials is the
certificate, and its coefficient is a product of small determinants of chain
constants, each a Vandermonde determinant up to explicit nonzero factors.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .algebra import (Monomial, Poly, fraction_det, monomial_from_pairs, poly_det, variables,
                      vandermonde_det)
from .blocks import (BlockMatrix, NotComparable, block_structure,
                     build_block_matrix, membership_matrix, select_rows, vertex_of)
from .springer import SpectralParameters, chain_constant_c
from .weyl import (AffineWeylElement, bruhat_interval_below, bruhat_leq_fw, finite_weyl_group,
                   in_fundamental_box, is_min_coset_rep, w0)


# greedy selection

@dataclass
class Part:
    offset: int  # the valuation set is ``level - offset``
    columns: list[int]  # column indices m within that set
    step: str  # "own", "full" or "partial"
    rows: list[int] = field(default_factory=list)  # row indices j matched to this part


@dataclass
class LevelChoice:
    level: int
    size: int  # rows kept at this level
    parts: list[Part]

    @property
    def counts(self) -> dict[int, int]:
        """``m_s``: number of columns taken from the set ``s`` levels back."""
        return {p.offset: len(p.columns) for p in self.parts}

    @property
    def first_columns(self) -> dict[int, int]:
        """``l_s``: first column taken from each set."""
        return {p.offset: p.columns[0] for p in self.parts if p.columns}


@dataclass
class GreedySelection:
    x: AffineWeylElement
    y: AffineWeylElement
    i: int
    vertex: tuple[int, ...]
    candidate_vertex: tuple[int, ...]
    j_counts: list[int]
    row_counts: list[int]
    levels: list[LevelChoice]

    @property
    def n(self) -> int:
        return self.x.n


def _greedy_levels(j_counts: Sequence[int], row_counts: Sequence[int]) -> list[LevelChoice]:
    used: dict[int, set[int]] = {l: set() for l in range(len(j_counts))}
    out = []
    for r, need in enumerate(row_counts):
        own = min(j_counts[r], need)
        parts = [Part(0, list(range(1, own + 1)), "own")]
        used[r].update(parts[0].columns)
        missing = need - own
        offset = 1
        while missing > 0:
            l = r - offset
            if l < 0:  # pragma: no cover - excluded by the prefix condition
                raise NotComparable(f"level {r} cannot be completed")
            free = [m for m in range(1, j_counts[l] + 1) if m not in used[l]]
            if len(free) <= missing:
                take, step = free, "full"
            else:
                take, step = free[:missing], "partial"
            if take:
                parts.append(Part(offset, take, step))
                used[l].update(take)
            missing -= len(take)
            offset += 1
        if len(parts) > 1 and parts[-1].step == "full":
            parts[-1].step = "partial"  # last set touched, even when fully used
        # oldest set takes the bottom rows, own columns the top rows
        row = need
        for part in sorted(parts[1:], key=lambda p: -p.offset):
            part.rows = list(range(row - len(part.columns) + 1, row + 1))
            row -= len(part.columns)
        parts[0].rows = list(range(1, row + 1))
        if row != own:  # pragma: no cover - bookkeeping invariant
            raise AssertionError("row blocks do not partition the level")
        out.append(LevelChoice(r, need, parts))
    return out


def greedy_for_vertices(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[list[int], list[int], list[LevelChoice]]:
    from .blocks import select_rows_for_vertices
    sel = select_rows_for_vertices(a, b)
    st = block_structure(a)
    return st.j_counts, sel.counts, _greedy_levels(st.j_counts, sel.counts)


def greedy_submatrices(x: AffineWeylElement, y: AffineWeylElement, i: int) -> GreedySelection:
    sel = select_rows(x, y, i)
    a, b = vertex_of(x, i), vertex_of(y, i)
    st = block_structure(a)
    return GreedySelection(x, y, i, a, b, st.j_counts, sel.counts,
                           _greedy_levels(st.j_counts, sel.counts))


# certificate monomial

def unit_chain(n: int, start: int, stop: int) -> dict[tuple[int, int], int]:
    """Exponents of ``A_{start+1,start} ... A_{stop,stop-1}``."""
    return {(t + 1, t): 1 for t in range(start, stop)}


def entry_chain(row: int, col: int, offset: int) -> tuple[int, ...] | None:
    """The certificate chain from column ``col`` to row ``row`` for a set ``offset`` levels back."""
    if offset == 0:
        return tuple(range(col, row + 1)) if row >= col else None
    elbow = row - offset - 1
    if elbow < col:
        return None
    return tuple(range(col, elbow + 1)) + (row,)


def _chain_exponents(chain: Sequence[int]) -> dict[tuple[int, int], int]:
    return {(b, a): 1 for a, b in zip(chain, chain[1:])}


@dataclass
class CertificateMonomial:
    n: int
    exponents: Monomial
    coefficient: Fraction
    selection: GreedySelection = field(repr=False)

    def as_poly(self) -> Poly:
        return Poly(self.n, {self.exponents: self.coefficient})


def _part_exponents(n: int, part: Part) -> dict[tuple[int, int], int]:
    exps: dict[tuple[int, int], int] = {}

    def bump(d, sign):
        for key, e in d.items():
            exps[key] = exps.get(key, 0) + sign * e

    for row in part.rows:
        if part.offset == 0:
            bump(unit_chain(n, 1, row), 1)
        else:
            elbow = row - part.offset - 1
            bump(unit_chain(n, 1, elbow), 1)
            bump({(row, elbow): 1}, 1)
    for col in part.columns:
        bump(unit_chain(n, 1, col), -1)
    if any(e < 0 for e in exps.values()):
        raise AssertionError(f"block {part} has no consistent certificate monomial")
    return {k: e for k, e in exps.items() if e}


def certificate_exponents(sel: GreedySelection) -> Monomial:
    n = sel.n
    total: dict[tuple[int, int], int] = {}
    for lev in sel.levels:
        for part in lev.parts:
            for key, e in _part_exponents(n, part).items():
                total[key] = total.get(key, 0) + e
    return monomial_from_pairs(n, total)


@dataclass
class CertificateBlock:
    """Rows and columns whose certificate entries can be exchanged.

    Own columns form unit triangular blocks on their own; the other columns
    taken from one valuation set, at whatever level, share a single block.
    """
    valuation: int
    rows: list[tuple[int, int]]  # (level, j)
    columns: list[int]  # m
    own: bool

    def offset(self, row: tuple[int, int]) -> int:
        return row[0] - self.valuation


def certificate_blocks(sel: GreedySelection) -> list[CertificateBlock]:
    own, shared = [], {}
    for lev in sel.levels:
        for part in lev.parts:
            if not part.columns:
                continue
            l = lev.level - part.offset
            rows = [(lev.level, j) for j in part.rows]
            if part.offset == 0:
                own.append(CertificateBlock(l, rows, list(part.columns), True))
                continue
            blk = shared.setdefault(l, CertificateBlock(l, [], [], False))
            blk.rows += rows
            blk.columns += part.columns
    for blk in shared.values():
        blk.columns.sort()
        blk.rows.sort(key=lambda r: (r[1], r[0]))
    return own + [shared[l] for l in sorted(shared)]


def block_constant_matrix(block: CertificateBlock, s: SpectralParameters) -> list[list[Fraction]]:
    """Chain constants of the certificate entries of one block (0 where no chain fits)."""
    out = []
    for row in block.rows:
        line = []
        for col in block.columns:
            chain = entry_chain(row[1], col, block.offset(row))
            line.append(chain_constant_c(chain, s) if chain else Fraction(0))
        out.append(line)
    return out


def block_determinant_closed_form(block: CertificateBlock, s: SpectralParameters) -> Fraction | None:
    """Block determinant through the Vandermonde reduction, when it applies.

    Needs consecutive columns ``b .. b+p-1`` and every entry to carry a chain.
    The entry at row ``j`` (offset ``o``) and column ``m`` is
    ``R(j) * C(m) * prod_{t=b}^{m-1} (s_t - s_j)`` with
    ``R(j) = prod_{t=b}^{e-1} (s_t - s_{t+1}) / (s_t - s_j)`` (``e = j - o - 1``)
    and ``C(m) = 1 / prod_{t=b}^{m-1} (s_t - s_{t+1})``; the remaining matrix has
    columns of increasing degree in ``s_j`` with leading coefficients ``(-1)^{m-b}``.
    Rows are taken in the order of :attr:`CertificateBlock.rows`.
    """
    cols, rows = block.columns, block.rows
    p = len(cols)
    if p == 0:
        return Fraction(1)
    b = cols[0]
    if cols != list(range(b, b + p)):
        return None
    if block.own:
        return Fraction(1) if [j for _, j in rows] == cols else None
    if any(entry_chain(row[1], m, block.offset(row)) is None for row in rows for m in cols):
        return None
    out = Fraction(1)
    for row in rows:
        j = row[1]
        for t in range(b, j - block.offset(row) - 1):
            out *= (s[t] - s[t + 1]) / (s[t] - s[j])
    for m in cols:
        for t in range(b, m):
            out /= s[t] - s[t + 1]
        out *= (-1) ** (m - b)
    return out * vandermonde_det([s[j] for _, j in rows])


def block_determinant(block: CertificateBlock, s: SpectralParameters) -> tuple[Fraction, str]:
    closed = block_determinant_closed_form(block, s)
    if closed is not None:
        return closed, "vandermonde"
    return fraction_det(block_constant_matrix(block, s)), "elimination"


def _parity(seq: Sequence[int]) -> int:
    seen = [False] * len(seq)
    sign = 1
    for start in range(len(seq)):
        if seen[start]:
            continue
        k, cycle = start, 0
        while not seen[k]:
            seen[k] = True
            k = seq[k]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign


def block_layout(sel: GreedySelection) -> list[tuple[CertificateBlock, list[int], list[int]]]:
    """Each block with its row and column positions in the square membership matrix."""
    row_pos, col_pos = {}, {}
    k = 0
    for r, count in enumerate(sel.row_counts):
        for j in range(1, count + 1):
            row_pos[(r, j)] = k
            k += 1
    k = 0
    for l, count in enumerate(sel.j_counts):
        for m in range(1, count + 1):
            col_pos[(l, m)] = k
            k += 1
    return [(blk, [row_pos[r] for r in blk.rows], [col_pos[(blk.valuation, m)] for m in blk.columns])
            for blk in certificate_blocks(sel)]


def monomial_coefficient_for(sel: GreedySelection, s: SpectralParameters) -> tuple[Fraction, list[str]]:
    layout = block_layout(sel)
    row_order = [r for _, rows, _ in layout for r in rows]
    col_order = [c for _, _, cols in layout for c in cols]
    coeff = Fraction(_parity(row_order) * _parity(col_order))
    methods = []
    for blk, _, _ in layout:
        d, how = block_determinant(blk, s)
        methods.append(how)
        coeff *= d
    return coeff, methods


def certificate_monomial(sel: GreedySelection, s: SpectralParameters | None = None) -> CertificateMonomial:
    from .springer import default_spectral
    s = s if s is not None else default_spectral(sel.n)
    coeff, _ = monomial_coefficient_for(sel, s)
    return CertificateMonomial(sel.n, certificate_exponents(sel), coeff, sel)


def monomial_coefficient(x, y, i: int, s: SpectralParameters) -> Fraction:
    return monomial_coefficient_for(greedy_submatrices(x, y, i), s)[0]


def certificate_matrix(sel: GreedySelection, s: SpectralParameters) -> list[list[Fraction]]:
    """The rational matrix whose determinant is the certificate coefficient."""
    size = sum(sel.row_counts)
    out = [[Fraction(0)] * size for _ in range(size)]
    for blk, rows, cols in block_layout(sel):
        block = block_constant_matrix(blk, s)
        for a, r in enumerate(rows):
            for b, c in enumerate(cols):
                out[r][c] = block[a][b]
    return out


# verdicts

class Verdict(str, Enum):
    NONZERO = "NonZero"
    IDENTICALLY_ZERO = "IdenticallyZero"
    INCONCLUSIVE = "Inconclusive"
    NOT_COMPARABLE = "NotComparable"


METHODS = ("certificate", "symbolic", "randomized")
SYMBOLIC_SIZE_LIMIT = 12


@dataclass
class VerdictDetail:
    verdict: Verdict
    method: str
    size: int = 0
    monomial: Monomial | None = None
    coefficient: Fraction | None = None
    witness: dict | None = None
    note: str = ""
    seconds: float = 0.0
    degree_bound: int | None = None


def degree_bound(size: int, n: int) -> int:
    """A-degree bound of a membership determinant: each entry has degree at most ``n - 1``."""
    return size * (n - 1)


def schwartz_zippel_failure(size: int, n: int, bound: int = 1000) -> Fraction:
    """Probability that one evaluation of a nonzero determinant at a uniform point vanishes, at most."""
    return Fraction(degree_bound(size, n), 2 * bound + 1)


def random_assignment(n: int, rng: random.Random, bound: int = 1000) -> dict[tuple[int, int], Fraction]:
    return {v: Fraction(rng.randint(-bound, bound)) for v in sorted(variables(n))}


def task_rng(master_seed: int, *key) -> random.Random:
    """Deterministic per-task generator independent of scheduling."""
    return random.Random(repr((master_seed,) + tuple(str(k) for k in key)))


def nonvanishing_detail(x: AffineWeylElement, y: AffineWeylElement, i: int, s: SpectralParameters,
                        method: str = "certificate", seed: int = 0, trials: int = 3,
                        size_limit: int = SYMBOLIC_SIZE_LIMIT,
                        block: BlockMatrix | None = None) -> VerdictDetail:
    if not in_fundamental_box(x):
        raise ValueError(f"{x} is not in the fundamental box")
    if not is_min_coset_rep(y):
        raise ValueError(f"{y} is not a minimal coset representative")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    start = time.perf_counter()
    try:
        sel = select_rows(x, y, i)
    except NotComparable as exc:
        return VerdictDetail(Verdict.NOT_COMPARABLE, method, note=str(exc))
    n = x.n
    if method == "certificate":
        greedy = greedy_submatrices(x, y, i)
        cert = certificate_monomial(greedy, s)
        v = Verdict.NONZERO if cert.coefficient else Verdict.INCONCLUSIVE
        return VerdictDetail(v, method, sel.size, cert.exponents, cert.coefficient,
                             seconds=time.perf_counter() - start)
    bm = block if block is not None else build_block_matrix(x, i, s)
    square = membership_matrix(bm, sel)
    if method == "symbolic":
        if sel.size > size_limit:
            return VerdictDetail(Verdict.INCONCLUSIVE, method, sel.size,
                                 note=f"symbolic size {sel.size} exceeds limit {size_limit}")
        det = poly_det(square)
        v = Verdict.IDENTICALLY_ZERO if det.is_zero() else Verdict.NONZERO
        lead = None if det.is_zero() else det.leading_term()
        return VerdictDetail(v, method, sel.size, lead[0] if lead else None,
                             lead[1] if lead else None, seconds=time.perf_counter() - start)
    rng = task_rng(seed, x.encode(), y.encode(), i)
    bound = degree_bound(sel.size, n)
    for t in range(trials):
        assignment = random_assignment(n, rng)
        if fraction_det(square.evaluate(assignment)):
            return VerdictDetail(Verdict.NONZERO, method, sel.size, witness=assignment,
                                 note=f"trial {t + 1}", seconds=time.perf_counter() - start,
                                 degree_bound=bound)
    return VerdictDetail(Verdict.INCONCLUSIVE, method, sel.size,
                         note=f"all {trials} evaluations vanished "
                              f"(each misses a nonzero determinant with probability <= "
                              f"{schwartz_zippel_failure(sel.size, n)})",
                         seconds=time.perf_counter() - start, degree_bound=bound)


def nonvanishing_verdict(x, y, i, s, method="certificate", seed=0, trials=3) -> Verdict:
    return nonvanishing_detail(x, y, i, s, method, seed, trials).verdict


def common_witness(x: AffineWeylElement, y: AffineWeylElement, s: SpectralParameters,
                   seed: int = 0, trials: int = 5) -> dict | None:
    """One assignment of the ``A_{ji}`` making every vertex determinant nonzero at once."""
    n = x.n
    squares = []
    for i in range(n):
        try:
            sel = select_rows(x, y, i)
        except NotComparable:
            return None
        squares.append(membership_matrix(build_block_matrix(x, i, s), sel))
    rng = task_rng(seed, "common", x.encode(), y.encode())
    for _ in range(trials):
        assignment = random_assignment(n, rng)
        if all(fraction_det(sq.evaluate(assignment)) for sq in squares):
            return assignment
    return None


# fixed points

def candidates_below(x: AffineWeylElement) -> list[AffineWeylElement]:
    """Minimal coset representatives below ``x`` in the Bruhat order."""
    from .weyl import length
    return sorted((y for y in bruhat_interval_below(x) if is_min_coset_rep(y)),
                  key=lambda w: (length(w), w))


@dataclass
class FixedPointResult:
    x: AffineWeylElement
    method: str
    fixed_points: set
    certified: list  # certified minimal representatives
    gaps: list  # candidates whose verdict was inconclusive
    verdicts: dict  # (y, i) -> VerdictDetail


def fixed_point_set(x: AffineWeylElement, s: SpectralParameters, method: str = "certificate",
                    seed: int = 0, trials: int = 3,
                    size_limit: int = SYMBOLIC_SIZE_LIMIT) -> FixedPointResult:
    if not in_fundamental_box(x):
        raise ValueError(f"{x} is not in the fundamental box")
    bound = bruhat_interval_below(w0(x.n) * x)
    blocks = {i: build_block_matrix(x, i, s) for i in range(x.n)}
    certified, gaps, verdicts = [], [], {}
    for y in candidates_below(x):
        if not bruhat_leq_fw(y, x):  # pragma: no cover - the two Bruhat tests agree
            raise AssertionError(f"Bruhat tests disagree on {y} <= {x}")
        ok = True
        for i in range(x.n):
            d = nonvanishing_detail(x, y, i, s, method, seed, trials, size_limit, blocks[i])
            verdicts[(y, i)] = d
            if d.verdict != Verdict.NONZERO:
                ok = False
        (certified if ok else gaps).append(y)
    points = set()
    for y in certified:
        for z in finite_weyl_group(x.n):
            points.add(z * y)
    outside = points - bound
    if outside:
        raise AssertionError(f"fixed points outside the Bruhat bound: {sorted(outside)[:3]}")
    return FixedPointResult(x, method, points & bound, certified, gaps, verdicts)
