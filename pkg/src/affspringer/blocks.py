"""The rectangular matrix of lattice coordinates and its row selection.

Fix ``x`` in the fundamental box, a vertex index ``i`` and ``a = x(omega_i)``.
The lattice ``M x <e_1..e_i, t e_{i+1}..t e_n>`` modulo ``t^{1 - a_n}`` is
spanned by the columns ``M t^q e_m`` with ``1 - a_m <= q <= -a_n``; its
coordinates are taken in the basis ``t^q e_j``.  Writing ``q = l + 1 - a_1``
gives levels ``l = 0 .. a_1 - a_n - 1``; the column ``(l, m)`` exists when
``a_m >= a_1 - l`` and its entry in row ``(r, j)`` is the ``t^{r-l}``
coefficient of ``M_{jm}``.

For a candidate ``y`` with ``b = y(omega_i)`` the rows whose basis vector is
not in ``y <t^{-1}e_1..t^{-1}e_i, e_{i+1}..e_n>_{t^{-1}}`` are, at level
``r``, the first ``#{b_j >= a_1 - r}`` ones.  The point lies in the attracting
neighbourhood of ``y`` for this ``i`` exactly when the square matrix on those
rows is invertible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Poly, PolyMatrix
from .roots import dominance_leq_star
from .springer import SpectralParameters, SpringerMatrix, box_matrix
from .weyl import AffineWeylElement, in_fundamental_box, is_min_coset_rep


class NotComparable(ValueError):
    """The candidate is not below the component in the Bruhat order."""


@dataclass
class BlockStructure:
    vertex: tuple[int, ...]
    levels: int
    j_counts: list[int]  # columns per valuation set
    row_labels: list[tuple[int, int]]  # (level, j)
    col_labels: list[tuple[int, int]]  # (valuation, m)

    @property
    def k_max(self) -> int:
        return self.levels - 1

    def level_rows(self, r: int) -> list[int]:
        return [k for k, (lev, _) in enumerate(self.row_labels) if lev == r]

    def valuation_cols(self, l: int) -> list[int]:
        return [k for k, (val, _) in enumerate(self.col_labels) if val == l]


@dataclass
class BlockMatrix:
    x: AffineWeylElement
    i: int
    matrix: PolyMatrix
    structure: BlockStructure
    springer: SpringerMatrix = field(repr=False)


def vertex_of(w: AffineWeylElement, i: int) -> tuple[int, ...]:
    if not 0 <= i < w.n:
        raise ValueError(f"vertex index {i} out of range for n={w.n}")
    return w.vertex_images()[i]


def block_structure(vertex: tuple[int, ...]) -> BlockStructure:
    n = len(vertex)
    top, bottom = vertex[0], vertex[-1]
    levels = top - bottom
    j_counts = [sum(1 for v in vertex if v >= top - l) for l in range(levels)]
    rows = [(r, j) for r in range(levels) for j in range(1, n + 1)]
    cols = [(l, m) for l in range(levels) for m in range(1, j_counts[l] + 1)]
    return BlockStructure(tuple(vertex), levels, j_counts, rows, cols)


def build_block_matrix(x: AffineWeylElement, i: int, s: SpectralParameters,
                       springer: SpringerMatrix | None = None) -> BlockMatrix:
    """``springer`` defaults to ``M^{w_F}``; pass ``build_M(x, s)`` for the ``M^x`` variant."""
    if not in_fundamental_box(x):
        raise ValueError(f"{x} is not in the fundamental box")
    n = x.n
    m = springer if springer is not None else box_matrix(n, s)
    st = block_structure(vertex_of(x, i))
    rows = []
    for r, j in st.row_labels:
        row = []
        for l, col in st.col_labels:
            row.append(m.entries[j - 1][col - 1].coefficient(r - l) if r >= l else Poly.zero(n))
        rows.append(row)
    mat = PolyMatrix(n, rows, st.row_labels, st.col_labels)
    return BlockMatrix(x, i, mat, st, m)


@dataclass
class RowSelection:
    counts: list[int]  # rows kept at each level
    rows: list[int]  # indices into the block matrix rows

    @property
    def size(self) -> int:
        return len(self.rows)


def row_counts(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    top = a[0]
    return [sum(1 for v in b if v >= top - r) for r in range(a[0] - a[-1])]


def select_rows_for_vertices(a: tuple[int, ...], b: tuple[int, ...]) -> RowSelection:
    if len(a) != len(b) or sum(a) != sum(b):
        raise NotComparable(f"{b} and {a} are not in the same coset of the root lattice")
    if b[0] > a[0] or b[-1] < a[-1]:
        raise NotComparable(f"{b} leaves the coordinate window of {a}")
    st = block_structure(a)
    counts = row_counts(a, b)
    taken = avail = 0
    for r, (need, have) in enumerate(zip(counts, st.j_counts)):
        taken += need
        avail += have
        if taken > avail:
            raise NotComparable(f"level {r} needs {taken} columns but only {avail} exist")
    if taken != avail:
        raise NotComparable(f"selection has {taken} rows for {avail} columns")
    n = len(a)
    rows = [r * n + (j - 1) for r, c in enumerate(counts) for j in range(1, c + 1)]
    return RowSelection(counts, rows)


def select_rows(x: AffineWeylElement, y: AffineWeylElement, i: int) -> RowSelection:
    if not is_min_coset_rep(y):
        raise ValueError(f"{y} is not a minimal coset representative")
    return select_rows_for_vertices(vertex_of(x, i), vertex_of(y, i))


def membership_matrix(bm: BlockMatrix, sel: RowSelection) -> PolyMatrix:
    """The square submatrix whose determinant decides membership."""
    return bm.matrix.submatrix(sel.rows, range(bm.matrix.shape[1]))


def prefix_condition_holds(a, b) -> bool:
    try:
        select_rows_for_vertices(a, b)
    except NotComparable:
        return False
    return True


def dominance_holds(a, b) -> bool:
    return dominance_leq_star(b, a)
