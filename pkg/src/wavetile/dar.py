"""Selecting a simultaneous tiling set inside the support of a tiling function.

Two measurable, finite faces of the selection argument:

* :func:`dar_select` works at cell level.  Support cells of a step function
  ``f`` are grouped into translation-congruence classes (rows) and
  dilation-congruence classes (columns); the values of ``f`` fill a matrix
  that is doubly stochastic exactly when ``f`` tiles both ways on the
  projections of its support.  A positive diagonal picks one cell per row and
  column, and their union tiles both ways on those projections.

* :func:`orbit_explore` follows a single orbit ``{2^j (xi + q)}`` of an
  irrational point ``xi`` in Q(sqrt 2), building the (truncated) matrix whose
  rows are dilation representatives ``d(xi + q)`` and whose columns are
  translation representatives ``tau(2^j (xi + q))``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ContainsOrigin, NotDoublyStochastic, PartialCongruence, RaggedComplex, RationalXi
from .exact import QuadExt, format_rational, pow2
from .intervals import IntervalSet
from .matching import Diagonal, is_doubly_stochastic, matrix_to_json, positive_diagonal
from .stepfunc import StepFunction
from .tiling import (
    ceil_log2, d_point, dilation_multiplicity, dyadic_exponent, is_wavelet_set, tau_point,
    translation_multiplicity,
)


def _fmt_cell(cell):
    return {"lo": format_rational(cell[0]), "hi": format_rational(cell[1])}


@dataclass(frozen=True)
class CellMatrix:
    entries: tuple  # n x n Fractions
    row_classes: tuple  # tuple of tuples of (lo, hi) cells
    col_classes: tuple
    cells: dict = field(compare=False)  # (row, col) -> (lo, hi)

    @property
    def n(self) -> int:
        return len(self.entries)

    def cell_at(self, row: int, col: int):
        return self.cells.get((row, col))

    def to_dict(self):
        return {
            "matrix": matrix_to_json(self.entries),
            "rows": [[_fmt_cell(c) for c in cls] for cls in self.row_classes],
            "columns": [[_fmt_cell(c) for c in cls] for cls in self.col_classes],
            "cells": [{"row": r, "col": c, **_fmt_cell(cell)} for (r, c), cell in sorted(self.cells.items())],
        }


def _translation_key(cell):
    lo, hi = cell
    k = math.floor(lo)
    return (lo - k, hi - k)


def _dilation_key(cell):
    lo, hi = cell
    s = pow2(dyadic_exponent(lo))
    return (lo * s, hi * s)


def _split_cells(f: StepFunction, extra):
    extra = sorted(set(extra))
    out = []
    for lo, hi, v in f.cells():
        inner = [p for p in extra if lo < p < hi]
        edges = [lo, *inner, hi]
        out.extend((a, b, v) for a, b in zip(edges, edges[1:]))
    return out


def build_cell_matrix(f: StepFunction, extra_breakpoints=()) -> CellMatrix:
    """Arrange the support cells of ``f`` into the row/column "matrix form"."""
    cells = _split_cells(f, extra_breakpoints)
    value = {}
    for lo, hi, v in cells:
        if lo <= 0 <= hi:
            raise ContainsOrigin(f"support cell ({lo}, {hi}] touches 0")
        value[(lo, hi)] = v
    keys = list(value)

    for c in keys:
        lo, hi = c
        if hi - lo > 1:
            raise PartialCongruence(f"cell {c} overlaps its own integer translate", pair=(c, c))
        ratio = hi / lo if lo > 0 else lo / hi
        if ratio > 2:
            raise PartialCongruence(f"cell {c} overlaps its own dilate", pair=(c, c))

    rows, cols = {}, {}
    for c in keys:
        rows.setdefault(_translation_key(c), []).append(c)
        cols.setdefault(_dilation_key(c), []).append(c)

    tau_img = {k: translation_multiplicity(IntervalSet([cls[0]])).support() for k, cls in rows.items()}
    d_img = {k: dilation_multiplicity(IntervalSet([cls[0]])).support() for k, cls in cols.items()}
    for images, kind in ((tau_img, "translation"), (d_img, "dilation")):
        items = list(images.items())
        for i, (ka, a) in enumerate(items):
            for kb, b in items[i + 1:]:
                if a & b:
                    ca = (rows if kind == "translation" else cols)[ka][0]
                    cb = (rows if kind == "translation" else cols)[kb][0]
                    raise PartialCongruence(
                        f"cells {ca} and {cb} overlap under {kind} without being congruent",
                        pair=(ca, cb))

    row_keys = sorted(rows, key=lambda k: (tau_img[k].inf, k))
    row_classes = [tuple(sorted(rows[k])) for k in row_keys]
    col_order = []
    for cls in row_classes:
        for c in cls:
            k = _dilation_key(c)
            if k not in col_order:
                col_order.append(k)
    col_classes = [tuple(sorted(cols[k])) for k in col_order]
    if len(row_classes) != len(col_classes):
        raise RaggedComplex(f"{len(row_classes)} translation classes vs {len(col_classes)} dilation classes")

    col_index = {k: i for i, k in enumerate(col_order)}
    n = len(row_classes)
    entries = [[Fraction(0)] * n for _ in range(n)]
    at = {}
    for r, cls in enumerate(row_classes):
        for c in cls:
            j = col_index[_dilation_key(c)]
            if (r, j) in at:
                raise RaggedComplex(f"two cells share row {r} and column {j}")
            at[(r, j)] = c
            entries[r][j] = value[c]
    return CellMatrix(tuple(tuple(row) for row in entries), tuple(row_classes), tuple(col_classes), at)


def _cut_points(target, source, kind, k_max, j_max):
    lo, hi = target
    out = set()
    for e in source:
        if kind == "translation":
            images = (e + k for k in range(-k_max, k_max + 1))
        else:
            images = (e * pow2(j) for j in range(-j_max, j_max + 1))
        out.update(p for p in images if lo < p < hi)
    return out


def refine_breakpoints(f: StepFunction, k_max: int = 8, j_max: int = 8, max_rounds: int = 64) -> list:
    """Extra breakpoints that make the cells of ``f`` congruent-or-disjoint.

    Conflict driven: whenever two cells overlap under an action without being
    congruent, each is cut at the translates (|k| <= k_max) or dilates
    (|j| <= j_max) of the other's endpoints, and the check is repeated.  Cut
    points can keep accumulating (half Shannon plus half Journé does this);
    after ``max_rounds`` the last PartialCongruence is raised.
    """
    extra = set()
    for _ in range(max_rounds):
        try:
            build_cell_matrix(f, extra)
            return sorted(extra)
        except PartialCongruence as exc:
            ca, cb = exc.pair
            kind = "translation" if "translat" in str(exc) else "dilation"
            fresh = (_cut_points(ca, cb, kind, k_max, j_max) | _cut_points(cb, ca, kind, k_max, j_max)) - extra
            if not fresh:
                raise
            extra |= fresh
        except RaggedComplex:
            return sorted(extra)
    build_cell_matrix(f, extra)
    return sorted(extra)


@dataclass(frozen=True)
class DarSelection:
    selected: IntervalSet
    matrix: CellMatrix
    diagonal: Diagonal
    checks: dict

    @property
    def verified(self) -> bool:
        return all(v for k, v in self.checks.items() if k != "wavelet_set")

    def to_dict(self):
        return {
            "selected": self.selected.to_dict(),
            "matrix": self.matrix.to_dict(),
            "diagonal": self.diagonal.to_dict(),
            "selected_cells": [_fmt_cell(self.matrix.cell_at(r, c)) for r, c in self.diagonal.entries()],
            "checks": self.checks,
            "verified": self.verified,
        }


def dar_select(f: StepFunction, extra_breakpoints=()) -> DarSelection:
    """Pick one support cell per row and column along a positive diagonal.

    The result G satisfies, exactly, translation multiplicity 1 on tau(supp f)
    and dilation multiplicity 1 on d(supp f).  Whether a *measurable* set of
    this kind exists for every tiling function is not decided here.
    """
    matrix = build_cell_matrix(f, extra_breakpoints)
    ok, witness = is_doubly_stochastic(matrix.entries)
    if not ok:
        raise NotDoublyStochastic(f"cell matrix is not doubly stochastic: {witness}", witness=witness)
    diagonal = positive_diagonal(matrix.entries)
    chosen = [matrix.cell_at(r, c) for r, c in diagonal.entries()]
    g = IntervalSet(chosen)
    support = f.support()
    tau_f = translation_multiplicity(support).support()
    d_f = dilation_multiplicity(support).support()
    checks = {
        "subset_of_support": g.issubset(support),
        "translation_multiplicity_one_on_projection":
            translation_multiplicity(g) == StepFunction.indicator(tau_f),
        "dilation_multiplicity_one_on_projection":
            dilation_multiplicity(g) == StepFunction.indicator(d_f),
        "pairwise_translation_disjoint": _pairwise_disjoint(chosen, translation_multiplicity),
        "pairwise_dilation_disjoint": _pairwise_disjoint(chosen, dilation_multiplicity),
        "wavelet_set": bool(is_wavelet_set(g)),
    }
    return DarSelection(g, matrix, diagonal, checks)


def _pairwise_disjoint(cells, mult) -> bool:
    images = [mult(IntervalSet([c])).support() for c in cells]
    return all(not (a & b) for i, a in enumerate(images) for b in images[i + 1:])


# --------------------------------------------------------------------------
# single-orbit exploration in Q(sqrt 2)


@dataclass(frozen=True)
class OrbitExploration:
    xi: QuadExt
    window: int
    rows: tuple  # (q, d, complete)
    cols: tuple  # (j, t, complete)
    entries: dict  # (row index, col index) -> value
    row_sums: tuple
    col_sums: tuple
    uniqueness_holds: bool
    block_rows: tuple
    block_cols: tuple
    diagonal: Diagonal | None

    @property
    def complete_sums_are_one(self) -> bool:
        return (all(s == 1 for (_, _, c), s in zip(self.rows, self.row_sums) if c)
                and all(s == 1 for (_, _, c), s in zip(self.cols, self.col_sums) if c))

    def block(self) -> list:
        return [[self.entries.get((r, c), Fraction(0)) for c in self.block_cols] for r in self.block_rows]

    def selected_points(self) -> list:
        if self.diagonal is None:
            return []
        out = []
        for i, c in self.diagonal.entries():
            q = self.rows[self.block_rows[i]][0]
            j = self.cols[self.block_cols[c]][0]
            out.append((self.xi + q) * pow2(j))
        return out

    def to_dict(self):
        return {
            "xi": self.xi.to_dict(),
            "window": self.window,
            "rows": [{"q": format_rational(q), "d": d.to_dict(), "complete": c} for q, d, c in self.rows],
            "columns": [{"j": j, "t": t.to_dict(), "complete": c} for j, t, c in self.cols],
            "entries": [{"row": r, "col": c, "value": format_rational(v)}
                        for (r, c), v in sorted(self.entries.items())],
            "row_sums": [format_rational(s) for s in self.row_sums],
            "column_sums": [format_rational(s) for s in self.col_sums],
            "complete_sums_are_one": self.complete_sums_are_one,
            "uniqueness_holds": self.uniqueness_holds,
            "block_rows": list(self.block_rows),
            "block_columns": list(self.block_cols),
            "block": matrix_to_json(self.block()),
            "diagonal": None if self.diagonal is None else self.diagonal.to_dict(),
            "selected_points": [p.to_dict() for p in self.selected_points()],
        }


def _seed_offsets(f: StepFunction, xi: QuadExt, window: int) -> list:
    denom = pow2(window) * math.lcm(*(b.denominator for b in f.breakpoints))
    seeds = []
    for lo, hi, _ in f.cells():
        for frac in (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)):
            target = (lo + (hi - lo) * frac - xi) * denom
            q = Fraction(math.floor(target + Fraction(1, 2))) / denom
            y = xi + q
            if lo < y <= hi:
                seeds.append(q)
                break
    return seeds


def orbit_explore(f: StepFunction, xi, j_window: int = 4, max_rows: int = 20000) -> OrbitExploration:
    """Exact truncated orbit matrix ``a[m][n] = f(2^{j_n} (xi + q_m))``.

    Rows are discovered from one seed per support cell, then closed under
    "all nonzero entries of this column" (always finite) and "all nonzero
    entries of this row with |j| <= j_window".  A row is complete when the
    support annulus proves no admissible j lies outside the window.
    """
    xi = QuadExt.coerce(xi)
    if xi.is_rational:
        raise RationalXi("xi must be irrational (nonzero sqrt 2 component)")
    support = f.support()
    if support.touches_origin():
        raise ContainsOrigin("orbit exploration needs supp f away from 0")
    s_min = min(lo if lo > 0 else -hi for lo, hi in support)
    s_max = max(hi if lo > 0 else -lo for lo, hi in support)
    lo_j, hi_j = -ceil_log2(1 / s_min) - 1, ceil_log2(s_max) + 1

    rows, cols = {}, {}  # q -> complete flag; t -> j
    col_anchor = {}  # t -> (q, point)
    entries = {}  # (q, t) -> (value, j)
    queue = deque(("row", q) for q in _seed_offsets(f, xi, j_window))
    for _, q in queue:
        rows.setdefault(q, True)
    while queue:
        kind, key = queue.popleft()
        if kind == "row":
            q = key
            y0 = xi + q
            e0 = dyadic_exponent(y0)
            for j in range(e0 + lo_j, e0 + hi_j + 1):
                y = y0 * pow2(j)
                v = f(y)
                if v == 0:
                    continue
                if abs(j) > j_window:
                    rows[q] = False
                    continue
                t = tau_point(y)
                entries[(q, t)] = (v, j)
                if t not in cols:
                    cols[t] = j
                    col_anchor[t] = (q, y)
                    queue.append(("col", t))
        else:
            t = key
            j = cols[t]
            q0, y = col_anchor[t]
            for k in range(math.ceil(-s_max - y), math.floor(s_max - y) + 1):
                v = f(y + k)
                if v == 0:
                    continue
                q = q0 + k * pow2(-j)
                entries[(q, t)] = (v, j)
                if q not in rows:
                    if len(rows) >= max_rows:
                        raise RuntimeError("orbit exploration exceeded max_rows")
                    rows[q] = True
                    queue.append(("row", q))

    d_of = {q: d_point(xi + q) for q in rows}
    row_keys = sorted(rows, key=lambda q: d_of[q])
    col_keys = sorted(cols)
    r_index = {q: i for i, q in enumerate(row_keys)}
    c_index = {t: i for i, t in enumerate(col_keys)}
    matrix = {(r_index[q], c_index[t]): v for (q, t), (v, _) in entries.items()}

    # each (d, t) pair must come from at most one (j, q)
    seen = {}
    unique = len(set(d_of.values())) == len(d_of)
    for (q, t), (_, j) in entries.items():
        point = (xi + q) * pow2(j)
        if d_point(point) != d_of[q] or tau_point(point) != t:
            unique = False
        key = (d_of[q], t)
        if seen.setdefault(key, (j, q)) != (j, q):
            unique = False

    n_r, n_c = len(row_keys), len(col_keys)
    row_sums = [Fraction(0)] * n_r
    col_sums = [Fraction(0)] * n_c
    for (r, c), v in matrix.items():
        row_sums[r] += v
        col_sums[c] += v
    row_info = tuple((q, d_of[q], rows[q]) for q in row_keys)
    col_info = tuple((cols[t], t, True) for t in col_keys)

    by_row, by_col = {}, {}
    for r, c in matrix:
        by_row.setdefault(r, set()).add(c)
        by_col.setdefault(c, set()).add(r)
    block_r = {i for i, (_, _, c) in enumerate(row_info) if c}
    block_c = set(range(n_c))
    while True:
        new_c = {c for c in block_c if by_col.get(c, set()) <= block_r}
        new_r = {r for r in block_r if by_row.get(r, set()) <= new_c}
        if new_c == block_c and new_r == block_r:
            break
        block_r, block_c = new_r, new_c
    block_rows, block_cols = tuple(sorted(block_r)), tuple(sorted(block_c))
    diagonal = None
    if block_rows and len(block_rows) == len(block_cols):
        sub = [[matrix.get((r, c), Fraction(0)) for c in block_cols] for r in block_rows]
        diagonal = positive_diagonal(sub)
    return OrbitExploration(xi, j_window, row_info, col_info, matrix, tuple(row_sums), tuple(col_sums),
                            unique, block_rows, block_cols, diagonal)
