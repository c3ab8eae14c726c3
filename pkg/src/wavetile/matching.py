"""Doubly stochastic matrices and their positive diagonals.

A nonnegative doubly stochastic matrix always has a permutation ``sigma`` with
``a[i][sigma[i]] > 0`` for every row.  :func:`positive_diagonal` finds one by
maximum bipartite matching on the positivity pattern (Kuhn's augmenting
paths), then fixes rows one at a time to return the lexicographically smallest
such permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import NegativeEntry, NoDiagonal, NotSquare, TooLarge
from .exact import as_rational, format_rational, parse_rational

BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True)
class Diagonal:
    """Permutation ``row -> column``, zero-based."""

    perm: tuple

    def __len__(self):
        return len(self.perm)

    def __getitem__(self, row):
        return self.perm[row]

    def entries(self):
        return list(enumerate(self.perm))

    def to_dict(self):
        return {"sigma": list(self.perm)}


def as_matrix(a) -> list:
    rows = [[as_rational(x) for x in row] for row in a]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare(f"matrix is not square ({n} rows, row lengths {[len(r) for r in rows]})")
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if x < 0:
                raise NegativeEntry(f"entry ({i}, {j}) = {x} is negative")
    return rows


def is_doubly_stochastic(a):
    """Return ``(ok, witness)``; the witness names the first bad row or column."""
    m = as_matrix(a)
    n = len(m)
    for i in range(n):
        s = sum(m[i], Fraction(0))
        if s != 1:
            return False, {"kind": "row", "index": i, "sum": s}
    for j in range(n):
        s = sum((m[i][j] for i in range(n)), Fraction(0))
        if s != 1:
            return False, {"kind": "column", "index": j, "sum": s}
    return True, None


def _adjacency(m, allowed_cols=None):
    return [[j for j, x in enumerate(row) if x > 0 and (allowed_cols is None or j in allowed_cols)]
            for row in m]


def maximum_matching(adj, n_cols: int) -> list:
    """Kuhn's algorithm.  Returns ``match_of_row`` with -1 for unmatched rows."""
    match_col = [-1] * n_cols

    def augment(r, seen):
        for c in adj[r]:
            if c in seen:
                continue
            seen.add(c)
            if match_col[c] == -1 or augment(match_col[c], seen):
                match_col[c] = r
                return True
        return False

    for r in range(len(adj)):
        augment(r, set())
    match_row = [-1] * len(adj)
    for c, r in enumerate(match_col):
        if r != -1:
            match_row[r] = c
    return match_row


def _has_perfect_matching(m, rows, cols) -> bool:
    sub_adj = [[cols.index(c) for c, x in enumerate(m[r]) if x > 0 and c in cols] for r in rows]
    return all(c != -1 for c in maximum_matching(sub_adj, len(cols)))


def positive_diagonal(a) -> Diagonal:
    """Lexicographically smallest permutation with all selected entries positive."""
    m = as_matrix(a)
    n = len(m)
    if n == 0:
        return Diagonal(())
    match = maximum_matching(_adjacency(m), n)
    if -1 in match:
        ok, _ = is_doubly_stochastic(m)
        # a doubly stochastic matrix always has a positive diagonal
        assert not ok, "doubly stochastic matrix without a positive diagonal"
        raise NoDiagonal(f"positivity pattern has no perfect matching (row {match.index(-1)} unmatched)")
    free = list(range(n))
    perm = []
    for r in range(n):
        for c in sorted(c for c in free if m[r][c] > 0):
            rest = [x for x in free if x != c]
            if _has_perfect_matching(m, list(range(r + 1, n)), rest):
                perm.append(c)
                free = rest
                break
    return Diagonal(tuple(perm))


def brute_force_diagonals(a) -> list:
    """Every positive diagonal, by exhaustive enumeration (n <= 8)."""
    m = as_matrix(a)
    n = len(m)
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force limited to n <= {BRUTE_FORCE_LIMIT}, got {n}")
    return [Diagonal(p) for p in permutations(range(n))
            if all(m[i][p[i]] > 0 for i in range(n))]


def matrix_to_json(a) -> list:
    return [[format_rational(x) for x in row] for row in a]


def matrix_from_json(data) -> list:
    return as_matrix([[parse_rational(x) if isinstance(x, str) else x for x in row] for row in data])
