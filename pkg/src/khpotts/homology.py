"""Bigraded chain complexes, Smith normal form and homology.

Matrices are sparse: ``SparseMatrix.cols[c]`` maps a row index to a nonzero
integer. Over GF(2) ranks come from bitset elimination; over Z the invariant
factors of each differential give both ranks and torsion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .poly import Laurent

Z = "Z"
GF2 = "GF2"


def normalize_ring(ring: str) -> str:
    r = str(ring).strip().upper()
    if r in ("Z", "ZZ", "INT", "INTEGER"):
        return Z
    if r in ("GF2", "Z2", "Z/2", "F2", "MOD2"):
        return GF2
    raise ValueError(f"unknown ring {ring!r}")


class SparseMatrix:
    """Integer matrix of shape (n_rows, n_cols) stored column-wise."""

    __slots__ = ("n_rows", "n_cols", "cols")

    def __init__(self, n_rows: int, n_cols: int, cols: dict | None = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.cols = cols if cols is not None else {}

    @classmethod
    def from_dense(cls, rows) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        cols: dict = {}
        for i, r in enumerate(rows):
            if len(r) != n_cols:
                raise ValueError("ragged matrix")
            for j, x in enumerate(r):
                if x:
                    cols.setdefault(j, {})[i] = int(x)
        return cls(n_rows, n_cols, cols)

    def add(self, row: int, col: int, value: int):
        column = self.cols.setdefault(col, {})
        v = column.get(row, 0) + value
        if v:
            column[row] = v
        else:
            column.pop(row, None)
            if not column:
                del self.cols[col]

    def entries(self):
        for c, column in self.cols.items():
            for r, v in column.items():
                yield r, c, v

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def is_zero(self) -> bool:
        return not any(self.cols.values())

    def to_dense(self) -> list:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def mod2(self) -> "SparseMatrix":
        m = SparseMatrix(self.n_rows, self.n_cols)
        for r, c, v in self.entries():
            if v % 2:
                m.add(r, c, 1)
        return m

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch")
        out = SparseMatrix(self.n_rows, other.n_cols)
        for c, column in other.cols.items():
            acc: dict = {}
            for k, b in column.items():
                for r, a in self.cols.get(k, {}).items():
                    acc[r] = acc.get(r, 0) + a * b
            acc = {r: v for r, v in acc.items() if v}
            if acc:
                out.cols[c] = acc
        return out


def _as_rows(m) -> tuple:
    if isinstance(m, SparseMatrix):
        rows: dict = {}
        for r, c, v in m.entries():
            rows.setdefault(r, {})[c] = v
        return rows, m.n_rows, m.n_cols
    dense = [list(r) for r in m]
    rows = {}
    for i, r in enumerate(dense):
        for j, x in enumerate(r):
            if x:
                rows.setdefault(i, {})[j] = int(x)
    return rows, len(dense), (len(dense[0]) if dense else 0)


@dataclass(frozen=True)
class SmithForm:
    invariants: tuple  # positive, each dividing the next
    rank: int
    shape: tuple


def smith_normal_form(m) -> SmithForm:
    """Invariant factors of an integer matrix (dense list-of-rows or SparseMatrix).

    Pivots on an entry of least absolute value (Markowitz tie-break), then
    clears its row and column; leftover remainders force a smaller pivot next
    round. Exact Python integers throughout.
    """
    rows, n_rows, n_cols = _as_rows(m)
    cols: dict = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    diagonal = []

    def set_entry(r, c, v):
        row = rows.setdefault(r, {})
        if v:
            row[c] = v
            cols.setdefault(c, set()).add(r)
        else:
            row.pop(c, None)
            if not row:
                del rows[r]
            s = cols.get(c)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[c]

    while rows:
        best = None
        least = min(abs(v) for row in rows.values() for v in row.values())
        for r, row in rows.items():
            for c, v in row.items():
                if abs(v) == least:
                    cost = (len(row) - 1) * (len(cols[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, r, c)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        _, r, c = best
        p = rows[r][c]
        pivot_row = dict(rows[r])
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            f = rows[r2][c] // p
            if f:
                for cc, val in pivot_row.items():
                    set_entry(r2, cc, rows.get(r2, {}).get(cc, 0) - f * val)
        pivot_col = {rr: rows[rr][c] for rr in cols[c]}
        for c2 in list(rows[r]):
            if c2 == c:
                continue
            f = rows[r][c2] // p
            if f:
                for rr, val in pivot_col.items():
                    set_entry(rr, c2, rows.get(rr, {}).get(c2, 0) - f * val)
        if len(rows[r]) == 1 and len(cols[c]) == 1:
            diagonal.append(abs(p))
            set_entry(r, c, 0)
    invariants = _invariant_factors(diagonal)
    return SmithForm(tuple(invariants), len(invariants), (n_rows, n_cols))


def _invariant_factors(diagonal) -> list:
    d = sorted(diagonal)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = math.gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] // g * d[j]
    return sorted(d)


def rank_gf2(m) -> int:
    """Rank over GF(2) via elimination on integer bitsets (one per column)."""
    if isinstance(m, SparseMatrix):
        vectors = []
        for column in m.cols.values():
            bits = 0
            for r, v in column.items():
                if v & 1:
                    bits |= 1 << r
            vectors.append(bits)
    else:
        dense = [list(r) for r in m]
        vectors = [sum(1 << i for i, r in enumerate(dense) if r[j] & 1) for j in range(len(dense[0]) if dense else 0)]
    pivots: dict = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                break
    return len(pivots)


def prime_power_factors(n: int) -> list:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 1
            n //= p
            while n % p == 0:
                n //= p
                e += 1
            out.append(p ** e)
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass
class BigradedComplex:
    """Chain groups C^{i,j} with differentials C^{i,j} -> C^{i+1,j}.

    ``bases[(i, j)]`` lists basis elements; ``differentials[(i, j)]`` is the
    SparseMatrix with rows indexed by ``bases[(i + 1, j)]``.
    """

    ring: str
    bases: dict = field(default_factory=dict)
    differentials: dict = field(default_factory=dict)

    def dim(self, i: int, j: int) -> int:
        return len(self.bases.get((i, j), ()))

    def dims(self) -> dict:
        return {k: len(v) for k, v in self.bases.items() if v}

    def j_values(self) -> list:
        return sorted({j for (_, j), b in self.bases.items() if b})

    def i_values(self, j: int) -> list:
        return sorted(i for (i, jj), b in self.bases.items() if jj == j and b)

    def total_dim(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def matrix(self, i: int, j: int) -> SparseMatrix:
        m = self.differentials.get((i, j))
        if m is None:
            return SparseMatrix(self.dim(i + 1, j), self.dim(i, j))
        return m

    def check_shapes(self) -> bool:
        return all(
            m.n_rows == self.dim(i + 1, j) and m.n_cols == self.dim(i, j)
            for (i, j), m in self.differentials.items()
        )

    def d_squared_is_zero(self) -> bool:
        for (i, j), m in self.differentials.items():
            nxt = self.differentials.get((i + 1, j))
            if nxt is None:
                continue
            prod = nxt @ m
            if self.ring == GF2:
                prod = prod.mod2()
            if not prod.is_zero():
                return False
        return True

    def entries(self):
        """(source element, target element, value) for every nonzero entry."""
        for (i, j), m in self.differentials.items():
            src, tgt = self.bases[(i, j)], self.bases[(i + 1, j)]
            for r, c, v in m.entries():
                if self.ring == GF2 and v % 2 == 0:
                    continue
                yield src[c], tgt[r], v

    def preserves_grading(self, grading: Callable) -> bool:
        """True when every nonzero entry joins elements of equal ``grading``."""
        return all(grading(a) == grading(b) for a, b, _ in self.entries())

    def with_ring(self, ring: str) -> "BigradedComplex":
        ring = normalize_ring(ring)
        if ring == self.ring:
            return self
        if ring == GF2:
            return BigradedComplex(GF2, dict(self.bases), {k: m.mod2() for k, m in self.differentials.items()})
        raise ValueError("cannot lift a GF(2) complex to Z")


@dataclass
class HomologySummary:
    ring: str
    betti: dict
    torsion: dict = field(default_factory=dict)

    def nonzero_betti(self) -> dict:
        return {k: v for k, v in sorted(self.betti.items()) if v}

    def shifted(self, di: int, dj: int) -> "HomologySummary":
        return HomologySummary(
            self.ring,
            {(i + di, j + dj): b for (i, j), b in self.betti.items()},
            {(i + di, j + dj): t for (i, j), t in self.torsion.items()},
        )

    def table(self) -> tuple:
        """Hashable form of the nonzero data, for comparisons."""
        return (
            tuple(sorted((k, v) for k, v in self.betti.items() if v)),
            tuple(sorted((k, v) for k, v in self.torsion.items() if v)),
        )

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "betti": [[i, j, b] for (i, j), b in sorted(self.betti.items()) if b],
            "torsion": [[i, j, list(t)] for (i, j), t in sorted(self.torsion.items()) if t],
        }


def homology(cx: BigradedComplex) -> HomologySummary:
    ranks: dict = {}
    elementary: dict = {}
    for key, m in cx.differentials.items():
        if cx.ring == GF2:
            ranks[key] = rank_gf2(m)
        else:
            snf = smith_normal_form(m)
            ranks[key] = snf.rank
            elementary[key] = [f for d in snf.invariants if d > 1 for f in prime_power_factors(d)]
    betti = {}
    torsion = {}
    for (i, j), basis in cx.bases.items():
        b = len(basis) - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        if b < 0:
            raise ArithmeticError(f"negative betti number at {(i, j)}; d^2 != 0?")
        betti[(i, j)] = b
        t = elementary.get((i - 1, j))
        if t:
            torsion[(i, j)] = tuple(sorted(t))
    return HomologySummary(cx.ring, betti, torsion)


def graded_euler_characteristic(x, var: str = "q") -> Laurent:
    """sum_j var^j sum_i (-1)^i rank, from chain dimensions or betti numbers."""
    if isinstance(x, BigradedComplex):
        table = x.dims()
    elif isinstance(x, HomologySummary):
        table = x.betti
    else:
        table = dict(x)
    coeffs: dict = {}
    for (i, j), n in table.items():
        if n:
            coeffs[j] = coeffs.get(j, 0) + (-1) ** (i % 2) * n
    return Laurent({(j,): c for j, c in coeffs.items()}, (var,))


def rho_euler_characteristic(cx: BigradedComplex) -> Laurent:
    """sum_j q^j sum_i (-rho)^i dim C^{i,j}."""
    terms: dict = {}
    for (i, j), n in cx.dims().items():
        key = (j, i)
        terms[key] = terms.get(key, 0) + (-1) ** (i % 2) * n
    return Laurent(terms, ("q", "rho"))

