"""Exact dense linear algebra over GF(p) (numpy int64) and Q (fraction-free)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .fields import PrimeField, RationalField


class Matrix:
    """Dense matrix over an exact field; rows is a list of equal-length lists."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows: list, ncols: int | None = None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.rows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.ncols = widths.pop()
            if ncols is not None and ncols != self.ncols:
                raise ValueError("ncols does not match row width")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs explicit ncols")
            self.ncols = ncols

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols} over {self.field})"


def rank_modp(a: np.ndarray, p: int) -> int:
    """Rank of an int64 matrix mod p by forward elimination."""
    a = np.array(a, dtype=np.int64, copy=True) % p
    nr, nc = a.shape
    rank = 0
    for col in range(nc):
        if rank == nr:
            break
        hits = np.nonzero(a[rank:, col])[0]
        if hits.size == 0:
            continue
        i = rank + int(hits[0])
        if i != rank:
            a[[rank, i]] = a[[i, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        row = (a[rank] * inv) % p
        a[rank] = row
        below = np.nonzero(a[rank + 1 :, col])[0] + rank + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, col], row)) % p
        rank += 1
    return rank


def rref_modp(a: np.ndarray, p: int) -> tuple[int, list[int], np.ndarray]:
    """Reduced row echelon form mod p; returns (rank, pivot columns, rref)."""
    a = np.array(a, dtype=np.int64, copy=True) % p
    nr, nc = a.shape
    rank = 0
    pivots: list[int] = []
    for col in range(nc):
        if rank == nr:
            break
        hits = np.nonzero(a[rank:, col])[0]
        if hits.size == 0:
            continue
        i = rank + int(hits[0])
        if i != rank:
            a[[rank, i]] = a[[i, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        row = (a[rank] * inv) % p
        a[rank] = row
        others = np.nonzero(a[:, col])[0]
        others = others[others != rank]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, col], row)) % p
        pivots.append(col)
        rank += 1
    return rank, pivots, a


def _int_rows(rows: list, ncols: int) -> list[list[int]]:
    """Clear denominators and content rowwise; exact over Q."""
    out = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def _echelon_q(rows: list, ncols: int) -> tuple[int, list[int], list[list[int]]]:
    """Fraction-free integer echelon; returns (rank, pivot cols, echelon rows)."""
    work = _int_rows(rows, ncols)
    rank = 0
    pivots: list[int] = []
    for col in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        for i in range(rank + 1, len(work)):
            if work[i][col] == 0:
                continue
            ci = work[i][col]
            row = [pv * a - ci * b for a, b in zip(work[i], work[rank])]
            g = 0
            for x in row:
                g = gcd(g, abs(x))
            if g > 1:
                row = [x // g for x in row]
            work[i] = row
        pivots.append(col)
        rank += 1
    return rank, pivots, work[:rank]


def _kernel_from_echelon_q(rank: int, pivots: list[int], ech: list[list[int]], ncols: int) -> list[list[Fraction]]:
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r in range(rank - 1, -1, -1):
            pc = pivots[r]
            s = Fraction(0)
            for c in range(pc + 1, ncols):
                if v[c]:
                    s += Fraction(ech[r][c]) * v[c]
            v[pc] = -s / ech[r][pc]
        basis.append(v)
    return basis


def rank_and_kernel(m: Matrix) -> tuple[int, list[list]]:
    """Exact rank and a right-kernel basis; kernel vectors have length ncols."""
    if m.nrows == 0:
        f = m.field
        basis = []
        for j in range(m.ncols):
            v = [f.zero] * m.ncols
            v[j] = f.one
            basis.append(v)
        return 0, basis
    if isinstance(m.field, PrimeField):
        p = m.field.p
        a = np.array(m.rows, dtype=np.int64) % p
        rank, pivots, r = rref_modp(a, p)
        pivot_set = set(pivots)
        free = [c for c in range(m.ncols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [0] * m.ncols
            v[fc] = 1
            for i, pc in enumerate(pivots):
                val = int(r[i, fc])
                if val:
                    v[pc] = (-val) % p
            basis.append(v)
        return rank, basis
    if isinstance(m.field, RationalField):
        rank, pivots, ech = _echelon_q(m.rows, m.ncols)
        return rank, _kernel_from_echelon_q(rank, pivots, ech, m.ncols)
    raise TypeError(f"unsupported field {m.field}")


def rank(m: Matrix) -> int:
    """Exact rank; forward elimination only."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if isinstance(m.field, PrimeField):
        a = np.array(m.rows, dtype=np.int64)
        return rank_modp(a, m.field.p)
    if isinstance(m.field, RationalField):
        r, _, _ = _echelon_q(m.rows, m.ncols)
        return r
    raise TypeError(f"unsupported field {m.field}")
