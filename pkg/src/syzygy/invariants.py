"""Hilbert series, graded Betti tables, and the invariants derived from them.

Betti numbers are computed as Koszul cohomology: beta_{p,q} is the dimension
of the middle cohomology of

    wedge^{p+1} V (x) M_{q-1}  ->  wedge^p V (x) M_q  ->  wedge^{p-1} V (x) M_{q+1}

where M is the coordinate ring as a graded vector space of standard
monomials.  Before assembling Koszul matrices the module is cut by random
linear forms as long as each cut provably preserves the Hilbert numerator
(a linear form is regular exactly when the numerator is unchanged), which
keeps the linear algebra small without changing a single table entry.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .fields import PrimeField, RationalField
from .groebner import GroebnerBasis, Ideal, buchberger, quotient_by_poly
from .linalg import Matrix, rank, rank_modp
from .polys import GREVLEX, Monomial, Polynomial, Ring, mono_divides

import numpy as np

Q_ROW_CAP = 20
_CUT_SEED = 0x5EED

# ---------------------------------------------------------------------------
# integer polynomials in one variable z, as coefficient lists


def _zp_trim(a: list[int]) -> tuple[int, ...]:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _zp_mul(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zp_add(a, b) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    return out


def _zp_shift(a, k: int) -> list[int]:
    return [0] * k + list(a)


def _zp_eval_at_one(a) -> int:
    return sum(a)


def _zp_div_one_minus_z(a) -> list[int]:
    """Quotient by (1 - z); caller guarantees a(1) == 0."""
    out = []
    acc = 0
    for x in a[:-1] if a else []:
        acc += x
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Hilbert numerator of a monomial ideal


def _minimal_monos(monos) -> tuple:
    ordered = sorted(set(monos), key=lambda m: (sum(m), m))
    kept: list[Monomial] = []
    for m in ordered:
        if not any(mono_divides(k, m) for k in kept):
            kept.append(m)
    return tuple(kept)


def hilbert_numerator(lead_monos, nvars: int) -> tuple[int, ...]:
    """Numerator of Hilb(S/M) over (1-z)^nvars for the monomial ideal M."""
    memo: dict = {}

    def go(monos: tuple) -> tuple[int, ...]:
        if not monos:
            return (1,)
        if any(sum(m) == 0 for m in monos):
            return (0,)
        cached = memo.get(monos)
        if cached is not None:
            return cached
        mixed = [m for m in monos if sum(1 for e in m if e) >= 2]
        if not mixed:
            # Pure powers on distinct variables: product of (1 - z^deg).
            out = [1]
            for m in monos:
                out = _zp_mul(out, [1] + [0] * (sum(m) - 1) + [-1])
            res = _zp_trim(out)
            memo[monos] = res
            return res
        # Pivot on the variable seen in the most mixed generators, so both
        # branches strictly shrink the total degree of the generating set.
        counts = [0] * nvars
        for m in mixed:
            for i, e in enumerate(m):
                if e:
                    counts[i] += 1
        pivot = max(range(nvars), key=lambda i: counts[i])
        # M = (M + x_pivot) plus z * (M : x_pivot).
        plus: list[Monomial] = [m for m in monos if m[pivot] == 0]
        unit = tuple(1 if i == pivot else 0 for i in range(nvars))
        plus.append(unit)
        colon = [
            tuple(e - 1 if i == pivot and e else e for i, e in enumerate(m))
            for m in monos
        ]
        res = _zp_trim(
            _zp_add(go(_minimal_monos(plus)), _zp_shift(go(_minimal_monos(colon)), 1))
        )
        memo[monos] = res
        return res

    return go(_minimal_monos(lead_monos))


# ---------------------------------------------------------------------------
# Hilbert data


@dataclass(frozen=True)
class HilbertData:
    """Numerator, Krull dimension, degree, and Hilbert polynomial data."""

    nvars: int
    numerator: tuple[int, ...]
    dimension: int
    degree: int

    def hilbert_function(self, m: int) -> int:
        n = self.nvars
        total = 0
        for k, c in enumerate(self.numerator):
            x = n - 1 + m - k
            if x >= n - 1 >= 0:
                total += c * comb(x, n - 1)
        return total

    def hp_value(self, t) -> Fraction:
        """Hilbert polynomial evaluated at t (exact)."""
        if self.dimension == 0:
            return Fraction(0)
        m0 = max(len(self.numerator) - 1, 0)
        d = self.dimension
        samples = [self.hilbert_function(m0 + i) for i in range(d + 1)]
        diffs = [list(samples)]
        for _ in range(d):
            prev = diffs[-1]
            diffs.append([b - a for a, b in zip(prev, prev[1:])])
        total = Fraction(0)
        binom = Fraction(1)
        for j in range(d + 1):
            total += diffs[j][0] * binom
            binom = binom * (Fraction(t) - m0 - j) / (j + 1)
        return total


def hilbert_data(gb: GroebnerBasis) -> HilbertData:
    """Hilbert data of S/I from the lead-term ideal of a reduced basis."""
    if gb.is_unit_ideal():
        raise ValueError("unit ideal defines the empty scheme")
    n = gb.ring.nvars
    num = list(hilbert_numerator(gb.lead_monomials, n))
    reduced = list(num)
    cancelled = 0
    while reduced and _zp_eval_at_one(reduced) == 0:
        reduced = _zp_div_one_minus_z(reduced)
        cancelled += 1
    dimension = n - cancelled
    degree = _zp_eval_at_one(reduced)
    return HilbertData(n, tuple(num), dimension, degree)


def graded_piece_basis(gb: GroebnerBasis, degree: int) -> list[Monomial]:
    """Standard monomials of the given degree, in ascending order."""
    lts = gb.lead_monomials
    out = [
        m
        for m in gb.ring.monomials_of_degree(degree)
        if not any(mono_divides(l, m) for l in lts)
    ]
    out.sort(key=gb.ring._key)
    return out


# ---------------------------------------------------------------------------
# random linear cuts with a Hilbert-numerator regularity certificate


def _random_combo(field, keep: list[int], rng) -> dict:
    """Random coefficients over the kept variable indices."""
    if isinstance(field, PrimeField):
        return {i: rng.randrange(field.p) for i in keep}
    return {i: Fraction(rng.randrange(-9, 10)) for i in keep}


def substitute_hyperplanes(gens, ring: Ring, k: int, rng) -> tuple[Ring, list[Polynomial]]:
    """Cut by k random hyperplanes, solved for the last k variables."""
    n = ring.nvars
    if k <= 0:
        return ring, list(gens)
    if k >= n:
        raise ValueError("cannot cut away every variable")
    new_ring = Ring(n - k, ring.field, GREVLEX, ring.names[: n - k])
    keep = list(range(n - k))
    subs: list[Polynomial] = [new_ring.variable(i) for i in keep]
    for _ in range(n - k, n):
        combo = _random_combo(ring.field, keep, rng)
        poly = new_ring.zero()
        for i, c in combo.items():
            poly = poly + new_ring.variable(i).scale(c)
        subs.append(poly)
    return new_ring, [g.substitute(subs) for g in gens]


def _try_regular_cut(gb: GroebnerBasis, numerator: tuple[int, ...], rng):
    """One certified Betti-preserving cut, or None if five samples fail."""
    for _ in range(5):
        new_ring, new_gens = substitute_hyperplanes(gb.polys, gb.ring, 1, rng)
        new_gb = buchberger(new_gens, new_ring)
        if new_gb.is_unit_ideal():
            continue
        if hilbert_numerator(new_gb.lead_monomials, new_ring.nvars) == numerator:
            return new_gb
    return None


def reduce_by_regular_cuts(gb: GroebnerBasis) -> tuple[GroebnerBasis, int]:
    """Cut by linear forms while each cut is certified regular.

    Every accepted cut preserves the Hilbert numerator exactly, which for a
    linear form is equivalent to being a nonzerodivisor, so the graded Betti
    table is carried over unchanged to the smaller ring.
    """
    rng = random.Random(_CUT_SEED)
    numerator = hilbert_numerator(gb.lead_monomials, gb.ring.nvars)
    cuts = 0
    while gb.ring.nvars > 1:
        hd_dim = gb.ring.nvars - _ones_multiplicity(numerator)
        if hd_dim <= 0:
            break
        nxt = _try_regular_cut(gb, numerator, rng)
        if nxt is None:
            break
        gb = nxt
        cuts += 1
        numerator = hilbert_numerator(gb.lead_monomials, gb.ring.nvars)
    return gb, cuts


def _ones_multiplicity(numerator) -> int:
    reduced = list(numerator)
    count = 0
    while reduced and _zp_eval_at_one(reduced) == 0:
        reduced = _zp_div_one_minus_z(reduced)
        count += 1
    return count


# ---------------------------------------------------------------------------
# Koszul cohomology


class _KoszulWork:
    """Caches standard monomial bases, monomial normal forms, and ranks."""

    def __init__(self, gb: GroebnerBasis):
        self.gb = gb
        self.ring = gb.ring
        self.field = gb.ring.field
        self._std: dict[int, list[Monomial]] = {}
        self._std_index: dict[int, dict[Monomial, int]] = {}
        self._nf: dict[Monomial, dict] = {}
        self._rank: dict[tuple[int, int], int] = {}

    def std(self, q: int) -> list[Monomial]:
        if q < 0:
            return []
        if q not in self._std:
            basis = graded_piece_basis(self.gb, q)
            self._std[q] = basis
            self._std_index[q] = {m: i for i, m in enumerate(basis)}
        return self._std[q]

    def nf_mono(self, m: Monomial) -> dict:
        cached = self._nf.get(m)
        if cached is not None:
            return cached
        fld = self.field
        hit = None
        for g in self.gb.polys:
            lm = g.lead_monomial()
            if mono_divides(lm, m):
                hit = (lm, g)
                break
        if hit is None:
            result = {m: fld.one}
        else:
            lm, g = hit
            shift = tuple(a - b for a, b in zip(m, lm))
            result: dict = {}
            for gm, gc in g.terms.items():
                if gm == lm:
                    continue
                # Basis is monic, so m reduces to -(tail) * x^shift.
                sub = self.nf_mono(tuple(a + b for a, b in zip(gm, shift)))
                for sm, sc in sub.items():
                    v = fld.add(result.get(sm, fld.zero), fld.neg(fld.mul(gc, sc)))
                    if v == fld.zero:
                        result.pop(sm, None)
                    else:
                        result[sm] = v
        self._nf[m] = result
        return result

    def rank_delta(self, p: int, q: int) -> int:
        """Rank of the Koszul differential wedge^p V (x) M_q -> wedge^{p-1} V (x) M_{q+1}."""
        if p <= 0 or q < 0:
            return 0
        key = (p, q)
        if key in self._rank:
            return self._rank[key]
        n = self.ring.nvars
        if p > n:
            self._rank[key] = 0
            return 0
        bq = self.std(q)
        bq1 = self.std(q + 1)
        if not bq or not bq1:
            self._rank[key] = 0
            return 0
        subs_p = list(itertools.combinations(range(n), p))
        subs_p1 = list(itertools.combinations(range(n), p - 1))
        idx_p1 = {s: i for i, s in enumerate(subs_p1)}
        nrows = len(subs_p1) * len(bq1)
        ncols = len(subs_p) * len(bq)
        if nrows * ncols > 40_000_000:
            raise RuntimeError(
                f"Koszul matrix {nrows}x{ncols} too large; "
                "the module did not reduce to a tractable size"
            )
        row_index = self._std_index[q + 1]
        prime = isinstance(self.field, PrimeField)
        if prime:
            a = np.zeros((nrows, ncols), dtype=np.int64)
        else:
            a = [[Fraction(0)] * ncols for _ in range(nrows)]
        for si, s in enumerate(subs_p):
            col_base = si * len(bq)
            for pos in range(p):
                i = s[pos]
                t = s[:pos] + s[pos + 1 :]
                row_base = idx_p1[t] * len(bq1)
                sign = 1 if pos % 2 == 0 else -1
                for mi, m in enumerate(bq):
                    xm = tuple(e + (1 if j == i else 0) for j, e in enumerate(m))
                    for m2, c in self.nf_mono(xm).items():
                        r = row_base + row_index[m2]
                        cidx = col_base + mi
                        if prime:
                            a[r, cidx] = (a[r, cidx] + sign * c) % self.field.p
                        else:
                            a[r][cidx] += sign * c
        if prime:
            value = rank_modp(a, self.field.p)
        else:
            value = rank(Matrix(self.field, a))
        self._rank[key] = value
        return value

    def betti(self, p: int, q: int) -> int:
        bq = self.std(q)
        if not bq:
            return 0
        n = self.ring.nvars
        if p > n or p < 0:
            return 0
        dim_middle = comb(n, p) * len(bq)
        return dim_middle - self.rank_delta(p, q) - self.rank_delta(p + 1, q - 1)


# ---------------------------------------------------------------------------
# Betti tables


@dataclass(frozen=True)
class BettiTable:
    """Nonzero graded Betti numbers beta_{p,q}, ambient variable count, limits."""

    nvars: int
    entries: dict
    p_limit: int
    q_limit: int
    complete: bool

    def beta(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def projective_dimension(self) -> int:
        return max((p for p, _ in self.entries), default=0)

    def regularity(self) -> int:
        return max((q for _, q in self.entries), default=0)

    def strand(self, q: int) -> dict:
        return {p: b for (p, qq), b in sorted(self.entries.items()) if qq == q}

    def alternating_sum(self) -> tuple[int, ...]:
        out: list[int] = []
        for (p, q), b in self.entries.items():
            d = p + q
            if d >= len(out):
                out.extend([0] * (d + 1 - len(out)))
            out[d] += b if p % 2 == 0 else -b
        return _zp_trim(out)

    def render(self) -> str:
        if not self.entries:
            return "(zero table)"
        pd = self.projective_dimension()
        reg = self.regularity()
        cells = [[str(self.beta(p, q)) if self.beta(p, q) else "." for p in range(pd + 1)] for q in range(reg + 1)]
        width = max(3, max(len(c) for row in cells for c in row) + 1)
        head = " " * 6 + "".join(str(p).rjust(width) for p in range(pd + 1))
        lines = [head]
        for q in range(reg + 1):
            lines.append(f"{q:>4}: " + "".join(c.rjust(width) for c in cells[q]))
        return "\n".join(lines)


def betti_table(
    gb: GroebnerBasis,
    p_max: int | None = None,
    q_max: int | None = None,
    reduce: bool = True,
) -> BettiTable:
    """Graded Betti table of S/I via Koszul cohomology.

    Rows are added until one is entirely zero and the alternating-sum
    identity against the Hilbert numerator confirms the table is complete;
    a hard cap guards against runaway inputs.  Explicit p_max or q_max give
    a truncated table flagged as incomplete.
    """
    if gb.is_unit_ideal():
        raise ValueError("unit ideal defines the empty scheme")
    ambient = gb.ring.nvars
    numerator = hilbert_numerator(gb.lead_monomials, ambient)
    work_gb = gb
    if reduce:
        work_gb, _ = reduce_by_regular_cuts(gb)
    work = _KoszulWork(work_gb)
    n = work_gb.ring.nvars
    pm = p_max if p_max is not None else n
    truncated_p = pm < n
    entries: dict = {}
    q = 0
    complete = False
    while True:
        row_zero = True
        for p in range(pm + 1):
            b = work.betti(p, q)
            if b:
                entries[(p, q)] = b
                row_zero = False
        if q_max is not None and q >= q_max:
            break
        if row_zero and q >= 1 and not truncated_p:
            table_now = _zp_trim(_alternating(entries))
            if table_now == _zp_trim(list(numerator)):
                complete = True
                break
        if q >= Q_ROW_CAP:
            raise RuntimeError(
                "no zero row found within the row cap; "
                "the alternating sum never matched the Hilbert numerator"
            )
        q += 1
    if truncated_p or q_max is not None:
        complete = False
    return BettiTable(ambient, entries, pm, q, complete)


def _alternating(entries: dict) -> list[int]:
    out: list[int] = []
    for (p, q), b in entries.items():
        d = p + q
        if d >= len(out):
            out.extend([0] * (d + 1 - len(out)))
        out[d] += b if p % 2 == 0 else -b
    return out


def betti_identity_holds(table: BettiTable, hd: HilbertData) -> bool:
    """Alternating-sum identity: sum (-1)^p beta_{p,q} z^{p+q} == numerator."""
    return table.alternating_sum() == _zp_trim(list(hd.numerator))


# ---------------------------------------------------------------------------
# derived invariants


@dataclass(frozen=True)
class DerivedInvariants:
    """Resolution-level invariants read off a complete Betti table."""

    projective_dimension: int
    depth: int
    dimension: int
    degree: int
    acm: bool
    regularity: int
    gl_index: int | None  # None means the second row is empty (index infinite)

    def gl_index_text(self) -> str:
        return "inf" if self.gl_index is None else str(self.gl_index)


def derived_invariants(table: BettiTable, hd: HilbertData) -> DerivedInvariants:
    """Projective dimension, depth, ACM flag, regularity, and strand index."""
    if not table.complete:
        raise ValueError("cannot derive invariants from an incomplete Betti table")
    pd = table.projective_dimension()
    depth = table.nvars - pd
    reg = table.regularity()
    bad = [p for (p, q) in table.entries if q >= 2]
    gl: int | None
    if not bad:
        gl = None
    else:
        gl = min(bad) - 1
    return DerivedInvariants(
        projective_dimension=pd,
        depth=depth,
        dimension=hd.dimension,
        degree=hd.degree,
        acm=(depth == hd.dimension),
        regularity=reg,
        gl_index=gl,
    )


# ---------------------------------------------------------------------------
# sectional genus


class GenericityError(RuntimeError):
    """Random choices failed a verified genericity requirement."""

    def __init__(self, message: str, seed: int):
        super().__init__(f"{message} (seed {seed})")
        self.seed = seed


def sectional_genus(ideal: Ideal, seed: int) -> int:
    """Arithmetic genus of a general curve section, as 1 - P(0).

    The scheme is cut by dim-1 random hyperplanes down to a curve; cutting
    is genuine substitution without saturation, which leaves the Hilbert
    polynomial of the section untouched.  Degree and dimension preservation
    are verified, with up to five resamples.
    """
    gb = ideal.groebner()
    hd = hilbert_data(gb)
    if hd.dimension < 2:
        raise ValueError("sectional genus needs a positive-dimensional scheme")
    cuts = hd.dimension - 2
    rng = random.Random(seed)
    for _ in range(5):
        ring2, gens2 = substitute_hyperplanes(gb.polys, gb.ring, cuts, rng)
        gb2 = buchberger(gens2, ring2) if cuts else gb
        if gb2.is_unit_ideal():
            continue
        hd2 = hilbert_data(gb2)
        if hd2.dimension != 2 or hd2.degree != hd.degree:
            continue
        value = hd2.hp_value(0)
        if value.denominator != 1:
            raise ArithmeticError("Hilbert polynomial value at 0 is not an integer")
        return 1 - int(value)
    raise GenericityError("hyperplane cuts kept failing degree or dimension checks", seed)


# ---------------------------------------------------------------------------
# certified saturation at the irrelevant ideal


def saturate_irrelevant(ideal: Ideal, seed: int = _CUT_SEED) -> Ideal:
    """Saturation with respect to the irrelevant maximal ideal.

    Computed as a fixpoint of quotients by a random linear form, then
    certified exactly: the result must share the input's Hilbert polynomial
    (their difference is finite length) and admit a regular linear form
    (depth at least one, hence saturated).  Both checks are exact, so a
    returned ideal is correct; bad random choices only force a retry.
    """
    ring = ideal.ring
    gb = ideal.groebner()
    if gb.is_unit_ideal():
        return ideal
    hd = hilbert_data(gb)
    rng = random.Random(seed)
    for _ in range(5):
        ell = _random_linear_form(ring, rng)
        current = ideal
        for _ in range(ring.nvars * 4 + 8):
            nxt = quotient_by_poly(current, ell)
            if nxt.groebner().polys == current.groebner().polys:
                break
            current = nxt
        cgb = current.groebner()
        if cgb.is_unit_ideal():
            # Everything was irrelevant torsion: empty scheme.
            if hd.dimension == 0:
                return Ideal(ring, [ring.one()], homogeneous=False)
            continue
        chd = hilbert_data(cgb)
        if chd.dimension != hd.dimension:
            continue
        if any(chd.hp_value(t) != hd.hp_value(t) for t in range(hd.dimension + 1)):
            continue
        if _has_regular_linear_form(cgb, rng):
            gens = [Polynomial(ring, dict(g.terms)) for g in cgb.polys]
            return Ideal(ring, gens)
    raise GenericityError("saturation certificates kept failing", seed)


def _random_linear_form(ring: Ring, rng) -> Polynomial:
    field = ring.field
    while True:
        if isinstance(field, PrimeField):
            coeffs = [rng.randrange(field.p) for _ in range(ring.nvars)]
        else:
            coeffs = [Fraction(rng.randrange(-9, 10)) for _ in range(ring.nvars)]
        if any(c != field.zero for c in coeffs):
            break
    poly = ring.zero()
    for i, c in enumerate(coeffs):
        if c != field.zero:
            poly = poly + ring.variable(i).scale(c)
    return poly


def _has_regular_linear_form(gb: GroebnerBasis, rng) -> bool:
    """Certificate that depth >= 1: some linear cut preserves the numerator."""
    numerator = hilbert_numerator(gb.lead_monomials, gb.ring.nvars)
    return _try_regular_cut(gb, numerator, rng) is not None
