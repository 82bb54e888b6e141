"""Buchberger's algorithm and ideal arithmetic built on it.

The pair queue uses the normal selection strategy (ascending lcm degree,
ties by generator index) and the Gebauer-Moeller criteria for pruning.
Reduced Groebner bases are canonical for a fixed ring and order, so ideal
equality is list equality of basis polynomials.
"""

from __future__ import annotations

import heapq
import itertools

from .polys import (
    BlockOrder,
    GREVLEX,
    Monomial,
    Polynomial,
    Ring,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


def normal_form(f: Polynomial, basis) -> Polynomial:
    """Remainder of f under full multivariate division by the listed basis."""
    ring = f.ring
    fld = ring.field
    key = ring._key
    lts = [(g.lead_monomial(), g) for g in basis if not g.is_zero()]
    work = dict(f.terms)
    remainder: dict = {}
    zero = fld.zero
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = None
        for lm, g in lts:
            if mono_divides(lm, m):
                hit = (lm, g)
                break
        if hit is None:
            remainder[m] = c
            continue
        lm, g = hit
        factor = fld.div(c, g.terms[lm])
        shift = mono_div(m, lm)
        for gm, gc in g.terms.items():
            if gm == lm:
                continue
            mm = mono_mul(gm, shift)
            s = fld.sub(work.get(mm, zero), fld.mul(gc, factor))
            if s == zero:
                work.pop(mm, None)
            else:
                work[mm] = s
    return Polynomial(ring, remainder)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """The S-polynomial cancelling the two lead terms."""
    fld = f.ring.field
    lf, lg = f.lead_monomial(), g.lead_monomial()
    l = mono_lcm(lf, lg)
    a = f.mul_term(mono_div(l, lf), fld.inv(f.terms[lf]))
    b = g.mul_term(mono_div(l, lg), fld.inv(g.terms[lg]))
    return a - b


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _update_pairs(basis, alive, heap, t):
    """Gebauer-Moeller update after appending basis[t]."""
    lmt = basis[t].lead_monomial()
    lcms = {i: mono_lcm(basis[i].lead_monomial(), lmt) for i in range(t)}
    candidates = list(range(t))
    kept: list[int] = []
    while candidates:
        i = candidates.pop(0)
        li = lcms[i]
        if _coprime(basis[i].lead_monomial(), lmt) or not any(
            mono_divides(lcms[j], li) for j in itertools.chain(candidates, kept)
        ):
            kept.append(i)
    new_pairs = [i for i in kept if not _coprime(basis[i].lead_monomial(), lmt)]
    # Prune old pairs whose lcm is a proper multiple of both new lcms.
    for (i, j) in list(alive):
        lij = mono_lcm(basis[i].lead_monomial(), basis[j].lead_monomial())
        if (
            mono_divides(lmt, lij)
            and lcms[i] != lij
            and lcms[j] != lij
        ):
            alive.discard((i, j))
    for i in new_pairs:
        pair = (i, t)
        alive.add(pair)
        heapq.heappush(heap, (mono_degree(lcms[i]), i, t))


def _minimalize(polys, ring: Ring):
    """Drop basis elements whose lead term another lead term divides."""
    ordered = sorted(polys, key=lambda g: ring._key(g.lead_monomial()))
    kept: list[Polynomial] = []
    for g in ordered:
        lm = g.lead_monomial()
        if not any(mono_divides(h.lead_monomial(), lm) for h in kept):
            kept.append(g)
    return kept


def _interreduce(polys, ring: Ring):
    """Fully reduce each tail against the rest; output monic and sorted."""
    out = []
    for i, g in enumerate(polys):
        rest = polys[:i] + polys[i + 1 :]
        r = normal_form(g, rest)
        if not r.is_zero():
            out.append(r.monic())
    out.sort(key=lambda g: ring._key(g.lead_monomial()))
    return out


def buchberger(gens, ring: Ring) -> "GroebnerBasis":
    """Reduced Groebner basis of the given generators."""
    basis = [g.monic() for g in gens if not g.is_zero()]
    heap: list = []
    alive: set = set()
    staged = basis
    basis = []
    for g in staged:
        basis.append(g)
        _update_pairs(basis, alive, heap, len(basis) - 1)
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        s = s_polynomial(basis[i], basis[j])
        r = normal_form(s, basis)
        if r.is_zero():
            continue
        basis.append(r.monic())
        _update_pairs(basis, alive, heap, len(basis) - 1)
    reduced = _interreduce(_minimalize(basis, ring), ring)
    return GroebnerBasis(ring, tuple(reduced))


class GroebnerBasis:
    """A reduced Groebner basis; canonical for its ring and order."""

    __slots__ = ("ring", "polys", "lead_monomials")

    def __init__(self, ring: Ring, polys: tuple):
        self.ring = ring
        self.polys = polys
        self.lead_monomials = tuple(g.lead_monomial() for g in polys)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.polys)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].degree() == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroebnerBasis)
            and other.ring == self.ring
            and other.polys == self.polys
        )

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __repr__(self) -> str:
        return f"GroebnerBasis({len(self.polys)} elements over {self.ring})"


class Ideal:
    """An ideal given by generators; homogeneity is enforced for public inputs."""

    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring: Ring, gens, homogeneous: bool = True):
        clean = []
        for g in gens:
            if g.ring != ring:
                g = Polynomial(ring, dict(g.terms)) if g.ring.nvars == ring.nvars and g.ring.field == ring.field else g
            if g.ring != ring:
                raise ValueError("generator ring does not match ideal ring")
            if g.is_zero():
                continue
            if homogeneous and not g.is_homogeneous():
                raise ValueError(f"generator is not homogeneous: {g.render()}")
            clean.append(g)
        self.ring = ring
        self.gens = clean
        self._gb = None

    def groebner(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.gens, self.ring)
        return self._gb

    def with_ring(self, ring: Ring) -> "Ideal":
        """Same generators reinterpreted in a ring with another order."""
        gens = [Polynomial(ring, dict(g.terms)) for g in self.gens]
        return Ideal(ring, gens, homogeneous=False)

    def __repr__(self) -> str:
        return f"Ideal({len(self.gens)} gens in {self.ring})"


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    """Equality via canonical reduced bases; rings must agree."""
    if a.ring != b.ring:
        raise ValueError("cannot compare ideals in different rings")
    return a.groebner().polys == b.groebner().polys


def ideal_contains(i: Ideal, f: Polynomial) -> bool:
    return i.groebner().contains(f)


def ideal_subset(a: Ideal, b: Ideal) -> bool:
    """True if a is contained in b: every generator of a reduces to zero mod b."""
    gb = b.groebner()
    return all(gb.contains(g) for g in a.gens)


def _strip_front(poly: Polynomial, new_ring: Ring, k: int) -> Polynomial:
    return poly.map_exponents(new_ring, lambda m: m[k:])


def _embed_back(poly: Polynomial, new_ring: Ring, k: int) -> Polynomial:
    """View a poly in n vars inside a ring with k extra leading variables."""
    return poly.map_exponents(new_ring, lambda m: (0,) * k + tuple(m))


def eliminate(i: Ideal, k: int) -> Ideal:
    """Intersect with the subring dropping the first k variables."""
    n = i.ring.nvars
    if not 1 <= k < n:
        raise ValueError(f"cannot eliminate {k} of {n} variables")
    elim_ring = Ring(n, i.ring.field, BlockOrder(k), i.ring.names)
    gb = i.with_ring(elim_ring).groebner()
    target = Ring(n - k, i.ring.field, GREVLEX, i.ring.names[k:])
    kept = [g for g in gb if all(m[:k] == (0,) * k for m in g.terms)]
    return Ideal(target, [_strip_front(g, target, k) for g in kept], homogeneous=False)


def exact_div(g: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient g / f; raises if the division is not exact."""
    ring = g.ring
    fld = ring.field
    lf = f.lead_monomial()
    quotient = ring.zero()
    rest = g
    while not rest.is_zero():
        lm = rest.lead_monomial()
        if not mono_divides(lf, lm):
            raise ArithmeticError("division is not exact")
        term = ring.monomial(mono_div(lm, lf), fld.div(rest.terms[lm], f.terms[lf]))
        quotient = quotient + term
        rest = rest - term * f
    return quotient


def _fresh_aux_ring(base: Ring) -> Ring:
    """Ring with one new lead variable ahead of the base variables."""
    taken = set(base.names)
    name = next(f"t{i}" for i in itertools.count() if f"t{i}" not in taken)
    return Ring(base.nvars + 1, base.field, BlockOrder(1), (name,) + base.names)


def ideal_intersect(a: Ideal, b: Ideal) -> Ideal:
    """Intersection via the auxiliary-variable elimination trick."""
    if a.ring != b.ring:
        raise ValueError("intersection needs a common ring")
    base = a.ring
    aux = _fresh_aux_ring(base)
    t = aux.variable(0)
    one = aux.one()
    gens = [t * _embed_back(g, aux, 1) for g in a.gens]
    gens += [(one - t) * _embed_back(g, aux, 1) for g in b.gens]
    gb = buchberger(gens, aux)
    kept = [g for g in gb if all(m[0] == 0 for m in g.terms)]
    out_ring = Ring(base.nvars, base.field, GREVLEX, base.names)
    polys = [_strip_front(g, out_ring, 1) for g in kept]
    if base.order != GREVLEX:
        ring2 = base
        polys = [Polynomial(ring2, dict(p.terms)) for p in polys]
        return Ideal(ring2, polys, homogeneous=False)
    return Ideal(out_ring, polys, homogeneous=False)


def quotient_by_poly(i: Ideal, f: Polynomial) -> Ideal:
    """(I : f) for a single nonzero polynomial."""
    if f.is_zero():
        raise ValueError("cannot form a quotient by zero")
    principal = Ideal(i.ring, [f], homogeneous=False)
    inter = ideal_intersect(i, principal)
    gens = [exact_div(g, f) for g in inter.gens]
    return Ideal(i.ring, gens, homogeneous=False)


def ideal_quotient(i: Ideal, j: Ideal) -> Ideal:
    """(I : J) as the intersection of (I : f) over generators f of J."""
    if not j.gens:
        raise ValueError("quotient by the zero ideal")
    out = None
    for f in j.gens:
        q = quotient_by_poly(i, f)
        out = q if out is None else ideal_intersect(out, q)
    return out


def saturate(i: Ideal, j: Ideal) -> Ideal:
    """(I : J^infinity) by fixpoint iteration of the ideal quotient."""
    current = i
    while True:
        q = ideal_quotient(current, j)
        if ideal_equal(q, current):
            return current
        current = q


def _grading_degree(poly: Polynomial, weights) -> int:
    """Weighted degree; raises if the terms see mixed weighted degrees."""
    seen = {sum(w * e for w, e in zip(weights, m)) for m in poly.terms}
    if len(seen) > 1:
        raise ValueError(
            f"parameterization component is not homogeneous for the grading: {poly.render()}"
        )
    return seen.pop() if seen else 0


def implicitize(
    aux_ring: Ring, blocks, params, constraints=(), target_names=None, gradings=None
) -> Ideal:
    """Ideal of the closure of the image of a graded parameterization.

    aux_ring holds the parameter variables, partitioned into irrelevant
    blocks (index tuples).  params are the target coordinates as polynomials
    in aux_ring; constraints cut the source before taking the image.
    gradings is a list of integer weight vectors over the aux variables
    under which every component and constraint must be homogeneous; by
    default each block contributes its indicator vector (the standard
    multigraded case).  With constraints present the graph ideal is
    saturated by each block's irrelevant ideal before elimination; without
    them the graph ideal is prime and the saturation would be a no-op, so
    it is skipped.
    """
    n_aux = aux_ring.nvars
    n_target = len(params)
    if n_target < 2:
        raise ValueError("need at least two target coordinates")
    if gradings is None:
        gradings = [
            tuple(1 if i in block else 0 for i in range(n_aux)) for block in blocks
        ]
    for weights in gradings:
        for p in list(params) + list(constraints):
            _grading_degree(p, weights)
    field = aux_ring.field
    if target_names is None:
        target_names = tuple(f"z{i}" for i in range(n_target))
    names = aux_ring.names + target_names
    graph_ring = Ring(n_aux + n_target, field, BlockOrder(n_aux), names)

    def lift_aux(p: Polynomial) -> Polynomial:
        return p.map_exponents(graph_ring, lambda m: tuple(m) + (0,) * n_target)

    gens = []
    for idx, p in enumerate(params):
        exps = [0] * (n_aux + n_target)
        exps[n_aux + idx] = 1
        gens.append(graph_ring.monomial(tuple(exps)) - lift_aux(p))
    gens += [lift_aux(c) for c in constraints]
    graph = Ideal(graph_ring, gens, homogeneous=False)
    if constraints:
        for block in blocks:
            irrelevant = Ideal(
                graph_ring,
                [graph_ring.variable(i) for i in block],
                homogeneous=False,
            )
            graph = saturate(graph, irrelevant)
            graph = graph.with_ring(graph_ring)
    eliminated = eliminate(graph, n_aux)
    target_ring = Ring(n_target, field, GREVLEX, target_names)
    polys = [Polynomial(target_ring, dict(g.terms)) for g in eliminated.gens]
    for g in polys:
        if not g.is_homogeneous():
            raise ValueError("implicitization produced a non-homogeneous generator")
    return Ideal(target_ring, polys)
