"""Builders for the projective schemes the verification suite studies.

Everything is exact: parameterized families are implicitized through graph
ideals, point sets are intersections of point ideals, and every randomized
choice is checked by an exact certificate (degree, dimension, rank, or
Hilbert-numerator preservation) with a bounded number of resamples.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fields import DEFAULT_PRIME, PrimeField
from .groebner import Ideal, buchberger, eliminate, ideal_intersect, implicitize
from .invariants import (
    GenericityError,
    hilbert_data,
    hilbert_numerator,
    saturate_irrelevant,
    substitute_hyperplanes,
)
from .linalg import Matrix, rank, rank_modp
from .polys import GREVLEX, Polynomial, Ring

DEFAULT_FIELD = PrimeField(DEFAULT_PRIME)


def _target_names(n: int) -> tuple:
    return tuple(f"z{i}" for i in range(n))


# ---------------------------------------------------------------------------
# determinantal scrolls


def scroll_rows(degrees) -> tuple[list[int], list[int]]:
    """Top and bottom row coordinate indices of the scroll's 2x2-minor matrix.

    Coordinates are laid out as: the first positive block's run, then one
    coordinate per zero block (cone vertices, absent from the matrix), then
    the remaining positive blocks' runs in order.
    """
    degrees = tuple(int(a) for a in degrees)
    if not degrees or any(a < 0 for a in degrees):
        raise ValueError("block degrees must be nonnegative")
    positive = [i for i, a in enumerate(degrees) if a > 0]
    if not positive:
        raise ValueError("need at least one positive block degree")
    zeros = sum(1 for a in degrees if a == 0)
    runs: dict[int, int] = {}
    offset = 0
    first = positive[0]
    runs[first] = 0
    offset = degrees[first] + 1 + zeros
    for i in positive[1:]:
        runs[i] = offset
        offset += degrees[i] + 1
    top: list[int] = []
    bottom: list[int] = []
    for i in positive:
        start = runs[i]
        for j in range(degrees[i]):
            top.append(start + j)
            bottom.append(start + j + 1)
    return top, bottom


def scroll(degrees, field=DEFAULT_FIELD) -> Ideal:
    """Rational normal scroll (cone if some block degree is zero)."""
    degrees = tuple(int(a) for a in degrees)
    top, bottom = scroll_rows(degrees)
    n = sum(a + 1 for a in degrees)
    if n < 3:
        raise ValueError("scroll needs at least three coordinates")
    ring = Ring(n, field, GREVLEX, _target_names(n))
    z = [ring.variable(i) for i in range(n)]
    gens = []
    for i in range(len(top)):
        for j in range(i + 1, len(top)):
            gens.append(z[top[i]] * z[bottom[j]] - z[top[j]] * z[bottom[i]])
    return Ideal(ring, gens)


def rational_normal_curve(d: int, field=DEFAULT_FIELD) -> Ideal:
    """The degree-d rational normal curve in P^d."""
    if d < 2:
        raise ValueError("the curve needs degree at least 2")
    return scroll((d,), field)


def cone(i: Ideal, k: int = 1) -> Ideal:
    """Cone over the scheme: k new coordinates appended after the old ones."""
    if k < 1:
        raise ValueError("cone needs at least one new coordinate")
    ring = i.ring
    n = ring.nvars
    taken = set(ring.names)
    fresh = []
    j = n
    while len(fresh) < k:
        name = f"z{j}"
        if name not in taken:
            fresh.append(name)
            taken.add(name)
        j += 1
    big = Ring(n + k, ring.field, GREVLEX, ring.names + tuple(fresh))
    gens = [g.map_exponents(big, lambda m: tuple(m) + (0,) * k) for g in i.gens]
    return Ideal(big, gens)


# ---------------------------------------------------------------------------
# monomial-parameterized families of almost-minimal degree


def _monomial(ring: Ring, exps) -> Polynomial:
    return ring.monomial(tuple(exps))


def _amc_data(e: int, field):
    """Curve family: degree e+2 rational curve in P^{e+1}."""
    if e < 3:
        raise ValueError("codimension parameter must be at least 3")
    aux = Ring(2, field, GREVLEX, ("s", "t"))
    texps = [0, 1] + list(range(3, e + 3))
    params = [_monomial(aux, (e + 2 - j, j)) for j in texps]
    return aux, params, [(1, 1)]


def _ams_data(e: int, field):
    """Surface family: degree e+2 surface in P^{e+2}."""
    if e < 3:
        raise ValueError("codimension parameter must be at least 3")
    aux = Ring(4, field, GREVLEX, ("s", "t", "x", "y"))
    params = [_monomial(aux, (1, 0, 1, 0)), _monomial(aux, (0, 1, 1, 0))]
    for j in [0] + list(range(2, e + 2)):
        params.append(_monomial(aux, (e + 1 - j, j, 0, 1)))
    return aux, params, [(1, 1, e + 1, 1)]


def _amt_data(e: int, field):
    """Threefold family: degree e+2 threefold in P^{e+3}."""
    if e < 3:
        raise ValueError("codimension parameter must be at least 3")
    aux = Ring(5, field, GREVLEX, ("s", "t", "x", "y", "w"))
    params = [
        _monomial(aux, (1, 0, 1, 0, 0)),
        _monomial(aux, (0, 1, 1, 0, 0)),
        _monomial(aux, (2, 0, 0, 1, 0)),
        _monomial(aux, (0, 2, 0, 1, 0)),
    ]
    for j in range(e):
        params.append(_monomial(aux, (e - 1 - j, j, 0, 0, 1)))
    return aux, params, [(1, 1, e - 1, e - 2, 1)]


def _amf_data(e: int, field):
    """Fourfold family: degree e+2 fourfold in P^{e+4}."""
    if e < 3:
        raise ValueError("codimension parameter must be at least 3")
    aux = Ring(6, field, GREVLEX, ("s", "t", "x", "y", "w", "v"))
    s, t = aux.variable(0), aux.variable(1)
    y, w = aux.variable(3), aux.variable(4)
    params = [
        _monomial(aux, (1, 0, 1, 0, 0, 0)),
        _monomial(aux, (0, 1, 1, 0, 0, 0)),
        s * y - t * w,
        t * y,
        s * w,
    ]
    for j in range(e):
        params.append(_monomial(aux, (e - 1 - j, j, 0, 0, 0, 1)))
    return aux, params, [(1, 1, e - 1, e - 1, e - 1, 1)]


def _implicitize_family(data, field):
    aux, params, gradings = data
    blocks = [tuple(range(aux.nvars))]
    return implicitize(
        aux,
        blocks,
        params,
        target_names=_target_names(len(params)),
        gradings=gradings,
    )


def almost_minimal_curve(e: int, field=DEFAULT_FIELD) -> Ideal:
    return _implicitize_family(_amc_data(e, field), field)


def almost_minimal_surface(e: int, field=DEFAULT_FIELD) -> Ideal:
    return _implicitize_family(_ams_data(e, field), field)


def almost_minimal_threefold(e: int, field=DEFAULT_FIELD) -> Ideal:
    return _implicitize_family(_amt_data(e, field), field)


def almost_minimal_fourfold(e: int, field=DEFAULT_FIELD) -> Ideal:
    return _implicitize_family(_amf_data(e, field), field)


_FAMILY_DATA = {
    "curve": _amc_data,
    "surface": _ams_data,
    "threefold": _amt_data,
    "fourfold": _amf_data,
}


def almost_minimal_point(kind: str, e: int, field=DEFAULT_FIELD) -> list:
    """A known smooth point: the image of a fixed generic parameter value."""
    aux, params, _ = _FAMILY_DATA[kind](e, field)
    values = [field.coerce(v) for v in ([1, 2] + [1] * (aux.nvars - 2))]
    return [p.evaluate(values) for p in params]


# ---------------------------------------------------------------------------
# elliptic normal curves


def collapse_linear_generators(i: Ideal) -> Ideal:
    """Re-embed into the linear span by substituting away linear generators."""
    current = i
    while True:
        gb = current.groebner()
        linear = [g for g in gb if g.degree() == 1]
        if not linear:
            return Ideal(current.ring, list(gb.polys))
        g = linear[0]
        ring = current.ring
        n = ring.nvars
        lead = g.lead_monomial()
        j = next(idx for idx, exp in enumerate(lead) if exp)
        small = Ring(n - 1, ring.field, GREVLEX, ring.names[:j] + ring.names[j + 1 :])
        # Solve for variable j: it equals minus the tail (g is monic).
        tail = Polynomial(ring, {m: c for m, c in g.terms.items() if m != lead})
        solved = (-tail).map_exponents(small, lambda m: m[:j] + m[j + 1 :])
        subs = []
        for idx in range(n):
            if idx < j:
                subs.append(small.variable(idx))
            elif idx == j:
                subs.append(solved)
            else:
                subs.append(small.variable(idx - 1))
        gens = [h.substitute(subs) for h in gb.polys if h is not g]
        current = Ideal(small, [h for h in gens if not h.is_zero()])


def elliptic_normal_curve(e: int, field=DEFAULT_FIELD) -> Ideal:
    """Degree e+2 elliptic normal curve in P^{e+1}, for e = 1 mod 3.

    The image of a fixed smooth plane cubic under the degree-m monomial map
    with 3m = e + 2, re-embedded into its linear span.
    """
    if e % 3 != 1:
        raise ValueError("this family needs e = 1 mod 3")
    m = (e + 2) // 3
    aux = Ring(3, field, GREVLEX, ("x", "y", "w"))
    x, y, w = (aux.variable(i) for i in range(3))
    cubic = x * x * x + y * y * y + w * w * w
    params = [aux.monomial(mm) for mm in aux.monomials_of_degree(m)]
    image = implicitize(
        aux,
        [(0, 1, 2)],
        params,
        constraints=[cubic],
        target_names=_target_names(len(params)),
    )
    collapsed = collapse_linear_generators(image)
    if collapsed.ring.nvars != e + 2:
        raise RuntimeError("the image does not span the expected linear space")
    return collapsed


# ---------------------------------------------------------------------------
# point sets


def _point_ideal(ring: Ring, point) -> Ideal:
    field = ring.field
    k = max(i for i, c in enumerate(point) if c != field.zero)
    gens = []
    for i in range(ring.nvars):
        if i == k:
            continue
        gens.append(
            ring.variable(i).scale(point[k]) - ring.variable(k).scale(point[i])
        )
    return Ideal(ring, gens)


def points_ideal(ring: Ring, points) -> Ideal:
    """Intersection of the point ideals of the listed points."""
    out = None
    for q in points:
        pi = _point_ideal(ring, q)
        out = pi if out is None else ideal_intersect(out, pi)
    if out is None:
        raise ValueError("need at least one point")
    return out


def _in_general_position(field, points, r: int) -> bool:
    """Every subset of at most r+1 points must be linearly independent."""
    size = min(r + 1, len(points))
    for subset in itertools.combinations(points, size):
        if isinstance(field, PrimeField):
            a = np.array([[int(c) for c in q] for q in subset], dtype=np.int64)
            if rank_modp(a, field.p) != size:
                return False
        else:
            if rank(Matrix(field, [list(q) for q in subset])) != size:
                return False
    return True


def general_points(r: int, n: int, seed: int, field=DEFAULT_FIELD) -> Ideal:
    """n points in P^r in verified linearly general position."""
    if r < 1 or n < 1:
        raise ValueError("need r >= 1 and n >= 1")
    ring = Ring(r + 1, field, GREVLEX, _target_names(r + 1))
    rng = random.Random(seed)
    for _ in range(5):
        points = []
        for _ in range(n):
            if isinstance(field, PrimeField):
                q = [field.coerce(rng.randrange(field.p)) for _ in range(r + 1)]
            else:
                q = [field.coerce(Fraction(rng.randrange(-99, 100))) for _ in range(r + 1)]
            points.append(q)
        if any(all(c == field.zero for c in q) for q in points):
            continue
        if not _in_general_position(field, points, r):
            continue
        return points_ideal(ring, points)
    raise GenericityError("sampled points kept failing general-position checks", seed)


def points_on_rnc(r: int, n: int, seed: int, field=DEFAULT_FIELD) -> Ideal:
    """n distinct points on the rational normal curve in P^r."""
    if r < 2 or n < 1:
        raise ValueError("need r >= 2 and n >= 1")
    if isinstance(field, PrimeField) and n > field.p:
        raise ValueError("not enough distinct parameter values in the field")
    ring = Ring(r + 1, field, GREVLEX, _target_names(r + 1))
    rng = random.Random(seed)
    values: set = set()
    while len(values) < n:
        if isinstance(field, PrimeField):
            values.add(rng.randrange(field.p))
        else:
            values.add(rng.randrange(-10 * n, 10 * n + 1))
    points = []
    for v in sorted(values):
        c = field.coerce(v)
        q = [field.one]
        for _ in range(r):
            q.append(field.mul(q[-1], c))
        points.append(q)
    return points_ideal(ring, points)


# ---------------------------------------------------------------------------
# sections, quotients, projections


def geometric_linear_section(i: Ideal, k: int, seed: int) -> Ideal:
    """Intersection with a general codimension-k linear subspace, saturated."""
    gb = i.groebner()
    hd = hilbert_data(gb)
    if not 1 <= k <= hd.dimension - 1:
        raise ValueError("section codimension must be between 1 and dim - 1")
    rng = random.Random(seed)
    for _ in range(5):
        ring2, gens2 = substitute_hyperplanes(gb.polys, gb.ring, k, rng)
        gb2 = buchberger(gens2, ring2)
        if gb2.is_unit_ideal():
            continue
        hd2 = hilbert_data(gb2)
        if hd2.dimension != hd.dimension - k or hd2.degree != hd.degree:
            continue
        section = Ideal(ring2, list(gb2.polys))
        return saturate_irrelevant(section, seed=rng.randrange(1 << 30))
    raise GenericityError("linear sections kept failing degree or dimension checks", seed)


@dataclass(frozen=True)
class ArtinianReduction:
    """A maximal linear quotient and whether the cut sequence was regular."""

    ideal: Ideal
    regular: bool


def artinian_quotient(i: Ideal, seed: int) -> ArtinianReduction:
    """Quotient by dim-many random linear forms, without saturation.

    The flag records whether the forms were a regular sequence, certified
    by preservation of the Hilbert numerator; when depth < dim no sequence
    of linear forms can be regular, so the flag comes back False.
    """
    gb = i.groebner()
    hd = hilbert_data(gb)
    k = hd.dimension
    if k == 0:
        return ArtinianReduction(i, True)
    rng = random.Random(seed)
    last = None
    for _ in range(5):
        ring2, gens2 = substitute_hyperplanes(gb.polys, gb.ring, k, rng)
        gb2 = buchberger(gens2, ring2)
        quotient = Ideal(ring2, list(gb2.polys))
        regular = (
            hilbert_numerator(gb2.lead_monomials, ring2.nvars) == hd.numerator
        )
        last = ArtinianReduction(quotient, regular)
        if regular:
            return last
    return last


def inner_projection(i: Ideal, point, seed: int = 0x5EED) -> Ideal:
    """Projection from a point of the scheme to a hyperplane.

    The point is moved to the first coordinate point by an invertible
    linear change, the first variable is eliminated, and the result is
    saturated as a safeguard.
    """
    ring = i.ring
    field = ring.field
    n = ring.nvars
    point = [field.coerce(c) for c in point]
    if len(point) != n:
        raise ValueError("point has the wrong number of coordinates")
    if all(c == field.zero for c in point):
        raise ValueError("the zero vector is not a projective point")
    for g in i.gens:
        if g.evaluate(point) != field.zero:
            raise ValueError("projection center is not on the scheme")
    k = max(idx for idx, c in enumerate(point) if c != field.zero)
    inv = field.inv(point[k])
    q = [field.mul(c, inv) for c in point]
    others = [idx for idx in range(n) if idx != k]
    big = Ring(n, field, GREVLEX, ("u",) + _target_names(n - 1))
    subs: list[Polynomial] = [None] * n
    subs[k] = big.variable(0)
    for pos, idx in enumerate(others):
        subs[idx] = big.variable(pos + 1) + big.variable(0).scale(q[idx])
    moved = Ideal(big, [g.substitute(subs) for g in i.gens], homogeneous=False)
    projected = eliminate(moved, 1)
    for g in projected.gens:
        if not g.is_homogeneous():
            raise RuntimeError("projection produced a non-homogeneous generator")
    return saturate_irrelevant(
        Ideal(projected.ring, projected.gens), seed=seed
    )


# ---------------------------------------------------------------------------
# curves on two-block scrolls


def curve_on_scroll(
    a: int, b: int, alpha: int, k: int, seed: int, field=DEFAULT_FIELD
) -> Ideal:
    """A random curve on the two-block scroll, cut by a bundle section.

    The section lives in the class (alpha, k) over the scroll's Picard
    basis, so the image curve has degree alpha*(a+b) + k; that degree and
    the dimension are verified exactly, with up to five resamples.
    """
    if a < 1 or b < a or alpha < 1:
        raise ValueError("need 1 <= a <= b and alpha >= 1")
    aux = Ring(4, field, GREVLEX, ("s", "t", "u", "v"))
    params = [_monomial(aux, (a - i, i, 1, 0)) for i in range(a + 1)]
    params += [_monomial(aux, (b - j, j, 0, 1)) for j in range(b + 1)]
    expected_degree = alpha * (a + b) + k
    if expected_degree <= 0:
        raise ValueError("the requested class has nonpositive degree")
    rng = random.Random(seed)
    gradings = [(1, 1, -a, -b), (0, 0, 1, 1)]
    for _ in range(5):
        section = aux.zero()
        for j in range(alpha + 1):
            d = (alpha - j) * a + j * b + k
            if d < 0:
                continue
            for mono in aux.monomials_of_degree(d):
                if mono[2] or mono[3]:
                    continue
                coeff = (
                    rng.randrange(field.p)
                    if isinstance(field, PrimeField)
                    else Fraction(rng.randrange(-9, 10))
                )
                term = aux.monomial(
                    (mono[0], mono[1], alpha - j, j), coeff
                )
                section = section + term
        if section.is_zero():
            continue
        image = implicitize(
            aux,
            [(0, 1), (2, 3)],
            params,
            constraints=[section],
            target_names=_target_names(len(params)),
            gradings=gradings,
        )
        gb = image.groebner()
        if gb.is_unit_ideal():
            continue
        hd = hilbert_data(gb)
        if hd.dimension == 2 and hd.degree == expected_degree:
            return image
    raise GenericityError("scroll sections kept failing degree checks", seed)


# ---------------------------------------------------------------------------
# complete intersections with a marked smooth point


def ci_three_quadrics(seed: int, field=DEFAULT_FIELD) -> tuple[Ideal, list]:
    """Three random quadrics in P^4 through a marked point, smooth there.

    Returns the ideal and the point; the Jacobian at the point is checked
    to have rank 3, and the intersection is checked to be a curve of
    degree 8, with up to five resamples.
    """
    ring = Ring(5, field, GREVLEX, _target_names(5))
    point = [field.one] + [field.zero] * 4
    rng = random.Random(seed)
    monos = [m for m in ring.monomials_of_degree(2) if m != (2, 0, 0, 0, 0)]
    for _ in range(5):
        quadrics = []
        for _ in range(3):
            terms = {}
            for m in monos:
                c = (
                    rng.randrange(field.p)
                    if isinstance(field, PrimeField)
                    else Fraction(rng.randrange(-9, 10))
                )
                c = field.coerce(c)
                if c != field.zero:
                    terms[m] = c
            quadrics.append(Polynomial(ring, terms))
        if any(g.is_zero() for g in quadrics):
            continue
        jac = [[g.partial(j).evaluate(point) for j in range(5)] for g in quadrics]
        if isinstance(field, PrimeField):
            jrank = rank_modp(np.array([[int(c) for c in row] for row in jac], dtype=np.int64), field.p)
        else:
            jrank = rank(Matrix(field, jac))
        if jrank != 3:
            continue
        ideal = Ideal(ring, quadrics)
        gb = ideal.groebner()
        if gb.is_unit_ideal():
            continue
        hd = hilbert_data(gb)
        if hd.dimension != 2 or hd.degree != 8:
            continue
        return ideal, point
    raise GenericityError("quadric triples kept failing smoothness or degree checks", seed)
