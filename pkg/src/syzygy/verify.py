"""Executable checks for the sharp quadratic-strand bounds and classifications.

Every check compares exact integers.  Randomized inputs carry explicit
seeds derived deterministically from the suite seed, and every result
records the seed that produced it, so any line of a report can be
reproduced in isolation.
"""

from __future__ import annotations

import hashlib
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from .constructions import (
    DEFAULT_FIELD,
    almost_minimal_curve,
    almost_minimal_fourfold,
    almost_minimal_point,
    almost_minimal_surface,
    almost_minimal_threefold,
    ci_three_quadrics,
    cone,
    curve_on_scroll,
    elliptic_normal_curve,
    general_points,
    geometric_linear_section,
    inner_projection,
    points_on_rnc,
    rational_normal_curve,
    scroll,
)
from .fields import PrimeField
from .groebner import Ideal, ideal_intersect, ideal_subset
from .invariants import (
    BettiTable,
    GenericityError,
    betti_identity_holds,
    betti_table,
    derived_invariants,
    hilbert_data,
    sectional_genus,
)
from .linalg import Matrix, rank, rank_modp

VERSION = "0.1.0"

CLASSIFICATIONS = ("VMD", "del-Pezzo", "VAMD-depth-n-a0", "ACM-d-e3", "other")


# ---------------------------------------------------------------------------
# variety reports


@dataclass(frozen=True)
class VarietyReport:
    """Computed invariants of one projective scheme."""

    label: str
    ambient: int
    dim: int
    codim: int
    degree: int
    depth: int
    acm: bool
    sectional_genus: int | None
    gl_index: int | None  # None: every vanishing condition holds (infinite)
    betti: BettiTable
    classification: str
    hilbert_numerator: tuple


def classify(degree: int, codim: int, depth: int, dim: int, acm: bool, gl_index) -> str:
    if degree == codim + 1:
        return "VMD"
    if acm and degree == codim + 2:
        return "del-Pezzo"
    if degree == codim + 2 and depth == dim and gl_index == 0:
        return "VAMD-depth-n-a0"
    if acm and degree == codim + 3:
        return "ACM-d-e3"
    return "other"


def variety_report(label: str, ideal: Ideal, seed: int) -> VarietyReport:
    gb = ideal.groebner()
    hd = hilbert_data(gb)
    bt = betti_table(gb)
    di = derived_invariants(bt, hd)
    if bt.beta(0, 0) != 1 or bt.beta(1, 0) != 0:
        raise ValueError("the scheme is degenerate or empty")
    dim = hd.dimension - 1
    codim = ideal.ring.nvars - hd.dimension
    genus = sectional_genus(ideal, seed) if hd.dimension >= 2 else None
    return VarietyReport(
        label=label,
        ambient=ideal.ring.nvars - 1,
        dim=dim,
        codim=codim,
        degree=hd.degree,
        depth=di.depth,
        acm=di.acm,
        sectional_genus=genus,
        gl_index=di.gl_index,
        betti=bt,
        classification=classify(hd.degree, codim, di.depth, dim, di.acm, di.gl_index),
        hilbert_numerator=hd.numerator,
    )


@dataclass
class CheckResult:
    """One verified statement: expected relation against computed values."""

    check: str
    instance: str
    seed: int
    expected: object
    actual: object
    passed: bool
    error: str | None = None
    millis: int = 0


def _strand(bt: BettiTable, q: int, p_hi: int) -> list:
    return [bt.beta(p, q) for p in range(1, p_hi + 1)]


def _extremal_bound(e: int, p: int) -> int:
    return p * comb(e + 1, p + 1) - 2 * comb(e, p - 1)


# ---------------------------------------------------------------------------
# single-report checks


def bound_A(report: VarietyReport, seed: int = 0) -> CheckResult:
    """Upper bound on the quadratic strand off the two extremal classes."""
    e = report.codim
    if report.classification in ("VMD", "del-Pezzo") or e < 2:
        raise ValueError("the bound presumes neither minimal degree nor del Pezzo")
    p_hi = max(e, report.betti.projective_dimension())
    bounds = [_extremal_bound(e, p) for p in range(1, e)] + [0] * (p_hi - e + 1)
    actual = _strand(report.betti, 1, p_hi)
    passed = all(a <= b for a, b in zip(actual, bounds))
    return CheckResult(
        "bound-A",
        report.label,
        seed,
        {"upper": bounds},
        {"strand": actual},
        passed,
    )


def classify_extremal_B(report: VarietyReport, seed: int = 0) -> CheckResult:
    """Three equivalent descriptions of the extremal strand must agree."""
    e = report.codim
    if e < 3:
        raise ValueError("the characterization needs codimension at least 3")
    targets = {p: _extremal_bound(e, p) for p in range(1, e)}
    in_class = report.classification in ("VAMD-depth-n-a0", "ACM-d-e3")
    mid_range = [1] if e == 3 else list(range(2, e - 1))
    at_mid = any(report.betti.beta(p, 1) == targets[p] for p in mid_range)
    at_all = all(report.betti.beta(p, 1) == targets[p] for p in range(1, e))
    passed = in_class == at_mid == at_all
    return CheckResult(
        "extremal-B",
        report.label,
        seed,
        {"agreement": True},
        {"in-class": in_class, "at-one-mid-p": at_mid, "at-all-p": at_all},
        passed,
    )


def dichotomy_beta_e_minus_1(report: VarietyReport, seed: int = 0) -> CheckResult:
    """The top quadratic Betti number below the cutoff is 0 or e-1."""
    e = report.codim
    if report.classification in ("VMD", "del-Pezzo") or e < 2:
        raise ValueError("the dichotomy presumes neither minimal degree nor del Pezzo")
    value = report.betti.beta(e - 1, 1)
    return CheckResult(
        "dichotomy",
        report.label,
        seed,
        {"allowed": [0, e - 1]},
        {"beta": value},
        value in (0, e - 1),
    )


def check_hilbert_identity(report: VarietyReport, seed: int = 0) -> CheckResult:
    """Alternating strand sums must reproduce the Hilbert numerator."""
    alt = report.betti.alternating_sum()
    return CheckResult(
        "hilbert-identity",
        report.label,
        seed,
        {"numerator": list(report.hilbert_numerator)},
        {"alternating-sum": list(alt)},
        tuple(alt) == tuple(report.hilbert_numerator),
    )


def check_vmd_table(report: VarietyReport, seed: int = 0) -> CheckResult:
    """Minimal-degree schemes carry the single-row strand p*C(e+1,p+1)."""
    e = report.codim
    expected = [p * comb(e + 1, p + 1) for p in range(1, e + 1)]
    actual = _strand(report.betti, 1, e)
    single_row = all(q <= 1 for (p, q), v in report.betti.entries.items() if v)
    passed = (
        report.classification == "VMD" and actual == expected and single_row
    )
    return CheckResult(
        "vmd-table",
        report.label,
        seed,
        {"strand": expected, "single-row": True},
        {
            "strand": actual,
            "single-row": single_row,
            "classification": report.classification,
        },
        passed,
    )


def check_del_pezzo_table(report: VarietyReport, seed: int = 0) -> CheckResult:
    """Del Pezzo strand p*C(e+1,p+1) - C(e,p-1) with a single top corner."""
    e = report.codim
    expected = [p * comb(e + 1, p + 1) - comb(e, p - 1) for p in range(1, e)]
    actual = _strand(report.betti, 1, e - 1)
    corner = report.betti.beta(e, 2)
    tail = [report.betti.beta(p, 1) for p in range(e, e + 2)]
    passed = (
        report.classification == "del-Pezzo"
        and actual == expected
        and corner == 1
        and tail == [0, 0]
    )
    return CheckResult(
        "del-pezzo-table",
        report.label,
        seed,
        {"strand": expected, "corner": 1},
        {
            "strand": actual,
            "corner": corner,
            "classification": report.classification,
        },
        passed,
    )


def check_vamd_table(report: VarietyReport, seed: int = 0) -> CheckResult:
    """Almost-minimal families: extremal strand, depth = dim, index 0."""
    e = report.codim
    expected = [_extremal_bound(e, p) for p in range(1, e)]
    p_hi = max(e, report.betti.projective_dimension())
    actual = _strand(report.betti, 1, p_hi)
    passed = (
        actual[: e - 1] == expected
        and all(v == 0 for v in actual[e - 1 :])
        and report.depth == report.dim
        and report.gl_index == 0
        and report.degree == e + 2
    )
    return CheckResult(
        "vamd-table",
        report.label,
        seed,
        {
            "strand": expected,
            "depth": report.dim,
            "gl-index": 0,
            "degree": e + 2,
        },
        {
            "strand": actual,
            "depth": report.depth,
            "gl-index": report.gl_index,
            "degree": report.degree,
        },
        passed,
    )


def check_acm_next_table(report: VarietyReport, seed: int = 0) -> CheckResult:
    """ACM degree-(e+3) schemes: extremal strand plus second-row tail (e, 2)."""
    e = report.codim
    expected = [_extremal_bound(e, p) for p in range(1, e)]
    actual = _strand(report.betti, 1, e - 1)
    row2_tail = [report.betti.beta(e - 1, 2), report.betti.beta(e, 2)]
    genus_ok = report.dim != 1 or report.sectional_genus == 2
    passed = (
        actual == expected
        and report.acm
        and report.degree == e + 3
        and row2_tail == [e, 2]
        and genus_ok
    )
    return CheckResult(
        "acm-next-table",
        report.label,
        seed,
        {"strand": expected, "row2-tail": [e, 2], "acm": True, "degree": e + 3},
        {
            "strand": actual,
            "row2-tail": row2_tail,
            "acm": report.acm,
            "degree": report.degree,
            "sectional-genus": report.sectional_genus,
        },
        passed,
    )


def check_strict_t22(report: VarietyReport, seed: int = 0) -> CheckResult:
    """The depth-1 curve with index 1 at e=4 sits strictly under the bound."""
    value = report.betti.beta(2, 1)
    bound = _extremal_bound(report.codim, 2)
    return CheckResult(
        "strict-T22",
        report.label,
        seed,
        {"beta21": 11, "bound": 12},
        {"beta21": value, "bound": bound},
        value == 11 and bound == 12 and value < bound,
    )


def check_beta11_formula(report: VarietyReport, seed: int = 0) -> CheckResult:
    """Almost-minimal non-del-Pezzo: beta_{1,1} and beta_{e-1,1} closed forms."""
    e = report.codim
    expected_11 = comb(e + 1, 2) + report.depth - report.dim - 2
    expected_top = e - 1
    actual_11 = report.betti.beta(1, 1)
    actual_top = report.betti.beta(e - 1, 1)
    return CheckResult(
        "beta11-formula",
        report.label,
        seed,
        {"beta11": expected_11, "beta-top": expected_top},
        {"beta11": actual_11, "beta-top": actual_top},
        actual_11 == expected_11 and actual_top == expected_top,
    )


def check_beta11_iff(report: VarietyReport, seed: int = 0) -> CheckResult:
    """beta_{1,1} = C(e+1,2) - 2 exactly on the two near-minimal classes."""
    e = report.codim
    lhs = report.betti.beta(1, 1) == comb(e + 1, 2) - 2
    rhs = (report.degree == e + 2 and report.depth == report.dim) or (
        report.degree == e + 3 and report.acm
    )
    return CheckResult(
        "beta11-iff",
        report.label,
        seed,
        {"equivalence": True},
        {"attains-max-minus-2": lhs, "near-minimal-class": rhs},
        lhs == rhs,
    )


def check_n2p_points(report: VarietyReport, p: int, seed: int = 0) -> CheckResult:
    """2e+1-p general points satisfy the p-th linear-strand vanishing."""
    holds = report.gl_index is None or report.gl_index >= p
    return CheckResult(
        "n2p-points",
        f"{report.label}/N2-{p}",
        seed,
        {"gl-index-at-least": p},
        {"gl-index": "inf" if report.gl_index is None else report.gl_index},
        holds,
    )


# ---------------------------------------------------------------------------
# checks that construct auxiliary schemes


def lefschetz_check(ideal: Ideal, report: VarietyReport, seed: int = 0) -> CheckResult:
    """Hyperplane sections can only grow the quadratic strand."""
    if report.dim < 1:
        raise ValueError("a hyperplane section needs positive dimension")
    section = geometric_linear_section(ideal, 1, seed)
    gb = section.groebner()
    bt_y = betti_table(gb)
    p_hi = max(
        report.betti.projective_dimension(), bt_y.projective_dimension()
    )
    strand_x = _strand(report.betti, 1, p_hi)
    strand_y = _strand(bt_y, 1, p_hi)
    ok = all(x <= y for x, y in zip(strand_x, strand_y))
    if report.depth >= 2:
        ok = ok and strand_x == strand_y
    return CheckResult(
        "lefschetz",
        report.label,
        seed,
        {"relation": "equal" if report.depth >= 2 else "bounded-by-section"},
        {"strand": strand_x, "section-strand": strand_y},
        ok,
    )


def _jacobian_rank(ideal: Ideal, point) -> int:
    field = ideal.ring.field
    rows = [
        [g.partial(j).evaluate(point) for j in range(ideal.ring.nvars)]
        for g in ideal.gens
    ]
    if isinstance(field, PrimeField):
        return rank_modp(
            np.array([[int(c) for c in row] for row in rows], dtype=np.int64),
            field.p,
        )
    return rank(Matrix(field, rows, ideal.ring.nvars))


def inner_projection_inequality(
    ideal: Ideal, seed: int, point=None, label: str = "instance"
) -> CheckResult:
    """Strand inequality under projection from a certified smooth point."""
    report = variety_report(label, ideal, seed)
    if point is None:
        raise ValueError(
            "a point on the scheme is required; constructions expose known ones"
        )
    field = ideal.ring.field
    point = [field.coerce(c) for c in point]
    e = report.codim
    if _jacobian_rank(ideal, point) != e:
        raise ValueError("the projection center is not certified smooth")
    image = inner_projection(ideal, point, seed=seed)
    proj = variety_report(label + "-projected", image, seed)
    p_hi = max(e, report.betti.projective_dimension(), proj.betti.projective_dimension() + 1)
    lhs = _strand(report.betti, 1, p_hi)
    rhs = [
        proj.betti.beta(p, 1) + proj.betti.beta(p - 1, 1) + comb(e, p)
        for p in range(1, p_hi + 1)
    ]
    inequality = all(a <= b for a, b in zip(lhs, rhs))
    a_x = p_hi if report.gl_index is None else report.gl_index
    equality_range = all(lhs[p - 1] == rhs[p - 1] for p in range(1, min(a_x, p_hi) + 1))
    some_equality = any(lhs[p - 1] == rhs[p - 1] for p in range(1, p_hi + 1))
    linked = (not some_equality) or (
        report.betti.beta(1, 1) == proj.betti.beta(1, 1) + e
    )
    degree_drop = proj.degree == report.degree - 1
    quadric_generated = all(g.degree() == 2 for g in ideal.gens)
    depth_kept = (not quadric_generated) or proj.depth == report.depth
    passed = inequality and equality_range and linked and degree_drop and depth_kept
    return CheckResult(
        "inner-projection",
        label,
        seed,
        {
            "inequality": True,
            "equality-through-index": True,
            "beta11-link-if-tight": True,
            "degree-drop": 1,
            "depth-preserved-if-quadratic": True,
        },
        {
            "strand": lhs,
            "projection-bound": rhs,
            "gl-index": "inf" if report.gl_index is None else report.gl_index,
            "tight-somewhere": some_equality,
            "degrees": [report.degree, proj.degree],
            "depths": [report.depth, proj.depth],
            "quadric-generated": quadric_generated,
        },
        passed,
    )


@dataclass(frozen=True)
class DivisorClass:
    """Class of a curve on a surface scroll: alpha*H + beta*F, or d*R on a cone."""

    alpha: int | None = None
    beta: int | None = None
    ruling_multiple: int | None = None

    def render(self) -> str:
        if self.ruling_multiple is not None:
            return f"{self.ruling_multiple}R"
        return f"{self.alpha}H{self.beta:+d}F"


def infer_divisor_class(x_ideal: Ideal, scroll_degrees, seed: int) -> DivisorClass:
    """Solve degree and genus constraints for the class of a scroll curve."""
    degrees = tuple(int(a) for a in scroll_degrees)
    if len(degrees) != 2:
        raise ValueError("divisor classes are inferred on surface scrolls only")
    carrier = scroll(degrees, x_ideal.ring.field)
    if not ideal_subset(carrier, x_ideal):
        raise ValueError("the scroll ideal is not contained in the curve ideal")
    gb = x_ideal.groebner()
    hd = hilbert_data(gb)
    if hd.dimension != 2:
        raise ValueError("divisor classes are inferred for curves only")
    d = hd.degree
    pi = sectional_genus(x_ideal, seed)
    if min(degrees) == 0:
        return DivisorClass(ruling_multiple=d)
    e = sum(degrees)
    # e*alpha^2 - (2d + e - 2)*alpha + (2d + 2*pi - 2) = 0 with beta = d - alpha*e
    b_coef = 2 * d + e - 2
    c_coef = 2 * d + 2 * pi - 2
    disc = b_coef * b_coef - 4 * e * c_coef
    roots = []
    if disc >= 0:
        s = int(disc**0.5)
        while s * s > disc:
            s -= 1
        while (s + 1) * (s + 1) <= disc:
            s += 1
        if s * s == disc:
            for numer in (b_coef - s, b_coef + s):
                if numer % (2 * e) == 0:
                    alpha = numer // (2 * e)
                    if alpha not in roots:
                        roots.append(alpha)
    if not roots:
        raise GenericityError(
            f"no integer class matches degree {d} and genus {pi}", seed
        )
    if len(roots) > 1:
        raise GenericityError(
            f"ambiguous classes {roots} for degree {d} and genus {pi}", seed
        )
    alpha = roots[0]
    return DivisorClass(alpha=alpha, beta=d - alpha * e)


def divisor_class_check(
    check_name: str,
    label: str,
    x_ideal: Ideal,
    scroll_degrees,
    expected: tuple,
    seed: int,
) -> CheckResult:
    cls = infer_divisor_class(x_ideal, scroll_degrees, seed)
    actual = (cls.alpha, cls.beta)
    return CheckResult(
        check_name,
        label,
        seed,
        {"class": list(expected)},
        {"class": list(actual), "rendered": cls.render()},
        actual == tuple(expected),
    )


def broken_divisor_check(e: int, seed: int, field=DEFAULT_FIELD) -> CheckResult:
    """A curve plus a line section matches the ACM degree-(e+3) strand."""
    if e < 3:
        raise ValueError("the broken-divisor comparison needs e >= 3")
    x = curve_on_scroll(1, e - 1, 1, 2, seed, field)
    ring = x.ring
    line = Ideal(ring, [ring.variable(j) for j in range(2, e + 2)])
    union = ideal_intersect(x, line)
    bt_z = betti_table(union.groebner())
    reference = general_points(e, e + 3, seed, field)
    bt_ref = betti_table(reference.groebner())
    strand_z = _strand(bt_z, 1, e - 1)
    strand_ref = _strand(bt_ref, 1, e - 1)
    return CheckResult(
        "broken-divisor",
        f"e{e}/union-with-line",
        seed,
        {"reference-strand": strand_ref},
        {"union-strand": strand_z},
        strand_z == strand_ref,
    )


def cone_table_check(seed: int = 0, field=DEFAULT_FIELD) -> list:
    """Coning must not move a single Betti entry (three fixed instances)."""
    results = []
    for label, base in (
        ("rnc-3", rational_normal_curve(3, field)),
        ("rnc-4", rational_normal_curve(4, field)),
        ("scroll-S(1,2)", scroll((1, 2), field)),
    ):
        bt_base = betti_table(base.groebner())
        bt_cone = betti_table(cone(base).groebner())
        results.append(
            CheckResult(
                "cone-table",
                f"cone/{label}",
                seed,
                {"entries-preserved": True},
                {"equal": bt_base.entries == bt_cone.entries},
                bt_base.entries == bt_cone.entries,
            )
        )
    return results


# ---------------------------------------------------------------------------
# the corpus and the suite


ALL_CHECKS = frozenset(
    {
        "vmd-table",
        "del-pezzo-table",
        "vamd-table",
        "acm-next-table",
        "bound-A",
        "strict-T22",
        "dichotomy",
        "extremal-B",
        "inner-projection",
        "lefschetz",
        "divisor-class-C",
        "divisor-class-D",
        "broken-divisor",
        "hilbert-identity",
        "n2p-points",
        "beta11-formula",
        "beta11-iff",
        "cone-table",
    }
)

THEOREM_CHECKS = {
    "A": frozenset({"bound-A", "strict-T22"}),
    "B": frozenset({"extremal-B", "vamd-table", "acm-next-table"}),
    "C": frozenset({"divisor-class-C"}),
    "D": frozenset({"divisor-class-D"}),
    "corollary-3.2": frozenset({"dichotomy"}),
    "inner-projection": frozenset({"inner-projection"}),
    "lefschetz": frozenset({"lefschetz"}),
    "broken-divisor": frozenset({"broken-divisor"}),
    "all": ALL_CHECKS,
}

# checks that run on every corpus instance (preconditions decide per item)
_CORPUS_WIDE = frozenset(
    {
        "bound-A",
        "dichotomy",
        "extremal-B",
        "hilbert-identity",
        "beta11-formula",
        "beta11-iff",
        "lefschetz",
    }
)


@dataclass(frozen=True)
class _InstanceSpec:
    label: str
    e: int
    builder: str
    args: tuple
    tags: frozenset
    scroll_degrees: tuple | None = None
    expected_class: tuple | None = None


def _acm_curve_params(e: int) -> tuple:
    if e == 3:
        return (1, 2, 2, 0)
    if e == 4:
        return (2, 2, 2, -1)
    return (2, e - 2, 2, 3 - e)


def _corpus_specs(e: int) -> list:
    specs = [
        _InstanceSpec(
            f"scroll-S(1,{e - 1})", e, "scroll", ((1, e - 1),), frozenset({"vmd", "project"})
        ),
        _InstanceSpec(
            f"scroll-S(0,1,{e - 1})", e, "scroll", ((0, 1, e - 1),), frozenset({"vmd"})
        ),
        _InstanceSpec(f"rnc-{e + 1}", e, "rnc", (e + 1,), frozenset({"vmd"})),
        _InstanceSpec(
            "monomial-4.2",
            e,
            "family-curve",
            (e,),
            frozenset({"vamd", "project", "divisor-C"}),
            scroll_degrees=(1, e - 1),
            expected_class=(1, 2),
        ),
        _InstanceSpec("ex-4.3", e, "family-surface", (e,), frozenset({"vamd"})),
        _InstanceSpec("ex-4.4", e, "family-threefold", (e,), frozenset({"vamd"})),
        _InstanceSpec("ex-4.5", e, "family-fourfold", (e,), frozenset({"vamd"})),
        _InstanceSpec(
            "curve-H+2F", e, "curve-on-scroll", (1, e - 1, 1, 2), frozenset()
        ),
        _InstanceSpec(
            "curve-2H+(3-e)F",
            e,
            "curve-on-scroll",
            _acm_curve_params(e),
            frozenset({"acm-next", "divisor-D"}),
            scroll_degrees=_acm_curve_params(e)[:2],
            expected_class=(2, 3 - e),
        ),
    ]
    if e == 3:
        specs.append(
            _InstanceSpec("scroll-S(1,1,2)", e, "scroll", ((1, 1, 2),), frozenset({"vmd"}))
        )
        specs.append(
            _InstanceSpec("ci-3-quadrics", e, "ci-quadrics", (), frozenset({"project"}))
        )
    if e == 4:
        specs.append(
            _InstanceSpec(
                "curve-T(2,2)", e, "curve-on-scroll", (2, 2, 1, 2), frozenset({"t22"})
            )
        )
    if e % 3 == 1:
        specs.append(_InstanceSpec("elliptic", e, "elliptic", (e,), frozenset({"dp"})))
    for d in range(e + 1, e + 6):
        tags = {"points"}
        if d == e + 3:
            tags.add("acm-next")
        specs.append(
            _InstanceSpec(f"general-points-{d}", e, "general-points", (e, d), frozenset(tags))
        )
        specs.append(
            _InstanceSpec(f"rnc-points-{d}", e, "rnc-points", (e, d), frozenset({"points"}))
        )
    return specs


def _seed_for(seed: int, *parts) -> int:
    text = "|".join(str(p) for p in (seed,) + parts)
    digest = hashlib.blake2b(text.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") % (1 << 31)


def _scroll_point(degrees, field) -> list | None:
    if tuple(degrees) != (1, max(degrees)) or len(degrees) != 2:
        return None
    b = degrees[1]
    two = field.coerce(2)
    point = [field.one, two]
    val = field.one
    for _ in range(b):
        point.append(val)
        val = field.mul(val, two)
    return point


def _build_instance(spec: _InstanceSpec, seed: int, field):
    """Returns (ideal, optional smooth point on it)."""
    b = spec.builder
    if b == "scroll":
        return scroll(spec.args[0], field), _scroll_point(spec.args[0], field)
    if b == "rnc":
        d = spec.args[0]
        two = field.coerce(2)
        point, val = [], field.one
        for _ in range(d + 1):
            point.append(val)
            val = field.mul(val, two)
        return rational_normal_curve(d, field), point
    if b == "family-curve":
        return almost_minimal_curve(spec.args[0], field), almost_minimal_point(
            "curve", spec.args[0], field
        )
    if b == "family-surface":
        return almost_minimal_surface(spec.args[0], field), None
    if b == "family-threefold":
        return almost_minimal_threefold(spec.args[0], field), None
    if b == "family-fourfold":
        return almost_minimal_fourfold(spec.args[0], field), None
    if b == "elliptic":
        return elliptic_normal_curve(spec.args[0], field), None
    if b == "general-points":
        e, d = spec.args
        return general_points(e, d, seed, field), None
    if b == "rnc-points":
        e, d = spec.args
        return points_on_rnc(e, d, seed, field), None
    if b == "curve-on-scroll":
        a, bb, alpha, k = spec.args
        return curve_on_scroll(a, bb, alpha, k, seed, field), None
    if b == "ci-quadrics":
        return ci_three_quadrics(seed, field)
    raise ValueError(f"unknown builder {b}")


def _instance_checks(spec: _InstanceSpec, checks, suite_seed: int, field) -> list:
    """Build one corpus instance and run every selected check on it."""
    label = f"e{spec.e}/{spec.label}"
    seed = _seed_for(suite_seed, spec.e, spec.label)
    started = time.monotonic()
    try:
        ideal, point = _build_instance(spec, seed, field)
        report = variety_report(label, ideal, _seed_for(suite_seed, spec.e, spec.label, "genus"))
    except Exception as exc:  # recorded, suite continues
        millis = int((time.monotonic() - started) * 1000)
        return [
            CheckResult(
                "build", label, seed, {"built": True}, {"built": False},
                False, error=f"{type(exc).__name__}: {exc}", millis=millis,
            )
        ]
    results = []

    def run(name, fn, *args, **kwargs):
        t0 = time.monotonic()
        try:
            item = fn(*args, **kwargs)
        except Exception as exc:  # noqa: BLE001 - every failure becomes a result
            item = CheckResult(
                name, label, seed, {}, {},
                False, error=f"{type(exc).__name__}: {exc}",
            )
        item.millis = int((time.monotonic() - t0) * 1000)
        results.append(item)

    not_minimal = report.classification not in ("VMD", "del-Pezzo")
    if "hilbert-identity" in checks:
        run("hilbert-identity", check_hilbert_identity, report, seed)
    if "bound-A" in checks and not_minimal and report.codim >= 2:
        run("bound-A", bound_A, report, seed)
    if "dichotomy" in checks and not_minimal and report.codim >= 2:
        run("dichotomy", dichotomy_beta_e_minus_1, report, seed)
    if "extremal-B" in checks and report.codim >= 3:
        run("extremal-B", classify_extremal_B, report, seed)
    if "beta11-formula" in checks and report.degree == report.codim + 2 and (
        report.classification != "del-Pezzo"
    ):
        run("beta11-formula", check_beta11_formula, report, seed)
    if "beta11-iff" in checks and report.codim >= 3:
        run("beta11-iff", check_beta11_iff, report, seed)
    if "lefschetz" in checks and report.dim >= 1:
        run(
            "lefschetz", lefschetz_check, ideal, report,
            _seed_for(suite_seed, spec.e, spec.label, "section"),
        )
    if "vmd-table" in checks and "vmd" in spec.tags:
        run("vmd-table", check_vmd_table, report, seed)
    if "del-pezzo-table" in checks and "dp" in spec.tags:
        run("del-pezzo-table", check_del_pezzo_table, report, seed)
    if "vamd-table" in checks and "vamd" in spec.tags:
        run("vamd-table", check_vamd_table, report, seed)
    if "acm-next-table" in checks and "acm-next" in spec.tags:
        run("acm-next-table", check_acm_next_table, report, seed)
    if "strict-T22" in checks and "t22" in spec.tags:
        run("strict-T22", check_strict_t22, report, seed)
    if "inner-projection" in checks and "project" in spec.tags and point is not None:
        run(
            "inner-projection", inner_projection_inequality, ideal,
            _seed_for(suite_seed, spec.e, spec.label, "projection"),
            point, label,
        )
    if "divisor-class-C" in checks and "divisor-C" in spec.tags:
        run(
            "divisor-class-C", divisor_class_check, "divisor-class-C", label,
            ideal, spec.scroll_degrees, spec.expected_class,
            _seed_for(suite_seed, spec.e, spec.label, "divisor"),
        )
    if "divisor-class-D" in checks and "divisor-D" in spec.tags:
        run(
            "divisor-class-D", divisor_class_check, "divisor-class-D", label,
            ideal, spec.scroll_degrees, spec.expected_class,
            _seed_for(suite_seed, spec.e, spec.label, "divisor"),
        )
    if "n2p-points" in checks and spec.builder == "general-points":
        e, d = spec.args
        for p in range(1, e - 1):
            if 2 * e + 1 - p == d:
                run("n2p-points", check_n2p_points, report, p, seed)
    return results


def _spec_selected(spec: _InstanceSpec, checks) -> bool:
    if checks & _CORPUS_WIDE:
        return True
    tag_map = {
        "vmd-table": "vmd",
        "del-pezzo-table": "dp",
        "vamd-table": "vamd",
        "acm-next-table": "acm-next",
        "strict-T22": "t22",
        "inner-projection": "project",
        "divisor-class-C": "divisor-C",
        "divisor-class-D": "divisor-D",
    }
    for check, tag in tag_map.items():
        if check in checks and tag in spec.tags:
            return True
    if "n2p-points" in checks and spec.builder == "general-points":
        e, d = spec.args
        return any(2 * e + 1 - p == d for p in range(1, e - 1))
    return False


@dataclass
class SuiteConfig:
    e_min: int = 3
    e_max: int = 5
    seed: int = 1
    checks: frozenset | None = None  # None means every check
    threads: int | None = None  # None: read SYZYGY_THREADS, default 1


@dataclass
class SuiteReport:
    version: str
    command: str
    seed: int
    items: list

    @property
    def failures(self) -> int:
        return sum(1 for item in self.items if not item.passed)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "command": self.command,
            "seed": self.seed,
            "items": [
                {
                    "check": i.check,
                    "instance": i.instance,
                    "seed": i.seed,
                    "expected": i.expected,
                    "actual": i.actual,
                    "pass": i.passed,
                    "error": i.error,
                    "millis": i.millis,
                }
                for i in self.items
            ],
        }


def _thread_count(config: SuiteConfig) -> int:
    if config.threads is not None:
        return max(1, config.threads)
    raw = os.environ.get("SYZYGY_THREADS", "")
    if raw.strip().isdigit() and int(raw) > 0:
        return int(raw)
    return 1


def run_suite(config: SuiteConfig, command: str = "run_suite") -> SuiteReport:
    """Builds the corpus for each codimension bucket and runs the checks."""
    if config.e_max < config.e_min:
        raise ValueError("empty codimension range")
    checks = ALL_CHECKS if config.checks is None else frozenset(config.checks)
    unknown = checks - ALL_CHECKS
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    field = DEFAULT_FIELD
    specs = [
        spec
        for e in range(config.e_min, config.e_max + 1)
        for spec in _corpus_specs(e)
        if _spec_selected(spec, checks)
    ]
    items: list = []
    threads = _thread_count(config)
    if threads > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_instance_checks, spec, checks, config.seed, field)
                for spec in specs
            ]
            for future in futures:
                items.extend(future.result())
    else:
        for spec in specs:
            items.extend(_instance_checks(spec, checks, config.seed, field))
    if "broken-divisor" in checks:
        for e in range(max(3, config.e_min), min(4, config.e_max) + 1):
            t0 = time.monotonic()
            seed = _seed_for(config.seed, e, "broken-divisor")
            try:
                item = broken_divisor_check(e, seed, field)
            except Exception as exc:  # noqa: BLE001
                item = CheckResult(
                    "broken-divisor", f"e{e}/union-with-line", seed,
                    {}, {}, False, error=f"{type(exc).__name__}: {exc}",
                )
            item.millis = int((time.monotonic() - t0) * 1000)
            items.append(item)
    if "cone-table" in checks:
        t0 = time.monotonic()
        cone_items = cone_table_check(_seed_for(config.seed, "cone"), field)
        for item in cone_items:
            item.millis = int((time.monotonic() - t0) * 1000)
        items.extend(cone_items)
    items.sort(key=lambda i: (i.check, i.instance))
    return SuiteReport(VERSION, command, config.seed, items)
