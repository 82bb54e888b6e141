"""Golden-value tests for the scheme builders."""

import pytest

from syzygy.constructions import (
    DEFAULT_FIELD,
    ArtinianReduction,
    almost_minimal_curve,
    almost_minimal_fourfold,
    almost_minimal_point,
    almost_minimal_surface,
    almost_minimal_threefold,
    artinian_quotient,
    ci_three_quadrics,
    collapse_linear_generators,
    cone,
    curve_on_scroll,
    elliptic_normal_curve,
    general_points,
    geometric_linear_section,
    inner_projection,
    points_ideal,
    points_on_rnc,
    rational_normal_curve,
    scroll,
    scroll_rows,
)
from syzygy.groebner import Ideal, ideal_equal, ideal_intersect, ideal_subset
from syzygy.invariants import (
    betti_table,
    derived_invariants,
    hilbert_data,
    sectional_genus,
)
from syzygy.polys import GREVLEX, Ring

from resolution_oracle import resolve_betti


def _profile(ideal):
    gb = ideal.groebner()
    hd = hilbert_data(gb)
    bt = betti_table(gb)
    di = derived_invariants(bt, hd)
    return gb, hd, bt, di


def _strand(bt, q, pmax):
    return tuple(bt.beta(p, q) for p in range(1, pmax + 1))


# ---------------------------------------------------------------------------
# scrolls and rational normal curves


def test_rnc3_is_the_twisted_cubic():
    i = rational_normal_curve(3)
    ring = i.ring
    z = [ring.variable(j) for j in range(4)]
    expected = Ideal(
        ring,
        [
            z[0] * z[2] - z[1] * z[1],
            z[0] * z[3] - z[1] * z[2],
            z[1] * z[3] - z[2] * z[2],
        ],
    )
    assert ideal_equal(i, expected)


def test_rnc4_table():
    _, hd, bt, di = _profile(rational_normal_curve(4))
    assert (hd.dimension, hd.degree) == (2, 4)
    assert {k: v for k, v in bt.entries.items() if v} == {
        (0, 0): 1,
        (1, 1): 6,
        (2, 1): 8,
        (3, 1): 3,
    }
    assert di.acm and di.regularity == 1
    assert sectional_genus(rational_normal_curve(4), seed=5) == 0


def test_surface_scroll_table_matches_minimal_degree():
    _, hd, bt, di = _profile(scroll((1, 2)))
    assert (hd.dimension, hd.degree) == (3, 3)
    assert {k: v for k, v in bt.entries.items() if v} == {
        (0, 0): 1,
        (1, 1): 3,
        (2, 1): 2,
    }
    assert di.acm


def test_scroll_layout_rule():
    assert scroll_rows((1, 2)) == ([0, 2, 3], [1, 3, 4])
    assert scroll_rows((1, 3)) == ([0, 2, 3, 4], [1, 3, 4, 5])
    assert scroll_rows((0, 1, 2)) == ([0, 3, 4], [1, 4, 5])
    assert scroll_rows((0, 0, 1, 2)) == ([0, 4, 5], [1, 5, 6])
    with pytest.raises(ValueError):
        scroll_rows((0, 0))


def test_vertex_scroll_matches_cone_over_scroll():
    with_vertex = scroll((0, 1, 2))
    coned = cone(scroll((1, 2)))
    _, hd1, bt1, _ = _profile(with_vertex)
    _, hd2, bt2, _ = _profile(coned)
    assert bt1.entries == bt2.entries
    assert (hd1.dimension, hd1.degree) == (hd2.dimension, hd2.degree) == (4, 3)


def test_cone_appends_coordinates_at_the_end():
    base = rational_normal_curve(3)
    coned = cone(base, 2)
    assert coned.ring.nvars == 6
    assert coned.ring.names == ("z0", "z1", "z2", "z3", "z4", "z5")
    _, hd, _, _ = _profile(coned)
    assert (hd.dimension, hd.degree) == (4, 3)


# ---------------------------------------------------------------------------
# almost-minimal-degree families

CURVE_E3_TABLE = {
    (0, 0): 1,
    (1, 1): 4,
    (2, 1): 2,
    (1, 2): 1,
    (2, 2): 6,
    (3, 2): 5,
    (4, 2): 1,
}


def test_curve_family_e3_full_table():
    i = almost_minimal_curve(3)
    _, hd, bt, di = _profile(i)
    assert (hd.dimension, hd.degree) == (2, 5)
    assert {k: v for k, v in bt.entries.items() if v} == CURVE_E3_TABLE
    assert (di.projective_dimension, di.depth) == (4, 1)
    assert di.gl_index == 0
    assert sectional_genus(i, seed=3) == 0


def test_curve_family_e3_table_against_resolution_oracle():
    i = almost_minimal_curve(3)
    oracle = resolve_betti(i.gens, i.ring)
    bt = betti_table(i.groebner())
    assert {k: v for k, v in oracle.items() if v} == {
        k: v for k, v in bt.entries.items() if v
    }


@pytest.mark.parametrize(
    "builder, extra_dim",
    [
        (almost_minimal_surface, 1),
        (almost_minimal_threefold, 2),
        (almost_minimal_fourfold, 3),
    ],
)
def test_higher_families_e3_share_the_curve_strand(builder, extra_dim):
    _, hd, bt, di = _profile(builder(3))
    assert hd.dimension == 2 + extra_dim
    assert hd.degree == 5
    assert di.depth == 1 + extra_dim
    assert _strand(bt, 1, 3) == (4, 2, 0)
    assert di.gl_index == 0


def test_curve_family_e4_strand():
    _, hd, bt, di = _profile(almost_minimal_curve(4))
    assert (hd.dimension, hd.degree) == (2, 6)
    assert _strand(bt, 1, 4) == (8, 12, 3, 0)
    assert di.depth == 1 and di.gl_index == 0


def test_family_points_lie_on_the_schemes():
    for kind, builder in [
        ("curve", almost_minimal_curve),
        ("surface", almost_minimal_surface),
        ("threefold", almost_minimal_threefold),
        ("fourfold", almost_minimal_fourfold),
    ]:
        i = builder(3)
        q = almost_minimal_point(kind, 3)
        assert len(q) == i.ring.nvars
        assert any(c != i.ring.field.zero for c in q)
        assert all(g.evaluate(q) == i.ring.field.zero for g in i.gens)


def test_scroll_lies_under_the_curve_family():
    for e in (3, 4):
        assert ideal_subset(scroll((1, e - 1)), almost_minimal_curve(e))


# ---------------------------------------------------------------------------
# elliptic normal curves


def test_elliptic_e4_is_the_del_pezzo_table():
    i = elliptic_normal_curve(4)
    assert i.ring.nvars == 6
    _, hd, bt, di = _profile(i)
    assert (hd.dimension, hd.degree) == (2, 6)
    assert {k: v for k, v in bt.entries.items() if v} == {
        (0, 0): 1,
        (1, 1): 9,
        (2, 1): 16,
        (3, 1): 9,
        (4, 2): 1,
    }
    assert di.acm
    assert sectional_genus(i, seed=3) == 1


def test_elliptic_needs_the_right_residue():
    with pytest.raises(ValueError):
        elliptic_normal_curve(3)


def test_collapse_linear_generators():
    curve = rational_normal_curve(3)
    big = cone(curve, 1)
    ring = big.ring
    padded = Ideal(ring, list(big.gens) + [ring.variable(4) - ring.variable(0)])
    small = collapse_linear_generators(padded)
    assert small.ring.nvars == 4
    _, hd, bt, _ = _profile(small)
    assert (hd.dimension, hd.degree) == (2, 3)
    assert {k: v for k, v in bt.entries.items() if v} == {
        (0, 0): 1,
        (1, 1): 3,
        (2, 1): 2,
    }
    untouched = collapse_linear_generators(curve)
    assert ideal_equal(untouched, curve)


# ---------------------------------------------------------------------------
# point sets


def test_general_points_profile():
    i = general_points(3, 7, seed=11)
    _, hd, bt, _ = _profile(i)
    assert (hd.dimension, hd.degree) == (1, 7)
    same = general_points(3, 7, seed=11)
    assert ideal_equal(i, same)


def test_points_on_rnc_lie_on_the_curve():
    pts = points_on_rnc(4, 8, seed=11)
    assert ideal_subset(rational_normal_curve(4), pts)
    _, hd, bt, _ = _profile(pts)
    assert (hd.dimension, hd.degree) == (1, 8)
    assert bt.beta(3, 1) == 3


def test_points_ideal_of_coordinate_points():
    ring = Ring(3, DEFAULT_FIELD, GREVLEX, ("z0", "z1", "z2"))
    one, zero = DEFAULT_FIELD.one, DEFAULT_FIELD.zero
    pts = [[one, zero, zero], [zero, one, zero], [zero, zero, one]]
    i = points_ideal(ring, pts)
    _, hd, _, _ = _profile(i)
    assert (hd.dimension, hd.degree) == (1, 3)


# ---------------------------------------------------------------------------
# sections, quotients, projections


def test_curve_section_of_surface_scroll():
    section = geometric_linear_section(scroll((1, 2)), 1, seed=5)
    _, hd, bt, _ = _profile(section)
    assert (hd.dimension, hd.degree) == (2, 3)
    assert {k: v for k, v in bt.entries.items() if v} == {
        (0, 0): 1,
        (1, 1): 3,
        (2, 1): 2,
    }


def test_section_codimension_bounds():
    with pytest.raises(ValueError):
        geometric_linear_section(rational_normal_curve(3), 2, seed=1)


def test_artinian_quotient_regular_for_acm():
    red = artinian_quotient(rational_normal_curve(4), seed=3)
    assert isinstance(red, ArtinianReduction)
    assert red.regular
    assert red.ideal.ring.nvars == 3


def test_artinian_quotient_not_regular_below_depth():
    red = artinian_quotient(almost_minimal_curve(3), seed=3)
    assert not red.regular


def test_inner_projection_of_rnc4():
    i = rational_normal_curve(4)
    field = i.ring.field
    point = [field.coerce(2**j) for j in range(5)]
    proj = inner_projection(i, point)
    _, hd, bt, _ = _profile(proj)
    assert (hd.dimension, hd.degree) == (2, 3)
    assert _strand(bt, 1, 2) == (3, 2)


def test_inner_projection_rejects_outside_points():
    i = rational_normal_curve(4)
    field = i.ring.field
    point = [field.one] * 4 + [field.coerce(7)]
    with pytest.raises(ValueError):
        inner_projection(i, point)


# ---------------------------------------------------------------------------
# curves on scrolls and complete intersections


def test_curve_on_scroll_low_class():
    i = curve_on_scroll(1, 2, 1, 2, seed=31)
    _, hd, bt, di = _profile(i)
    assert (hd.dimension, hd.degree) == (2, 5)
    assert _strand(bt, 1, 2) == (4, 2)
    assert di.depth == 1
    assert sectional_genus(i, seed=9) == 0
    assert ideal_subset(scroll((1, 2)), i)


def test_curve_on_scroll_acm_class():
    i = curve_on_scroll(1, 2, 2, 0, seed=31)
    _, hd, bt, di = _profile(i)
    assert (hd.dimension, hd.degree) == (2, 6)
    assert di.acm
    assert sectional_genus(i, seed=9) == 2


def test_curve_on_scroll_validates_arguments():
    with pytest.raises(ValueError):
        curve_on_scroll(2, 1, 1, 0, seed=1)
    with pytest.raises(ValueError):
        curve_on_scroll(1, 2, 1, -9, seed=1)


def test_broken_divisor_union_is_acm_of_next_degree():
    X = curve_on_scroll(1, 2, 1, 2, seed=31)
    ring = X.ring
    line = Ideal(ring, [ring.variable(j) for j in range(2, 5)])
    Z = ideal_intersect(X, line)
    _, hd, bt, di = _profile(Z)
    assert (hd.dimension, hd.degree) == (2, 6)
    assert di.acm
    assert _strand(bt, 1, 3) == (4, 2, 0)
    assert tuple(bt.beta(p, 2) for p in (2, 3)) == (3, 2)


def test_three_quadric_curve():
    i, point = ci_three_quadrics(seed=17)
    assert all(g.evaluate(point) == i.ring.field.zero for g in i.gens)
    _, hd, bt, di = _profile(i)
    assert (hd.dimension, hd.degree) == (2, 8)
    assert di.acm
    assert _strand(bt, 1, 1) == (3,)
    assert sectional_genus(i, seed=9) == 5
    again, _ = ci_three_quadrics(seed=17)
    assert ideal_equal(i, again)
