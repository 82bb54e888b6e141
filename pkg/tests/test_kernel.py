"""Field, polynomial, order, and linear algebra tests for the kernel layer."""

import random
from fractions import Fraction

import pytest

from syzygy.fields import QQ, DEFAULT_PRIME, PrimeField, field_from_token, is_prime
from syzygy.linalg import Matrix, rank, rank_and_kernel
from syzygy.polys import (
    GREVLEX,
    LEX,
    BlockOrder,
    Ring,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


def test_is_prime_small_table():
    primes = [n for n in range(2, 40) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert is_prime(DEFAULT_PRIME)
    assert not is_prime(1) and not is_prime(32001)


def test_gf7_inverses_match_brute_force():
    f = PrimeField(7)
    # Brute-force inverse table over GF(7).
    table = {a: next(b for b in range(1, 7) if a * b % 7 == 1) for a in range(1, 7)}
    for a in range(1, 7):
        assert f.inv(a) == table[a]
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_prime_field_axioms_sampled():
    f = PrimeField(DEFAULT_PRIME)
    rng = random.Random(101)
    for _ in range(200):
        a, b, c = (rng.randrange(f.p) for _ in range(3))
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1


def test_rational_field_coercion():
    assert QQ.coerce(3) == Fraction(3)
    assert QQ.div(Fraction(1), Fraction(3)) == Fraction(1, 3)
    assert field_from_token("Q") is QQ
    assert field_from_token("32003") == PrimeField(32003)
    with pytest.raises(ValueError):
        field_from_token("32001")


def test_monomial_helpers():
    a, b = (2, 0, 1), (1, 3, 0)
    assert mono_mul(a, b) == (3, 3, 1)
    assert mono_lcm(a, b) == (2, 3, 1)
    assert not mono_divides(a, b)
    assert mono_divides((1, 0, 0), a)
    assert mono_div(a, (1, 0, 0)) == (1, 0, 1)


def test_grevlex_order_cases():
    key = GREVLEX.key
    # Degree dominates.
    assert key((0, 0, 2)) > key((1, 0, 0))
    # Equal degree: x1^2 beats x0*x2 in three variables.
    assert key((0, 2, 0)) > key((1, 0, 1))
    # And x0*x1 beats x1^2 (last differing exponent smaller wins).
    assert key((1, 1, 0)) > key((0, 2, 0))


def test_lex_order_cases():
    key = LEX.key
    assert key((1, 0, 0)) > key((0, 5, 0))
    assert key((1, 1, 0)) > key((1, 0, 4))


def test_block_order_eliminated_block_dominates():
    key = BlockOrder(2).key
    # Any monomial touching the first two variables beats any that avoids them.
    assert key((1, 0, 0, 0)) > key((0, 0, 7, 7))
    assert key((0, 1, 1, 0)) > key((0, 0, 0, 9))
    # Within the tail block the comparison is grevlex.
    assert key((0, 0, 1, 1)) > key((0, 0, 0, 2))


def test_ring_validation():
    with pytest.raises(ValueError):
        Ring(0, QQ)
    with pytest.raises(ValueError):
        Ring(33, QQ)
    r = Ring(3, QQ, names=("a", "b", "c"))
    assert r.names == ("a", "b", "c")
    with pytest.raises(ValueError):
        Ring(3, QQ, names=("a", "b"))


def test_monomials_of_degree_enumeration():
    r = Ring(3, QQ)
    monos = list(r.monomials_of_degree(2))
    assert len(monos) == 6
    assert all(sum(m) == 2 for m in monos)
    assert len(set(monos)) == 6
    assert list(r.monomials_of_degree(0)) == [(0, 0, 0)]


def test_binomial_cube_expansion():
    r = Ring(2, QQ)
    x, y = r.variable(0), r.variable(1)
    f = x + y
    cube = f * f * f
    assert cube.terms == {
        (3, 0): Fraction(1),
        (2, 1): Fraction(3),
        (1, 2): Fraction(3),
        (0, 3): Fraction(1),
    }
    assert cube.is_homogeneous() and cube.degree() == 3


def test_polynomial_arithmetic_random():
    r = Ring(3, PrimeField(32003))
    rng = random.Random(7)

    def rand_poly():
        terms = {}
        for _ in range(rng.randrange(1, 5)):
            m = tuple(rng.randrange(3) for _ in range(3))
            terms[m] = rng.randrange(1, 32003)
        return r.from_terms(terms)

    for _ in range(40):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f - f).is_zero()


def test_lead_monomial_and_monic():
    r = Ring(3, PrimeField(32003))
    x0, x1, x2 = (r.variable(i) for i in range(3))
    f = x1 * x1 - x0 * x2
    assert f.lead_monomial() == (0, 2, 0)
    g = f.scale(7).monic()
    assert g.lead_coeff() == 1
    assert g == f


def test_homogeneous_parts_and_flag():
    r = Ring(2, QQ)
    x, y = r.variable(0), r.variable(1)
    f = x * x + y
    assert not f.is_homogeneous()
    parts = f.homogeneous_parts()
    assert sorted(parts) == [1, 2]
    assert parts[2] == x * x and parts[1] == y


def test_partial_and_evaluate():
    r = Ring(2, PrimeField(101))
    x, y = r.variable(0), r.variable(1)
    f = x * x * y + y.scale(3)
    assert f.partial(0) == (x * y).scale(2)
    assert f.evaluate([2, 5]) == (4 * 5 + 15) % 101


def test_substitute_linear_change():
    r = Ring(2, QQ)
    x, y = r.variable(0), r.variable(1)
    f = x * x - y * y
    g = f.substitute([x + y, x - y])
    assert g == (x * y).scale(4)


def test_render_canonical():
    r = Ring(3, QQ)
    x0, x1, x2 = (r.variable(i) for i in range(3))
    f = x1 * x1 - x0 * x2
    assert f.render() == "z1^2 - z0*z2"
    assert r.zero().render() == "0"
    assert (x0.scale(Fraction(1, 2))).render() == "1/2*z0"


def _naive_rank_q(rows) -> int:
    """Independent plain Gaussian elimination over Fraction."""
    work = [[Fraction(x) for x in r] for r in rows]
    rank_ = 0
    ncols = len(work[0]) if work else 0
    for col in range(ncols):
        piv = next((i for i in range(rank_, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank_], work[piv] = work[piv], work[rank_]
        pr = work[rank_]
        for i in range(len(work)):
            if i != rank_ and work[i][col] != 0:
                c = work[i][col] / pr[col]
                work[i] = [a - c * b for a, b in zip(work[i], pr)]
        rank_ += 1
    return rank_


def test_rank_matches_naive_oracle():
    rng = random.Random(424242)
    for _ in range(30):
        nr, nc = rng.randrange(1, 9), rng.randrange(1, 9)
        rows = [[rng.randrange(-4, 5) for _ in range(nc)] for _ in range(nr)]
        expected = _naive_rank_q(rows)
        m = Matrix(QQ, [[Fraction(x) for x in r] for r in rows])
        assert rank(m) == expected
        got_rank, kernel = rank_and_kernel(m)
        assert got_rank == expected
        assert len(kernel) == nc - expected


def test_kernel_vectors_annihilate():
    rng = random.Random(5150)
    p = 32003
    fp = PrimeField(p)
    for _ in range(25):
        nr, nc = rng.randrange(1, 8), rng.randrange(1, 8)
        rows = [[rng.randrange(p) for _ in range(nc)] for _ in range(nr)]
        r_, kernel = rank_and_kernel(Matrix(fp, rows))
        for v in kernel:
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) % p == 0
        # Over Q as well, on the same integer matrix.
        rq, kq = rank_and_kernel(Matrix(QQ, [[Fraction(x) for x in r] for r in rows]))
        for v in kq:
            for row in rows:
                assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0


def test_prime_rank_at_most_rational_rank():
    rng = random.Random(987)
    fp = PrimeField(32003)
    for _ in range(30):
        nr, nc = rng.randrange(1, 7), rng.randrange(1, 7)
        rows = [[rng.randrange(-20, 21) for _ in range(nc)] for _ in range(nr)]
        rq = rank(Matrix(QQ, [[Fraction(x) for x in r] for r in rows]))
        rp = rank(Matrix(fp, [[x % 32003 for x in r] for r in rows]))
        assert rp <= rq
        # With entries this small the ranks agree.
        assert rp == rq


def test_hand_eliminated_kernel():
    # Rows reduce by hand: kernel of [[1,2,3],[2,4,6]] is spanned by
    # (-2,1,0) and (-3,0,1).
    m = Matrix(QQ, [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]])
    r_, kernel = rank_and_kernel(m)
    assert r_ == 1
    assert len(kernel) == 2
    span = {tuple(v) for v in kernel}
    assert (Fraction(-2), Fraction(1), Fraction(0)) in span
    assert (Fraction(-3), Fraction(0), Fraction(1)) in span


def test_empty_matrix_cases():
    m = Matrix(QQ, [], ncols=3)
    r_, kernel = rank_and_kernel(m)
    assert r_ == 0 and len(kernel) == 3
    assert rank(Matrix(PrimeField(5), [[0, 0], [0, 0]])) == 0
