"""Monomials, term orders, polynomial rings, and dense-dict polynomials.

Monomials are plain exponent tuples of fixed width nvars.  Term orders are
small objects exposing a sort key; bigger key means bigger monomial.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

MAX_VARS = 32

Monomial = tuple


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def _grevlex_key(m: Monomial):
    # Higher total degree wins; ties broken so the monomial with the
    # smaller exponent on the last differing variable is the bigger one.
    return (sum(m), tuple(-e for e in reversed(m)))


class GrevlexOrder:
    name = "grevlex"

    def key(self, m: Monomial):
        return _grevlex_key(m)

    def __eq__(self, other) -> bool:
        return isinstance(other, GrevlexOrder)

    def __hash__(self) -> int:
        return hash("grevlex")

    def __repr__(self) -> str:
        return "grevlex"


class LexOrder:
    name = "lex"

    def key(self, m: Monomial):
        return m

    def __eq__(self, other) -> bool:
        return isinstance(other, LexOrder)

    def __hash__(self) -> int:
        return hash("lex")

    def __repr__(self) -> str:
        return "lex"


class BlockOrder:
    """Elimination order: the first k variables dominate, grevlex in each block."""

    name = "block"

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("block order needs k >= 1 eliminated variables")
        self.k = k

    def key(self, m: Monomial):
        return (_grevlex_key(m[: self.k]), _grevlex_key(m[self.k :]))

    def __eq__(self, other) -> bool:
        return isinstance(other, BlockOrder) and other.k == self.k

    def __hash__(self) -> int:
        return hash(("block", self.k))

    def __repr__(self) -> str:
        return f"block({self.k})"


GREVLEX = GrevlexOrder()
LEX = LexOrder()


class Ring:
    """A graded polynomial ring: variable count, coefficient field, term order."""

    __slots__ = ("nvars", "field", "order", "names", "_key")

    def __init__(self, nvars: int, field, order=None, names=None):
        if not 1 <= nvars <= MAX_VARS:
            raise ValueError(f"nvars must be in 1..{MAX_VARS}, got {nvars}")
        self.nvars = nvars
        self.field = field
        self.order = order if order is not None else GREVLEX
        if names is None:
            names = tuple(f"z{i}" for i in range(nvars))
        else:
            names = tuple(names)
            if len(names) != nvars:
                raise ValueError("variable name count does not match nvars")
        self.names = names
        self._key = self.order.key

    def key(self, m: Monomial):
        return self._key(m)

    def zero_mono(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.zero_mono(): self.field.one})

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {self.zero_mono(): c})

    def variable(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        c = self.field.coerce(coeff)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {exps: c})

    def from_terms(self, terms: dict) -> "Polynomial":
        clean = {}
        zero = self.field.zero
        for mono, c in terms.items():
            c = self.field.coerce(c) if not self._is_element(c) else c
            if c != zero:
                clean[tuple(mono)] = c
        return Polynomial(self, clean)

    def _is_element(self, c) -> bool:
        if isinstance(self.field, type(None)):
            return False
        from .fields import PrimeField

        if isinstance(self.field, PrimeField):
            return isinstance(c, int) and 0 <= c < self.field.p
        return isinstance(c, Fraction)

    def monomials_of_degree(self, d: int):
        """All exponent tuples of total degree d, in a fixed deterministic order."""
        if d < 0:
            return
        n = self.nvars
        for bars in itertools.combinations(range(d + n - 1), n - 1):
            exps = []
            prev = -1
            for b in bars:
                exps.append(b - prev - 1)
                prev = b
            exps.append(d + n - 2 - prev)
            yield tuple(exps)

    def with_order(self, order) -> "Ring":
        return Ring(self.nvars, self.field, order, self.names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ring)
            and other.nvars == self.nvars
            and other.field == self.field
            and other.order == self.order
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.field, self.order))

    def __repr__(self) -> str:
        return f"Ring({self.nvars} vars, {self.field}, {self.order})"


class Polynomial:
    """Immutable-by-convention sparse polynomial: dict of exponent tuple -> coeff."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead = None

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_parts(self) -> dict:
        """Split into {degree: polynomial} by total degree."""
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(parts.items())}

    def lead_monomial(self) -> Monomial:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no lead term")
            self._lead = max(self.terms, key=self.ring._key)
        return self._lead

    def lead_coeff(self):
        return self.terms[self.lead_monomial()]

    def sorted_terms(self) -> list:
        """Terms as (monomial, coeff), biggest monomial first."""
        return sorted(self.terms.items(), key=lambda t: self.ring._key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lead_coeff())
        if inv == self.ring.field.one:
            return self
        return self.scale(inv)

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f.coerce(c) if isinstance(c, (int, Fraction)) else c
        if c == f.zero:
            return self.ring.zero()
        return Polynomial(self.ring, {m: f.mul(v, c) for m, v in self.terms.items()})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(out.get(m, f.zero), c)
            if s == f.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = f.sub(out.get(m, f.zero), c)
            if s == f.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        f = self.ring.field
        out: dict = {}
        zero = f.zero
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = f.add(out.get(m, zero), f.mul(c1, c2))
                if s == zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def mul_term(self, mono: Monomial, coeff) -> "Polynomial":
        """Multiply by a single term coeff * x^mono."""
        f = self.ring.field
        if coeff == f.zero:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(x + y for x, y in zip(m, mono)): f.mul(c, coeff) for m, c in self.terms.items()},
        )

    def partial(self, i: int) -> "Polynomial":
        """Partial derivative with respect to variable i."""
        f = self.ring.field
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            c2 = f.mul(c, f.coerce(e))
            if c2 == f.zero:
                continue
            m2 = list(m)
            m2[i] = e - 1
            out[tuple(m2)] = c2
        return Polynomial(self.ring, out)

    def evaluate(self, point: list):
        """Value at a point given as a list of field elements."""
        f = self.ring.field
        total = f.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                for _ in range(e):
                    v = f.mul(v, x)
            total = f.add(total, v)
        return total

    def substitute(self, subs: list) -> "Polynomial":
        """Compose with subs[i] in place of variable i; subs live in one ring."""
        target = subs[0].ring
        f = target.field
        powers: list[dict[int, Polynomial]] = [dict() for _ in subs]
        out = target.zero()
        for m, c in self.terms.items():
            piece = target.constant(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    acc = subs[i]
                    for _ in range(e - 1):
                        acc = acc * subs[i]
                    cache[e] = acc
                piece = piece * cache[e]
            out = out + piece
        return out

    def map_exponents(self, new_ring: Ring, fn) -> "Polynomial":
        """Rebuild in new_ring applying fn to each exponent tuple."""
        out: dict = {}
        f = new_ring.field
        for m, c in self.terms.items():
            m2 = tuple(fn(m))
            s = f.add(out.get(m2, f.zero), c)
            if s == f.zero:
                out.pop(m2, None)
            else:
                out[m2] = s
        return Polynomial(new_ring, out)

    def render(self) -> str:
        """Canonical text form, parseable by the ideal-file reader."""
        if not self.terms:
            return "0"
        f = self.ring.field
        names = self.ring.names
        chunks = []
        for m, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            neg = isinstance(c, Fraction) and c < 0
            mag = -c if neg else c
            coeff_txt = f.render(mag)
            if factors and coeff_txt == "1":
                body = "*".join(factors)
            elif factors:
                body = coeff_txt + "*" + "*".join(factors)
            else:
                body = coeff_txt
            chunks.append(("- " if neg else "+ ") + body)
        text = " ".join(chunks)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError("polynomial rings do not match")

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and other.ring == self.ring and other.terms == self.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.render()})"
