"""Field objects backing exact linear algebra.

Four concrete fields appear:

* ``PrimeField(p)``         -- Z/p, int payloads in [0, p)
* ``QuotientPolyField``     -- F_p[x]/(f) for irreducible f, reduced tuples
* ``RationalField``         -- Q, stdlib Fraction payloads
* ``RationalFunctionField`` -- F_p(x), reduced (numerator, denominator) pairs

Fields share the payload-plus-object calling convention of the rings, so the
matrix code runs unchanged over either.  Residue fields lift back to the ring
with ``lift``; fraction fields expose ``numerator``/``denominator`` so
denominator clearing stays exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .rings import IntegerRing, PolynomialRing, PrimeElement


class FieldBase:
    is_domain = True

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def exact_div(self, a, b):
        return self.div(a, b)

    def is_unit(self, a):
        return not self.is_zero(a)

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == self.zero()

    def unit_of(self, a):
        return a

    def inv_unit(self, u):
        return self.inv(u)

    def from_int(self, k):
        acc = self.zero()
        one = self.one()
        for _ in range(abs(k)):
            acc = self.add(acc, one)
        return acc if k >= 0 else self.neg(acc)


class PrimeField(FieldBase):
    def __init__(self, p):
        self.p = p
        self.name = f"F{p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def from_int(self, k):
        return k % self.p

    def elements(self):
        return range(self.p)

    def size(self):
        return self.p

    def lift(self, a):
        return a

    def format(self, a):
        return str(a)

    def __repr__(self):
        return self.name


class QuotientPolyField(FieldBase):
    """F_p[x]/(modulus) for a monic irreducible modulus."""

    def __init__(self, ring, modulus):
        self.ring = ring
        self.modulus = modulus
        self.degree = ring.deg(modulus)
        self.name = f"F{ring.p}[x]/({ring.format(modulus)})"

    def __eq__(self, other):
        return (isinstance(other, QuotientPolyField)
                and other.ring == self.ring and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("QuotientPolyField", self.ring.p, self.modulus))

    def zero(self):
        return ()

    def one(self):
        return (1,)

    def reduce(self, a):
        return self.ring.divmod(a, self.modulus)[1]

    def add(self, a, b):
        return self.ring.add(a, b)

    def neg(self, a):
        return self.ring.neg(a)

    def mul(self, a, b):
        return self.reduce(self.ring.mul(a, b))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero residue")
        _d, s, _t = self.ring.egcd(a, self.modulus)
        return self.reduce(s)

    def from_int(self, k):
        return self.ring.from_int(k)

    def elements(self):
        p, d = self.ring.p, self.degree
        for idx in range(p ** d):
            coeffs = []
            k = idx
            for _ in range(d):
                coeffs.append(k % p)
                k //= p
            yield self.ring._trim(coeffs)

    def size(self):
        return self.ring.p ** self.degree

    def lift(self, a):
        return a

    def format(self, a):
        return self.ring.format(a)

    def __repr__(self):
        return self.name


class RationalField(FieldBase):
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a

    def from_int(self, k):
        return Fraction(k)

    def from_ring(self, a):
        return Fraction(a)

    def numerator(self, a):
        return a.numerator

    def denominator(self, a):
        return a.denominator

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return self.name


class RationalFunctionField(FieldBase):
    """F_p(x); payloads are (num, den) with den monic and gcd(num, den) = 1."""

    def __init__(self, ring):
        self.ring = ring
        self.name = f"F{ring.p}(x)"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.ring == self.ring

    def __hash__(self):
        return hash(("RationalFunctionField", self.ring.p))

    def _make(self, num, den):
        ring = self.ring
        if not num:
            return ((), (1,))
        g = ring.gcd(num, den)
        if not ring.is_unit(g):
            num = ring.exact_div(num, g)
            den = ring.exact_div(den, g)
        u = ring.unit_of(den)
        ui = ring.inv_unit(u)
        return (ring.mul(num, ui), ring.mul(den, ui))

    def zero(self):
        return ((), (1,))

    def one(self):
        return ((1,), (1,))

    def add(self, a, b):
        ring = self.ring
        return self._make(
            ring.add(ring.mul(a[0], b[1]), ring.mul(b[0], a[1])),
            ring.mul(a[1], b[1]))

    def neg(self, a):
        return (self.ring.neg(a[0]), a[1])

    def mul(self, a, b):
        ring = self.ring
        return self._make(ring.mul(a[0], b[0]), ring.mul(a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero rational function")
        return self._make(a[1], a[0])

    def from_int(self, k):
        return (self.ring.from_int(k), (1,))

    def from_ring(self, a):
        return (a, (1,))

    def numerator(self, a):
        return a[0]

    def denominator(self, a):
        return a[1]

    def format(self, a):
        return f"{self.ring.format(a[0])}/{self.ring.format(a[1])}"

    def __repr__(self):
        return self.name


def fraction_field_of(ring):
    if isinstance(ring, IntegerRing):
        return RationalField()
    if isinstance(ring, PolynomialRing):
        return RationalFunctionField(ring)
    raise PreconditionError(f"{ring} has no implemented fraction field")


def residue_field_of(ring, prime):
    value = prime.value if isinstance(prime, PrimeElement) else prime
    if isinstance(ring, IntegerRing):
        return PrimeField(abs(value))
    if isinstance(ring, PolynomialRing):
        return QuotientPolyField(ring, ring.unit_normal(value))
    raise PreconditionError(f"{ring} has no implemented residue fields")


def embed(ring, field, a):
    """Image of ring payload ``a`` in ``field`` (quotient or fraction map)."""
    if isinstance(field, (RationalField, RationalFunctionField)):
        return field.from_ring(a)
    if isinstance(field, PrimeField):
        return a % field.p
    if isinstance(field, QuotientPolyField):
        return field.reduce(a)
    raise PreconditionError(f"no embedding into {field}")
