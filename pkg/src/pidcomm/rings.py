"""Exact coefficient rings: Z, F_p[x], and Z/N.

Ring elements are plain payloads operated on through a ring object:

* ``IntegerRing`` uses Python ints (arbitrary precision).
* ``PolynomialRing(p)`` uses tuples of ints in ``{0..p-1}``, constant
  coefficient first, with no trailing zeros; ``()`` is the zero polynomial.
* ``ResidueClassRing(N)`` uses ints in ``[0, N)``.  It is not a domain and
  supports only the arithmetic needed to lift and reduce; the gcd- and
  factorization-based operations raise.

Unit-normal associates are positive integers and monic polynomials, so ideal
equality reduces to payload equality.  All searches and factorizations are
deterministic: candidates are enumerated in a fixed total order (integers by
magnitude, polynomials by degree then coefficients) and Pollard rho runs a
fixed parameter schedule with trial division as the fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd as _int_gcd, isqrt

from .errors import DegenerateInputError, PreconditionError, InternalInvariantError

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_BOUND = 10_000


@dataclass(frozen=True)
class PrimeElement:
    """An irreducible element in unit-normal form.

    ``residue_field_size`` is p for an integer prime and p**deg for a monic
    irreducible over F_p.
    """

    ring: "Ring"
    value: object
    residue_field_size: int

    def __repr__(self):
        return f"PrimeElement({self.ring.format(self.value)})"


@dataclass(frozen=True)
class Factorisation:
    """unit * prod(prime**exp) == the factored element, exactly."""

    ring: "Ring"
    unit: object
    factors: tuple  # of (PrimeElement, exponent) pairs, sorted

    def value(self):
        acc = self.unit
        for prime, exp in self.factors:
            for _ in range(exp):
                acc = self.ring.mul(acc, prime.value)
        return acc

    def factor_count(self):
        """Number of prime factors counted with multiplicity."""
        return sum(exp for _, exp in self.factors)

    def prime_values(self):
        return [prime.value for prime, _ in self.factors]


class Ring:
    """Shared helpers; concrete backends fill in the primitive operations."""

    is_domain = True

    # -- primitive operations implemented by backends -------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def is_unit(self, a):
        raise NotImplementedError

    def unit_of(self, a):
        """Unit u with a == u * unit_normal(a)."""
        raise NotImplementedError

    def inv_unit(self, u):
        raise NotImplementedError

    def divmod(self, a, b):
        raise NotImplementedError

    def sort_key(self, a):
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def parse(self, text):
        raise NotImplementedError

    # -- derived operations ---------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a):
        return a == self.zero()

    def eq(self, a, b):
        return a == b

    def from_int(self, k):
        acc = self.zero()
        one = self.one()
        for _ in range(abs(k)):
            acc = self.add(acc, one)
        return acc if k >= 0 else self.neg(acc)

    def unit_normal(self, a):
        if self.is_zero(a):
            return a
        return self.exact_div(a, self.unit_of(a))

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise InternalInvariantError(
                f"exact division failed: {self.format(a)} by {self.format(b)}")
        return q

    def divides(self, b, a):
        """True when b | a (b nonzero)."""
        if self.is_zero(b):
            return self.is_zero(a)
        return self.is_zero(self.divmod(a, b)[1])

    def scale_matrixless(self, a, k):
        return self.mul(a, self.from_int(k))

    def egcd(self, a, b):
        """(d, s, t) with d = s*a + t*b, d unit-normal generating (a, b)."""
        if self.is_zero(a) and self.is_zero(b):
            raise DegenerateInputError("egcd(0, 0) is undefined")
        r0, r1 = a, b
        s0, s1 = self.one(), self.zero()
        t0, t1 = self.zero(), self.one()
        while not self.is_zero(r1):
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        u = self.unit_of(r0)
        ui = self.inv_unit(u)
        return self.mul(r0, ui), self.mul(s0, ui), self.mul(t0, ui)

    def gcd(self, a, b):
        if self.is_zero(a) and self.is_zero(b):
            return self.zero()
        return self.egcd(a, b)[0]

    def lcm(self, a, b):
        if self.is_zero(a) or self.is_zero(b):
            return self.zero()
        return self.unit_normal(self.exact_div(self.mul(a, b), self.gcd(a, b)))

    def gcd_many(self, values):
        acc = self.zero()
        for v in values:
            acc = v if self.is_zero(acc) else self.gcd(acc, v)
            acc = self.unit_normal(acc)
            if self.is_unit(acc):
                return self.one()
        return self.unit_normal(acc)

    def crt(self, residues, moduli):
        """r with r = residues[i] mod moduli[i], reduced mod the product."""
        if len(residues) != len(moduli) or not residues:
            raise DegenerateInputError("crt needs matching nonempty sequences")
        for m in moduli:
            if self.is_zero(m) or self.is_unit(m):
                raise PreconditionError("crt moduli must be nonzero nonunits")
        r, m = residues[0], moduli[0]
        r = self.divmod(r, m)[1]
        for r2, m2 in zip(residues[1:], moduli[1:]):
            d, s, _t = self.egcd(m, m2)
            if not self.is_unit(d):
                raise PreconditionError("crt moduli are not pairwise coprime")
            # r + m*s*(r2 - r) = r2 mod m2 since m*s = 1 mod m2
            di = self.inv_unit(self.unit_of(d))
            step = self.mul(self.mul(m, self.mul(s, di)), self.sub(r2, r))
            m = self.mul(m, m2)
            r = self.divmod(self.add(r, step), m)[1]
        return r

    def prime(self, value):
        """Wrap a payload as a PrimeElement after normalizing."""
        v = self.unit_normal(value)
        return PrimeElement(self, v, self.residue_field_size(v))

    def residue_field_size(self, p):
        raise NotImplementedError

    def factor(self, a):
        raise NotImplementedError

    def is_irreducible(self, a):
        raise NotImplementedError


class IntegerRing(Ring):
    name = "Z"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("IntegerRing")

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def sub(self, a, b):
        return a - b

    def is_unit(self, a):
        return a in (1, -1)

    def unit_of(self, a):
        return -1 if a < 0 else 1

    def inv_unit(self, u):
        return u

    def divmod(self, a, b):
        q, r = divmod(a, b)
        return q, r

    def from_int(self, k):
        return k

    def sort_key(self, a):
        return (abs(a), a)

    def format(self, a):
        return str(a)

    def parse(self, text):
        if isinstance(text, int):
            return text
        return int(text)

    def residue_field_size(self, p):
        return abs(p)

    def is_irreducible(self, a):
        return _is_prime_int(abs(a))

    def factor(self, a):
        if a == 0:
            raise DegenerateInputError("cannot factor 0")
        unit = -1 if a < 0 else 1
        n = abs(a)
        counts = {}
        for p in _factor_int(n):
            counts[p] = counts.get(p, 0) + 1
        factors = tuple(
            (self.prime(p), counts[p]) for p in sorted(counts))
        return Factorisation(self, unit, factors)

    def __repr__(self):
        return "Z"


def _is_prime_int(n):
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n):
    """One nontrivial factor of composite odd n, deterministic schedule."""
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                g = _int_gcd(q, n)
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = _int_gcd(abs(x - ys), n)
        if g != n:
            return g
    # Deterministic fallback: full trial division.
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _factor_int(n):
    out = []
    for p in (2, 3, 5, 7):
        while n % p == 0:
            out.append(p)
            n //= p
    f = 11
    while f <= _TRIAL_BOUND and f * f <= n:
        while n % f == 0:
            out.append(f)
            n //= f
        f += 2
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime_int(m):
            out.append(m)
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


class PolynomialRing(Ring):
    """Univariate polynomials over the prime field F_p."""

    def __init__(self, p):
        if not _is_prime_int(p):
            raise PreconditionError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}[x]"

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.p == self.p

    def __hash__(self):
        return hash(("PolynomialRing", self.p))

    def zero(self):
        return ()

    def one(self):
        return (1,)

    def x(self):
        return (0, 1)

    def _trim(self, coeffs):
        i = len(coeffs)
        while i > 0 and coeffs[i - 1] == 0:
            i -= 1
        return tuple(coeffs[:i])

    def make(self, coeffs):
        return self._trim([c % self.p for c in coeffs])

    def deg(self, a):
        return len(a) - 1 if a else -1

    def add(self, a, b):
        n = max(len(a), len(b))
        out = [0] * n
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return self._trim(out)

    def neg(self, a):
        return tuple((-c) % self.p for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] = (out[i + j] + ca * cb) % self.p
        return self._trim(out)

    def is_unit(self, a):
        return len(a) == 1

    def unit_of(self, a):
        return (a[-1],) if a else (1,)

    def inv_unit(self, u):
        return (pow(u[0], -1, self.p),)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        lead_inv = pow(b[-1], -1, p)
        rem = list(a)
        db = len(b) - 1
        q = [0] * max(len(a) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            coef = c * lead_inv % p
            q[i - db] = coef
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - coef * b[j]) % p
        return self._trim(q), self._trim(rem)

    def from_int(self, k):
        return self.make([k])

    def sort_key(self, a):
        return (len(a), tuple(reversed(a)))

    def format(self, a):
        return "[" + ",".join(str(c) for c in a) + "]"

    def parse(self, coeffs):
        if isinstance(coeffs, (list, tuple)):
            return self.make([int(c) for c in coeffs])
        return self.make([int(coeffs)])

    def residue_field_size(self, f):
        return self.p ** self.deg(f)

    def pow_mod(self, a, e, mod):
        result = self.one()
        base = self.divmod(a, mod)[1]
        while e:
            if e & 1:
                result = self.divmod(self.mul(result, base), mod)[1]
            base = self.divmod(self.mul(base, base), mod)[1]
            e >>= 1
        return result

    def derivative(self, a):
        return self._trim([(i * c) % self.p for i, c in enumerate(a)][1:])

    def is_irreducible(self, f):
        d = self.deg(f)
        if d <= 0:
            return False
        if d == 1:
            return True
        f = self.unit_normal(f)
        x = self.x()
        # f irreducible of degree d iff x^(p^d) = x mod f and
        # gcd(x^(p^(d/q)) - x, f) = 1 for every prime q | d.
        xp = self.pow_mod(x, self.p ** d, f)
        if xp != self.divmod(x, f)[1]:
            return False
        for q in sorted(set(_factor_int(d))):
            e = d // q
            g = self.gcd(self.sub(self.pow_mod(x, self.p ** e, f), x), f)
            if not self.is_unit(g):
                return False
        return True

    def monic_irreducibles(self, degree):
        return _monic_irreducibles(self.p, degree)

    def _pth_root(self, f):
        # f = g(x^p) over F_p; the root g keeps every p-th coefficient
        # (Frobenius fixes F_p pointwise).
        return self._trim([f[i] for i in range(0, len(f), self.p)])

    def _squarefree_parts(self, f):
        """Yield (squarefree factor, multiplicity) pairs, Yun-style."""
        out = {}

        def accumulate(g, mult):
            if self.deg(g) > 0:
                out[g] = out.get(g, 0) + mult

        def walk(f, outer_mult):
            df = self.derivative(f)
            if not df:
                walk(self._pth_root(f), outer_mult * self.p)
                return
            c = self.gcd(f, df)
            w = self.exact_div(f, c)
            m = 1
            while self.deg(w) > 0:
                y = self.gcd(w, c)
                z = self.exact_div(w, y)
                accumulate(z, m * outer_mult)
                w = y
                c = self.exact_div(c, y)
                m += 1
            if self.deg(c) > 0:
                # remaining c has zero derivative; the recursion takes its
                # p-th root and scales multiplicities itself
                walk(c, outer_mult)

        walk(self.unit_normal(f), 1)
        return out.items()

    def _distinct_degree(self, f):
        """Split squarefree monic f into (product of degree-d irreducibles, d)."""
        out = []
        x = self.x()
        h = self.divmod(x, f)[1]
        d = 0
        rest = f
        while self.deg(rest) > 2 * d:
            d += 1
            h = self.pow_mod(h, self.p, rest) if d > 1 else self.pow_mod(x, self.p, rest)
            g = self.gcd(self.sub(h, x), rest)
            if self.deg(g) > 0:
                out.append((g, d))
                rest = self.exact_div(rest, g)
                h = self.divmod(h, rest)[1]
        if self.deg(rest) > 0:
            out.append((rest, self.deg(rest)))
        return out

    def _equal_degree(self, f, d):
        """Irreducible factors of f, all of degree d, by trial enumeration."""
        factors = []
        rest = f
        while self.deg(rest) > d:
            for cand in self.monic_irreducibles(d):
                q, r = self.divmod(rest, cand)
                if not r:
                    factors.append(cand)
                    rest = q
                    break
            else:
                raise InternalInvariantError("equal-degree split found no factor")
        factors.append(rest)
        return factors

    def factor(self, a):
        if not a:
            raise DegenerateInputError("cannot factor 0")
        unit = self.unit_of(a)
        f = self.unit_normal(a)
        counts = {}
        if self.deg(f) == 0:
            return Factorisation(self, unit, ())
        for sq, mult in self._squarefree_parts(f):
            for block, d in self._distinct_degree(sq):
                if self.deg(block) == d:
                    irreds = [block]
                else:
                    irreds = self._equal_degree(block, d)
                for g in irreds:
                    counts[g] = counts.get(g, 0) + mult
        factors = tuple((self.prime(g), counts[g])
                        for g in sorted(counts, key=self.sort_key))
        return Factorisation(self, unit, factors)

    def __repr__(self):
        return self.name


@lru_cache(maxsize=None)
def _monic_irreducibles(p, degree):
    ring = PolynomialRing(p)
    if degree == 1:
        return tuple((a, 1) for a in range(p))
    lower = []
    for d in range(1, degree // 2 + 1):
        lower.extend(_monic_irreducibles(p, d))
    out = []
    for idx in range(p ** degree):
        coeffs = []
        k = idx
        for _ in range(degree):
            coeffs.append(k % p)
            k //= p
        coeffs.append(1)
        f = tuple(coeffs)
        if all(ring.divmod(f, g)[1] for g in lower):
            out.append(f)
    return tuple(out)


class ResidueClassRing(Ring):
    """Z/N with N >= 2.  Not a domain; used only to lift and reduce."""

    is_domain = False

    def __init__(self, modulus):
        if modulus < 2:
            raise PreconditionError("modulus must be >= 2")
        self.modulus = modulus
        self.name = f"Z/{modulus}"

    def __eq__(self, other):
        return isinstance(other, ResidueClassRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("ResidueClassRing", self.modulus))

    def zero(self):
        return 0

    def one(self):
        return 1 % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def is_unit(self, a):
        return _int_gcd(a, self.modulus) == 1

    def unit_of(self, a):
        raise PreconditionError("Z/N has no canonical associates")

    def inv_unit(self, u):
        return pow(u, -1, self.modulus)

    def divmod(self, a, b):
        raise PreconditionError("Z/N does not support division with remainder")

    def from_int(self, k):
        return k % self.modulus

    def sort_key(self, a):
        return (a,)

    def format(self, a):
        return str(a)

    def parse(self, text):
        return int(text) % self.modulus

    def egcd(self, a, b):
        raise PreconditionError("Z/N is not a gcd domain")

    def factor(self, a):
        raise PreconditionError("Z/N elements are not factored here")

    def __repr__(self):
        return self.name


ZZ = IntegerRing()


def ideal_generator(ring, values):
    """Unit-normal g with (g) = (values); zero iff all inputs are zero."""
    values = list(values)
    if not values:
        raise DegenerateInputError("ideal_generator needs at least one value")
    return ring.gcd_many(values)


def maximal_ideals_of_index(ring, k):
    """All primes p of the ring with |R/p| = k, in sorted order."""
    if k < 2:
        raise PreconditionError("index must be >= 2")
    if isinstance(ring, IntegerRing):
        return [ring.prime(k)] if _is_prime_int(k) else []
    if isinstance(ring, PolynomialRing):
        p = ring.p
        d = 0
        kk = k
        while kk % p == 0 and kk > 1:
            kk //= p
            d += 1
        if kk != 1 or d == 0:
            return []
        return [ring.prime(f) for f in ring.monic_irreducibles(d)]
    raise PreconditionError("prime enumeration needs Z or F_p[x]")


def smallest_primes(ring, count):
    """The first ``count`` primes in the ring's fixed total order."""
    out = []
    if isinstance(ring, IntegerRing):
        n = 2
        while len(out) < count:
            if _is_prime_int(n):
                out.append(ring.prime(n))
            n += 1
        return out
    if isinstance(ring, PolynomialRing):
        d = 1
        while len(out) < count:
            for f in ring.monic_irreducibles(d):
                out.append(ring.prime(f))
                if len(out) == count:
                    break
            d += 1
        return out
    raise PreconditionError("prime enumeration needs Z or F_p[x]")


def in_prime(ring, a, prime):
    return ring.divides(prime.value, a)


def prime_avoidance(ring, a, b, primes):
    """x with a + b*x outside every prime in the set; needs (a, b) = (1).

    x is the product of the primes in the set that do not contain a (1 when
    there are none), which suffices: if a lies in such a prime the product
    stays out of it, and otherwise a itself witnesses avoidance.
    """
    if not primes:
        return ring.one()
    d = ring.gcd(a, b)
    if not ring.is_unit(d):
        raise PreconditionError("prime_avoidance needs (a, b) = (1)")
    x = ring.one()
    for p in primes:
        if not in_prime(ring, a, p):
            x = ring.mul(x, p.value)
    for p in primes:
        if in_prime(ring, ring.add(a, ring.mul(b, x)), p):
            raise InternalInvariantError("prime avoidance failed its postcondition")
    return x


def _distinct_residue_lifts(ring, prime):
    """Two lifts r1, r2 with r1, r2, r1 - r2 all outside the prime."""
    if prime.residue_field_size < 3:
        raise PreconditionError("residue field must have at least 3 elements")
    one = ring.one()
    if isinstance(ring, PolynomialRing) and ring.p == 2:
        # deg(prime) >= 2 here, so x and x - 1 stay nonzero mod prime
        return one, ring.x()
    return one, ring.from_int(2)


def avoid_with_vanishing(ring, alpha, beta, prime, primes):
    """t outside ``prime``, inside every prime of ``primes``, with
    alpha*t + beta outside ``prime``.  Needs (alpha, beta) = (1) and a residue
    field of size at least 3 at ``prime``; ``primes`` must not contain it.
    """
    d = ring.gcd(alpha, beta)
    if not ring.is_unit(d):
        raise PreconditionError("avoid_with_vanishing needs (alpha, beta) = (1)")
    for q in primes:
        if q.value == prime.value:
            raise PreconditionError("the avoided prime must not be in the vanishing set")
    r1, r2 = _distinct_residue_lifts(ring, prime)
    s = ring.one()
    for q in primes:
        s = ring.mul(s, q.value)
    for r in (r1, r2):
        t = ring.mul(r, s)
        if in_prime(ring, t, prime):
            continue
        if not in_prime(ring, ring.add(ring.mul(alpha, t), beta), prime):
            return t
    raise InternalInvariantError("avoid_with_vanishing exhausted both candidates")


def coprimify(ring, a, b, c):
    """x with (a + c*x, b - a*x) = (1), given (a,b,c) = (1) but neither
    (a, b) nor (a, c) trivial.

    Uses the identity a*(a+cx) + c*(b-ax) = a*a + b*c =: D.  D is the
    resultant of the two linear polynomials and cannot vanish under the
    preconditions, so it suffices to keep a + cx out of the primes of D
    that miss a; any prime containing both a and c misses b.
    """
    if not ring.is_unit(ring.gcd_many([a, b, c])):
        raise PreconditionError("coprimify needs (a, b, c) = (1)")
    if ring.is_unit(ring.gcd(a, b)) or ring.is_unit(ring.gcd(a, c)):
        raise PreconditionError("coprimify needs both (a,b) and (a,c) nontrivial")
    dd = ring.add(ring.mul(a, a), ring.mul(b, c))
    if ring.is_zero(dd):
        raise InternalInvariantError(
            "a*a + b*c = 0 is unreachable under the coprimify preconditions")
    x = ring.one()
    for prime, _exp in ring.factor(dd).factors:
        if not in_prime(ring, a, prime):
            x = ring.mul(x, prime.value)
    if not ring.is_unit(ring.gcd(ring.add(a, ring.mul(c, x)),
                                 ring.sub(b, ring.mul(a, x)))):
        raise InternalInvariantError("coprimify failed its postcondition")
    return x
