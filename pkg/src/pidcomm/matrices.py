"""Exact dense square matrices over a ring or field object, with witnesses.

A SquareMatrix stores immutable rows of payloads plus the scalar object that
interprets them.  Similarity witnesses carry the conjugator together with its
cached exact inverse and determinant, so every similarity produced anywhere
can be re-verified by multiplication alone.

Entry indices are 0-based in code; prose and error messages use the 1-based
positions of the underlying mathematics (the pivot is entry (1,2), i.e.
``rows[0][1]``).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import (
    CriterionViolationError,
    InternalInvariantError,
    NotInCentralizerError,
    PreconditionError,
    WitnessInvalidError,
)
from .fields import embed, fraction_field_of, residue_field_of
from .rings import PrimeElement


class SquareMatrix:
    __slots__ = ("scalars", "n", "rows")

    def __init__(self, scalars, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise PreconditionError("matrix must be square")
        self.scalars = scalars
        self.n = n
        self.rows = rows

    # -- constructors -----------------------------------------------------
    @staticmethod
    def identity(scalars, n):
        z, o = scalars.zero(), scalars.one()
        return SquareMatrix(scalars, [[o if i == j else z for j in range(n)]
                                      for i in range(n)])

    @staticmethod
    def zero(scalars, n):
        z = scalars.zero()
        return SquareMatrix(scalars, [[z] * n for _ in range(n)])

    @staticmethod
    def unit(scalars, n, u, v, value=None):
        """value * E_uv (0-based indices), value defaulting to 1."""
        z = scalars.zero()
        rows = [[z] * n for _ in range(n)]
        rows[u][v] = scalars.one() if value is None else value
        return SquareMatrix(scalars, rows)

    @staticmethod
    def diagonal(scalars, entries):
        n = len(entries)
        z = scalars.zero()
        return SquareMatrix(scalars, [[entries[i] if i == j else z
                                       for j in range(n)] for i in range(n)])

    # -- basics -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, SquareMatrix) and other.scalars == self.scalars
                and other.rows == self.rows)

    def __hash__(self):
        return hash((id(type(self.scalars)), self.rows))

    def __repr__(self):
        s = self.scalars
        body = "; ".join(",".join(s.format(a) for a in row) for row in self.rows)
        return f"[{body}]"

    def with_entry(self, i, j, value):
        rows = [list(r) for r in self.rows]
        rows[i][j] = value
        return SquareMatrix(self.scalars, rows)

    def __add__(self, other):
        s = self.scalars
        return SquareMatrix(s, [[s.add(a, b) for a, b in zip(r1, r2)]
                                for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        s = self.scalars
        return SquareMatrix(s, [[s.sub(a, b) for a, b in zip(r1, r2)]
                                for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        s = self.scalars
        return SquareMatrix(s, [[s.neg(a) for a in r] for r in self.rows])

    def __mul__(self, other):
        s = self.scalars
        if not isinstance(other, SquareMatrix):
            raise TypeError("matrix product needs a matrix")
        if other.n != self.n or other.scalars != s:
            raise PreconditionError("matrix shapes or scalars differ")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            out.append([_dot(s, r, c) for c in cols])
        return SquareMatrix(s, out)

    def scale(self, c):
        s = self.scalars
        return SquareMatrix(s, [[s.mul(c, a) for a in r] for r in self.rows])

    def transpose(self):
        return SquareMatrix(self.scalars, list(zip(*self.rows)))

    def trace(self):
        s = self.scalars
        acc = s.zero()
        for i in range(self.n):
            acc = s.add(acc, self.rows[i][i])
        return acc

    def is_zero(self):
        s = self.scalars
        return all(s.is_zero(a) for r in self.rows for a in r)

    def is_scalar(self):
        s = self.scalars
        d = self.rows[0][0]
        for i in range(self.n):
            for j in range(self.n):
                want = d if i == j else s.zero()
                if not s.eq(self.rows[i][j], want):
                    return False
        return True

    def apply(self, v):
        s = self.scalars
        return [_dot(s, row, v) for row in self.rows]

    def column(self, j):
        return [self.rows[i][j] for i in range(self.n)]

    # -- conversions --------------------------------------------------------
    def mod_prime(self, prime):
        """Image in M_n over the residue field at ``prime``."""
        field = residue_field_of(self.scalars, prime)
        return SquareMatrix(field, [[embed(self.scalars, field, a) for a in r]
                                    for r in self.rows])

    def over_fractions(self):
        field = fraction_field_of(self.scalars)
        return SquareMatrix(field, [[field.from_ring(a) for a in r]
                                    for r in self.rows])

    def convert(self, scalars, fn):
        return SquareMatrix(scalars, [[fn(a) for a in r] for r in self.rows])

    # -- exact invariants -----------------------------------------------------
    def charpoly(self):
        """Coefficients a_0..a_n of det(x*1 - A), ascending, a_n = 1."""
        return _berkowitz(self.scalars, self.rows)

    def det(self):
        return _bareiss_det(self.scalars, self.rows)

    def power(self, k):
        acc = SquareMatrix.identity(self.scalars, self.n)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc


def _dot(s, row, col):
    acc = s.zero()
    for a, b in zip(row, col):
        if not s.is_zero(a) and not s.is_zero(b):
            acc = s.add(acc, s.mul(a, b))
    return acc


def commutator(x, y):
    return x * y - y * x


def _berkowitz(s, rows):
    n = len(rows)
    if n == 0:
        return [s.one()]
    poly = [s.one(), s.neg(rows[0][0])]  # descending coefficients
    for r in range(1, n):
        row = [rows[r][j] for j in range(r)]
        col = [rows[i][r] for i in range(r)]
        block = [rows[i][:r] for i in range(r)]
        q = [s.one(), s.neg(rows[r][r])]
        vec = col
        for _k in range(2, r + 2):
            q.append(s.neg(_dot(s, row, vec)))
            vec = [_dot(s, brow, vec) for brow in block]
        new = [s.zero()] * (r + 2)
        for i in range(r + 2):
            acc = s.zero()
            for j in range(len(poly)):
                if 0 <= i - j < len(q):
                    acc = s.add(acc, s.mul(q[i - j], poly[j]))
            new[i] = acc
        poly = new
    return list(reversed(poly))


def _bareiss_det(s, rows):
    n = len(rows)
    if n == 0:
        return s.one()
    m = [list(r) for r in rows]
    sign = 1
    prev = s.one()
    for k in range(n - 1):
        if s.is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not s.is_zero(m[i][k])), None)
            if swap is None:
                return s.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = s.sub(s.mul(m[i][j], m[k][k]), s.mul(m[i][k], m[k][j]))
                m[i][j] = s.exact_div(num, prev)
            m[i][k] = s.zero()
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return s.neg(d) if sign < 0 else d


# -- similarity witnesses ------------------------------------------------

@dataclass(frozen=True)
class SimilarityWitness:
    """g with cached exact inverse and determinant; asserts g A g^-1 = B."""

    g: SquareMatrix
    g_inv: SquareMatrix
    det: object

    @staticmethod
    def identity(scalars, n):
        e = SquareMatrix.identity(scalars, n)
        return SimilarityWitness(e, e, scalars.one())

    def apply(self, a):
        return self.g * a * self.g_inv

    def unapply(self, a):
        return self.g_inv * a * self.g

    def then(self, second):
        """Witness for the composite 'first self, then second'."""
        s = self.g.scalars
        return SimilarityWitness(second.g * self.g, self.g_inv * second.g_inv,
                                 s.mul(self.det, second.det))

    def inverse(self):
        s = self.g.scalars
        return SimilarityWitness(self.g_inv, self.g, s.inv_unit(s.unit_of(self.det))
                                 if s.is_unit(self.det) else self.det)

    def is_valid(self):
        s = self.g.scalars
        if not s.is_unit(self.det):
            return False
        return self.g * self.g_inv == SquareMatrix.identity(s, self.g.n)

    def check(self):
        if not self.is_valid():
            raise WitnessInvalidError("conjugator inverse or determinant check failed")

    def verify(self, a, b):
        return self.is_valid() and self.apply(a) == b


def conjugate(a, witness):
    """g A g^-1 after validating the witness invariants."""
    witness.check()
    return witness.apply(a)


# -- transvection catalog -------------------------------------------------

def transvection(scalars, n, u, v, lam):
    """Witness for 1 + lam*E_uv, u != v (0-based)."""
    if u == v:
        raise PreconditionError("transvections need distinct indices")
    g = SquareMatrix.identity(scalars, n).with_entry(u, v, lam)
    gi = SquareMatrix.identity(scalars, n).with_entry(u, v, scalars.neg(lam))
    return SimilarityWitness(g, gi, scalars.one())


def embedded_sl2(scalars, n, i, j, x, y, z, w):
    """Witness for M_ij(x, y, z, w): the SL_2 block in the (i, j) plane."""
    s = scalars
    det = s.sub(s.mul(x, w), s.mul(y, z))
    if not s.eq(det, s.one()):
        raise PreconditionError("M_ij needs xw - yz = 1")
    g = SquareMatrix.identity(s, n)
    g = g.with_entry(i, i, x).with_entry(i, j, y).with_entry(j, i, z).with_entry(j, j, w)
    gi = SquareMatrix.identity(s, n)
    gi = (gi.with_entry(i, i, w).with_entry(i, j, s.neg(y))
          .with_entry(j, i, s.neg(z)).with_entry(j, j, x))
    return SimilarityWitness(g, gi, s.one())


def permutation_witness(scalars, perm):
    """Witness for the permutation matrix W with W e_j = e_perm[j]."""
    n = len(perm)
    z, o = scalars.zero(), scalars.one()
    rows = [[z] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = o
    g = SquareMatrix(scalars, rows)
    sign = 1
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        length, cur = 0, start
        while not seen[cur]:
            seen[cur] = True
            cur = perm[cur]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return SimilarityWitness(g, g.transpose(), scalars.from_int(sign))


def diagonal_witness(scalars, units):
    s = scalars
    for u in units:
        if not s.is_unit(u):
            raise PreconditionError("diagonal witness entries must be units")
    g = SquareMatrix.diagonal(s, units)
    gi = SquareMatrix.diagonal(s, [s.inv_unit(s.unit_of(u)) if s.is_unit(u) else u
                                   for u in units])
    det = s.one()
    for u in units:
        det = s.mul(det, u)
    return SimilarityWitness(g, gi, det)


def block_witness(outer_n, inner, offset=0):
    """Embed an inner witness as 1 ⊕ ... ⊕ g ⊕ ... ⊕ 1 at ``offset``."""
    s = inner.g.scalars
    g = SquareMatrix.identity(s, outer_n)
    gi = SquareMatrix.identity(s, outer_n)
    for i in range(inner.g.n):
        for j in range(inner.g.n):
            g = g.with_entry(offset + i, offset + j, inner.g[i, j])
            gi = gi.with_entry(offset + i, offset + j, inner.g_inv[i, j])
    return SimilarityWitness(g, gi, inner.det)


def invert_unimodular(m):
    """Exact inverse of a ring matrix with unit determinant."""
    ring = m.scalars
    field = fraction_field_of(ring)
    inv_rows = linalg.invert(field, [[field.from_ring(a) for a in r] for r in m.rows])
    out = []
    for row in inv_rows:
        out_row = []
        for a in row:
            den = field.denominator(a)
            if not ring.is_unit(den):
                raise WitnessInvalidError("inverse is not defined over the ring")
            out_row.append(ring.exact_div(field.numerator(a), den))
        out.append(out_row)
    return SquareMatrix(ring, out)


def witness_from_matrix(g):
    """Build a checked witness from an explicit unimodular conjugator."""
    ring = g.scalars
    det = g.det()
    if not ring.is_unit(det):
        raise WitnessInvalidError("conjugator determinant is not a unit")
    return SimilarityWitness(g, invert_unimodular(g), det)


# -- linear solves over fields ---------------------------------------------

def solve_commutator_equation(x, a):
    """Q over the same field with [X, Q] = A, free coordinates zero.

    Raises CriterionViolationError when the linear system is inconsistent,
    which is exactly the failure of the trace criterion for regular X.
    """
    field = x.scalars
    n = x.n
    if a.n != n or a.scalars != field:
        raise PreconditionError("shape or field mismatch")
    cols = []
    for k in range(n):
        for l in range(n):
            e = SquareMatrix.unit(field, n, k, l)
            c = commutator(x, e)
            cols.append([c[i, j] for i in range(n) for j in range(n)])
    rows = [[cols[c][r] for c in range(n * n)] for r in range(n * n)]
    rhs = [a[i, j] for i in range(n) for j in range(n)]
    sol = linalg.solve_linear(field, rows, rhs)
    if sol is None:
        raise CriterionViolationError("[X, Q] = A has no solution over the field")
    q = [[sol[k * n + l] for l in range(n)] for k in range(n)]
    return SquareMatrix(field, q)


def express_as_polynomial(c, x):
    """Coefficients f_0..f_{n-1} over the field with sum f_i X^i = C.

    Both matrices live over a residue field; failure signals that C is not
    in the centralizer span of a regular X.
    """
    field = x.scalars
    n = x.n
    powers = []
    acc = SquareMatrix.identity(field, n)
    for _ in range(n):
        powers.append(acc)
        acc = acc * x
    rows = [[powers[k][i, j] for k in range(n)]
            for i in range(n) for j in range(n)]
    rhs = [c[i, j] for i in range(n) for j in range(n)]
    sol = linalg.solve_linear(field, rows, rhs)
    if sol is None:
        raise NotInCentralizerError("matrix is not a polynomial in X over the field")
    return sol


def ad_operator_rows(x):
    """The n^2 x n^2 matrix of Y -> [X, Y] over the field of X."""
    field = x.scalars
    n = x.n
    cols = []
    for k in range(n):
        for l in range(n):
            e = SquareMatrix.unit(field, n, k, l)
            c = commutator(x, e)
            cols.append([c[i, j] for i in range(n) for j in range(n)])
    return [[cols[c][r] for c in range(n * n)] for r in range(n * n)]


def nullspace_matrices(x):
    """Basis of the centralizer of X over its field, as matrices."""
    field = x.scalars
    n = x.n
    basis = linalg.nullspace(field, ad_operator_rows(x))
    return [SquareMatrix(field, [[v[i * n + j] for j in range(n)] for i in range(n)])
            for v in basis]


# -- CRT and SL_n lifting ---------------------------------------------------

def mat_crt(matrices, moduli):
    """Entrywise Chinese remainder lift of residue matrices."""
    if not matrices or len(matrices) != len(moduli):
        raise PreconditionError("mat_crt needs matching nonempty sequences")
    ring = moduli[0].ring if isinstance(moduli[0], PrimeElement) else None
    if ring is None:
        raise PreconditionError("moduli must be prime elements")
    mods = [p.value for p in moduli]
    n = matrices[0].n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            residues = [m.scalars.lift(m[i, j]) for m in matrices]
            row.append(ring.crt(residues, mods) if len(mods) > 1
                       else ring.divmod(residues[0], mods[0])[1])
        rows.append(row)
    return SquareMatrix(ring, rows)


def transvection_factors(t):
    """Factor t in SL_n(field) into transvections (i, j, lam), product order
    left to right."""
    field = t.scalars
    n = t.n
    m = [list(r) for r in t.rows]
    ops = []  # left multiplications applied: row i += lam * row j

    def row_op(i, j, lam):
        if field.is_zero(lam):
            return
        m[i] = [field.add(a, field.mul(lam, b)) for a, b in zip(m[i], m[j])]
        ops.append((i, j, lam))

    for c in range(n):
        if field.is_zero(m[c][c]):
            r = next((i for i in range(c + 1, n) if not field.is_zero(m[i][c])), None)
            if r is None:
                raise PreconditionError("matrix is singular over the field")
            row_op(c, r, field.one())
        for r in range(c + 1, n):
            if not field.is_zero(m[r][c]):
                row_op(r, c, field.neg(field.div(m[r][c], m[c][c])))
    for c in range(n - 1, 0, -1):
        for r in range(c):
            if not field.is_zero(m[r][c]):
                row_op(r, c, field.neg(field.div(m[r][c], m[c][c])))
    # diagonal d_0..d_{n-1} with product 1; sweep each unit into the next slot
    for i in range(n - 1):
        d = m[i][i]
        if field.eq(d, field.one()):
            continue
        dinv = field.inv(d)
        # left-multiply by diag(d^-1, d) = w(-1) w(d) in the (i, i+1) plane,
        # where w(x) = e_i,i+1(x) e_i+1,i(-x^-1) e_i,i+1(x); the w(d) triple
        # acts first
        row_op(i, i + 1, d)
        row_op(i + 1, i, field.neg(dinv))
        row_op(i, i + 1, d)
        row_op(i, i + 1, field.neg(field.one()))
        row_op(i + 1, i, field.one())
        row_op(i, i + 1, field.neg(field.one()))
    ident = SquareMatrix.identity(field, n)
    if SquareMatrix(field, m) != ident:
        raise PreconditionError("determinant is not 1 over the field")
    return [(i, j, field.neg(lam)) for (i, j, lam) in reversed(ops)]


def sl_lift(ring, targets, primes):
    """g in SL_n(R) reducing to each target mod the corresponding prime.

    Each target is factored into transvections over its residue field; the
    scalar of each factor is lifted by CRT with residue zero at the other
    primes, so the lifted factor is trivial there.  Entry growth is
    unbounded by design.
    """
    if len(targets) != len(primes) or not targets:
        raise PreconditionError("sl_lift needs matching nonempty sequences")
    n = targets[0].n
    mods = [p.value for p in primes]
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if not ring.is_unit(ring.gcd(mods[i], mods[j])):
                raise PreconditionError("primes must be pairwise non-associate")
    g = SquareMatrix.identity(ring, n)
    g_inv = SquareMatrix.identity(ring, n)
    for idx, (target, prime) in enumerate(zip(targets, primes)):
        field = residue_field_of(ring, prime)
        if target.scalars != field:
            raise PreconditionError("target does not live over the residue field")
        det = target.det()
        if not field.eq(det, field.one()):
            raise PreconditionError("sl_lift target must have determinant 1")
        for (i, j, lam) in transvection_factors(target):
            lam_lift = field.lift(lam)
            if len(mods) > 1:
                residues = [lam_lift if k == idx else ring.zero()
                            for k in range(len(mods))]
                lam_lift = ring.crt(residues, mods)
            g = g * SquareMatrix.identity(ring, n).with_entry(i, j, lam_lift)
            g_inv = (SquareMatrix.identity(ring, n)
                     .with_entry(i, j, ring.neg(lam_lift))) * g_inv
    return g, g_inv


# -- Frobenius (rational canonical) form -----------------------------------

def companion_matrix(scalars, poly):
    """Companion of a monic poly (ascending coefficients): ones on the
    superdiagonal, negated coefficients along the last row."""
    d = len(poly) - 1
    z = scalars.zero()
    rows = [[z] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i][i + 1] = scalars.one()
    for i in range(d):
        rows[d - 1][i] = scalars.neg(poly[i])
    return SquareMatrix(scalars, rows)


def frobenius_form(a):
    """Invariant-factor decomposition over a field, with witness.

    Returns (blocks, factors, witness): blocks are companion matrices of the
    invariant factors, largest degree first; witness w satisfies
    w.apply(A) == blockdiag(blocks).
    """
    field = a.scalars
    n = a.n
    rows = [list(r) for r in a.rows]
    gens = []       # (vector, monic order poly, spin vectors)
    span_rows = []  # all spin vectors so far, for membership solves

    def reduce_echelon():
        m, pivots = linalg.rref(field, span_rows) if span_rows else ([], [])
        return m[:len(pivots)], pivots

    ech, pivots = [], []
    while len(pivots) < n:
        comp = [c for c in range(n) if c not in pivots]
        # induced operator on the quotient by the current invariant subspace
        abar = [[field.zero()] * len(comp) for _ in range(len(comp))]
        for cj, j in enumerate(comp):
            img = [rows[i][j] for i in range(n)]
            img = _reduce_mod(field, img, ech, pivots)
            for ci, i in enumerate(comp):
                abar[ci][cj] = img[i]
        vbar, mu = linalg.max_order_vector(field, abar)
        v = [field.zero()] * n
        for ci, i in enumerate(comp):
            v[i] = vbar[ci]
        f = linalg.vector_order(field, rows, v)
        # quotient order mu divides the order of any lift; correct the lift so
        # that its order is exactly mu
        w = linalg.fp_apply_to_vector(field, mu, rows, v)
        if any(not field.is_zero(c) for c in w):
            coeffs = linalg.solve_linear(
                field, [list(col) for col in zip(*span_rows)], w)
            if coeffs is None:
                raise InternalInvariantError("conductor image escaped the subspace")
            pos = 0
            for gv, gf, spin in gens:
                gpoly = linalg.fp_trim(field, coeffs[pos:pos + len(spin)])
                pos += len(spin)
                if not gpoly:
                    continue
                h, rem = linalg.fp_divmod(field, gpoly, mu)
                if rem:
                    raise InternalInvariantError(
                        "maximal-order correction is not divisible")
                corr = linalg.fp_apply_to_vector(field, h, rows, gv)
                v = [field.sub(x, y) for x, y in zip(v, corr)]
            f = linalg.vector_order(field, rows, v)
        if f != mu:
            raise InternalInvariantError("corrected vector has the wrong order")
        spin = []
        cur = list(v)
        for _ in range(linalg.fp_deg(f)):
            spin.append(cur)
            cur = linalg.mat_vec(field, rows, cur)
        gens.append((v, f, spin))
        span_rows.extend(spin)
        ech, pivots = reduce_echelon()
    blocks = [companion_matrix(field, f) for _v, f, _s in gens]
    factors = [f for _v, f, _s in gens]
    # Horner basis per block realizes the companion convention exactly
    columns = []
    for v, f, spin in gens:
        d = linalg.fp_deg(f)
        basis = [None] * d
        basis[d - 1] = list(v)
        for k in range(1, d):
            prev = basis[d - k]
            nxt = linalg.mat_vec(field, rows, prev)
            coef = f[d - k]
            nxt = [field.add(xx, field.mul(coef, vv)) for xx, vv in zip(nxt, v)]
            basis[d - k - 1] = nxt
        columns.extend(basis)
    g_inv_rows = [[columns[j][i] for j in range(n)] for i in range(n)]
    g_inv = SquareMatrix(field, g_inv_rows)
    g = SquareMatrix(field, linalg.invert(field, g_inv_rows))
    det = g.det()
    witness = SimilarityWitness(g, g_inv, det)
    return blocks, factors, witness


def _reduce_mod(field, v, ech, pivots):
    out = list(v)
    for row, p in zip(ech, pivots):
        c = out[p]
        if field.is_zero(c):
            continue
        out = [field.sub(a, field.mul(c, b)) for a, b in zip(out, row)]
    return out


def block_diagonal(scalars, blocks):
    n = sum(b.n for b in blocks)
    m = SquareMatrix.zero(scalars, n)
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                m = m.with_entry(off + i, off + j, b[i, j])
        off += b.n
    return m
