"""Dense exact linear algebra over a field object.

Matrices here are plain lists of row lists of field payloads; the field
object supplies the arithmetic.  Pivoting is deterministic: the first row
with a nonzero entry in the current column is used.  Polynomials over a
field (needed for vector orders and invariant factors) are ascending
coefficient lists.
"""

from __future__ import annotations

from .errors import InternalInvariantError


def mat_vec(field, rows, v):
    return [_dot(field, row, v) for row in rows]


def _dot(field, row, v):
    acc = field.zero()
    for a, b in zip(row, v):
        if not field.is_zero(a) and not field.is_zero(b):
            acc = field.add(acc, field.mul(a, b))
    return acc


def rref(field, rows):
    """Reduced row echelon form; returns (new rows, pivot column list)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not field.is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, a) for a in m[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(field, rows):
    return len(rref(field, rows)[1])


def solve_linear(field, rows, rhs):
    """One solution of rows * x = rhs with free variables zero, or None."""
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [field.zero()] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


def nullspace(field, rows):
    """Basis of the right kernel, from the reduced echelon form."""
    if not rows:
        return []
    ncols = len(rows[0])
    m, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(m[i][fc])
        basis.append(v)
    return basis


def invert(field, rows):
    n = len(rows)
    aug = [list(r) + [field.one() if i == j else field.zero() for j in range(n)]
           for i, r in enumerate(rows)]
    m, pivots = rref(field, aug)
    if pivots != list(range(n)):
        raise InternalInvariantError("matrix is singular over the field")
    return [row[n:] for row in m[:n]]


# -- polynomials over a field (ascending coefficient lists) --------------

def fp_trim(field, coeffs):
    i = len(coeffs)
    while i > 0 and field.is_zero(coeffs[i - 1]):
        i -= 1
    return list(coeffs[:i])


def fp_deg(poly):
    return len(poly) - 1


def fp_add(field, a, b):
    n = max(len(a), len(b))
    out = [field.zero()] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = field.add(out[i], c)
    return fp_trim(field, out)


def fp_sub(field, a, b):
    return fp_add(field, a, [field.neg(c) for c in b])


def fp_mul(field, a, b):
    if not a or not b:
        return []
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if field.is_zero(ca):
            continue
        for j, cb in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(ca, cb))
    return fp_trim(field, out)


def fp_divmod(field, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    inv = field.inv(b[-1])
    q = [field.zero()] * max(len(a) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if field.is_zero(c):
            continue
        coef = field.mul(c, inv)
        q[i - db] = coef
        for j in range(db + 1):
            rem[i - db + j] = field.sub(rem[i - db + j], field.mul(coef, b[j]))
    return fp_trim(field, q), fp_trim(field, rem)


def fp_monic(field, a):
    if not a:
        return a
    inv = field.inv(a[-1])
    return [field.mul(c, inv) for c in a]


def fp_gcd(field, a, b):
    while b:
        a, b = b, fp_divmod(field, a, b)[1]
    return fp_monic(field, a)


def fp_lcm(field, a, b):
    if not a or not b:
        return []
    g = fp_gcd(field, a, b)
    return fp_monic(field, fp_divmod(field, fp_mul(field, a, b), g)[0])


def fp_eval_matrix(field, poly, powers):
    """Sum poly[i] * powers[i] for precomputed matrix powers."""
    n = len(powers[0])
    acc = [[field.zero()] * n for _ in range(n)]
    for i, c in enumerate(poly):
        if field.is_zero(c):
            continue
        for r in range(n):
            row = powers[i][r]
            arow = acc[r]
            for s in range(n):
                arow[s] = field.add(arow[s], field.mul(c, row[s]))
    return acc


def fp_apply_to_vector(field, poly, rows, v):
    """poly(A) v computed by Horner iteration on Krylov vectors."""
    acc = [field.zero()] * len(v)
    w = list(v)
    for c in poly:
        if not field.is_zero(c):
            acc = [field.add(a, field.mul(c, b)) for a, b in zip(acc, w)]
        w = mat_vec(field, rows, w)
    return acc


def vector_order(field, rows, v):
    """Minimal monic g with g(A) v = 0, A given by ``rows``."""
    n = len(v)
    # echelon of Krylov vectors with coordinates back to powers of A
    echelon = []  # (pivot index, reduced vector, combo over powers)
    w = list(v)
    k = 0
    while True:
        red = list(w)
        combo = [field.zero()] * (k + 1)
        combo[k] = field.one()
        for pidx, evec, ecombo in echelon:
            c = red[pidx]
            if field.is_zero(c):
                continue
            red = [field.sub(a, field.mul(c, b)) for a, b in zip(red, evec)]
            for i, b in enumerate(ecombo):
                combo[i] = field.sub(combo[i], field.mul(c, b))
        pivot = next((i for i, a in enumerate(red) if not field.is_zero(a)), None)
        if pivot is None:
            # A^k v = sum of lower powers: order = x^k - combination
            return [field.neg(c) for c in combo[:k]] + [field.one()]
        inv = field.inv(red[pivot])
        red = [field.mul(inv, a) for a in red]
        combo = [field.mul(inv, a) for a in combo]
        echelon.append((pivot, red, combo))
        w = mat_vec(field, rows, w)
        k += 1
        if k > n:
            raise InternalInvariantError("vector order exceeded the dimension")


def operator_minpoly(field, rows):
    n = len(rows)
    mu = []
    for i in range(n):
        v = [field.zero()] * n
        v[i] = field.one()
        f = vector_order(field, rows, v)
        mu = f if not mu else fp_lcm(field, mu, f)
        if fp_deg(mu) == n:
            break
    return mu


def _candidate_vectors(field, n):
    """Deterministic vector enumeration used for maximal-order searches."""
    size = getattr(field, "size", None)
    if size is not None and size() ** n <= 200_000:
        elems = list(field.elements())
        total = size() ** n
        for count in range(1, total):
            k = count
            v = []
            for _ in range(n):
                v.append(elems[k % len(elems)])
                k //= len(elems)
            yield v
        return
    one, zero = field.one(), field.zero()
    for i in range(n):
        v = [zero] * n
        v[i] = one
        yield v
    for mask in range(3, 2 ** n):
        yield [one if (mask >> i) & 1 else zero for i in range(n)]
    # Vandermonde-style candidates escape any union of <= n(n-1) proper
    # subspaces over an infinite field
    for t in range(2, n * n + n + 2):
        tt = field.from_int(t)
        v, acc = [], one
        for _ in range(n):
            v.append(acc)
            acc = field.mul(acc, tt)
        yield v


def max_order_vector(field, rows):
    """A vector whose order equals the minimal polynomial, plus that poly."""
    n = len(rows)
    mu = operator_minpoly(field, rows)
    target = fp_deg(mu)
    for v in _candidate_vectors(field, n):
        if fp_deg(vector_order(field, rows, v)) == target:
            return v, mu
    raise InternalInvariantError("no maximal-order vector found in the enumeration")
