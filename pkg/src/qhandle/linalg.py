"""Exact dense linear algebra over the rationals.

Matrices are lists of rows of Fraction entries. Provides characteristic
polynomials, rational root extraction, generalized eigenstructure, Sylvester
positive-definiteness certificates, Krylov ranks, and a deterministic
floating-point Jacobi eigensolver for symmetric matrices.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction


def frmat(rows):
    """Coerce a nested sequence into a Fraction matrix."""
    return [[Fraction(x) for x in row] for row in rows]


def frvec(entries):
    return [Fraction(x) for x in entries]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    assert len(a[0]) == m, "shape mismatch"
    out = zeros(n, p)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            aik = ai[k]
            if not aik:
                continue
            bk = b[k]
            for j in range(p):
                if bk[j]:
                    oi[j] += aik * bk[j]
    return out

def mat_vec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    c = Fraction(c)
    return [[c * x for x in row] for row in a]


def mat_pow(a, k):
    n = len(a)
    out = identity(n)
    base = [row[:] for row in a]
    while k:
        if k & 1:
            out = mat_mul(out, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return out


def is_zero_matrix(a):
    return all(not x for row in a for x in row)


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_rank(a):
    """Rank by exact Gaussian elimination."""
    if not a:
        return 0
    m = [row[:] for row in a]
    rows, cols = len(m), len(m[0])
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def nullspace(a):
    """Basis of the right nullspace, as a list of vectors."""
    rows, cols = len(a), len(a[0]) if a else 0
    m = [row[:] for row in a]
    pivots = []
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def solve_linear(a, b):
    """One solution x of a x = b, or None if inconsistent."""
    rows, cols = len(a), len(a[0]) if a else 0
    m = [row[:] + [bb] for row, bb in zip(a, b)]
    pivots = []
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    for r in range(rank, rows):
        if m[r][cols]:
            return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][cols]
    return x


def char_poly(m):
    """Monic characteristic polynomial of a square matrix.

    Faddeev-LeVerrier recursion; returns coefficients in descending degree,
    e.g. [[2,1],[1,2]] -> [1, -4, 3] meaning x^2 - 4x + 3.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    m = frmat(m)
    coeffs = [Fraction(1)]
    mk = [row[:] for row in m]
    for k in range(1, n + 1):
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k < n:
            for i in range(n):
                mk[i][i] += ck
            mk = mat_mul(m, mk)
    return coeffs


def poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_deriv(coeffs):
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])] or [Fraction(0)]


def poly_divmod(num, den):
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and not den[0]:
        den = den[1:]
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = []
    while len(num) >= len(den) and any(num):
        f = num[0] / den[0]
        q.append(f)
        num = [a - f * b for a, b in zip(num, den)] + num[len(den):]
        num = num[1:]
    while num and not num[0]:
        num = num[1:]
    return q or [Fraction(0)], num or [Fraction(0)]


def poly_gcd(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while any(b):
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not any(a):
        return [Fraction(1)]
    return [c / a[0] for c in a]


def _synth_div(coeffs, root):
    """Divide by (x - root); returns (quotient, remainder)."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + root * out[-1])
    return out[:-1], out[-1]


def _factorize(n):
    """Prime-power factorization by trial division; large cofactor kept whole."""
    n = abs(n)
    fac = {}
    d = 2
    while d * d <= n and d <= 10 ** 6:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    return fac


def _divisors(n):
    divs = [1]
    for p, e in _factorize(n).items():
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(set(divs))


def rational_roots(coeffs):
    """All rational roots of the polynomial, as (root, multiplicity) pairs.

    Clears denominators, strips zero roots, takes the square-free part, then
    tries p/q with p dividing the constant and q the leading coefficient.
    Multiplicities are read back off the original polynomial.
    """
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and not coeffs[0]:
        coeffs = coeffs[1:]
    if not coeffs:
        raise ValueError("zero polynomial")
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    zero_mult = 0
    while ints and ints[-1] == 0:
        ints.pop()
        zero_mult += 1
    roots = []
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if len(ints) > 1:
        sf, _ = poly_divmod(ints, poly_gcd(ints, poly_deriv(ints)))
        sden = math.lcm(*(Fraction(c).denominator for c in sf))
        sints = [int(Fraction(c) * sden) for c in sf]
        shrink = math.gcd(*(abs(c) for c in sints))
        sints = [c // shrink for c in sints]
        deg = len(sints) - 1
        at_one = sum(sints)
        at_minus_one = sum(c if (deg - i) % 2 == 0 else -c
                           for i, c in enumerate(sints))
        found = []
        for q in _divisors(sints[0]):
            qpow = [q ** i for i in range(deg + 1)]
            for p in _divisors(sints[-1]):
                if math.gcd(p, q) != 1:
                    continue
                for ps in (p, -p):
                    # a root p/q forces (p - q) | f(1) and (p + q) | f(-1)
                    if ps == q:
                        if at_one != 0:
                            continue
                    elif at_one != 0 and at_one % (ps - q) != 0:
                        continue
                    if ps == -q:
                        if at_minus_one != 0:
                            continue
                    elif at_minus_one != 0 and at_minus_one % (ps + q) != 0:
                        continue
                    val = sints[0]
                    for i in range(1, deg + 1):
                        val = val * ps + sints[i] * qpow[i]
                    if val == 0:
                        found.append(Fraction(ps, q))
        for cand in sorted(set(found)):
            mult = 0
            cur = [Fraction(c) for c in ints]
            while True:
                quo, rem = _synth_div(cur, cand)
                if rem:
                    break
                mult += 1
                cur = quo
            if mult:
                roots.append((cand, mult))
    roots.sort(key=lambda t: t[0])
    return roots


@dataclass
class EigenData:
    """One rational eigenvalue with its generalized eigenspace data."""

    value: Fraction
    multiplicity: int
    blocks: list  # Jordan block sizes, descending
    basis: list  # generalized eigenvectors spanning ker (M - value I)^multiplicity


@dataclass
class EigenStructure:
    entries: list = field(default_factory=list)
    split_over_rationals: bool = False


def rational_eigenstructure(m):
    """Rational eigenvalues with multiplicities, Jordan block sizes, and
    generalized eigenbases; split_over_rationals is true when the
    characteristic polynomial factors completely over the rationals."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    m = frmat(m)
    cp = char_poly(m)
    roots = rational_roots(cp)
    entries = []
    for lam, mult in roots:
        shifted = [[m[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        ranks = [n]
        power = identity(n)
        for _ in range(mult):
            power = mat_mul(power, shifted)
            ranks.append(mat_rank(power))
        blocks = []
        for j in range(1, mult + 1):
            r_prev = ranks[j - 1]
            r_j = ranks[j]
            r_next = ranks[j + 1] if j + 1 < len(ranks) else ranks[-1]
            exactly_j = (r_prev - r_j) - (r_j - r_next)
            blocks.extend([j] * exactly_j)
        blocks.sort(reverse=True)
        entries.append(EigenData(lam, mult, blocks, nullspace(power)))
    total = sum(mult for _, mult in roots)
    return EigenStructure(entries, split_over_rationals=(total == n))


def _int_scale(m):
    """Scale a Fraction matrix to integers; returns (int matrix, multiplier)."""
    den = math.lcm(*(x.denominator for row in m for x in row)) if m else 1
    return [[int(x * den) for x in row] for row in m], den


def is_positive_definite(m):
    """Sylvester test: (verdict, leading principal minors), exact.

    Uses fraction-free Bareiss elimination on the integer-scaled matrix, whose
    successive pivots are exactly the leading principal minors.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    m = frmat(m)
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")
    ints, den = _int_scale(m)
    minors = []
    a = [row[:] for row in ints]
    prev = 1
    singular_at = None
    for k in range(n):
        if a[k][k] == 0:
            singular_at = k
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
        minors.append(Fraction(prev, den ** (k + 1)))
    if singular_at is not None:
        # Bareiss stalls on a zero pivot; fall back to direct determinants.
        minors = [_det([row[: k + 1] for row in m[: k + 1]]) for k in range(n)]
    ok = all(d > 0 for d in minors)
    return ok, minors


def _det(m):
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


class Echelon:
    """Incremental exact row-echelon accumulator for span/rank questions."""

    def __init__(self):
        self.rows = []  # (pivot column, vector scaled to pivot 1)

    def reduce(self, v):
        v = list(v)
        for piv, row in self.rows:
            if v[piv]:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v):
        """Insert v; returns True if it enlarged the span."""
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        self.rows.append((piv, [x * inv for x in v]))
        return True

    @property
    def rank(self):
        return len(self.rows)

    def contains(self, v):
        return all(not x for x in self.reduce(v))


def krylov_rank(m, v, cap):
    """Rank of {v, M v, ..., M^(cap-1) v} by exact elimination."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    v = frvec(v)
    if all(not x for x in v):
        raise ValueError("Krylov start vector must be nonzero")
    m = frmat(m)
    ech = Echelon()
    cur = v
    for _ in range(cap):
        if not ech.add(cur):
            break
        cur = mat_vec(m, cur)
    return ech.rank


def _jacobi(m, tol):
    """Cyclic Jacobi diagonalization; returns (values, row eigenvectors)."""
    n = len(m)
    a = [[float(x) for x in row] for row in m]
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")
    v = [[float(i == j) for j in range(n)] for i in range(n)]
    fro = math.sqrt(sum(x * x for row in a for x in row))
    limit = tol * max(1.0, fro)

    def off():
        return math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))

    sweeps = 0
    while off() > limit:
        sweeps += 1
        if sweeps > 100:
            raise RuntimeError("Jacobi sweeps did not converge within 100 sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p][q]) <= limit / (n * n):
                    continue
                theta = 0.5 * math.atan2(2 * a[p][q], a[q][q] - a[p][p])
                c, s = math.cos(theta), math.sin(theta)
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = v[k][p], v[k][q]
                    v[k][p] = c * vkp - s * vkq
                    v[k][q] = s * vkp + c * vkq
    pairs = sorted(((a[i][i], i) for i in range(n)), key=lambda t: (-t[0], t[1]))
    values = [val for val, _ in pairs]
    vectors = [[v[k][i] for k in range(n)] for _, i in pairs]
    return values, vectors


def sym_float_eigs(m, tol=1e-12):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi, sorted descending."""
    values, _ = _jacobi(frmat(m), tol)
    return values
