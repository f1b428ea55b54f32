"""End-to-end checks of the library's published guarantees.

Each criterion_N function exercises one family of guarantees and returns a
_Checker with per-item detail lines; run_all aggregates them into a stable
dictionary that the command line interface renders as text or JSON.

The table of span bounds contains one documented discrepancy (the gr:3,9
row); it is reported as a known failure rather than silently patched, and
the formula value is pinned so any drift still fails loudly.
"""

import random
from fractions import Fraction
from functools import cache
from itertools import combinations
from math import comb, gcd

from . import partitions, rings
from .complexity import (ProjState, chordal, exact_complexity,
                         finite_state_set, limit_points_real, s_infinity,
                         trajectory)
from .linalg import (char_poly, frmat, frvec, is_positive_definite,
                     is_zero_matrix, krylov_rank, mat_mul, mat_pow, mat_rank,
                     mat_vec, poly_deriv, poly_gcd, solve_linear,
                     sym_float_eigs, zeros)

STANDARD_GRASSMANNIANS = [(2, 4), (2, 5), (2, 6), (2, 7), (2, 8),
                          (3, 6), (3, 7), (3, 8)]

# rows (k, n, dim H, published bound); the gr:3,9 bound as published
# disagrees with the defining formula, which gives 10
EST_TABLE = [
    (2, 4, 6, 2), (2, 5, 10, 10), (2, 6, 15, 9), (2, 7, 21, 21),
    (2, 8, 28, 8), (3, 6, 20, 8), (3, 7, 35, 35), (3, 8, 56, 56),
    (3, 9, 84, 9), (4, 8, 70, 10),
]

FCI_INSTANCES = [((3,), 3), ((2, 2), 3), ((4,), 3), ((2, 3), 3), ((5,), 4)]
FCI_EULER = {((3,), 3): -6, ((2, 2), 3): 0, ((4,), 3): -56,
             ((2, 3), 3): -36, ((5,), 4): 825}


class _Checker:
    def __init__(self, name):
        self.name = name
        self.ok = True
        self.details = []
        self.known = []

    def check(self, cond, msg):
        self.details.append(("ok: " if cond else "FAIL: ") + msg)
        if not cond:
            self.ok = False
        return bool(cond)

    def known_discrepancy(self, msg):
        self.details.append("KNOWN-FAIL: " + msg)
        self.known.append(msg)


def _poly_from_roots(pairs):
    """Monic polynomial with the given (root, multiplicity) pairs, descending."""
    poly = [Fraction(1)]
    for root, mult in pairs:
        root = Fraction(root)
        for _ in range(mult):
            poly = poly + [Fraction(0)]
            for i in range(len(poly) - 1, 0, -1):
                poly[i] -= root * poly[i - 1]
    return poly


def _matrix_inverse(m):
    n = len(m)
    cols = []
    for j in range(n):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        cols.append(solve_linear(m, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def criterion_1():
    c = _Checker("projective spaces pn:1..pn:6")
    for n in range(1, 7):
        ring = rings.projective_space(n)
        c.check(ring.handle_element() == ring.element({ring.labels[n]: n + 1}),
                f"pn:{n}: handle equals {n + 1} * H^{n}")
        traj = trajectory(ring, ring.unit())
        c.check(traj.closed and traj.cycle_start == 0 and
                traj.cycle_length == n + 1 and len(traj.states) == n + 1,
                f"pn:{n}: unit orbit is a pure cycle of length {n + 1}")
        comp_ok = exact_complexity(ring, ring.unit(), ring.unit()) == 0 and all(
            exact_complexity(ring, ring.unit(), ring.basis_element(i)) == n + 1 - i
            for i in range(1, n + 1))
        c.check(comp_ok, f"pn:{n}: complexity of H^i from the unit is {n + 1} - i")
        sinf_ok = all((rep := s_infinity(ring, ring.basis_element(i))).exact
                      and rep.points == [] for i in range(n + 1))
        c.check(sinf_ok, f"pn:{n}: s-infinity of every basis state is exactly empty")
        c.check(ring.f_span_dim()[0] == n + 1,
                f"pn:{n}: span of handle powers has dimension {n + 1}")
    return c


def criterion_2():
    c = _Checker("quadrics quadric:3..quadric:8")
    for r in range(3, 9):
        d = 1 if r % 2 else 2
        ring = rings.quadric(r)
        c.check(ring.handle_element() ==
                ring.element({f"s{r}": r + d, ("1", 1): r - d}),
                f"quadric:{r}: handle equals {r + d} s{r} + {r - d} q 1")
        got = char_poly(ring.mult_matrix(ring.handle_element(), at_q=1))
        c.check(got == _poly_from_roots([(2 * r, r), (-2 * d, d)]),
                f"quadric:{r}: handle spectrum is 2r with multiplicity {r} "
                f"and -2({d}) with multiplicity {d}")
        floats = sym_float_eigs([[float(x) for x in row]
                                 for row in ring.mult_matrix(ring.handle_element(), at_q=1)])
        want = sorted([2.0 * r] * r + [-2.0 * d] * d)
        c.check(all(abs(a - b) < 1e-6 for a, b in zip(sorted(floats), want)),
                f"quadric:{r}: float eigenvalues cluster at the exact spectrum")
        c.check(ring.f_span_dim()[0] == 2,
                f"quadric:{r}: span of handle powers has dimension 2")
        rep = s_infinity(ring, ring.unit())
        target = ProjState.from_element(ring, ring.element({"1": 1, f"s{r}": 1}))
        c.check(rep.exact and rep.points == [target],
                f"quadric:{r}: s-infinity of the unit is exactly the state 1 + s{r}")
    return c


def criterion_3():
    c = _Checker("grassmannian handle formula, point periodicity, positivity")
    for k, n in STANDARD_GRASSMANNIANS:
        ring = rings.grassmannian(k, n)
        c.check(rings.delta_closed_form(k, n) == ring.handle_element(),
                f"gr:{k},{n}: closed-form handle matches the pairing double sum")
        dd = gcd(k, n)
        theta, m = ring.theta_order()
        c.check((theta, m) == (n // dd, k * (n - k) // dd)
                and ring._cache["theta"][2] == 1,
                f"gr:{k},{n}: point class period ({n // dd}, {k * (n - k) // dd}) with unit scalar")
        a = ring.a_matrix()
        sym = all(a[i][j] == a[j][i] for i in range(ring.dim) for j in range(i))
        nonneg = all(x >= 0 for row in a for x in row)
        pd, minors = is_positive_definite(a)
        c.check(sym and nonneg and pd and all(v > 0 for v in minors),
                f"gr:{k},{n}: handle/point matrix is symmetric, nonnegative, "
                "positive definite with positive leading minors")
    for n in range(4, 9):
        c.check(rings.delta_gr2_form(n) == rings.grassmannian(2, n).handle_element(),
                f"gr:2,{n}: two-row closed form matches the handle")
    for k, n, dim_h, published in EST_TABLE:
        got = partitions.est_bound(k, n)
        if (k, n) == (3, 9):
            if got == 10 and comb(n, k) == dim_h:
                c.known_discrepancy(
                    "table row gr:3,9 publishes bound 9 but the defining "
                    "formula gives 10; the formula value is kept")
            else:
                c.check(False,
                        f"gr:3,9 known discrepancy changed shape: formula now gives {got}")
        else:
            c.check(got == published and comb(n, k) == dim_h,
                    f"table row gr:{k},{n}: dim {dim_h}, bound {published}")
    return c


def criterion_4():
    c = _Checker("two-row block matrix, simple spectrum, span dimension")
    for n in range(4, 9):
        ring = rings.grassmannian(2, n)
        a = ring.a_matrix()
        idx = rings.gr2_theta_indices(n)
        sub = [[a[i][j] for j in idx] for i in idx]
        expect = [[Fraction(x) for x in row] for row in rings.gr2_a0_matrix(n)]
        c.check(sub == expect,
                f"gr:2,{n}: restricted handle/point block matches its closed form")
        ch = char_poly(sub)
        c.check(len(poly_gcd(ch, poly_deriv(ch))) == 1,
                f"gr:2,{n}: block matrix has simple spectrum")
        e0 = [Fraction(1)] + [Fraction(0)] * (len(sub) - 1)
        c.check(krylov_rank(frmat(sub), frvec(e0), len(sub) + 1) == len(sub),
                f"gr:2,{n}: block matrix is cyclic from the first coordinate")
        want = (n // gcd(4, n)) * (n // 2)
        c.check(ring.f_span_dim()[0] == rings.gr2_f_dim(n) == want,
                f"gr:2,{n}: span of handle powers has dimension {want}")
    return c


def criterion_5():
    c = _Checker("span dimension against the degree-block bound")
    for n in range(4, 9):
        ring = rings.grassmannian(2, n)
        rank, _ = ring.f_span_dim()
        c.check(rank == ring.dim_bound(),
                f"gr:2,{n}: span dimension {rank} meets the bound exactly")
    for k, n in [(3, 6), (3, 8)]:
        ring = rings.grassmannian(k, n)
        rank, _ = ring.f_span_dim()
        c.check(rank <= ring.dim_bound(),
                f"gr:{k},{n}: span dimension {rank} within bound {ring.dim_bound()}, "
                "powers confined to the divisible degree blocks")
    return c


def criterion_6():
    c = _Checker("fano complete intersections: orbits, span, triangular form")
    for m, r in FCI_INSTANCES:
        c.check(rings.euler_characteristic(m, r) == FCI_EULER[(m, r)],
                f"fci:{','.join(map(str, m))};r={r}: euler characteristic "
                f"{FCI_EULER[(m, r)]}")
        model = rings.fano_ci(m, r)
        rep = rings.fci_report(model)
        name = rep["name"]
        if model.tau >= 2:
            states, closed = finite_state_set(model.ring, model.ring.unit())
            c.check(closed and states == frozenset(rep["predicted_states"]),
                    f"{name}: unit orbit closes onto exactly the predicted states")
            c.check(rep["dim_f_computed"] == rep["dim_f_predicted"],
                    f"{name}: span dimension matches the closed form "
                    f"{rep['dim_f_predicted']}")
        else:
            c.check(not rep["orbit_closed"],
                    f"{name}: unit orbit does not close")
            c.check(rep["a_upper_triangular"] and rep["a_diag_ok"]
                    and rep["a_superdiag_ok"],
                    f"{name}: descending-basis handle matrix is upper triangular "
                    "with the predicted diagonal and superdiagonal")
            c.check(rep["jordan_depth_ok"],
                    f"{name}: (A - beta I)^(r-1) is nonzero")
            c.check(rep["omega_nonzero"]
                    and rep["dim_f_computed"] == rep["dim_f_predicted"] == r + 1,
                    f"{name}: omega is nonzero and the span has dimension r + 1")
            a = [[Fraction(x) for x in row] for row in rep["a_matrix"]]
            dim = len(a)
            for j in range(1, dim):
                a[0][j] = Fraction(0)
            e_unit = [Fraction(0)] * dim
            e_unit[-1] = Fraction(1)
            c.check(krylov_rank(a, e_unit, dim + 1) == r,
                    f"{name}: synthetic variant with the top row decoupled "
                    f"drops the span to r = {r}")
    return c


def criterion_7():
    c = _Checker("limit points of random diagonalizable iterations")
    rng = random.Random(90125)
    menu = [Fraction(5), Fraction(4), Fraction(3), Fraction(2),
            Fraction(1), Fraction(1, 2)]
    dim, trials = 6, 100
    bad_counts = bad_witness = 0
    for _ in range(trials):
        diag = [rng.choice(menu) * rng.choice([1, -1]) for _ in range(dim)]
        jmat = [[diag[i] if i == j else Fraction(0) for j in range(dim)]
                for i in range(dim)]
        while True:
            p = [[Fraction(rng.randint(-3, 3)) for _ in range(dim)]
                 for _ in range(dim)]
            if mat_rank(p) == dim:
                break
        m = mat_mul(mat_mul(p, jmat), _matrix_inverse(p))
        z = [Fraction(rng.randint(-4, 4)) for _ in range(dim)]
        if all(x == 0 for x in z):
            z[0] = Fraction(1)
        rep = limit_points_real(m, z)
        if rep.finite_orbit or not 1 <= len(rep.points) <= 2:
            bad_counts += 1
            continue
        far = ProjState(mat_vec(mat_pow(m, 200), z))
        if min(chordal(far, pt) for pt in rep.points) > 1e-6:
            bad_witness += 1
    c.check(bad_counts == 0,
            f"{trials} random 6x6 conjugated diagonal matrices all have "
            "1 or 2 limit points")
    c.check(bad_witness == 0,
            "the step-200 state is within 1e-6 of a reported limit point "
            "in every trial")
    return c


# -- private oracles for criterion 8 -----------------------------------------
# these duplicate the test-suite oracles on purpose: the acceptance run must
# be self-contained while staying independent of the code it checks


@cache
def _ssyt_weights(shape, nvars):
    shape = tuple(shape)
    if not shape:
        return {(0,) * nvars: 1}
    rows = len(shape)
    out = {}

    def fill(r, col, done, cur):
        if r == rows:
            weight = [0] * nvars
            for row in done:
                for x in row:
                    weight[x - 1] += 1
            key = tuple(weight)
            out[key] = out.get(key, 0) + 1
            return
        if col == shape[r]:
            fill(r + 1, 0, done + (tuple(cur),), [])
            return
        lo = cur[col - 1] if col else 1
        if r:
            lo = max(lo, done[r - 1][col] + 1)
        for x in range(lo, nvars + 1):
            fill(r, col + 1, done, cur + [x])

    fill(0, 0, (), [])
    return out


def _poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _schur_expand(lam, mu, nvars):
    prod = _poly_mul(_ssyt_weights(tuple(lam), nvars),
                     _ssyt_weights(tuple(mu), nvars))
    coeffs = {}
    while prod:
        top = max(prod)
        coef = prod[top]
        nu = tuple(x for x in top if x)
        for e, cc in _ssyt_weights(nu, nvars).items():
            v = prod.get(e, 0) - coef * cc
            if v:
                prod[e] = v
            else:
                prod.pop(e, None)
        coeffs[nu] = coef
    return coeffs


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _det_int(rows):
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


@cache
def _schur_value(lam, nvars):
    xs = _PRIMES[:nvars]
    lam = tuple(lam) + (0,) * (nvars - len(lam))
    num = [[x ** (lam[j] + nvars - 1 - j) for j in range(nvars)] for x in xs]
    den = [[x ** (nvars - 1 - j) for j in range(nvars)] for x in xs]
    n, d = _det_int(num), _det_int(den)
    assert n % d == 0
    return n // d


def criterion_8():
    c = _Checker("combinatorial and algebraic property suites")
    shapes = [lam for w in range(1, 7) for lam in partitions.partitions_of(w, w, w)]

    sym_ok = point_ok = mono_ok = True
    mono_pairs = point_pairs = 0
    for i, lam in enumerate(shapes):
        for mu in shapes[i:]:
            exp = partitions.lr_expand(lam, mu, 99)
            sym_ok = sym_ok and exp == partitions.lr_expand(mu, lam, 99)
            nvars = len(lam) + len(mu)
            lhs = _schur_value(lam, nvars) * _schur_value(mu, nvars)
            rhs = sum(coef * _schur_value(nu, nvars) for nu, coef in exp.items())
            point_ok = point_ok and lhs == rhs
            point_pairs += 1
            if sum(lam) + sum(mu) <= 8:
                want = _schur_expand(lam, mu, nvars)
                mono_ok = mono_ok and {k: v for k, v in exp.items() if v} == want
                mono_pairs += 1
    c.check(sym_ok, f"product expansion is symmetric on all {point_pairs} shape pairs")
    c.check(point_ok, f"bialternant point evaluation agrees on all {point_pairs} pairs")
    c.check(mono_ok, f"monomial convolution agrees on all {mono_pairs} small pairs")

    two_ok = True
    small = [lam for lam in shapes if len(lam) <= 2 and sum(lam) <= 5]
    for lam in small:
        for nu in small:
            for w in (sum(lam) + sum(nu), sum(lam) + sum(nu) + 1):
                for mu in partitions.partitions_of(w, w, 2):
                    two_ok = two_ok and (partitions.lr_coefficient_len2(lam, nu, mu)
                                         == partitions.lr_coefficient(lam, nu, mu))
    c.check(two_ok, "two-row closed form matches the general coefficient")

    count_ok = all(partitions.restricted_count(i, m, l)
                   == len(partitions.partitions_of(i, m, l))
                   for i in range(11) for m in range(6) for l in range(6))
    box_ok = all(sum(partitions.restricted_count(i, m, l)
                     for i in range(m * l + 1)) == comb(m + l, l)
                 for m in range(1, 7) for l in range(1, 7))
    c.check(count_ok and box_ok,
            "restricted partition counts match enumeration and the box identity")

    ring_list = ([rings.projective_space(n) for n in range(1, 7)]
                 + [rings.quadric(r) for r in range(3, 9)]
                 + [rings.grassmannian(k, n) for k, n in STANDARD_GRASSMANNIANS]
                 + [rings.fano_ci(m, r).ring for m, r in FCI_INSTANCES]
                 + [rings.fano_ci((2,), 3).ring])
    val_ok = True
    for ring in ring_list:
        try:
            ring.validate()
        except ValueError:
            val_ok = False
    c.check(val_ok, f"unit, grading, associativity and pairing checks pass on "
            f"all {len(ring_list)} standard rings")

    round_ok = True
    trips = 0
    for k in (2, 3):
        for n in range(k + 2, 9):
            kn = k * (n - k)
            basis = partitions.partitions_in_box(k, n - k)
            for r in range(1, kn // n + 1):
                base = (-1) ** (r * (2 * k - r + 1) // 2)
                for nu in basis:
                    if sum(nu) != kn - r * n:
                        continue
                    for idx in combinations(range(1, k + 1), r):
                        sign = base * (-1) ** sum(idx)
                        got = rings.reduce_sigma_hat(k, n, rings.phi_map(k, n, nu, idx))
                        round_ok = round_ok and got == (sign, r, nu)
                        trips += 1
    c.check(round_ok and trips > 0,
            f"reduction inverts the index lift with the predicted sign "
            f"on all {trips} cases (k <= 3, n <= 8)")

    rng = random.Random(2001)
    ch_ok = True
    for dim in range(1, 13):
        m = [[Fraction(rng.randint(-5, 5)) for _ in range(dim)] for _ in range(dim)]
        acc = zeros(dim, dim)
        for coef in char_poly(m):
            acc = mat_mul(acc, m)
            for i in range(dim):
                acc[i][i] += coef
        ch_ok = ch_ok and is_zero_matrix(acc)
    c.check(ch_ok, "random matrices up to 12x12 satisfy their characteristic polynomial")
    return c


CRITERIA = [(1, criterion_1), (2, criterion_2), (3, criterion_3),
            (4, criterion_4), (5, criterion_5), (6, criterion_6),
            (7, criterion_7), (8, criterion_8)]


def run_all(only=None):
    """Run the numbered criteria (all by default) and aggregate the records."""
    records = []
    for cid, fn in CRITERIA:
        if only is not None and cid not in only:
            continue
        ch = fn()
        records.append({"id": cid, "name": ch.name, "ok": ch.ok,
                        "details": ch.details, "known_failures": ch.known})
    if not records:
        raise ValueError("no matching criteria")
    return {"ok": all(r["ok"] for r in records),
            "known_failure_count": sum(len(r["known_failures"]) for r in records),
            "criteria": records}


def summary_lines(result):
    """One pass/fail line per criterion."""
    lines = []
    for rec in result["criteria"]:
        status = "PASS" if rec["ok"] else "FAIL"
        note = ""
        if rec["known_failures"]:
            plural = "ies" if len(rec["known_failures"]) > 1 else "y"
            note = f" [{len(rec['known_failures'])} known discrepanc{plural}]"
        lines.append(f"criterion {rec['id']}: {status}{note}  {rec['name']}")
    return lines
