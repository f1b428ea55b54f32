"""Constructors for small quantum cohomology rings with exact coefficients.

Covers projective spaces, smooth quadric hypersurfaces, Grassmannians, and
Fano complete intersections in projective space.  Each constructor returns a
validated FrobeniusRing; the complete-intersection constructor wraps the ring
in a small model object carrying the derived constants.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import combinations
from math import comb, factorial, gcd, prod

from .frobenius import Element, FrobeniusRing
from .partitions import complement, is_partition, lr_expand, normalize, partitions_in_box

#: Sentinel returned by reduce_sigma_hat for a vanishing class.
ZERO = (0, 0, None)


def projective_space(n):
    """Quantum cohomology of P^n with basis 1, H, ..., H^n and H^(n+1) = q."""
    if n < 1:
        raise ValueError("n must be at least 1")
    labels = ["1" if i == 0 else "H" if i == 1 else f"H^{i}" for i in range(n + 1)]
    degrees = list(range(n + 1))
    pairing = [[{0: Fraction(1)} if i + j == n else {} for j in range(n + 1)]
               for i in range(n + 1)]
    structure = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            e = i + j
            if e <= n:
                structure[(i, j)] = Element({(e, 0): Fraction(1)})
            else:
                structure[(i, j)] = Element({(e - n - 1, 1): Fraction(1)})
    ring = FrobeniusRing(
        name=f"P^{n}", labels=labels, degrees=degrees, tau=n + 1,
        pairing=pairing, structure=structure, unit_index=0, point_index=n,
    )
    ring.meta.update({"kind": "projective", "n": n})
    ring.validate()
    return ring


def _quadric_ring(r, diagonal_middle):
    """Build Q^r with the requested pairing convention on the middle classes."""
    m = r // 2
    even = r % 2 == 0
    if even:
        labels = ["1" if a == 0 else "H" if a == 1 else f"s{a}" for a in range(m)]
        degrees = list(range(m))
        plus, minus = len(labels), len(labels) + 1
        labels += [f"s{m}+", f"s{m}-"]
        degrees += [m, m]
        upper = {}
        for a in range(m + 1, r + 1):
            upper[a] = len(labels)
            labels.append(f"s{a}")
            degrees.append(a)

        def h_index(a):
            return a if a < m else upper[a]
    else:
        labels = ["1" if a == 0 else "H" if a == 1 else f"s{a}" for a in range(r + 1)]
        degrees = list(range(r + 1))
        plus = minus = None

        def h_index(a):
            return a

    dim = len(labels)

    def c_scalar(a):
        # sigma_a = c_a H^(*a) away from the top and middle classes
        return Fraction(1) if 2 * a <= r - 1 else Fraction(1, 2)

    def rep(i):
        # presentation coordinates: {(term, q exponent): coeff},
        # term ("h", e) for H^(*e) and ("d",) for the middle difference class
        if even and i == plus:
            return {(("h", m), 0): Fraction(1, 2), (("d",), 0): Fraction(1, 2)}
        if even and i == minus:
            return {(("h", m), 0): Fraction(1, 2), (("d",), 0): Fraction(-1, 2)}
        a = degrees[i]
        if a == r:
            return {(("h", r), 0): Fraction(1, 2), (("h", 0), 1): Fraction(-1)}
        return {(("h", a), 0): c_scalar(a)}

    def mul(x, y):
        # relations: H^(*(r+i)) = 4 q H^(*i) for i >= 1, D*H = 0,
        # D*D = 4 q - H^(*r)
        out = {}

        def put(key, c):
            if c:
                out[key] = out.get(key, Fraction(0)) + c

        for (t1, d1), c1 in x.items():
            for (t2, d2), c2 in y.items():
                c, d = c1 * c2, d1 + d2
                if t1[0] == "h" and t2[0] == "h":
                    e = t1[1] + t2[1]
                    if e > r:
                        put((("h", e - r), d + 1), 4 * c)
                    else:
                        put((("h", e), d), c)
                elif t1[0] == "d" and t2[0] == "d":
                    put((("h", 0), d + 1), 4 * c)
                    put((("h", r), d), -c)
                else:
                    e = t1[1] if t1[0] == "h" else t2[1]
                    if e == 0:
                        put((("d",), d), c)
        return out

    def to_element(x):
        coeffs = {}

        def put(i, d, c):
            coeffs[(i, d)] = coeffs.get((i, d), Fraction(0)) + c

        for (term, d), c in x.items():
            if not c:
                continue
            if term[0] == "d":
                put(plus, d, c)
                put(minus, d, -c)
                continue
            e = term[1]
            if e == r:
                put(h_index(r), d, 2 * c)
                put(0, d + 1, 2 * c)
            elif even and e == m:
                put(plus, d, c)
                put(minus, d, c)
            else:
                put(h_index(e), d, c / c_scalar(e))
        return Element(coeffs)

    structure = {}
    reps = [rep(i) for i in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            structure[(i, j)] = to_element(mul(reps[i], reps[j]))

    one = {0: Fraction(1)}
    pairing = [[{} for _ in range(dim)] for _ in range(dim)]
    if even:
        for a in range(m):
            pairing[h_index(a)][h_index(r - a)] = dict(one)
            pairing[h_index(r - a)][h_index(a)] = dict(one)
        if diagonal_middle:
            pairing[plus][plus] = dict(one)
            pairing[minus][minus] = dict(one)
        else:
            pairing[plus][minus] = dict(one)
            pairing[minus][plus] = dict(one)
    else:
        for a in range(r + 1):
            pairing[a][r - a] = dict(one)

    ring = FrobeniusRing(
        name=f"Q^{r}", labels=labels, degrees=degrees, tau=r,
        pairing=pairing, structure=structure, unit_index=0,
        point_index=h_index(r),
    )
    ring.meta.update({
        "kind": "quadric", "r": r, "delta": 1 if r % 2 else 2,
        "middle_pairing": "diagonal" if diagonal_middle else "offdiagonal",
    })
    return ring


def quadric(r):
    """Quantum cohomology of a smooth quadric Q^r, r >= 2.

    The pairing convention on the two middle classes (even r) is checked a
    posteriori against the handle element (r+d) s_r + (r-d) q 1 with
    d = 1 for odd r and 2 for even r; if the standard off-diagonal
    convention failed, the diagonal one would be tried instead.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    dlt = 1 if r % 2 else 2
    last = None
    for diagonal in (False, True):
        ring = _quadric_ring(r, diagonal)
        try:
            ring.validate()
        except ValueError as err:
            last = err
            continue
        expected = Element({(ring.point_index, 0): Fraction(r + dlt),
                            (0, 1): Fraction(r - dlt)})
        if ring.handle_element() == expected:
            return ring
        last = ValueError(f"handle element mismatch for Q^{r}")
    raise ValueError(f"no middle pairing convention works for Q^{r}: {last}")


def reduce_sigma_hat(k, n, I):
    """Reduce a generalized class indexed by an integer tuple to +-q^s sigma_lam.

    Returns (sign, q_power, partition) with partition in the k x (n-k) box,
    or ZERO = (0, 0, None) when the class vanishes.  Each entry is shifted
    down by n into the window [i-k, i-k+n), contributing q per shift and a
    global sign (-1)^(shifts*(k+1)); entries below the window floor and
    colliding entries give zero; sorting the shifted entries contributes the
    exchange parity.
    """
    if k < 1 or n <= k:
        raise ValueError("need 1 <= k < n")
    vals = [int(x) for x in I]
    while vals and vals[-1] == 0:
        vals.pop()
    if len(vals) > k:
        if is_partition(tuple(vals)):
            return ZERO
        raise ValueError("tuples longer than k must be partitions")
    vals += [0] * (k - len(vals))
    shifts = 0
    for i in range(1, k + 1):
        lo = i - k
        v = vals[i - 1]
        while v >= lo + n:
            v -= n
            shifts += 1
        if v < lo:
            return ZERO
        vals[i - 1] = v
    c = [vals[i] - (i + 1) for i in range(k)]
    if len(set(c)) < k:
        return ZERO
    sign = -1 if (shifts * (k + 1)) % 2 else 1
    for a in range(k):
        for b in range(k - 1 - a):
            if c[b] < c[b + 1]:
                c[b], c[b + 1] = c[b + 1], c[b]
                sign = -sign
    lam = normalize(tuple(c[j] + (j + 1) for j in range(k)))
    return (sign, shifts, lam)


@cache
def _gr_basis(k, n):
    basis = partitions_in_box(k, n - k)
    return basis, {lam: i for i, lam in enumerate(basis)}


def _gr_label(lam):
    return "1" if not lam else "s[" + ",".join(str(p) for p in lam) + "]"


@cache
def grassmannian(k, n):
    """Quantum cohomology of Gr(k, n) in the Schubert basis.

    Products are computed by expanding the classical product into partitions
    with at most k rows and reducing each term back into the box.
    """
    if not 2 <= k <= n - 2:
        raise ValueError("need 2 <= k <= n - 2")
    basis, index = _gr_basis(k, n)
    dim = len(basis)
    labels = [_gr_label(lam) for lam in basis]
    degrees = [sum(lam) for lam in basis]
    pairing = [[{} for _ in range(dim)] for _ in range(dim)]
    for i, lam in enumerate(basis):
        pairing[i][index[complement(lam, k, n)]] = {0: Fraction(1)}
    structure = {}
    for i in range(dim):
        for j in range(i, dim):
            coeffs = {}
            for nu, c in lr_expand(basis[i], basis[j], k).items():
                sign, s, mu = reduce_sigma_hat(k, n, nu)
                if mu is None:
                    continue
                key = (index[mu], s)
                coeffs[key] = coeffs.get(key, Fraction(0)) + sign * c
            structure[(i, j)] = Element(coeffs)
    ring = FrobeniusRing(
        name=f"Gr({k},{n})", labels=labels, degrees=degrees, tau=n,
        pairing=pairing, structure=structure, unit_index=0,
        point_index=index[(n - k,) * k],
    )
    ring.meta.update({"kind": "grassmannian", "k": k, "n": n})
    ring.validate()
    return ring


def phi_map(k, n, nu, I):
    """Lift (nu, I) to the length-k partition indexing its reduction preimage.

    nu is a partition with at most k rows, I a strictly increasing tuple of
    row positions in [1, k].  The j-th entry is nu_{i_j} - i_j + j + n for
    j <= r; later entries interleave shifted parts of nu.
    """
    nu = tuple(nu)
    if len(nu) > k:
        raise ValueError("nu has more than k rows")
    nu = nu + (0,) * (k - len(nu))
    I = tuple(int(x) for x in I)
    r = len(I)
    if r < 1 or any(I[t] >= I[t + 1] for t in range(r - 1)) or I[0] < 1 or I[-1] > k:
        raise ValueError("I must be strictly increasing inside [1, k]")
    idx = (0,) + I
    phi = []
    for j in range(1, k + 1):
        if j <= r:
            ij = I[j - 1]
            phi.append(nu[ij - 1] - ij + j + n)
        elif j - r > I[-1] - r:
            phi.append(nu[j - 1])
        else:
            t = j - r
            for l in range(1, r + 1):
                if idx[l - 1] - l + 2 <= t <= idx[l] - l:
                    phi.append(nu[j - r + l - 2] + r - l + 1)
                    break
            else:
                raise AssertionError("interleaving windows must cover j")
    assert all(phi[t] >= phi[t + 1] for t in range(k - 1)), "phi must be a partition"
    return normalize(tuple(phi))


def delta_closed_form(k, n):
    """Handle element of Gr(k, n) assembled from the closed combinatorial formula.

    chi(X) [pt] plus, for each q-power r and each nu of weight k(n-k) - rn,
    the signed sum over row sets I of the coefficients of phi_map(nu, I) in
    the products sigma_lam * sigma_{complement(lam)}.
    """
    basis, index = _gr_basis(k, n)
    kn = k * (n - k)
    expansions = [lr_expand(lam, complement(lam, k, n), k) for lam in basis]
    coeffs = {(index[(n - k,) * k], 0): Fraction(comb(n, k))}
    for r in range(1, kn // n + 1):
        base_sign = -1 if (r * (2 * k - r + 1) // 2) % 2 else 1
        for nu in basis:
            if sum(nu) != kn - r * n:
                continue
            total = 0
            for I in combinations(range(1, k + 1), r):
                phi = phi_map(k, n, nu, I)
                sign = base_sign * (-1 if sum(I) % 2 else 1)
                total += sign * sum(exp.get(phi, 0) for exp in expansions)
            if total:
                coeffs[(index[nu], r)] = Fraction(total)
    return Element(coeffs)


def delta_gr2_form(n):
    """Handle element of Gr(2, n) in its short two-row form."""
    if n < 4:
        raise ValueError("need n >= 4")
    _, index = _gr_basis(2, n)
    coeffs = {(index[(n - 2, n - 2)], 0): Fraction(n * (n - 1), 2)}
    for s in range(1, (n - 2) // 2 + 1):
        lam = normalize((n - 3 - s, s - 1))
        coeffs[(index[lam], 1)] = Fraction(n * (n - 2 * s - 1), 2)
    return Element(coeffs)


def gr2_b_values(n):
    """Column constants b_i = n(n+1)/2 - i n, i = 1..floor(n/2), for Gr(2, n)."""
    return [Fraction(n * (n + 1), 2) - i * n for i in range(1, n // 2 + 1)]


def gr2_a0_matrix(n):
    """Predicted block of the handle-over-point matrix of Gr(2, n) on the
    degree-0 residue classes: entries (2 min(i,j) - 1) b_max(i,j)."""
    b = gr2_b_values(n)
    m = n // 2
    return [[(2 * min(i, j) + 1) * b[max(i, j)] for j in range(m)] for i in range(m)]


def gr2_theta_indices(n):
    """Basis indices of 1, s[n-2,2], ..., s[n-m,m] in Gr(2, n) order."""
    _, index = _gr_basis(2, n)
    return [index[()]] + [index[(n - j, j)] for j in range(2, n // 2 + 1)]


def gr2_f_dim(n):
    """Predicted span dimension of the handle powers for Gr(2, n)."""
    return (n // gcd(4, n)) * (n // 2)


def euler_characteristic(m, r):
    """Euler characteristic of a smooth complete intersection of multidegree
    m in P^(r + len(m)), computed from the Chern series of its tangent bundle."""
    m = tuple(int(x) for x in m)
    L = len(m)
    series = [Fraction(comb(r + L + 1, j)) for j in range(r + 1)]
    for mi in m:
        out = []
        prev = Fraction(0)
        for a in series:
            prev = a - mi * prev
            out.append(prev)
        series = out
    chi = prod(m) * series[r]
    assert chi.denominator == 1
    return int(chi)


@dataclass
class FciModel:
    """A Fano complete intersection's ambient-induced quantum subring plus
    the constants controlling its handle dynamics."""
    m: tuple
    r: int
    ring: FrobeniusRing
    tau: int
    kappa: int
    chi: int
    prim_dim: int
    hat_basis: bool
    constants: dict


def fano_ci(m, r):
    """Subring of the quantum cohomology of a Fano complete intersection of
    multidegree m = (m_1, ..., m_L) and dimension r >= 3 generated by the
    hyperplane class.

    For Fano index tau >= 2 the basis is 1, H, ..., H^r with
    H^(r+i) = (prod m_i^m_i) q H^(kappa+i); for tau = 1 the shifted class
    Hhat = H + (prod m_i!) q is used instead, with
    Hhat^(r+i) = (prod m_i^m_i)^i q^i Hhat^r.  The handle element is
    installed from its closed form since the basis spans only the
    ambient-induced part of the cohomology.
    """
    m = tuple(int(x) for x in m)
    if r < 3:
        raise ValueError("r must be at least 3")
    if not m or any(mi < 2 for mi in m):
        raise ValueError("all degrees must be at least 2")
    L = len(m)
    total = sum(m)
    if total > r + L:
        raise ValueError("not Fano: need sum(m) <= r + len(m)")
    tau = r + L + 1 - total
    kappa = r - tau
    chi = euler_characteristic(m, r)
    prim = (-1) ** r * (chi - (r + 1))
    mprod = prod(m)
    mfact = prod(factorial(mi) for mi in m)
    mpow = prod(mi ** mi for mi in m)
    hat = tau == 1
    stem = "Hhat" if hat else "H"
    labels = ["1" if a == 0 else stem if a == 1 else f"{stem}^{a}" for a in range(r + 1)]
    degrees = list(range(r + 1))

    structure = {}
    for i in range(r + 1):
        for j in range(i, r + 1):
            e, s, c = i + j, 0, Fraction(1)
            while e > r:
                e -= tau
                s += 1
                c *= mpow
            structure[(i, j)] = Element({(e, s): c})

    pairing = [[{} for _ in range(r + 1)] for _ in range(r + 1)]
    for a in range(r + 1):
        for b in range(r + 1):
            d = a + b - r
            if d >= 0 and d % tau == 0:
                s = d // tau
                pairing[a][b] = {s: Fraction(mprod * mpow ** s)}

    constants = {"mprod": mprod, "mfact": mfact, "mpow": mpow}
    if hat:
        zeta = Fraction((r + 1 - chi) * (mpow - mfact), mprod)
        coeffs = {(r, 0): Fraction(chi, mprod)}
        for j in range(1, r + 1):
            c = zeta - (Fraction(mpow * r, mprod) if j == 1 else 0)
            coeffs[(r - j, j)] = c * mfact ** (j - 1)
        delta = Element(coeffs)
        constants.update({
            "zeta": zeta,
            "alpha": Fraction(mpow ** r - (r + 1 - chi) * mfact ** r, mprod),
            "beta": zeta * mfact ** (r - 1),
            "xi": zeta * mfact ** (r - 2),
            "omega": Fraction(mpow ** (r - 1) - (r + 1 - chi) * mfact ** (r - 1), mprod),
        })
    else:
        delta = Element({
            (r, 0): Fraction(chi, mprod),
            (kappa, 1): Fraction((tau - chi) * mpow, mprod),
        })

    ring = FrobeniusRing(
        name="X(" + ",".join(str(x) for x in m) + f";r={r})",
        labels=labels, degrees=degrees, tau=tau,
        pairing=pairing, structure=structure, unit_index=0,
        point_index=None, delta_override=delta,
    )
    ring.meta.update({"kind": "fano_ci", "m": m, "r": r, "tau": tau,
                      "kappa": kappa, "chi": chi, **constants})
    ring.validate()
    return FciModel(m=m, r=r, ring=ring, tau=tau, kappa=kappa, chi=chi,
                    prim_dim=prim, hat_basis=hat, constants=constants)


def fci_report(model):
    """Summarize the handle dynamics of a Fano complete intersection.

    Always reports the handle element, span data, and the computed orbit of
    the unit state.  For tau >= 2 with kappa >= 1 it includes the predicted
    finite state list; for tau = 1 it includes the triangular matrix of the
    handle in the descending basis together with its structural checks.
    """
    from . import complexity
    from .linalg import frmat, identity, is_zero_matrix, mat_pow, mat_sub, mat_scale

    ring = model.ring
    r, tau, chi, kappa = model.r, model.tau, model.chi, model.kappa
    report = {
        "name": ring.name, "m": list(model.m), "r": r, "tau": tau,
        "kappa": kappa, "chi": chi, "prim_dim": model.prim_dim,
        "hat_basis": model.hat_basis,
        "delta": repr(ring.handle_element()),
    }
    rank, powers = ring.f_span_dim()
    report["dim_f_computed"] = rank
    report["power_count"] = len(powers)

    states, closed = complexity.finite_state_set(ring, ring.unit())
    report["orbit_closed"] = closed
    report["orbit_size"] = len(states)

    if tau >= 2:
        d = gcd(r, tau)
        if kappa >= 1:
            # kappa = 0 collapses the handle into Span{1, H^r}, so the
            # independence count behind this formula needs kappa >= 1
            report["dim_f_predicted"] = (1 if tau == chi else 2) + tau // d
            preds = [ring.unit(), ring.handle_element()]
            for j in range(kappa // d + 1, r // d + 1):
                preds.append(ring.power(ring.basis_element(1), j * d))
            report["predicted_states"] = [complexity.ProjState.from_element(ring, e)
                                          for e in preds]
            report["predicted_state_count"] = len(set(report["predicted_states"]))
    else:
        c = model.constants
        alpha = c["alpha"]
        beta = c["beta"]
        omega = c["omega"]
        if chi == r + 1:
            report["dim_f_predicted"] = 3
        else:
            report["dim_f_predicted"] = r + 1 if omega != 0 else r
        mm = ring.mult_matrix(ring.handle_element(), at_q=1)
        a = [[mm[r - i][r - j] for j in range(r + 1)] for i in range(r + 1)]
        report["a_matrix"] = a
        report["alpha"] = alpha
        report["beta"] = beta
        report["xi"] = c["xi"]
        report["omega"] = omega
        report["omega_nonzero"] = omega != 0
        report["a_upper_triangular"] = all(
            a[i][j] == 0 for i in range(r + 1) for j in range(i))
        report["a_diag_ok"] = a[0][0] == alpha and all(
            a[j][j] == beta for j in range(1, r + 1))
        report["a_superdiag_ok"] = a[0][1] == omega and all(
            a[j][j + 1] == c["xi"] for j in range(1, r))
        shifted = mat_sub(frmat(a), mat_scale(identity(r + 1), beta))
        report["jordan_depth_ok"] = not is_zero_matrix(mat_pow(shifted, r - 1))
    return report
