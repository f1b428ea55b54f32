"""Partition and Young-diagram combinatorics.

Box membership, complements, Littlewood-Richardson coefficients, restricted
partition counts, and the dimension-bound estimate used for Grassmannians.
Partitions are plain tuples of weakly decreasing positive integers; the empty
partition is ().
"""

from functools import cache
from math import gcd


def is_partition(lam) -> bool:
    """True if lam is a weakly decreasing sequence of non-negative integers."""
    lam = tuple(lam)
    if not all(isinstance(a, int) and a >= 0 for a in lam):
        return False
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def normalize(lam) -> tuple:
    """Canonical form: tuple with trailing zeros stripped."""
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError(f"not a partition: {lam}")
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    return lam


def in_box(lam, k: int, m: int) -> bool:
    """True if lam fits inside a k x m box (at most k parts, each at most m)."""
    lam = normalize(lam)
    return len(lam) <= k and (not lam or lam[0] <= m)


def complement(lam, k: int, n: int) -> tuple:
    """Box complement (n-k-lam_k, ..., n-k-lam_1) inside the k x (n-k) box.

    This is the pairing-dual partition: a weight-reversing involution with
    |complement(lam)| = k*(n-k) - |lam|.
    """
    lam = normalize(lam)
    if not in_box(lam, k, n - k):
        raise ValueError(f"{lam} is not inside the {k} x {n - k} box")
    padded = list(lam) + [0] * (k - len(lam))
    return normalize(n - k - padded[i] for i in reversed(range(k)))


def partitions_in_box(k: int, m: int) -> list:
    """All partitions inside a k x m box, sorted by (weight, parts)."""
    acc = [()]

    def grow(prefix, cap):
        for a in range(cap, 0, -1):
            lam = prefix + (a,)
            acc.append(lam)
            if len(lam) < k:
                grow(lam, a)

    if k > 0 and m > 0:
        grow((), m)
    return sorted(acc, key=lambda lam: (sum(lam), lam))


def partitions_of(w: int, max_part: int, max_len: int) -> list:
    """All partitions of weight w with at most max_len parts, each at most max_part."""
    res = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            res.append(tuple(prefix))
            return
        if len(prefix) == max_len:
            return
        for a in range(min(cap, remaining), 0, -1):
            prefix.append(a)
            rec(remaining - a, a, prefix)
            prefix.pop()

    rec(w, max_part, [])
    return res


@cache
def restricted_count(i: int, m: int, l: int) -> int:
    """p(i | m, l): the number of partitions of i with at most l parts, each at most m.

    Recursion p(i|m,l) = p(i|m-1,l) + p(i-m|m,l-1) with p(0|m,l) = 1 and
    p(i|m,l) = 0 for i < 0 or (i > 0 and ml = 0).
    """
    if i < 0:
        return 0
    if i == 0:
        return 1
    if m <= 0 or l <= 0:
        return 0
    return restricted_count(i, m - 1, l) + restricted_count(i - m, m, l - 1)


def est_bound(k: int, n: int) -> int:
    """Dimension-bound estimate (n/gcd(n,k^2)) * sum_i p(i*n | n-k, k) for Gr(k,n).

    The sum runs over 0 <= i <= floor(k(n-k)/n).
    """
    if not (2 <= k < n):
        raise ValueError(f"need 2 <= k < n, got ({k}, {n})")
    top = (k * (n - k)) // n
    total = sum(restricted_count(i * n, n - k, k) for i in range(top + 1))
    return (n // gcd(n, k * k)) * total


def lr_coefficient(lam, mu, nu) -> int:
    """Littlewood-Richardson coefficient C^nu_{lam,mu}.

    Counts fillings of the skew shape nu/lam with content mu: rows weakly
    increasing, columns strictly increasing, and the reading word (right to
    left within each row, rows top to bottom) a lattice word.
    """
    lam, mu, nu = normalize(lam), normalize(mu), normalize(nu)
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    rows = len(nu)
    lamp = list(lam) + [0] * (rows - len(lam))
    if len(lam) > rows or any(lamp[i] > nu[i] for i in range(rows)):
        return 0
    if not mu:
        return 1
    boxes = [(i, j) for i in range(rows) for j in range(nu[i] - 1, lamp[i] - 1, -1)]
    nletters = len(mu)
    counts = [0] * (nletters + 1)
    fill = {}
    total = 0

    def place(b):
        nonlocal total
        if b == len(boxes):
            total += 1
            return
        i, j = boxes[b]
        above = fill.get((i - 1, j))
        right = fill.get((i, j + 1))
        lo = 1 if above is None else above + 1
        hi = nletters if right is None else right
        for x in range(lo, hi + 1):
            if counts[x] >= mu[x - 1]:
                continue
            if x > 1 and counts[x - 1] <= counts[x]:
                continue
            counts[x] += 1
            fill[(i, j)] = x
            place(b + 1)
            del fill[(i, j)]
            counts[x] -= 1

    place(0)
    return total


def lr_coefficient_len2(lam, nu, mu) -> int:
    """Two-row closed form for C^mu_{lam,nu}; all three partitions of length <= 2.

    Returns 1 iff mu contains lam, |mu| = |lam| + |nu|, nu_1 >= mu_1 - lam_1,
    and mu_2 - lam_1 <= nu_2 <= mu_1 - lam_1; otherwise 0.
    """
    lam, nu, mu = normalize(lam), normalize(nu), normalize(mu)
    if max(len(lam), len(nu), len(mu)) > 2:
        raise ValueError("all inputs must have length <= 2")
    l1, l2 = (lam + (0, 0))[:2]
    n1, n2 = (nu + (0, 0))[:2]
    m1, m2 = (mu + (0, 0))[:2]
    if m1 + m2 != l1 + l2 + n1 + n2:
        return 0
    if not (m1 >= l1 and m2 >= l2):
        return 0
    if n1 < m1 - l1:
        return 0
    if not (m2 - l1 <= n2 <= m1 - l1):
        return 0
    return 1


def _add_strips(prev, size, max_rows):
    """Partitions reachable from prev by adding a horizontal strip of `size` boxes.

    A horizontal strip adds at most one box per column: new_i <= prev_{i-1}
    for every row i >= 2. Results are capped at max_rows rows.
    """
    prevp = list(prev)
    nrows = min(len(prev) + 1, max_rows)
    out = []
    built = []

    def rec(i, remaining):
        if i == nrows:
            if remaining == 0:
                out.append(normalize(built))
            return
        base = prevp[i] if i < len(prevp) else 0
        hi = base + remaining if i == 0 else min(prevp[i - 1], base + remaining)
        for v in range(base, hi + 1):
            built.append(v)
            rec(i + 1, remaining - (v - base))
            built.pop()

    if size == 0:
        return [normalize(prev)]
    rec(0, size)
    return out


def lr_expand(lam, mu, max_rows: int) -> dict:
    """Expand s_lam * s_mu as {nu: C^nu_{lam,mu}} over nu with at most max_rows rows.

    Chains of horizontal strips lam = nu^0 <= nu^1 <= ... <= nu^l with
    |nu^i / nu^{i-1}| = mu_i, subject to the lattice condition: for i >= 2 and
    every row j, the strip-i boxes in rows 1..j never outnumber the
    strip-(i-1) boxes in rows 1..j-1.
    """
    lam, mu = normalize(lam), normalize(mu)
    out = {}
    if len(lam) > max_rows:
        return out
    if not mu:
        return {lam: 1}

    def rec(i, cur, prev_strip):
        if i == len(mu):
            out[cur] = out.get(cur, 0) + 1
            return
        for nxt in _add_strips(cur, mu[i], max_rows):
            strip = [nxt[j] - (cur[j] if j < len(cur) else 0) for j in range(len(nxt))]
            if i > 0:
                acc_new, acc_prev, ok = 0, 0, True
                for j in range(len(strip)):
                    acc_new += strip[j]
                    if acc_new > acc_prev:
                        ok = False
                        break
                    if j < len(prev_strip):
                        acc_prev += prev_strip[j]
                if not ok:
                    continue
            rec(i + 1, nxt, strip)

    rec(0, lam, [])
    return out
