"""Projective orbit dynamics of handle multiplication.

States are ring elements up to scale; the orbit of a state z is the sequence
of classes [Delta^(*k) z] at q = 1.  This module computes orbits, circuit
complexities (first hitting times), finite state sets, exact limit points of
real matrix iterations, and the set of non-orbit accumulation points.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    _jacobi,
    frmat,
    frvec,
    identity,
    mat_pow,
    mat_scale,
    mat_sub,
    mat_vec,
    rational_eigenstructure,
    solve_linear,
)


class _NotFound:
    """Sentinel for complexity searches that exhaust their step budget."""

    def __repr__(self):
        return "NOT_FOUND"

    def __bool__(self):
        return False


NOT_FOUND = _NotFound()


class ProjState:
    """A nonzero rational vector up to scale.

    Coordinates are normalized so the first nonzero entry equals 1, which
    makes equality and hashing exact.
    """

    __slots__ = ("vec",)

    def __init__(self, coords):
        coords = tuple(Fraction(x) for x in coords)
        pivot = next((x for x in coords if x != 0), None)
        if pivot is None:
            raise ValueError("the zero vector has no projective class")
        self.vec = tuple(x / pivot for x in coords)

    @classmethod
    def from_element(cls, ring, x, at_q=1):
        return cls(ring.element_vector(x, at_q=at_q))

    def floats(self):
        return [float(x) for x in self.vec]

    def __eq__(self, other):
        return isinstance(other, ProjState) and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def __repr__(self):
        return "[" + ", ".join(str(x) for x in self.vec) + "]"


def _coords(x):
    return x.floats() if isinstance(x, ProjState) else [float(v) for v in x]


def chordal(x, y):
    """Chordal distance sqrt(1 - <x,y>^2 / (|x|^2 |y|^2)) between states."""
    a, b = _coords(x), _coords(y)
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    dot = sum(p * q for p, q in zip(a, b))
    na = sum(p * p for p in a)
    nb = sum(q * q for q in b)
    if na == 0 or nb == 0:
        raise ValueError("zero vector has no projective distance")
    val = 1 - dot * dot / (na * nb)
    return math.sqrt(max(val, 0.0))


@dataclass
class Trajectory:
    """Orbit prefix of a state under handle multiplication.

    states[k] is the class of Delta^(*k) z.  hit_zero marks truncation at an
    exactly vanishing iterate; cycle_start/cycle_length describe the first
    exact revisit when one occurs within the step budget.
    """

    states: list
    hit_zero: bool = False
    cycle_start: int = None
    cycle_length: int = None

    @property
    def closed(self):
        return self.hit_zero or self.cycle_length is not None


def _orbit_setup(ring, s0, kmax):
    if kmax is None:
        kmax = 10 * ring.dim
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    mat = frmat(ring.mult_matrix(ring.handle_element(), at_q=1))
    vec = frvec(ring.element_vector(s0, at_q=1))
    if all(x == 0 for x in vec):
        raise ValueError("reference state is zero")
    return mat, vec, kmax


def trajectory(ring, s0, kmax=None):
    """Orbit of [s0] under handle multiplication at q = 1."""
    mat, vec, kmax = _orbit_setup(ring, s0, kmax)
    states, seen = [], {}
    hit_zero = False
    cycle_start = cycle_length = None
    for k in range(kmax + 1):
        state = ProjState(vec)
        if state in seen:
            cycle_start = seen[state]
            cycle_length = k - cycle_start
            break
        seen[state] = k
        states.append(state)
        vec = mat_vec(mat, vec)
        if all(x == 0 for x in vec):
            hit_zero = True
            break
    return Trajectory(states, hit_zero, cycle_start, cycle_length)


def exact_complexity(ring, s0, target, kmax=None):
    """Least k with [Delta^(*k) s0] = [target], or NOT_FOUND."""
    mat, vec, kmax = _orbit_setup(ring, s0, kmax)
    goal = ProjState(frvec(ring.element_vector(target, at_q=1)))
    seen = set()
    for k in range(kmax + 1):
        state = ProjState(vec)
        if state == goal:
            return k
        if state in seen:
            return NOT_FOUND
        seen.add(state)
        vec = mat_vec(mat, vec)
        if all(x == 0 for x in vec):
            return NOT_FOUND
    return NOT_FOUND


def approx_complexity(ring, s0, target, eps, kmax=None):
    """Least k with chordal([Delta^(*k) s0], [target]) <= eps, or NOT_FOUND."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    mat, vec, kmax = _orbit_setup(ring, s0, kmax)
    goal = ProjState(frvec(ring.element_vector(target, at_q=1)))
    for k in range(kmax + 1):
        state = ProjState(vec)
        if chordal(state, goal) <= eps:
            return k
        vec = mat_vec(mat, vec)
        if all(x == 0 for x in vec):
            return NOT_FOUND
    return NOT_FOUND


def finite_state_set(ring, s0, kmax=None):
    """Distinct orbit states and whether the orbit provably stays among them.

    Returns (states, closed); closed is True when the orbit either revisits a
    state exactly or reaches zero within the step budget.
    """
    traj = trajectory(ring, s0, kmax)
    return frozenset(traj.states), traj.closed


@dataclass
class LimitReport:
    """Exact accumulation data of the iteration M^k z.

    points lists the at most two projective limit classes of the nonzero
    iterates; finite_orbit means the iterates are eventually zero, in which
    case there are no limit directions.  dominant is the spectral radius of
    the part of M meeting z; depth is the largest Jordan depth there.
    """

    points: list
    finite_orbit: bool = False
    dominant: Fraction = None
    depth: int = 0


def limit_points_real(mat, z, _eig=None):
    """Limit classes of M^k z for a matrix split over the rationals.

    z is decomposed into generalized eigenvector components; the dominant
    magnitude with a nonzero component wins, with the top corank term of each
    sign surviving.  Raises ValueError for a zero z or a non-split matrix.
    """
    mat = frmat(mat)
    z = frvec(z)
    n = len(z)
    if len(mat) != n or any(len(row) != n for row in mat):
        raise ValueError("matrix and vector sizes differ")
    if all(x == 0 for x in z):
        raise ValueError("z must be nonzero")
    eig = _eig if _eig is not None else rational_eigenstructure(mat)
    if not eig.split_over_rationals:
        raise ValueError("matrix is not split over the rationals")
    columns = []
    owners = []
    for entry in eig.entries:
        for b in entry.basis:
            columns.append(b)
            owners.append(entry.value)
    stacked = [[columns[j][i] for j in range(n)] for i in range(n)]
    coefs = solve_linear(stacked, z)
    assert coefs is not None, "generalized eigenbasis must span"
    comps = {}
    for value, column, c in zip(owners, columns, coefs):
        if c == 0:
            continue
        acc = comps.setdefault(value, [Fraction(0)] * n)
        for i in range(n):
            acc[i] += c * column[i]
    comps = {v: tuple(w) for v, w in comps.items() if any(x != 0 for x in w)}
    magnitudes = [abs(v) for v in comps if v != 0]
    if not magnitudes:
        return LimitReport(points=[], finite_orbit=True)
    lam = max(magnitudes)

    def depth_of(value, vec):
        shifted = mat_sub(mat, mat_scale(identity(n), value))
        d, w = 0, list(vec)
        while any(x != 0 for x in w):
            w = mat_vec(shifted, w)
            d += 1
        return d

    present = [v for v in (lam, -lam) if v in comps]
    r = max(depth_of(v, comps[v]) for v in present)
    parts = {}
    for value in present:
        shifted = mat_sub(mat, mat_scale(identity(n), value))
        w = mat_vec(mat_pow(shifted, r - 1), list(comps[value]))
        scale = value ** (1 - r)
        parts[value] = tuple(scale * x for x in w)
    plus = parts.get(lam)
    minus = parts.get(-lam)
    points = []
    if minus is None or all(x == 0 for x in minus):
        points = [ProjState(plus)]
    elif plus is None or all(x == 0 for x in plus):
        points = [ProjState(minus)]
    else:
        for cand in (tuple(a + b for a, b in zip(plus, minus)),
                     tuple(a - b for a, b in zip(plus, minus))):
            if any(x != 0 for x in cand):
                state = ProjState(cand)
                if state not in points:
                    points.append(state)
    return LimitReport(points=points, dominant=lam, depth=r)


@dataclass
class SInfinityReport:
    """Accumulation points of an orbit that are not orbit states.

    exact marks results certified by rational arithmetic: a closed orbit has
    no such points, and a rationally split handle matrix yields exact limits.
    Float results carry the states as float tuples and are approximate.
    """

    points: list
    exact: bool
    method: str
    notes: str = ""


def _float_cluster(states, tol):
    out = []
    for st in states:
        if all(chordal(st, other) > tol for other in out):
            out.append(st)
    return out


def s_infinity(ring, s0, kmax=None, tol=1e-9):
    """Non-orbit accumulation points of the orbit of [s0].

    A closed orbit gives the empty set exactly.  If the handle matrix at
    q = 1 splits over the rationals the limits are computed exactly and the
    visited orbit states are removed.  Otherwise a float eigenvector path is
    used (symmetric power of the handle when available, power iteration as a
    last resort) and the result is approximate.
    """
    traj = trajectory(ring, s0, kmax)
    if traj.closed:
        return SInfinityReport(points=[], exact=True, method="finite-orbit")
    mat = frmat(ring.mult_matrix(ring.handle_element(), at_q=1))
    z = frvec(ring.element_vector(s0, at_q=1))
    eig = rational_eigenstructure(mat)
    if eig.split_over_rationals:
        report = limit_points_real(mat, z, _eig=eig)
        if report.finite_orbit:
            return SInfinityReport(points=[], exact=True, method="finite-orbit")
        visited = set(traj.states)
        points = [p for p in report.points if p not in visited]
        return SInfinityReport(points=points, exact=True, method="rational-split")

    theta = None
    if ring.point_index is not None:
        try:
            theta, _ = ring.theta_order()
        except ValueError:
            theta = None
    if theta is not None:
        power = ring.mult_matrix(ring.power(ring.handle_element(), theta), at_q=1)
        if power == [list(row) for row in zip(*power)]:
            values, vectors = _jacobi([[float(x) for x in row] for row in power], 1e-12)
            top = max(abs(v) for v in values)
            dominant = [vec for val, vec in zip(values, vectors)
                        if abs(abs(val) - top) <= 1e-9 * max(1.0, top)]
            fz = [float(x) for x in z]
            proj = [0.0] * len(fz)
            for vec in dominant:
                weight = sum(a * b for a, b in zip(vec, fz))
                for i, a in enumerate(vec):
                    proj[i] += weight * a
            fmat = [[float(x) for x in row] for row in mat]
            states = []
            cur = proj
            for _ in range(theta):
                norm = max(abs(x) for x in cur)
                if norm <= 1e-300:
                    break
                states.append(tuple(x / norm for x in cur))
                cur = [sum(r * v for r, v in zip(row, cur)) for row in fmat]
            points = _float_cluster(states, 1e-7)
            visited = [st.floats() for st in traj.states]
            points = [p for p in points
                      if all(chordal(p, w) > 1e-7 for w in visited)]
            return SInfinityReport(points=points, exact=False, method="theta-float",
                                   notes="float eigenprojection; approximate")

    fmat = [[float(x) for x in row] for row in mat]
    cur = [float(x) for x in z]
    tail = []
    steps = max(200, 20 * ring.dim)
    window = 4 * ring.dim
    for k in range(steps):
        norm = max(abs(x) for x in cur)
        if norm <= 1e-300:
            return SInfinityReport(points=[], exact=False, method="float",
                                   notes="iterates vanished numerically")
        cur = [x / norm for x in cur]
        if k >= steps - window:
            tail.append(tuple(cur))
        cur = [sum(r * v for r, v in zip(row, cur)) for row in fmat]
    points = _float_cluster(tail, tol ** 0.5)
    visited = [st.floats() for st in traj.states]
    points = [p for p in points if all(chordal(p, w) > 1e-7 for w in visited)]
    return SInfinityReport(points=points, exact=False, method="float",
                           notes="power iteration tail; approximate")
