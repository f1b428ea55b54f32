import random
from fractions import Fraction

import pytest

from qhandle.linalg import (Echelon, char_poly, frmat, frvec, identity,
                            is_positive_definite, is_zero_matrix, krylov_rank,
                            mat_mul, mat_pow, mat_rank, mat_vec, nullspace,
                            poly_deriv, poly_divmod, poly_eval, poly_gcd,
                            rational_eigenstructure, rational_roots,
                            solve_linear, sym_float_eigs, transpose, zeros)


def test_char_poly_known():
    assert char_poly([[2, 1], [1, 2]]) == [1, -4, 3]
    assert char_poly([[0, 1], [0, 0]]) == [1, 0, 0]
    assert char_poly([[5]]) == [1, -5]


def test_cayley_hamilton_random():
    rng = random.Random(7)
    for dim in range(1, 9):
        m = [[Fraction(rng.randint(-4, 4)) for _ in range(dim)]
             for _ in range(dim)]
        acc = zeros(dim, dim)
        for coef in char_poly(m):
            acc = mat_mul(acc, m)
            for i in range(dim):
                acc[i][i] += coef
        assert is_zero_matrix(acc)


def test_poly_eval_and_divmod():
    # descending coefficients: x^2 - 4x + 3
    p = [Fraction(1), Fraction(-4), Fraction(3)]
    assert poly_eval(p, Fraction(1)) == 0
    assert poly_eval(p, Fraction(0)) == 3
    q, r = poly_divmod(p, [Fraction(1), Fraction(-1)])
    assert q == [Fraction(1), Fraction(-3)] and r == [Fraction(0)]


def test_poly_gcd_detects_repeated_roots():
    # (x - 1)^2 (x + 2)
    p = [Fraction(1), Fraction(0), Fraction(-3), Fraction(2)]
    g = poly_gcd(p, poly_deriv(p))
    assert len(g) == 2
    assert poly_eval(g, Fraction(1)) == 0
    # squarefree polynomial gives a constant gcd
    assert len(poly_gcd([Fraction(1), Fraction(0), Fraction(-2)],
                        poly_deriv([Fraction(1), Fraction(0), Fraction(-2)]))) == 1


def test_rational_roots_frozen():
    cases = [
        ([1, 0, 0, -27], [(Fraction(3), 1)]),
        ([1, -4, 3], [(Fraction(1), 1), (Fraction(3), 1)]),
        ([2, -3, 0, 0], [(Fraction(0), 2), (Fraction(3, 2), 1)]),
        ([1, -6, 12, -8], [(Fraction(2), 3)]),
        ([4, 0, -1], [(Fraction(-1, 2), 1), (Fraction(1, 2), 1)]),
        ([1, 0, 1], []),
    ]
    for coeffs, expected in cases:
        got = rational_roots([Fraction(c) for c in coeffs])
        assert sorted(got) == sorted(expected), coeffs


def test_rational_roots_random_products():
    rng = random.Random(11)
    for _ in range(30):
        roots = [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                 for _ in range(rng.randint(1, 4))]
        poly = [Fraction(1)]
        for r in roots:
            poly = poly + [Fraction(0)]
            for i in range(len(poly) - 1, 0, -1):
                poly[i] -= r * poly[i - 1]
        got = rational_roots(poly)
        assert sum(m for _, m in got) == len(roots)
        for r in set(roots):
            assert (r, roots.count(r)) in got


def test_solve_linear_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        dim = rng.randint(1, 6)
        while True:
            a = [[Fraction(rng.randint(-5, 5)) for _ in range(dim)]
                 for _ in range(dim)]
            if mat_rank(a) == dim:
                break
        x = [Fraction(rng.randint(-5, 5)) for _ in range(dim)]
        b = mat_vec(a, x)
        assert solve_linear(a, b) == x


def test_solve_linear_singular():
    # inconsistent system: no solution
    assert solve_linear(frmat([[1, 1], [1, 1]]), frvec([1, 0])) is None
    # consistent but singular: some particular solution comes back
    sol = solve_linear(frmat([[1, 2], [2, 4]]), frvec([1, 2]))
    assert sol is not None and sol[0] + 2 * sol[1] == 1


def test_nullspace_and_rank():
    a = frmat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert mat_rank(a) == 2
    basis = nullspace(a)
    assert len(basis) == 1
    for v in basis:
        assert all(x == 0 for x in mat_vec(a, v))


def test_transpose_and_pow():
    a = [[1, 2], [3, 4]]
    assert transpose(a) == [[1, 3], [2, 4]]
    assert mat_pow(frmat(a), 0) == identity(2)
    assert mat_pow(frmat(a), 3) == mat_mul(frmat(a), mat_mul(frmat(a), frmat(a)))


def test_rational_eigenstructure_diagonalizable():
    eig = rational_eigenstructure(frmat([[2, 0], [0, 3]]))
    assert eig.split_over_rationals
    values = {e.value: e.multiplicity for e in eig.entries}
    assert values == {Fraction(2): 1, Fraction(3): 1}


def test_rational_eigenstructure_jordan_block():
    eig = rational_eigenstructure(frmat([[3, 1], [0, 3]]))
    assert eig.split_over_rationals
    assert len(eig.entries) == 1
    entry = eig.entries[0]
    assert entry.value == 3 and entry.multiplicity == 2
    assert len(entry.basis) == 2


def test_rational_eigenstructure_non_split():
    eig = rational_eigenstructure(frmat([[0, -1], [1, 0]]))
    assert not eig.split_over_rationals


def test_is_positive_definite():
    ok, minors = is_positive_definite([[2, 1], [1, 2]])
    assert ok and minors == [Fraction(2), Fraction(3)]
    ok, minors = is_positive_definite([[1, 2], [2, 1]])
    assert not ok
    with pytest.raises(ValueError):
        is_positive_definite([[1, 2], [3, 4]])


def test_krylov_rank():
    m = frmat([[2, 0], [0, 3]])
    assert krylov_rank(m, frvec([1, 1]), 3) == 2
    assert krylov_rank(m, frvec([1, 0]), 3) == 1
    with pytest.raises(ValueError):
        krylov_rank(m, frvec([0, 0]), 3)


def test_echelon_rank():
    ech = Echelon()
    assert ech.add(frvec([1, 2, 3]))
    assert ech.add(frvec([0, 1, 1]))
    assert not ech.add(frvec([1, 3, 4]))
    assert ech.rank == 2


def test_sym_float_eigs():
    values = sym_float_eigs([[2.0, 1.0], [1.0, 2.0]])
    assert sorted(values) == pytest.approx([1.0, 3.0])
    values = sym_float_eigs([[4.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -2.0]])
    assert sorted(values) == pytest.approx([-2.0, 1.0, 4.0])
