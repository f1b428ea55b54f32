from fractions import Fraction
from math import comb, gcd

import pytest

from qhandle.linalg import char_poly, is_positive_definite
from qhandle.rings import (ZERO, delta_closed_form, delta_gr2_form,
                           euler_characteristic, fano_ci, fci_report,
                           grassmannian, gr2_a0_matrix, gr2_b_values,
                           gr2_f_dim, gr2_theta_indices, phi_map,
                           projective_space, quadric, reduce_sigma_hat)


def poly_from_roots(pairs):
    poly = [Fraction(1)]
    for root, mult in pairs:
        for _ in range(mult):
            poly = poly + [Fraction(0)]
            for i in range(len(poly) - 1, 0, -1):
                poly[i] -= Fraction(root) * poly[i - 1]
    return poly


# -- projective spaces -------------------------------------------------------


def test_projective_space_basics():
    ring = projective_space(3)
    assert ring.labels == ["1", "H", "H^2", "H^3"]
    assert ring.tau == 4
    h = ring.basis_element(1)
    assert ring.power(h, 3) == ring.basis_element(3)
    assert ring.power(h, 5) == ring.element({("H", 1): 1})
    assert ring.handle_element() == ring.element({"H^3": 4})


def test_projective_space_rejects_bad_n():
    with pytest.raises(ValueError):
        projective_space(0)


# -- quadrics -----------------------------------------------------------------


def test_quadric_dimensions_and_labels():
    assert quadric(3).labels == ["1", "H", "s2", "s3"]
    assert quadric(4).labels == ["1", "H", "s2+", "s2-", "s3", "s4"]
    for r in range(3, 8):
        assert quadric(r).dim == r + 2 - r % 2


def test_quadric_middle_pairing_is_offdiagonal():
    for r in (4, 6, 8):
        assert quadric(r).meta["middle_pairing"] == "offdiagonal"


def test_quadric_product_table_odd():
    ring = quadric(5)
    el = ring.element
    sr = el({"s5": 1})
    for a in range(1, 5):
        lab = "H" if a == 1 else f"s{a}"
        assert ring.product(sr, el({lab: 1})) == el({(lab, 1): 1})
    assert ring.product(sr, sr) == el({("1", 2): 1})
    assert ring.product(el({"s2": 1}), el({"s3": 1})) == el({"s5": 1, ("1", 1): 1})


def test_quadric_product_table_even():
    ring = quadric(4)
    el = ring.element
    sr = el({"s4": 1})
    plus, minus = el({"s2+": 1}), el({"s2-": 1})
    assert ring.product(plus, plus) == el({("1", 1): 1})
    assert ring.product(minus, minus) == el({("1", 1): 1})
    assert ring.product(plus, minus) == sr
    assert ring.product(sr, plus) == el({("s2-", 1): 1})
    assert ring.product(sr, minus) == el({("s2+", 1): 1})
    # sigma_{m-1} * H hits both middle classes
    assert ring.product(el({"H": 1}), el({"H": 1})) == el({"s2+": 1, "s2-": 1})


def test_quadric_pairing():
    ring = quadric(4)
    g = ring.constant_pairing()
    idx = ring.label_index
    assert g[idx("1")][idx("s4")] == 1
    assert g[idx("H")][idx("s3")] == 1
    assert g[idx("s2+")][idx("s2-")] == 1
    assert g[idx("s2+")][idx("s2+")] == 0
    assert ring.meta["middle_pairing"] == "offdiagonal"


def test_quadric_handle_and_spectrum():
    for r in (3, 4, 6):
        d = 1 if r % 2 else 2
        ring = quadric(r)
        assert ring.handle_element() == ring.element(
            {f"s{r}": r + d, ("1", 1): r - d})
        got = char_poly(ring.mult_matrix(ring.handle_element(), at_q=1))
        assert got == poly_from_roots([(2 * r, r), (-2 * d, d)])


def test_quadric_a_matrix_positive_definite():
    for r in (3, 5):
        d = 1 if r % 2 else 2
        ring = quadric(r)
        a = ring.a_matrix()
        ok, minors = is_positive_definite(a)
        assert ok and all(v > 0 for v in minors)
        assert char_poly(a) == poly_from_roots([(2 * r, r), (2 * d, d)])


# -- grassmannians ------------------------------------------------------------


def test_reduce_sigma_hat_frozen():
    assert reduce_sigma_hat(2, 5, (5, 3)) == (1, 1, (2, 1))
    assert reduce_sigma_hat(2, 6, (8, 0)) == (-1, 1, (2,))
    assert reduce_sigma_hat(2, 4, (4,)) == (-1, 1, ())
    assert reduce_sigma_hat(2, 4, (3, 1)) == (1, 1, ())
    assert reduce_sigma_hat(2, 4, (3, 3)) == (1, 1, (2,))
    assert reduce_sigma_hat(2, 4, (4, 2)) == (1, 1, (1, 1))
    assert reduce_sigma_hat(3, 6, (5, 5, 2)) == (1, 2, ())


def test_reduce_sigma_hat_in_box_is_identity():
    for lam in [(2, 1), (3, 3), (), (1,)]:
        assert reduce_sigma_hat(2, 5, lam) == (1, 0, lam)


def test_reduce_sigma_hat_zero_cases():
    assert reduce_sigma_hat(2, 4, (4, 1)) == ZERO
    assert reduce_sigma_hat(2, 4, (3, 0)) == ZERO
    # wrapping [pt] twice in gr:2,4 gives exactly q^2
    assert reduce_sigma_hat(2, 4, (4, 4)) == (1, 2, ())
    # wrapping a straightened index keeps positivity of ring constants
    assert reduce_sigma_hat(2, 4, (4, 3)) == (1, 1, (2, 1))
    # a genuine partition with more than k rows names the zero class
    assert reduce_sigma_hat(2, 4, (3, 2, 1)) == ZERO
    # a long tuple that is not even a partition is a usage error
    with pytest.raises(ValueError):
        reduce_sigma_hat(2, 4, (1, 2, 1))
    # but trailing zeros are trimmed before the check
    assert reduce_sigma_hat(2, 4, (2, 1, 0)) == (1, 0, (2, 1))


def test_phi_map_round_trip_small():
    for n in (4, 5, 6):
        k = 2
        kn = k * (n - k)
        from qhandle.partitions import partitions_in_box
        from itertools import combinations
        for r in range(1, kn // n + 1):
            base = (-1) ** (r * (2 * k - r + 1) // 2)
            for nu in partitions_in_box(k, n - k):
                if sum(nu) != kn - r * n:
                    continue
                for idx in combinations(range(1, k + 1), r):
                    sign = base * (-1) ** sum(idx)
                    lifted = phi_map(k, n, nu, idx)
                    assert reduce_sigma_hat(k, n, lifted) == (sign, r, nu)


def test_phi_map_rejects_bad_input():
    with pytest.raises(ValueError):
        phi_map(2, 5, (1, 1, 1), (1,))
    with pytest.raises(ValueError):
        phi_map(2, 5, (1,), (2, 1))


def test_grassmannian_basis_and_domain():
    ring = grassmannian(2, 4)
    assert ring.dim == 6
    assert ring.labels[0] == "1"
    assert ring.labels[1] == "s[1]"
    assert "s[2,2]" in ring.labels
    assert ring.tau == 4
    with pytest.raises(ValueError):
        grassmannian(1, 5)
    with pytest.raises(ValueError):
        grassmannian(4, 5)


def test_grassmannian_products_small():
    ring = grassmannian(2, 4)
    el = ring.element
    s1 = el({"s[1]": 1})
    assert ring.product(s1, s1) == el({"s[2]": 1, "s[1,1]": 1})
    assert ring.product(el({"s[2]": 1}), el({"s[2]": 1})) == el({"s[2,2]": 1})
    # quantum wraparound: [pt] * s1 = q s1
    assert ring.product(el({"s[2,2]": 1}), s1) == el({("s[1]", 1): 1})
    assert ring.product(el({"s[2,2]": 1}), el({"s[2,2]": 1})) == el({("1", 2): 1})


def test_grassmannian_handle_frozen():
    g25 = grassmannian(2, 5)
    assert g25.handle_element() == g25.element({"s[3,3]": 10, ("s[1]", 1): 5})
    g26 = grassmannian(2, 6)
    assert g26.handle_element() == g26.element(
        {"s[4,4]": 15, ("s[2]", 1): 9, ("s[1,1]", 1): 3})
    g36 = grassmannian(3, 6)
    assert g36.handle_element() == g36.element(
        {"s[3,3,3]": 20, ("s[2,1]", 1): 16, ("s[3]", 1): 2, ("s[1,1,1]", 1): 2})


def test_delta_formulas_agree():
    for k, n in [(2, 4), (2, 5), (2, 6), (3, 6)]:
        ring = grassmannian(k, n)
        assert delta_closed_form(k, n) == ring.handle_element()
    for n in (4, 5, 6, 7):
        assert delta_gr2_form(n) == grassmannian(2, n).handle_element()


def test_grassmannian_theta():
    for k, n in [(2, 5), (2, 6), (3, 6)]:
        dd = gcd(k, n)
        assert grassmannian(k, n).theta_order() == (n // dd, k * (n - k) // dd)


def test_gr2_block_matrix_frozen():
    assert gr2_b_values(6) == [15, 9, 3]
    assert gr2_theta_indices(6) == [0, 12, 11]
    assert gr2_a0_matrix(6) == [[15, 9, 3], [9, 27, 9], [3, 9, 15]]
    ok, minors = is_positive_definite(gr2_a0_matrix(6))
    assert ok and minors == [Fraction(15), Fraction(324), Fraction(3888)]


def test_gr2_f_dim():
    assert [gr2_f_dim(n) for n in range(4, 9)] == [2, 10, 9, 21, 8]
    for n in (4, 5, 6):
        assert grassmannian(2, n).f_span_dim()[0] == gr2_f_dim(n)


# -- fano complete intersections ---------------------------------------------


def test_euler_characteristic_values():
    assert euler_characteristic((2,), 3) == 4
    assert euler_characteristic((3,), 3) == -6
    assert euler_characteristic((2, 2), 3) == 0
    assert euler_characteristic((2, 3), 3) == -36
    assert euler_characteristic((4,), 3) == -56
    assert euler_characteristic((5,), 4) == 825


def test_fano_ci_rejects_non_fano():
    with pytest.raises(ValueError):
        fano_ci((3, 3), 3)  # |m| = 6 > r + L = 5
    with pytest.raises(ValueError):
        fano_ci((1,), 3)
    with pytest.raises(ValueError):
        fano_ci((2,), 2)


def test_fano_ci_constants_frozen():
    c = fano_ci((4,), 3).constants
    assert (c["zeta"], c["alpha"], c["beta"], c["omega"], c["xi"]) == (
        3480, 3986944, 2004480, 7744, 83520)
    c = fano_ci((2, 3), 3).constants
    assert (c["zeta"], c["alpha"], c["beta"], c["omega"]) == (
        640, 198432, 92160, 984)
    c = fano_ci((5,), 4).constants
    assert (c["alpha"], c["beta"], c["omega"]) == (
        19107493368125, -851592960000, 6386907625)


def test_fano_ci_quadric_dictionary():
    # m = (2), r = 3 is the three dimensional quadric in its H-power basis:
    # sigma_3 = H^3/2 - q, so (r+1)sigma_3 + (r-1)q = 2 H^3 - 2 q
    model = fano_ci((2,), 3)
    assert model.tau == 3 and model.kappa == 0
    assert model.ring.handle_element() == model.ring.element(
        {"H^3": 2, ("1", 1): -2})
    q3 = quadric(3)
    assert q3.handle_element() == q3.element({"s3": 4, ("1", 1): 2})
    assert model.ring.f_span_dim()[0] == 2 == q3.f_span_dim()[0]


def test_fano_ci_hat_basis_for_tau_one():
    assert fano_ci((4,), 3).ring.labels == ["1", "Hhat", "Hhat^2", "Hhat^3"]
    assert fano_ci((3,), 3).ring.labels == ["1", "H", "H^2", "H^3"]


def test_fano_ci_shift_identity():
    # Delta * H^(*i) = (tau/prod m) H^(*(r+i)) for i >= 1
    for m, r in [((3,), 3), ((2, 2), 3)]:
        model = fano_ci(m, r)
        ring = model.ring
        mprod = 1
        for mi in m:
            mprod *= mi
        h = ring.basis_element(1)
        for i in (1, 2):
            lhs = ring.product(ring.handle_element(), ring.power(h, i))
            rhs = ring.power(h, r + i).scale(Fraction(model.tau, mprod))
            assert lhs == rhs


def test_fci_report_closed_orbit():
    rep = fci_report(fano_ci((3,), 3))
    assert rep["orbit_closed"]
    assert rep["dim_f_computed"] == rep["dim_f_predicted"] == 4
    assert rep["orbit_size"] == rep["predicted_state_count"] == 4


def test_fci_report_triangular():
    rep = fci_report(fano_ci((4,), 3))
    assert not rep["orbit_closed"]
    assert rep["a_upper_triangular"] and rep["a_diag_ok"] and rep["a_superdiag_ok"]
    assert rep["jordan_depth_ok"] and rep["omega_nonzero"]
    assert rep["dim_f_computed"] == rep["dim_f_predicted"] == 4
    a = rep["a_matrix"]
    assert a[0][0] == 3986944 and a[0][1] == 7744 and a[1][1] == 2004480


def test_fci_report_skips_prediction_without_kappa():
    rep = fci_report(fano_ci((2,), 3))
    assert "dim_f_predicted" not in rep
    assert rep["dim_f_computed"] == 2


def test_all_rings_validate():
    rings = [projective_space(2), quadric(3), quadric(4), grassmannian(2, 5),
             fano_ci((3,), 3).ring, fano_ci((4,), 3).ring]
    for ring in rings:
        ring.validate()
