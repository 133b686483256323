"""Polygon calculus: wedge, involution, J, differential, Hodge star, metric."""

import numpy as np
import pytest

from kahleredge.polygon import Calculus, GradedForm, VertexFunction, make_calculus


def close(a: GradedForm, b: GradedForm, tol: float = 1e-12) -> bool:
    return (a - b).max_abs() <= tol


def test_make_calculus_validates_n():
    assert make_calculus(3).n == 3
    assert make_calculus(4).n == 4
    with pytest.raises(ValueError):
        make_calculus(2)
    with pytest.raises(ValueError):
        VertexFunction(2, [0.0, 0.0])


def test_vertex_function_length_checked():
    with pytest.raises(ValueError):
        Calculus(4).vertex_function([1.0, 2.0])


def test_bimodule_action_on_edge_supports():
    cal = make_calculus(3)
    xi01 = cal.xi(0, 1)
    assert close(cal.bimodule_act(cal.delta(0), xi01, "left"), xi01)
    assert close(cal.bimodule_act(cal.delta(1), xi01, "left"), cal.zero_form())
    assert close(cal.bimodule_act(cal.delta(1), xi01, "right"), xi01)
    assert close(cal.bimodule_act(cal.delta(0), xi01, "right"), cal.zero_form())


def test_wedge_edge_products():
    cal = make_calculus(5)
    # only head-to-tail edge pairs survive; the two orientations differ in sign
    assert close(cal.wedge(cal.xi_bwd(2), cal.xi_fwd(1)), cal.vol(2))
    assert close(cal.wedge(cal.xi_fwd(2), cal.xi_bwd(3)), -1.0 * cal.vol(2))
    assert close(cal.wedge(cal.xi_fwd(2), cal.xi_fwd(3)), cal.zero_form())
    assert close(cal.wedge(cal.xi_bwd(2), cal.xi_bwd(1)), cal.zero_form())
    assert close(cal.wedge(cal.xi_fwd(0), cal.xi_fwd(0)), cal.zero_form())
    # mismatched endpoints annihilate
    assert close(cal.wedge(cal.xi_fwd(0), cal.xi_bwd(0)), cal.zero_form())


def test_wedge_degree_truncation():
    cal = make_calculus(4)
    v = cal.vol(1)
    assert close(cal.wedge(v, cal.xi_fwd(1)), cal.zero_form())
    assert close(cal.wedge(v, v), cal.zero_form())


def test_involution_on_edges_and_volumes():
    cal = make_calculus(3)
    assert close(cal.star_involution(cal.xi(0, 1)), -1.0 * cal.xi(1, 0))
    assert close(cal.star_involution(cal.xi(1, 0)), -1.0 * cal.xi(0, 1))
    assert close(cal.star_involution(cal.vol(2)), -1.0 * cal.vol(2))
    for b in cal.basis_forms():
        assert close(cal.star_involution(cal.star_involution(b)), b)


def test_involution_is_antilinear():
    cal = make_calculus(4)
    w = cal.xi_fwd(0)
    assert close(cal.star_involution((2 + 3j) * w), (2 - 3j) * cal.star_involution(w))


def test_complex_structure_eigenvalues():
    cal = make_calculus(3)
    assert close(cal.apply_J(cal.xi(0, 1)), 1j * cal.xi(0, 1))
    assert close(cal.apply_J(cal.xi(1, 0)), -1j * cal.xi(1, 0))
    assert close(cal.apply_J(cal.from_vertex(cal.delta(0))), cal.zero_form())
    assert close(cal.apply_J(cal.vol(1)), cal.zero_form())


def test_differential_of_indicator():
    cal = make_calculus(3)
    d = cal.exterior_d(cal.delta(0))
    expected = (
        -1.0 * cal.xi(0, 1) - cal.xi(0, 2) + cal.xi(1, 0) + cal.xi(2, 0)
    )
    assert close(d, expected)


def test_differential_of_linear_ramp():
    cal = make_calculus(3)
    d = cal.exterior_d(cal.vertex_function([0.0, 1.0, 2.0]))
    expected = (
        cal.xi(0, 1)
        + 2.0 * cal.xi(0, 2)
        - cal.xi(1, 0)
        + cal.xi(1, 2)
        - 2.0 * cal.xi(2, 0)
        - cal.xi(2, 1)
    )
    assert close(d, expected)


def test_differential_unit_and_leibniz():
    cal = make_calculus(6)
    assert cal.exterior_d(cal.one()).max_abs() == 0.0
    rng = np.random.default_rng(3)
    for _ in range(10):
        f = cal.vertex_function(rng.standard_normal(6) + 1j * rng.standard_normal(6))
        h = cal.vertex_function(rng.standard_normal(6) + 1j * rng.standard_normal(6))
        lhs = cal.exterior_d(f * h)
        rhs = cal.bimodule_act(h, cal.exterior_d(f), "right") + cal.bimodule_act(
            f, cal.exterior_d(h), "left"
        )
        assert close(lhs, rhs, 1e-9)


def test_kahler_form_real_and_central():
    for n in (3, 4, 7):
        cal = make_calculus(n)
        kappa = cal.kahler_form()
        assert np.allclose(kappa.deg2, 1j * np.ones(n))
        assert close(cal.star_involution(kappa), kappa)
        f = cal.vertex_function(np.arange(n, dtype=float))
        assert close(
            cal.bimodule_act(f, kappa, "left"), cal.bimodule_act(f, kappa, "right")
        )


def test_lefschetz_indicator_and_rank():
    cal = make_calculus(3)
    assert close(cal.lefschetz(cal.from_vertex(cal.delta(1))), 1j * cal.vol(1))
    for n in (3, 5, 8):
        cal = make_calculus(n)
        mat = np.column_stack(
            [cal.lefschetz(cal.from_vertex(cal.delta(m))).deg2 for m in range(n)]
        )
        assert np.linalg.matrix_rank(mat, tol=1e-9) == n


def test_hodge_star_closed_form_values():
    cal = make_calculus(3)
    assert close(cal.hodge_star(cal.from_vertex(cal.delta(2))), 1j * cal.vol(2))
    assert close(cal.hodge_star(cal.xi(0, 1)), -1j * cal.xi(0, 1))
    assert close(cal.hodge_star(cal.xi(1, 0)), 1j * cal.xi(1, 0))
    assert close(cal.hodge_star(1j * cal.vol(1)), cal.from_vertex(cal.delta(1)))


def test_hodge_star_squares_to_graded_sign():
    cal = make_calculus(5)
    degree = [0] * 5 + [1] * 10 + [2] * 5
    for k, b in zip(degree, cal.basis_forms()):
        sign = -1.0 if k == 1 else 1.0
        assert close(cal.hodge_star(cal.hodge_star(b)), sign * b)


def test_metric_values_on_basis():
    cal = make_calculus(3)
    d1 = cal.delta(1)
    assert np.allclose(cal.metric_g(cal.from_vertex(d1), cal.from_vertex(d1)).values, d1.values)
    assert np.allclose(cal.metric_g(cal.xi(1, 2), cal.xi(1, 2)).values, d1.values)
    assert np.allclose(cal.metric_g(cal.xi(1, 2), cal.xi(2, 1)).values, 0.0)
    # volumes pair to the indicator at their index as well
    assert np.allclose(cal.metric_g(cal.vol(2), cal.vol(2)).values, cal.delta(2).values)


def test_metric_positive_and_conjugate_symmetric():
    cal = make_calculus(4)
    rng = np.random.default_rng(11)

    def rand_form():
        z = lambda: rng.standard_normal(4) + 1j * rng.standard_normal(4)
        return cal.form(deg0=z(), deg1_fwd=z(), deg1_bwd=z(), deg2=z())

    for _ in range(50):
        w, e = rand_form(), rand_form()
        gww = cal.metric_g(w, w).values
        assert np.max(np.abs(gww.imag)) <= 1e-9
        assert np.min(gww.real) >= -1e-9
        assert np.max(
            np.abs(cal.metric_g(w, e).values - np.conj(cal.metric_g(e, w).values))
        ) <= 1e-9


def test_state_is_the_mean():
    cal = make_calculus(4)
    assert cal.state_tau(cal.delta(0)) == pytest.approx(0.25)
    assert cal.state_tau(cal.one()) == pytest.approx(1.0)


def test_positive_cone_membership():
    f = VertexFunction(3, [1.0, 0.0, 2.0])
    assert f.is_positive()
    assert not VertexFunction(3, [1.0, -1.0, 0.0]).is_positive()
    assert not VertexFunction(3, [1.0, 1j, 0.0]).is_positive()


def test_degree_part_splits_the_form():
    cal = make_calculus(3)
    w = cal.form(
        deg0=[1, 0, 0], deg1_fwd=[0, 2, 0], deg1_bwd=[0, 0, 3], deg2=[4, 0, 0]
    )
    total = w.degree_part(0) + w.degree_part(1) + w.degree_part(2)
    assert close(total, w)
    with pytest.raises(ValueError):
        w.degree_part(3)
