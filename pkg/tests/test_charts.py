from fractions import Fraction

import pytest

from lckcalc import linalg
from lckcalc.charts import (
    ChartError,
    MetricChart,
    NotLCKError,
    catalog_chart,
    conformal_chart,
    flat_chart,
    hopf_chart,
    load_chart,
)
from lckcalc.forms import HermitianFrame, hodge_star, inner_product
from lckcalc.identities import IDENTITY_IDS
from lckcalc.jets import Jet, JetForm, exterior_d, jet_wedge
from lckcalc.scalars import gr, ONE, ZERO


def constant_monomials(chart):
    return [
        JetForm.monomial(chart.n, chart.order, key[0], key[1]) for key in chart.keys
    ]


def test_flat_star_matches_frame_star():
    chart = flat_chart()
    frame = HermitianFrame(2)
    for form in constant_monomials(chart):
        lhs = chart.star(form).eval_at_base()
        rhs = hodge_star(form.eval_at_base())
        assert lhs == rhs


def test_star_star_sign_on_curved_charts():
    for chart in (conformal_chart(), hopf_chart()):
        for form in constant_monomials(chart):
            k = form.degrees()[0]
            twice = chart.star(chart.star(form))
            assert (twice - form.scale(gr((-1) ** k))).is_zero()


def test_star_defining_property_pointwise():
    # <a, b> vol = a ^ star(conj b) with jet coefficients, exact
    chart = hopf_chart()
    forms = constant_monomials(chart)
    for a in forms[:8]:
        for b in forms[:8]:
            if a.degrees() != b.degrees():
                continue
            lhs = chart.vol.scale_jet(chart.pointwise_inner(a, b))
            rhs = jet_wedge(a, chart.star(b.conjugate()))
            assert (lhs - rhs).is_zero()


def test_lambda_is_gram_adjoint_of_L():
    for chart in (flat_chart(), hopf_chart()):
        adj = chart._adjoint_matrix("L", 2)
        for key in chart.keys:
            unit = JetForm.monomial(chart.n, chart.order, key[0], key[1])
            via_star = chart.apply("Lam", unit)
            via_gram = adj.get(key)
            if via_gram is None:
                assert via_star.is_zero()
            else:
                assert (via_star - via_gram).is_zero()


def test_flat_kahler_degeneracies():
    chart = flat_chart()
    test = JetForm.monomial(2, 3, (1,), (2,), jet=Jet.coordinate(2, 3, 1))
    assert chart.apply("lam", test).is_zero()
    assert chart.apply("tau", test).is_zero()
    assert chart.apply("lam_adj", test).is_zero()


def test_torsion_operators_are_zeroth_order():
    # perturbing higher jet coefficients must not change base-point values
    chart = hopf_chart()
    base = JetForm.monomial(2, 3, (1,), (2,))
    perturbed = JetForm.monomial(
        2, 3, (1,), (2,),
        jet=Jet.constant(2, 3, ONE) + Jet.monomial(2, 3, (1, 1, 0, 0), gr(5)),
    )
    for name in ("tau", "taub", "lam", "lamb", "tau_adj", "taub_adj",
                 "lam_adj", "lamb_adj", "Lam", "L", "star"):
        lhs = chart.apply(name, base).eval_at_base()
        rhs = chart.apply(name, perturbed).eval_at_base()
        assert lhs == rhs, name


def test_primitive_torsion_free_forms_are_killed_by_all_torsions():
    # base-point forms with lam a = lamb a = 0 and Lam a = 0 are killed by
    # tau, taub and all four torsion adjoints
    chart = hopf_chart()
    monomials = constant_monomials(chart)
    frame = HermitianFrame(2)
    basis_order = frame.all_indices()

    def base_matrix(name):
        cols = []
        for m in monomials:
            img = chart.apply(name, m).eval_at_base()
            cols.append([img.coeffs.get(s, ZERO) for s in basis_order])
        return linalg.from_columns(cols)

    stacked = base_matrix("lam") + base_matrix("lamb") + base_matrix("Lam")
    kernel = linalg.nullspace(stacked)
    assert kernel  # the joint kernel is nonempty (contains e.g. constants)
    checks = [base_matrix(n) for n in
              ("tau", "taub", "tau_adj", "taub_adj", "lam_adj", "lamb_adj")]
    for combo in kernel:
        for m in checks:
            assert all(x.is_zero() for x in linalg.mat_vec(m, combo))


def test_identity_suite_quick_subset():
    # full spanning runs live in the acceptance suite; spot-check here
    for chart in (flat_chart(), conformal_chart(), hopf_chart()):
        forms = constant_monomials(chart) + chart.random_jet_forms(2, seed=11)
        for identity_id in ("E1.1", "E2.4", "E2.1", "E3.5"):
            residual = chart.identity_residual(identity_id, forms)
            assert residual.is_zero, (chart.name, identity_id, residual.max_abs)


def test_unknown_identity_id():
    chart = flat_chart()
    with pytest.raises(KeyError):
        chart.identity_residual("E9.9", [])


# -- Lee form -----------------------------------------------------------------


def test_lee_form_flat_is_zero():
    assert flat_chart().lee_form().is_zero()


def test_lee_form_conformal():
    chart = conformal_chart()
    theta = chart.lee_form()
    expected_terms = {((1,), ()), ((), (1,))}
    assert set(theta.terms) == expected_terms
    for jet in theta.terms.values():
        assert jet.eval0() == ONE
        assert len(jet.coeffs) == 1


def test_lee_form_hopf_closed_and_consistent():
    chart = hopf_chart()
    theta = chart.lee_form()
    assert exterior_d(theta).is_zero()
    assert (jet_wedge(theta, chart.omega) - exterior_d(chart.omega)).is_zero()


def test_lee_form_not_closed_fails():
    # omega = (i/2)(dz1 dzb1 + e^{2u} dz2 dzb2) with u = (z1+zb1)(1+z2 zb2):
    # the unique candidate theta = 2(u_z1 dz1 + u_zb1 dzb1) is not closed
    n, order = 2, 3
    z1 = Jet.coordinate(n, order, 1)
    zb1 = Jet.coordinate(n, order, 1, barred=True)
    z2 = Jet.coordinate(n, order, 2)
    zb2 = Jet.coordinate(n, order, 2, barred=True)
    u = (z1 + zb1) * (Jet.constant(n, order, ONE) + z2 * zb2)
    exp2u = Jet.constant(n, order, ONE)
    term = Jet.constant(n, order, ONE)
    for k in range(1, order + 1):
        term = term * u.scale(2)
        exp2u = exp2u + term.scale(Fraction(1, __import__("math").factorial(k)))
    half_i = gr(0, Fraction(1, 2))
    omega = JetForm(n, order, {
        ((1,), (1,)): Jet.constant(n, order, half_i),
        ((2,), (2,)): exp2u.scale(half_i),
    })
    chart = MetricChart("twisted", omega)
    with pytest.raises(NotLCKError):
        chart.lee_form()


def test_lee_form_divisibility_failure_n3():
    # perturb the flat n = 3 chart by a real closed-ish (1,1) jet whose
    # differential is outside the image of theta -> theta ^ omega
    n, order = 3, 3
    half_i = gr(0, Fraction(1, 2))
    terms = {((a,), (a,)): Jet.constant(n, order, half_i) for a in (1, 2, 3)}
    zb3 = Jet.coordinate(n, order, 3, barred=True)
    z3 = Jet.coordinate(n, order, 3)
    terms[((1,), (2,))] = zb3.scale(half_i)
    terms[((2,), (1,))] = z3.scale(half_i)
    omega = JetForm(n, order, terms)
    chart = MetricChart("skewed", omega)
    assert chart.omega.conjugate() == chart.omega
    with pytest.raises(NotLCKError):
        chart.lee_form()


# -- validation and files ----------------------------------------------------


def test_chart_rejects_non_real_metric():
    terms = {((1,), (1,)): Jet.constant(2, 3, gr(0, Fraction(1, 2))),
             ((2,), (2,)): Jet.constant(2, 3, gr(1, 1))}
    with pytest.raises(ChartError):
        MetricChart("bad", JetForm(2, 3, terms))


def test_chart_rejects_indefinite_metric():
    terms = {((1,), (1,)): Jet.constant(2, 3, gr(0, Fraction(1, 2))),
             ((2,), (2,)): Jet.constant(2, 3, gr(0, Fraction(-1, 2)))}
    with pytest.raises(ChartError):
        MetricChart("bad", JetForm(2, 3, terms))


def test_chart_rejects_wrong_bidegree():
    terms = {((1, 2), ()): Jet.constant(2, 3, ONE)}
    with pytest.raises(ChartError):
        MetricChart("bad", JetForm(2, 3, terms))


def test_chart_file_roundtrip(tmp_path):
    import json

    data = {
        "name": "file-flat",
        "n": 2,
        "order": 3,
        "omega": [
            {"dz": [1], "dzbar": [1], "jet": {"0,0,0,0": "1/2*i"}},
            {"dz": [2], "dzbar": [2], "jet": {"0,0,0,0": "1/2*i", "1,0,1,0": "1/4*i"}},
        ],
    }
    path = tmp_path / "chart.json"
    path.write_text(json.dumps(data))
    chart = load_chart(str(path))
    assert chart.name == "file-flat"
    assert chart.n == 2
    key = ((2,), (2,))
    assert chart.omega.terms[key].coeffs[(1, 0, 1, 0)] == gr(0, Fraction(1, 4))


def test_chart_file_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ChartError):
        load_chart(str(path))
    path.write_text('{"n": 2, "omega": [{"dz": [1], "dzbar": [1], "jet": {"0,0": "1"}}]}')
    with pytest.raises(ChartError):
        load_chart(str(path))


def test_catalog_chart_unknown():
    with pytest.raises(ChartError):
        catalog_chart("nope")
