from fractions import Fraction

import pytest

from lckcalc import linalg
from lckcalc.complexes import complex_for
from lckcalc.foliation import Foliation, foliation_for
from lckcalc.forms import bidegree, contract, wedge
from lckcalc.models import ModelError, hopf_surface, kodaira_surface, torus4
from lckcalc.scalars import gr, ZERO

F = Fraction


@pytest.fixture(scope="module")
def hopf():
    return foliation_for(complex_for(hopf_surface()))


@pytest.fixture(scope="module")
def kodaira():
    return foliation_for(complex_for(kodaira_surface()))


def test_no_foliation_for_kahler_models():
    with pytest.raises(ModelError):
        Foliation(complex_for(torus4()))


def test_vertical_frame(hopf, kodaira):
    # Hopf: theta = e^1, Jtheta = e^2; Kodaira: theta = -e^3, Jtheta = -e^4
    assert hopf.theta_vec[0] == gr(1)
    assert hopf.jtheta_vec[1] == gr(1)
    assert kodaira.theta_vec[2] == gr(-1)
    assert kodaira.jtheta_vec[3] == gr(-1)


def test_basic_forms_annihilated(hopf, kodaira):
    for fol in (hopf, kodaira):
        ic = fol.ic
        d = ic.d.matrix
        for col in fol.basic_cols:
            for i_x in (fol.i_theta, fol.i_jtheta):
                assert all(x.is_zero() for x in linalg.mat_vec(i_x, col))
                lie = linalg.mat_add(linalg.mat_mul(i_x, d), linalg.mat_mul(d, i_x))
                assert all(x.is_zero() for x in linalg.mat_vec(lie, col))


def test_basic_dimensions(hopf, kodaira):
    assert hopf.basic_dim == 2  # constants and the transversal area form
    assert kodaira.basic_dim == 4  # 1, e^1, e^2, e^{12}


def test_omega_prime_is_transversal_area(hopf, kodaira):
    e = hopf.ic.frame.basis_form
    assert hopf.omega_prime == e((3, 4))
    ek = kodaira.ic.frame.basis_form
    assert kodaira.omega_prime == ek((1, 2))
    for fol in (hopf, kodaira):
        assert bidegree(fol.omega_prime) == (1, 1)


def test_structure_reports(hopf, kodaira):
    for fol in (hopf, kodaira):
        rep = fol.structure_report()
        assert rep.ok, rep
        assert rep.lck_sign == 1
        assert rep.omega_prime_sign == -1  # omega' = 2i dbar(theta^{1,0})


def test_transversal_dimensions(hopf, kodaira):
    td = hopf.transversal_dimensions()
    assert td["s_k"] == [1, 0]
    assert td["s_pq"] == {(0, 0): 1, (1, 0): 0, (0, 1): 0}
    assert td["direct_sum"]
    td = kodaira.transversal_dimensions()
    assert td["s_k"] == [1, 2]
    assert td["s_pq"] == {(0, 0): 1, (1, 0): 1, (0, 1): 1}
    assert td["direct_sum"]


def test_s_pq_conjugation_symmetry(hopf, kodaira):
    for fol in (hopf, kodaira):
        td = fol.transversal_dimensions()
        for (p, q), dim in td["s_pq"].items():
            assert dim == td["s_pq"][(q, p)]
            # conjugates of basis forms land in the mirror space
            mirror = [fol.ic.form_to_vector(b) for b in td["bases_pq"][(q, p)]]
            for b in td["bases_pq"][(p, q)]:
                assert linalg.in_span(mirror, fol.ic.form_to_vector(b.conjugate()))


def test_differential_split_types(hopf, kodaira):
    for fol in (hopf, kodaira):
        split = fol.differential_split()
        total = linalg.mat_add(
            linalg.mat_add(split["d_prime"], split["d_dprime"]), split["d_V"]
        )
        assert linalg.mat_eq(total, fol.ic.d.matrix)
        # basic forms see only the transversal-raising component
        for name in ("d_dprime", "d_V"):
            assert linalg.is_zero_matrix(
                linalg.mat_mul(split[name], fol.basic_matrix)
            )


def test_kodaira_d_V_is_nonzero(kodaira):
    # de^4 = e^{12} raises transversal degree by two while dropping the
    # leaf degree: the type (2,-1) component is genuinely present
    split = kodaira.differential_split()
    assert not linalg.is_zero_matrix(split["d_V"])


def test_metric_splitting(hopf, kodaira):
    for fol in (hopf, kodaira):
        assert fol._metric_splitting_ok()


def test_transversal_laplacian_psd_structure(hopf, kodaira):
    for fol in (hopf, kodaira):
        lap = fol.laplacian_basic
        gram = fol.gram_basic
        # self-adjoint for the restricted metric: G lap = lap^H G
        lhs = linalg.mat_mul(gram, lap)
        rhs = linalg.mat_mul(linalg.conj_transpose(lap), gram)
        assert linalg.mat_eq(lhs, rhs)


def test_harmonic_effective_bases_are_basic(hopf, kodaira):
    for fol in (hopf, kodaira):
        td = fol.transversal_dimensions()
        for basis in td["bases_pq"].values():
            for b in basis:
                assert linalg.in_span(fol.basic_cols, fol.ic.form_to_vector(b))
