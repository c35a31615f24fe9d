import pytest
from hypothesis import given, settings, strategies as st

import fixtures as corpus
from algebra import Semigroup, adjoint_bimodule
from errors import NotMaurerCartanError, StructureError
from linalg import matmul
from omega_hom import OmegaMap
from operator_complex import (Ambient, cohomology_R, d_R, d_R_matrix, derived_bracket, derived_bracket_via_bracket,
                              mc_check)
from oracles import gauss_rank
from tensors import as_tensor, is_zero

AMB_D2 = Ambient(Semigroup.trivial(), corpus.dual_numbers(), adjoint_bimodule(corpus.dual_numbers()))
AMB_RELATIVO = Ambient.of(corpus.relative_field_on_d2())
AMB_RELATIVO_Z2 = Ambient(corpus.z2(), corpus.dual_numbers(), corpus.relative_field_on_d2().module)


@st.composite
def cocadeias(draw, amb, min_aridade=1, max_aridade=2):
    aridade = draw(st.integers(min_aridade, max_aridade))
    tamanho = amb.cochain_dim(aridade)
    valores = draw(st.lists(st.integers(-2, 2), min_size=tamanho, max_size=tamanho))
    return amb.cochain_from_vector(aridade, as_tensor(valores))


def test_mc_check_matches_family_identity(d2_nilpotent, d2_nilpotent_z2, bad_family):
    assert mc_check(d2_nilpotent).ok
    assert mc_check(d2_nilpotent_z2).ok
    relatorio = mc_check(bad_family)
    assert not relatorio.ok
    assert relatorio.violations[0].rule == "[[R,R]]"


def test_mc_check_reports_component_failures():
    alg, mod = corpus.bad_left_action()
    s = corpus.relative_field_on_d2()
    s = s.__class__(s.omega, alg, mod, s.ops)
    relatorio = mc_check(s)
    assert not relatorio.ok
    assert relatorio.violations[0].rule.startswith("bimodule:")

# ============================================================================
# COLCHETE DERIVADO
# ============================================================================

@settings(max_examples=200, deadline=None)
@given(cocadeias(AMB_D2), cocadeias(AMB_D2))
def test_explicit_bracket_matches_composition_route(f, g):
    assert derived_bracket(f, g, AMB_D2) == derived_bracket_via_bracket(f, g, AMB_D2)


@settings(max_examples=40, deadline=None)
@given(cocadeias(AMB_RELATIVO_Z2), cocadeias(AMB_RELATIVO_Z2))
def test_explicit_bracket_matches_composition_route_with_labels(f, g):
    assert derived_bracket(f, g, AMB_RELATIVO_Z2) == derived_bracket_via_bracket(f, g, AMB_RELATIVO_Z2)


@settings(max_examples=120, deadline=None)
@given(cocadeias(AMB_RELATIVO, 0, 3), cocadeias(AMB_RELATIVO, 0, 3))
def test_derived_bracket_is_graded_antisymmetric(f, g):
    sinal = (-1) ** (f.arity * g.arity)
    assert derived_bracket(f, g, AMB_RELATIVO) == -derived_bracket(g, f, AMB_RELATIVO).scale(sinal)


def _jacobi(f, g, h, amb):
    a, b, c = f.arity, g.arity, h.arity
    return (derived_bracket(derived_bracket(f, g, amb), h, amb).scale((-1) ** (a * c))
            + derived_bracket(derived_bracket(g, h, amb), f, amb).scale((-1) ** (b * a))
            + derived_bracket(derived_bracket(h, f, amb), g, amb).scale((-1) ** (c * b)))


@settings(max_examples=120, deadline=None)
@given(cocadeias(AMB_RELATIVO, 1, 3), cocadeias(AMB_RELATIVO, 1, 3), cocadeias(AMB_RELATIVO, 1, 3))
def test_derived_bracket_satisfies_graded_jacobi(f, g, h):
    assert _jacobi(f, g, h, AMB_RELATIVO).is_zero()


@settings(max_examples=40, deadline=None)
@given(cocadeias(AMB_RELATIVO_Z2), cocadeias(AMB_RELATIVO_Z2), cocadeias(AMB_RELATIVO_Z2))
def test_derived_bracket_jacobi_with_labels(f, g, h):
    assert _jacobi(f, g, h, AMB_RELATIVO_Z2).is_zero()


def test_composition_route_rejects_elements():
    a = AMB_D2.cochain_from_vector(0, as_tensor([1, 0]))
    with pytest.raises(StructureError):
        derived_bracket_via_bracket(a, a, AMB_D2)


def test_bracket_rejects_foreign_cochains():
    f = OmegaMap.zeros(AMB_D2.omega, (AMB_D2.slot_a,), AMB_D2.slot_a)
    with pytest.raises(StructureError):
        derived_bracket(f, f, AMB_D2)

# ============================================================================
# DIFERENCIAL E COHOMOLOGIA
# ============================================================================

@pytest.mark.parametrize("aridade", [0, 1, 2])
def test_d_r_is_signed_bracket_with_r_on_tot_fixture(aridade):
    s = corpus.tot_fixture()
    amb = Ambient.of(s)
    r = amb.operators(s)
    for k in range(amb.cochain_dim(aridade)):
        vetor = [0] * amb.cochain_dim(aridade)
        vetor[k] = 1
        f = amb.cochain_from_vector(aridade, as_tensor(vetor))
        assert d_R(f, s) == derived_bracket(r, f, s).scale((-1) ** aridade)


@pytest.mark.parametrize("nome,graus", [("d2-zero", 4), ("d2-nilpotent", 4), ("band-nilpotent", 3),
                                        ("d2-nilpotent-z2", 3), ("zero-algebra-id", 4)])
def test_d_r_squares_to_zero(nome, graus):
    s = corpus.rb_family_fixtures()[nome]
    for n in range(graus):
        assert is_zero(matmul(d_R_matrix(s, n + 1), d_R_matrix(s, n)))


def test_d_r_squares_to_zero_on_relative_family(relative_field):
    for n in range(4):
        assert is_zero(matmul(d_R_matrix(relative_field, n + 1), d_R_matrix(relative_field, n)))


def test_d_r_requires_maurer_cartan(bad_family):
    f = Ambient.of(bad_family).cochain_zero(1)
    with pytest.raises(NotMaurerCartanError):
        d_R(f, bad_family)
    assert d_R(f, bad_family, force=True).is_zero()


def test_zero_operator_has_zero_differential(d2_zero):
    h = cohomology_R(d2_zero, 2)
    assert h.with_degree_zero.row(1).dim_c == 4
    assert h.with_degree_zero.row(0).dim_h == 2
    assert h.dims == [4, 8]
    assert h.dims_without_degree_zero == [4, 8]


def _dims_oraculo(s, n_max):
    postos = [gauss_rank(d_R_matrix(s, n).tolist()) for n in range(n_max + 1)]
    dims = [Ambient.of(s).cochain_dim(n) for n in range(n_max + 1)]
    return [dims[n] - postos[n] - postos[n - 1] for n in range(1, n_max + 1)]


@pytest.mark.parametrize("fabrica", [corpus.d2_nilpotent, corpus.tot_fixture, corpus.relative_field_on_d2])
def test_cohomology_matches_independent_ranks(fabrica):
    s = fabrica()
    assert cohomology_R(s, 2).dims == _dims_oraculo(s, 2)


def test_cohomology_rows_are_consistent(d2_nilpotent_z2):
    h = cohomology_R(d2_nilpotent_z2, 2)
    for linha in h.with_degree_zero.rows + h.without_degree_zero.rows:
        assert linha.dim_z == linha.dim_c - linha.rank_out
        assert linha.dim_h == linha.dim_z - linha.dim_b >= 0
    # sem cocadeias de grau 0 o grau 1 não tem bordos
    assert h.without_degree_zero.row(1).dim_b == 0


def test_cohomology_refuses_invalid_family(bad_family):
    with pytest.raises(NotMaurerCartanError):
        cohomology_R(bad_family, 2)
