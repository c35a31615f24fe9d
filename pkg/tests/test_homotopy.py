import pytest

import fixtures as corpus
from algebra import Semigroup, adjoint_bimodule, check_algebra, check_rel_rbf
from dendriform import check_dend_family, induced_dend_family
from errors import StructureError, TruncationError
from homotopy import (AInfStructure, DendInfFamily, GradedSpace, HomotopyRBFamily, adjoint_representation,
                      check_ainf, check_dendinf, check_homotopy_rbf, check_independence, check_omega_ainf,
                      check_representation, check_strict, dendinf_to_omega_ainf, dendinf_to_strict,
                      graded_omega_bracket, homotopy_rbf_residual, homotopy_residual_via_bracket, koszul_sign,
                      omega_ainf_to_ainf, position_sign, strict_to_dendinf, suspend_algebra, suspend_bimodule,
                      suspend_dend_family, suspend_rel_rbf, tot_dendinf, unsuspend_dend_family)
from tensors import zeros


def test_graded_space_from_support():
    espaco = GradedSpace.from_support({-1: 2, -2: 1})
    assert espaco.degrees == (-2, -1, -1)
    assert espaco.support == {-2: 1, -1: 2}
    assert espaco.tensor_omega(2).degrees == (-2, -2, -1, -1, -1, -1)
    with pytest.raises(StructureError):
        GradedSpace.from_support({0: -1})


def test_koszul_sign():
    impares = (1, 1, 1)
    assert koszul_sign(impares, (1, 0, 2)) == -1
    assert koszul_sign(impares, (1, 2, 0)) == 1
    assert koszul_sign((2, 1, 1), (1, 0, 2)) == 1
    assert koszul_sign(impares, (0, 1, 2)) == 1


def test_position_sign():
    assert position_sign((1, 2, 1), 1) == 1
    assert position_sign((1, 2, 1), 2) == -1
    assert position_sign((1, 2, 1), 3) == -1
    assert position_sign((1, 2, 1), 3, degree=2) == 1

# ============================================================================
# A∞
# ============================================================================

def test_two_cell_structure_is_ainf(two_cell):
    assert check_ainf(two_cell).ok
    assert check_ainf(two_cell, max_n=4).ok


def test_two_cell_perturbation_fails_only_at_arity_four():
    a = corpus.two_cell_ainf(1, 1, -1, 1)
    assert check_ainf(a, max_n=3).ok
    relatorio = check_ainf(a, max_n=4)
    assert not relatorio.ok
    assert all(v.rule == "stasheff n=4" for v in relatorio.violations)


def test_graded_bracket_of_ainf_with_itself(two_cell):
    mu = two_cell.as_graded()
    assert graded_omega_bracket(mu, mu, 4).is_zero()
    perturbado = corpus.two_cell_ainf(1, 1, -1, 1).as_graded()
    assert graded_omega_bracket(perturbado, perturbado, 3).is_zero()
    quadrado = graded_omega_bracket(perturbado, perturbado, 4)
    assert not quadrado.component(4).is_zero()


def test_degree_and_truncation_errors(two_cell):
    with pytest.raises(StructureError):
        AInfStructure(GradedSpace((0,)), {2: [[[1]]]})
    with pytest.raises(TruncationError):
        AInfStructure(GradedSpace((-1,)), {5: zeros((1,) * 6)})
    with pytest.raises(TruncationError):
        check_ainf(two_cell, max_n=5)


@pytest.mark.parametrize("alg", [corpus.dual_numbers(), corpus.perturbed_dual_numbers(),
                                 corpus.group_algebra_z2(), corpus.ground_field()])
def test_suspended_algebra_is_ainf_iff_associative(alg):
    assert check_ainf(suspend_algebra(alg)).ok == check_algebra(alg).ok


def test_suspended_bimodule_is_representation(dual):
    a = suspend_algebra(dual)
    assert check_representation(a, suspend_bimodule(dual, adjoint_bimodule(dual))).ok
    alg, mod = corpus.bad_left_action()
    assert not check_representation(suspend_algebra(alg), suspend_bimodule(alg, mod)).ok


def test_adjoint_representation_of_two_cell(two_cell):
    assert check_representation(two_cell, adjoint_representation(two_cell)).ok

# ============================================================================
# FAMÍLIAS ROTA-BAXTER HOMOTÓPICAS
# ============================================================================

def _familias_classicas():
    familias = dict(corpus.rb_family_fixtures())
    familias["identity"] = corpus.identity_on_d2()
    familias["relative"] = corpus.relative_field_on_d2()
    return familias


@pytest.mark.parametrize("nome", sorted(_familias_classicas()))
def test_suspended_family_is_homotopy_iff_classical(nome):
    s = _familias_classicas()[nome]
    h = suspend_rel_rbf(s)
    assert h.is_strict
    assert check_homotopy_rbf(h).ok == check_rel_rbf(s).ok
    assert check_strict(h).ok == check_rel_rbf(s).ok


def test_operator_degree_and_arity_are_checked(two_cell):
    rep = adjoint_representation(two_cell)
    r1 = zeros((1, 2, 2))
    r1[0, 0, 1] = 1
    with pytest.raises(StructureError):
        HomotopyRBFamily(two_cell, rep, Semigroup.trivial(), {1: r1})
    with pytest.raises(TruncationError):
        HomotopyRBFamily(two_cell, rep, Semigroup.trivial(), {5: zeros((1,) * 5 + (2,) * 6)})


def _nao_estrita(p=1, q=2, r=1):
    a = corpus.two_cell_ainf()
    r1 = zeros((1, 2, 2))
    r1[0, 0, 0] = p
    r1[0, 1, 1] = q
    r2 = zeros((1, 1, 2, 2, 2))
    r2[0, 0, 1, 1, 0] = r
    return HomotopyRBFamily(a, adjoint_representation(a), Semigroup.trivial(), {1: r1, 2: r2})


def _residuos_iguais(a, b):
    for n in set(a) | set(b):
        if n in a and n in b:
            if a[n] != b[n]:
                return False
        elif not (a.get(n) or b.get(n)).is_zero():
            return False
    return True


@pytest.mark.parametrize("nome,max_n", [("d2-nilpotent", 3), ("d2-nilpotent-z2", 2), ("identity", 2),
                                        ("relative", 3)])
def test_bracket_route_matches_placement_route(nome, max_n):
    h = suspend_rel_rbf(_familias_classicas()[nome])
    assert _residuos_iguais(homotopy_rbf_residual(h, max_n), homotopy_residual_via_bracket(h, max_n))


def test_bracket_route_matches_placement_route_for_non_strict_family():
    h = _nao_estrita()
    assert not h.is_strict
    assert _residuos_iguais(homotopy_rbf_residual(h, 2), homotopy_residual_via_bracket(h, 2))
    with pytest.raises(StructureError):
        check_strict(h)


def test_homotopy_adjoint_with_zero_operator_is_valid(two_cell):
    assert check_homotopy_rbf(corpus.homotopy_adjoint(two_cell)).ok
    assert check_homotopy_rbf(corpus.homotopy_adjoint(two_cell, corpus.z2()), max_n=3).ok

# ============================================================================
# DEND∞ E TRANSFERÊNCIAS
# ============================================================================

@pytest.mark.parametrize("nome", sorted(corpus.dendinf_fixtures()))
def test_dendinf_fixtures_are_valid(nome):
    d = corpus.dendinf_fixtures()[nome]
    assert check_dendinf(d, max_n=3).ok
    assert check_omega_ainf(dendinf_to_omega_ainf(d), max_n=3).ok
    assert check_ainf(omega_ainf_to_ainf(dendinf_to_omega_ainf(d)), max_n=3).ok


def test_suspended_dend_family_is_dendinf_iff_dendriform():
    for p0 in (-1, 0, 1):
        for p1 in (-1, 0, 1):
            for s0 in (-1, 0, 1):
                for s1 in (-1, 0, 1):
                    d = corpus.dend_family_1d((p0, p1), (s0, s1))
                    suspensa = suspend_dend_family(d)
                    assert check_dendinf(suspensa, max_n=3).ok == check_dend_family(d).ok
                    assert unsuspend_dend_family(suspensa) == d


def test_independence_violation_is_reported(z2):
    theta = zeros((2, 2, 1, 1, 1))
    theta[1, 0, 0, 0, 0] = 1
    d = DendInfFamily(GradedSpace.concentrated(1, -1, "M"), z2, {2: (theta, zeros((2, 2, 1, 1, 1)))})
    assert not check_independence(d).ok
    relatorio = check_dendinf(d, max_n=3)
    assert not relatorio.ok
    assert "depende" in relatorio.violations[0].rule


def test_unsuspend_requires_concentrated_degree():
    d = corpus.dendinf_fixtures()["left-two-cell"]
    with pytest.raises(StructureError):
        unsuspend_dend_family(d)


@pytest.mark.parametrize("nome", sorted(corpus.rb_family_fixtures()))
def test_transfer_square_commutes(nome):
    s = corpus.rb_family_fixtures()[nome]
    assert strict_to_dendinf(suspend_rel_rbf(s)) == suspend_dend_family(induced_dend_family(s))


def test_relative_transfer_square_commutes(relative_field):
    assert strict_to_dendinf(suspend_rel_rbf(relative_field)) == suspend_dend_family(
        induced_dend_family(relative_field))


@pytest.mark.parametrize("nome", sorted(corpus.dendinf_fixtures()))
def test_dendinf_to_strict_round_trip(nome):
    d = corpus.dendinf_fixtures()[nome]
    h = dendinf_to_strict(d)
    assert h.is_strict
    assert check_homotopy_rbf(h, max_n=3).ok
    assert strict_to_dendinf(h) == d


@pytest.mark.parametrize("nome", sorted(corpus.dendinf_fixtures()))
def test_tot_dendinf_is_valid(nome):
    d = corpus.dendinf_fixtures()[nome]
    total = tot_dendinf(d)
    assert total.omega.size == 1
    assert total.space.dim == d.space.dim * d.omega.size
    assert check_dendinf(total, max_n=3).ok


def test_strict_to_dendinf_rejects_non_strict():
    with pytest.raises(StructureError):
        strict_to_dendinf(_nao_estrita())
