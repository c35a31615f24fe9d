import random

import numpy as np
import pytest

import fixtures as corpus
from algebra import (Bimodule, OperatorFamily, RelRBFamily, Semigroup, adjoint_bimodule,
                     change_basis_rel_rbf, check_algebra, check_bimodule, check_rel_rbf, check_semigroup,
                     is_rb_family, rb_family)
from errors import StructureError
from linalg import rank
from operator_complex import mc_check
from oracles import associative, rb_family_holds
from tensors import as_tensor, zeros


@pytest.mark.parametrize("omega", [Semigroup.trivial(), corpus.z2(), corpus.left_zero_band(), Semigroup.cyclic(3)])
def test_semigroup_fixtures_are_associative(omega):
    assert check_semigroup(omega).ok


def test_non_associative_table_names_violating_triple():
    relatorio = check_semigroup(corpus.non_associative_table())
    assert not relatorio.ok
    assert (0, 0, 1) in [v.indices for v in relatorio.violations]


def test_semigroup_rejects_malformed_tables():
    with pytest.raises(StructureError):
        Semigroup(((0, 1),))
    with pytest.raises(StructureError):
        Semigroup(((0, 2), (1, 0)))


def test_semigroup_products():
    omega = corpus.z2()
    assert omega.product([1, 1, 1]) == 1
    assert omega.products(2)[1, 1] == 0
    assert corpus.left_zero_band().product([1, 0, 0]) == 1


@pytest.mark.parametrize("alg", [corpus.ground_field(), corpus.dual_numbers(), corpus.group_algebra_z2(),
                                 corpus.zero_algebra(3)])
def test_algebra_fixtures_are_associative(alg):
    assert check_algebra(alg).ok
    assert associative(alg.mul)


def test_perturbed_dual_numbers_fail_associativity():
    alg = corpus.perturbed_dual_numbers()
    assert not check_algebra(alg).ok
    assert not associative(alg.mul)


def test_adjoint_bimodule_is_valid_and_bad_left_action_is_reported():
    alg = corpus.dual_numbers()
    assert check_bimodule(alg, adjoint_bimodule(alg)).ok
    alg, mod = corpus.bad_left_action()
    relatorio = check_bimodule(alg, mod)
    assert not relatorio.ok
    assert any(v.rule == "(ab)u=a(bu)" for v in relatorio.violations)


def test_report_cap_keeps_total():
    alg = corpus.perturbed_dual_numbers()
    relatorio = check_algebra(alg, cap=1)
    assert len(relatorio.violations) == 1
    assert relatorio.total >= 1
    if relatorio.total > 1:
        assert "omitidas" in relatorio.lines()[-1]


def test_rb_fixtures_are_valid(d2_nilpotent_z2, relative_field):
    for s in list(corpus.rb_family_fixtures().values()) + [d2_nilpotent_z2, relative_field]:
        assert check_rel_rbf(s).ok


def test_identity_on_dual_numbers_is_not_rota_baxter(bad_family):
    relatorio = check_rel_rbf(bad_family)
    assert not relatorio.ok
    assert relatorio.violations[0].rule == "rb-family"


def test_family_shape_mismatch_is_structural(dual):
    with pytest.raises(StructureError):
        RelRBFamily(Semigroup.trivial(), dual, adjoint_bimodule(dual), OperatorFamily(zeros((2, 2, 2))))
    with pytest.raises(StructureError):
        Bimodule(1, zeros((2, 1, 1)), zeros((2, 1, 1)))


def test_is_rb_family(d2_zero, relative_field):
    assert is_rb_family(d2_zero)
    assert not is_rb_family(relative_field)

# ============================================================================
# EQUIVALÊNCIA MAURER-CARTAN ↔ IDENTIDADE DE FAMÍLIA EM 500 FAMÍLIAS
# ============================================================================

_AMBIENTES = [
    (Semigroup.trivial(), corpus.dual_numbers(), None),
    (corpus.z2(), corpus.dual_numbers(), None),
    (corpus.left_zero_band(), corpus.dual_numbers(), None),
    (Semigroup.cyclic(3), corpus.ground_field(), None),
    (corpus.z2(), corpus.group_algebra_z2(), None),
    (Semigroup.trivial(), corpus.zero_algebra(3), None),
    (corpus.z2(), corpus.dual_numbers(), corpus.relative_field_on_d2().module),
]


def _familia_aleatoria(rng: random.Random) -> RelRBFamily:
    omega, alg, mod = rng.choice(_AMBIENTES)
    mod = mod or adjoint_bimodule(alg)
    maps = zeros((omega.size, alg.dim, mod.dim))
    for alfa in range(omega.size):
        if rng.random() < 0.5:
            continue
        for i in range(alg.dim):
            for j in range(mod.dim):
                maps[alfa, i, j] = rng.choice((-1, 0, 0, 1))
    return RelRBFamily(omega, alg, mod, OperatorFamily(maps))


def test_maurer_cartan_agrees_with_direct_identity_on_random_families():
    rng = random.Random(20240611)
    validas = invalidas = 0
    for _ in range(500):
        s = _familia_aleatoria(rng)
        esperado = rb_family_holds(s.omega.table, s.algebra.mul, s.module.left, s.module.right, s.ops.maps)
        assert mc_check(s).ok == esperado
        assert check_rel_rbf(s).ok == esperado
        validas += esperado
        invalidas += not esperado
    assert validas > 0 and invalidas > 0


def test_exhaustive_operator_search_on_dual_numbers(dual):
    encontrados_mc, encontrados_oraculo = set(), set()
    for valores in np.ndindex(3, 3, 3, 3):
        r = as_tensor([[valores[0] - 1, valores[1] - 1], [valores[2] - 1, valores[3] - 1]])
        s = rb_family(Semigroup.trivial(), dual, r[None])
        chave = tuple(valores)
        if mc_check(s).ok:
            encontrados_mc.add(chave)
        if rb_family_holds(s.omega.table, dual.mul, dual.mul, dual.mul, s.ops.maps):
            encontrados_oraculo.add(chave)
    assert encontrados_mc == encontrados_oraculo
    assert (1, 1, 2, 1) in encontrados_mc  # R nilpotente

# ============================================================================
# INVARIÂNCIA POR MUDANÇA DE BASE
# ============================================================================

def _invertivel(rng: random.Random, n: int):
    while True:
        p = as_tensor([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if rank(p) == n:
            return p


@pytest.mark.parametrize("nome", ["d2-nilpotent", "d2-nilpotent-z2", "band-nilpotent", "identity", "relative"])
def test_validity_is_basis_invariant(nome):
    familias = dict(corpus.rb_family_fixtures(), identity=corpus.identity_on_d2(),
                    relative=corpus.relative_field_on_d2())
    s = familias[nome]
    rng = random.Random(nome)
    esperado = check_rel_rbf(s).ok
    for _ in range(20):
        p_a = _invertivel(rng, s.dim_a)
        p_m = None if is_rb_family(s) else _invertivel(rng, s.dim_m)
        t = change_basis_rel_rbf(s, p_a, p_m)
        assert check_rel_rbf(t).ok == esperado
        assert is_rb_family(t) == is_rb_family(s)
