import random
from fractions import Fraction

import numpy as np
import pytest

import fixtures as corpus
from algebra import Semigroup, change_basis_rel_rbf, check_algebra, is_rb_family
from config import Limits
from errors import NotMaurerCartanError, SizeGuardError, StructureError
from linalg import matmul, rank
from operator_complex import Ambient, cohomology_R
from oracles import gauss_rank
from rbf_cohomology import (MixedCochain, RBCochainSpace, RelCochainSpace, cohomology_hoch, cohomology_RBf,
                            cohomology_rRBf, delta_RBf, delta_RBf_matrix, delta_rRBf, delta_rRBf_matrix,
                            embed_rb, h_R, hochschild_matrix, les_check, les_inclusion_matrix,
                            les_projection_matrix, semidirect_product)
from tensors import as_tensor, is_zero, tensors_equal, zeros


def _vetor_aleatorio(rng: random.Random, n: int):
    return as_tensor([rng.choice((-1, 0, 0, 1, 2)) for _ in range(n)])


def test_semidirect_product_is_associative_only_for_bimodules(dual, relative_field):
    assert check_algebra(semidirect_product(dual, relative_field.module)).ok
    alg, mod = corpus.bad_left_action()
    assert not check_algebra(semidirect_product(alg, mod)).ok


@pytest.mark.parametrize("alg", [corpus.dual_numbers(), corpus.group_algebra_z2(), corpus.ground_field()])
def test_hochschild_squares_to_zero(alg):
    for n in (1, 2):
        assert is_zero(matmul(hochschild_matrix(alg, n + 1), hochschild_matrix(alg, n)))


def test_hochschild_cohomology_of_dual_numbers(dual):
    assert cohomology_hoch(dual, 3).dims == [1, 1, 1]


def test_hochschild_cohomology_of_separable_algebra_vanishes():
    assert cohomology_hoch(corpus.group_algebra_z2(), 2).dims == [0, 0]

# ============================================================================
# COMPLEXO RELATIVO
# ============================================================================

def test_mixed_cochain_shapes_are_checked(dual):
    f = zeros((2, 2, 2))
    with pytest.raises(StructureError):
        MixedCochain(2, f, (zeros((1, 2, 1)),), None)
    c = RelCochainSpace(Ambient.of(corpus.relative_field_on_d2()), 2).zero()
    with pytest.raises(StructureError):
        c.evaluate_g(("M", "M"), [as_tensor([1]), as_tensor([1])])
    assert is_zero(c.evaluate_g(("A", "M"), [as_tensor([1, 0]), as_tensor([1])]))


def test_cochain_space_vectors_round_trip(d2_nilpotent_z2):
    espaco = RelCochainSpace(Ambient.of(d2_nilpotent_z2), 2)
    v = _vetor_aleatorio(random.Random(3), espaco.dim)
    assert tensors_equal(espaco.to_vector(espaco.from_vector(v)), v)


@pytest.mark.parametrize("nome,graus", [("d2-zero", 3), ("d2-nilpotent", 3), ("zero-algebra-id", 3),
                                        ("d2-nilpotent-z2", 2), ("band-nilpotent", 2)])
def test_relative_differential_squares_to_zero(nome, graus):
    s = corpus.rb_family_fixtures()[nome]
    for n in range(1, graus):
        assert is_zero(matmul(delta_rRBf_matrix(s, n + 1), delta_rRBf_matrix(s, n)))


def test_relative_differential_squares_to_zero_on_relative_family(relative_field):
    for n in (1, 2, 3):
        assert is_zero(matmul(delta_rRBf_matrix(relative_field, n + 1), delta_rRBf_matrix(relative_field, n)))


def test_h_r_checks_degrees(d2_nilpotent):
    with pytest.raises(StructureError):
        h_R(zeros((2, 2, 2)), [zeros((2, 2))], d2_nilpotent)


def test_h_r_with_zero_operator_vanishes(d2_zero):
    f = as_tensor(np.arange(8).reshape(2, 2, 2))
    assert h_R(f, [f, f], d2_zero).is_zero()


def test_relative_differential_requires_maurer_cartan(bad_family):
    c = RelCochainSpace(Ambient.of(bad_family), 1).zero()
    with pytest.raises(NotMaurerCartanError):
        delta_rRBf(c, bad_family)


def _dims_oraculo(matrizes, dims):
    postos = [gauss_rank(m.tolist()) for m in matrizes]
    return [dims[k] - postos[k] - (postos[k - 1] if k else 0) for k in range(len(dims))]


@pytest.mark.parametrize("fabrica", [corpus.d2_zero, lambda: corpus.d2_zero(corpus.z2()), corpus.d2_nilpotent,
                                     corpus.relative_field_on_d2])
def test_relative_cohomology_matches_independent_ranks(fabrica):
    s = fabrica()
    amb = Ambient.of(s)
    matrizes = [delta_rRBf_matrix(s, n) for n in (1, 2)]
    dims = [RelCochainSpace(amb, n).dim for n in (1, 2)]
    assert cohomology_rRBf(s, 2).dims == _dims_oraculo(matrizes, dims)


def test_zero_structure_has_cohomology_equal_to_cochains():
    s = corpus.constant_family(Semigroup.trivial(), corpus.zero_algebra(2), zeros((2, 2)))
    h = cohomology_rRBf(s, 2)
    assert h.dims == [r.dim_c for r in h.rows]
    assert h.row(1).dim_c == RelCochainSpace(Ambient.of(s), 1).dim


def test_cohomology_guards(d2_nilpotent):
    with pytest.raises(StructureError):
        cohomology_rRBf(d2_nilpotent, 0)
    with pytest.raises(SizeGuardError):
        cohomology_rRBf(d2_nilpotent, 3, Limits(max_cochain_entries=10))
    with pytest.raises(SizeGuardError):
        cohomology_rRBf(d2_nilpotent, 6)


def _invertivel(rng: random.Random, n: int):
    while True:
        p = as_tensor([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])
        if rank(p) == n:
            return p


def _dimensoes(s):
    h_r = cohomology_R(s, 2)
    dims = {"H_R": h_r.dims, "H_R_sem_grau_zero": h_r.dims_without_degree_zero,
            "H_rRBf": cohomology_rRBf(s, 2).dims}
    if is_rb_family(s):
        dims["H_RBf"] = cohomology_RBf(s, 2).dims
        dims["H_Hoch"] = cohomology_hoch(s.algebra, 2).dims
    return dims


def _familias_para_mudanca_de_base():
    familias = dict(corpus.rb_family_fixtures())
    familias["relative"] = corpus.relative_field_on_d2()
    return familias


@pytest.mark.parametrize("nome", sorted(_familias_para_mudanca_de_base()))
def test_cohomology_is_basis_invariant(nome):
    s = _familias_para_mudanca_de_base()[nome]
    rng = random.Random(nome)
    esperado = _dimensoes(s)
    for _ in range(20):
        p_a = _invertivel(rng, s.dim_a)
        p_m = None if is_rb_family(s) else _invertivel(rng, s.dim_m)
        t = change_basis_rel_rbf(s, p_a, p_m)
        assert is_rb_family(t) == is_rb_family(s)
        assert _dimensoes(t) == esperado

# ============================================================================
# VERSÃO ABSOLUTA E SEQUÊNCIA EXATA
# ============================================================================

@pytest.mark.parametrize("nome", ["d2-nilpotent", "d2-nilpotent-z2", "band-nilpotent"])
def test_embedding_is_a_chain_map(nome):
    s = corpus.rb_family_fixtures()[nome]
    amb = Ambient.of(s)
    rng = random.Random(nome)
    for n in (1, 2):
        espaco, grande = RBCochainSpace(amb, n), RelCochainSpace(amb, n + 1)
        for _ in range(5):
            c = espaco.from_vector(_vetor_aleatorio(rng, espaco.dim))
            esquerda = grande.to_vector(delta_rRBf(embed_rb(c), s))
            direita = grande.to_vector(embed_rb(delta_RBf(c, s)))
            assert tensors_equal(esquerda, direita)


@pytest.mark.parametrize("nome", ["d2-zero", "d2-nilpotent", "zero-algebra-id"])
def test_absolute_differential_squares_to_zero(nome):
    s = corpus.rb_family_fixtures()[nome]
    for n in (1, 2):
        assert is_zero(matmul(delta_RBf_matrix(s, n + 1), delta_RBf_matrix(s, n)))


def test_absolute_cohomology_needs_adjoint_module(relative_field):
    with pytest.raises(StructureError):
        cohomology_RBf(relative_field, 2)
    with pytest.raises(StructureError):
        les_check(relative_field, 2)


def test_absolute_cohomology_of_zero_operator_splits(d2_zero):
    # R = 0: h_R = 0 e d_R = 0, logo C_RBf = C_Hoch ⊕ C_R[−1]
    h_rbf = cohomology_RBf(d2_zero, 2).dims
    h_hoch = cohomology_hoch(d2_zero.algebra, 2).dims
    assert h_rbf == [h_hoch[0], h_hoch[1] + 4]


def test_inclusion_then_projection_is_zero(d2_nilpotent_z2):
    for n in (1, 2, 3):
        assert is_zero(matmul(les_projection_matrix(d2_nilpotent_z2, n), les_inclusion_matrix(d2_nilpotent_z2, n)))
    assert les_inclusion_matrix(d2_nilpotent_z2, 1).shape[1] == 0


@pytest.mark.parametrize("nome", sorted(corpus.rb_family_fixtures()))
def test_long_exact_sequence_is_exact(nome):
    s = corpus.rb_family_fixtures()[nome]
    relatorio = les_check(s, 3)
    assert relatorio.ok
    assert len(relatorio.nodes) == 9
    hoch = relatorio.complexes[2]
    assert hoch.dims == cohomology_hoch(s.algebra, 3).dims


def test_long_exact_sequence_node_bounds(d2_nilpotent):
    relatorio = les_check(d2_nilpotent, 2)
    for no in relatorio.nodes:
        assert no.dim_image_in == no.dim_kernel_out
        assert 0 <= no.dim_image_in <= no.dim_h


@pytest.mark.parametrize("grau", [0, -1])
def test_long_exact_sequence_needs_positive_degree(d2_nilpotent, grau):
    with pytest.raises(StructureError):
        les_check(d2_nilpotent, grau)
