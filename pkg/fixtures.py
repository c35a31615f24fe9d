"""
Fixtures - corpus nomeado de estruturas pequenas

Usado pelos testes, pela carga inicial do banco e pelo comando `fixtures`.
"""

import logging
from itertools import product
from typing import Callable, Dict, List, Tuple

import numpy as np

from algebra import AssocAlgebra, Bimodule, OperatorFamily, RelRBFamily, Semigroup, rb_family
from dendriform import DendFamily, check_dend_family, tot_construction
from homotopy import (AInfStructure, DendInfFamily, GradedSpace, HomotopyRBFamily, adjoint_representation,
                      suspend_dend_family, suspend_rel_rbf)
from tensors import as_tensor, identity, zeros

logger = logging.getLogger(__name__)

# ============================================================================
# SEMIGRUPOS E ÁLGEBRAS
# ============================================================================

def z2() -> Semigroup:
    return Semigroup(((0, 1), (1, 0)), ("0", "1"))


def left_zero_band() -> Semigroup:
    return Semigroup.left_zero_band(2)


def non_associative_table() -> Semigroup:
    """Tabela 2×2 que não é semigrupo: (0·0)·1 = 0 ≠ 0·(0·1) = 1"""
    return Semigroup(((1, 0), (0, 0)))


def ground_field() -> AssocAlgebra:
    """k com e·e = e"""
    return AssocAlgebra(1, [[[1]]])


def dual_numbers() -> AssocAlgebra:
    """D₂: e₁ unidade, e₂·e₂ = 0"""
    mul = zeros((2, 2, 2))
    mul[0, 0, 0] = 1
    mul[0, 1, 1] = 1
    mul[1, 0, 1] = 1
    return AssocAlgebra(2, mul)


def group_algebra_z2() -> AssocAlgebra:
    """k[x]/(x² − 1) na base {1, x}"""
    mul = zeros((2, 2, 2))
    mul[0, 0, 0] = 1
    mul[0, 1, 1] = 1
    mul[1, 0, 1] = 1
    mul[1, 1, 0] = 1
    return AssocAlgebra(2, mul)


def perturbed_dual_numbers() -> AssocAlgebra:
    """D₂ com e₁·e₂ = e₁: não associativa"""
    alg = dual_numbers()
    mul = alg.mul.copy()
    mul[0, 1] = [1, 0]
    return AssocAlgebra(2, mul)


def zero_algebra(dim: int = 2) -> AssocAlgebra:
    return AssocAlgebra(dim, zeros((dim,) * 3))


def nilpotent_operator() -> np.ndarray:
    """R(e₁) = e₂, R(e₂) = 0 como matriz saída × entrada"""
    return as_tensor([[0, 0], [1, 0]])


def bad_left_action() -> Tuple[AssocAlgebra, Bimodule]:
    """M = k com e₂ agindo por 1 à esquerda e ação à direita nula"""
    esq = zeros((2, 1, 1))
    esq[0, 0, 0] = 1
    esq[1, 0, 0] = 1
    return dual_numbers(), Bimodule(1, esq, zeros((1, 2, 1)))

# ============================================================================
# FAMÍLIAS ROTA-BAXTER
# ============================================================================

def constant_family(omega: Semigroup, alg: AssocAlgebra, r) -> RelRBFamily:
    """R_α = r para todo α"""
    r = as_tensor(r)
    return rb_family(omega, alg, np.broadcast_to(r, (omega.size,) + r.shape).copy())


def d2_zero(omega: Semigroup = None) -> RelRBFamily:
    omega = omega or Semigroup.trivial()
    return constant_family(omega, dual_numbers(), zeros((2, 2)))


def d2_nilpotent(omega: Semigroup = None) -> RelRBFamily:
    omega = omega or Semigroup.trivial()
    return constant_family(omega, dual_numbers(), nilpotent_operator())


def band_family() -> RelRBFamily:
    """Banda de zeros à esquerda com R_0 nilpotente e R_1 = 0"""
    maps = zeros((2, 2, 2))
    maps[0] = nilpotent_operator()
    return rb_family(left_zero_band(), dual_numbers(), maps)


def zero_algebra_family() -> RelRBFamily:
    """Álgebra nula: qualquer família é Rota-Baxter; aqui R = id"""
    return constant_family(Semigroup.trivial(), zero_algebra(2), identity(2))


def identity_on_d2() -> RelRBFamily:
    """R = id em D₂ (não é Rota-Baxter de peso 0)"""
    return constant_family(Semigroup.trivial(), dual_numbers(), identity(2))


def relative_field_on_d2() -> RelRBFamily:
    """A = D₂, M = k com e₁ agindo por 1 dos dois lados e R = 0"""
    esq = zeros((2, 1, 1))
    esq[0, 0, 0] = 1
    dir_ = zeros((1, 2, 1))
    dir_[0, 0, 0] = 1
    return RelRBFamily(Semigroup.trivial(), dual_numbers(), Bimodule(1, esq, dir_), OperatorFamily(zeros((1, 2, 1))))


def rb_family_fixtures() -> Dict[str, RelRBFamily]:
    """Famílias válidas usadas nos testes de coomologia e da sequência exata longa"""
    return {
        "d2-zero": d2_zero(),
        "d2-zero-z2": d2_zero(z2()),
        "d2-nilpotent": d2_nilpotent(),
        "d2-nilpotent-z2": d2_nilpotent(z2()),
        "band-nilpotent": band_family(),
        "zero-algebra-id": zero_algebra_family(),
    }

# ============================================================================
# FAMÍLIAS DENDRIFORMES
# ============================================================================

def dend_family_1d(prec: Tuple[int, int], succ: Tuple[int, int], omega: Semigroup = None) -> DendFamily:
    """Família em dimensão 1: prec[α] e succ[α] são escalares"""
    omega = omega or z2()
    return DendFamily(omega, 1, [[[[c]]] for c in prec], [[[[c]]] for c in succ])


def search_dend_families_1d(coefficients=(-1, 0, 1), omega: Semigroup = None) -> List[DendFamily]:
    """Busca exaustiva das famílias dendriformes de dimensão 1 sobre Ω (padrão Z/2)"""
    omega = omega or z2()
    w = omega.size
    encontradas = []
    for valores in product(coefficients, repeat=2 * w):
        d = dend_family_1d(valores[:w], valores[w:], omega)
        if check_dend_family(d).ok:
            encontradas.append(d)
    logger.info("search_dend_families_1d: %d famílias válidas", len(encontradas))
    return encontradas


def dend_fixtures() -> Dict[str, DendFamily]:
    return {
        "dend-prec": dend_family_1d((1, 1), (0, 0)),
        "dend-succ": dend_family_1d((0, 0), (1, 1)),
        "dend-prec-split": dend_family_1d((1, 0), (0, 0)),
    }


def tot_fixture() -> RelRBFamily:
    return tot_construction(dend_fixtures()["dend-prec"])

# ============================================================================
# ESTRUTURAS HOMOTÓPICAS
# ============================================================================

def two_cell_ainf(a=1, b=1, c=0, c2=1, k_max: int = 4) -> AInfStructure:
    """Base {f (grau −2), e (grau −1)} com μ₂(e,e) = a·e, μ₂(f,e) = c·f, μ₂(e,f) = c2·f, μ₃(e,e,e) = b·f"""
    espaco = GradedSpace((-2, -1), "A")
    mu2 = zeros((2, 2, 2))
    mu2[1, 1, 1] = a
    mu2[0, 1, 0] = c
    mu2[1, 0, 0] = c2
    mu3 = zeros((2, 2, 2, 2))
    mu3[1, 1, 1, 0] = b
    return AInfStructure(espaco, {2: mu2, 3: mu3}, k_max)


def left_dendinf(a: AInfStructure, omega: Semigroup = None) -> DendInfFamily:
    """θ_k^{[1]} = μ_k constante nos rótulos e θ_k^{[r]} = 0 para r ≥ 2"""
    omega = omega or Semigroup.trivial()
    w = omega.size
    thetas = {}
    for k, t in a.mu.items():
        forma = (w,) * k + t.shape
        primeiro = np.broadcast_to(t, forma).copy()
        thetas[k] = (primeiro,) + tuple(zeros(forma) for _ in range(k - 1))
    return DendInfFamily(a.space.retag("M"), omega, thetas, a.k_max)


def homotopy_adjoint(a: AInfStructure, omega: Semigroup = None) -> HomotopyRBFamily:
    """(A, A, R = 0) sobre Ω"""
    omega = omega or Semigroup.trivial()
    rep = adjoint_representation(a)
    d = a.space.dim
    return HomotopyRBFamily(a, rep, omega, {1: zeros((omega.size, d, d))})


def dendinf_fixtures() -> Dict[str, DendInfFamily]:
    saida = {f"susp-{nome}": suspend_dend_family(d) for nome, d in dend_fixtures().items()}
    saida["left-two-cell"] = left_dendinf(two_cell_ainf())
    saida["left-two-cell-z2"] = left_dendinf(two_cell_ainf(), z2())
    return saida

# ============================================================================
# REGISTRO
# ============================================================================

FIXTURES: Dict[str, Tuple[str, Callable[[], object]]] = {
    "omega-z2": ("semigroup", z2),
    "omega-band": ("semigroup", left_zero_band),
    "algebra-k": ("algebra", ground_field),
    "algebra-d2": ("algebra", dual_numbers),
    "algebra-kx": ("algebra", group_algebra_z2),
    "rbf-d2-zero": ("rb-family", d2_zero),
    "rbf-d2-zero-z2": ("rb-family", lambda: d2_zero(z2())),
    "rbf-d2-nilpotent": ("rb-family", d2_nilpotent),
    "rbf-d2-nilpotent-z2": ("rb-family", lambda: d2_nilpotent(z2())),
    "rbf-band": ("rb-family", band_family),
    "rbf-zero-algebra": ("rb-family", zero_algebra_family),
    "rel-d2-field": ("rel-rbf", relative_field_on_d2),
    "tot-prec": ("rel-rbf", tot_fixture),
    "dend-prec": ("dend-family", lambda: dend_fixtures()["dend-prec"]),
    "dend-succ": ("dend-family", lambda: dend_fixtures()["dend-succ"]),
    "dend-prec-split": ("dend-family", lambda: dend_fixtures()["dend-prec-split"]),
    "ainf-two-cell": ("ainf", two_cell_ainf),
    "homotopy-d2-nilpotent": ("homotopy-rbf", lambda: suspend_rel_rbf(d2_nilpotent(z2()))),
    "homotopy-two-cell": ("homotopy-rbf", lambda: homotopy_adjoint(two_cell_ainf())),
    "dendinf-susp-prec": ("dendinf", lambda: dendinf_fixtures()["susp-dend-prec"]),
    "dendinf-left-two-cell": ("dendinf", lambda: dendinf_fixtures()["left-two-cell-z2"]),
}


def fixture_names() -> List[str]:
    return sorted(FIXTURES)


def load_fixture(name: str) -> Tuple[str, object]:
    """(kind, estrutura) do fixture nomeado"""
    if name not in FIXTURES:
        raise KeyError(f"fixture desconhecido: {name}")
    kind, construtor = FIXTURES[name]
    return kind, construtor()
