"""
Complexo do operador - colchete derivado em ⊕ Hom_Ω(M^n, A), equação de
Maurer-Cartan, diferencial d_R e cohomologia H_R(M, A)
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Sequence, Union

import numpy as np

from algebra import (AssocAlgebra, Bimodule, RelRBFamily, Semigroup, ValidationReport, check_algebra,
                     check_bimodule, check_semigroup)
from config import DEFAULT_LIMITS, Limits
from errors import NotMaurerCartanError, StructureError
from linalg import matrix_from_linear_map, rank
from omega_hom import (DirectSum, OmegaMap, Slot, compose_at, constant_lift, embed, gerstenhaber_bracket,
                       lift_blocks, restrict)

logger = logging.getLogger(__name__)

# ============================================================================
# AMBIENTE (A, M, Ω)
# ============================================================================

@dataclass(frozen=True, eq=False)
class Ambient:
    """Álgebra, bimódulo e semigrupo com os levantamentos constantes de μ, l, r"""
    omega: Semigroup
    algebra: AssocAlgebra
    module: Bimodule

    @classmethod
    def of(cls, s: Union["Ambient", RelRBFamily]) -> "Ambient":
        if isinstance(s, Ambient):
            return s
        return cls(s.omega, s.algebra, s.module)

    @property
    def slot_a(self) -> Slot:
        return Slot("A", self.algebra.dim)

    @property
    def slot_m(self) -> Slot:
        return Slot("M", self.module.dim)

    @cached_property
    def mu(self) -> OmegaMap:
        return constant_lift(self.algebra.mul, self.omega, (self.slot_a, self.slot_a), self.slot_a)

    @cached_property
    def left(self) -> OmegaMap:
        return constant_lift(self.module.left, self.omega, (self.slot_a, self.slot_m), self.slot_m)

    @cached_property
    def right(self) -> OmegaMap:
        return constant_lift(self.module.right, self.omega, (self.slot_m, self.slot_a), self.slot_m)

    @cached_property
    def direct_sum(self) -> DirectSum:
        return DirectSum((self.slot_a, self.slot_m))

    @cached_property
    def delta(self) -> OmegaMap:
        """Δ̃((a,u),(b,v)) = (ab, a·v + u·b), constante em Ω"""
        return lift_blocks(self.omega, self.direct_sum, {
            (("A", "A"), "A"): self.algebra.mul,
            (("A", "M"), "M"): self.module.left,
            (("M", "A"), "M"): self.module.right,
        })

    def cochain_zero(self, arity: int) -> OmegaMap:
        return OmegaMap.zeros(self.omega, (self.slot_m,) * arity, self.slot_a)

    def cochain_dim(self, arity: int) -> int:
        return OmegaMap.space_dim(self.omega, (self.slot_m,) * arity, self.slot_a)

    def cochain_from_vector(self, arity: int, vector) -> OmegaMap:
        return OmegaMap.from_vector(self.omega, (self.slot_m,) * arity, self.slot_a, vector)

    def operators(self, s: RelRBFamily) -> OmegaMap:
        """R como cocadeia de aridade 1"""
        return OmegaMap(self.omega, (self.slot_m,), self.slot_a, s.ops.as_map_tensor())

    def element_map(self, tensor, sources: Sequence[Slot], target: Slot) -> OmegaMap:
        return constant_lift(tensor, self.omega, sources, target)


def _checar_cocadeia(f: OmegaMap, amb: Ambient):
    if f.omega != amb.omega or f.target != amb.slot_a or any(s != amb.slot_m for s in f.sources):
        raise StructureError("cocadeia fora de Hom_Ω(M^n, A) do ambiente")

# ============================================================================
# COLCHETE DERIVADO
# ============================================================================

def _soma(termos: Sequence[OmegaMap], zero: OmegaMap) -> OmegaMap:
    total = zero
    for t in termos:
        total = total + t
    return total


def _produto(amb: Ambient, f: OmegaMap, g: OmegaMap) -> OmegaMap:
    """(u, v) ↦ f(u)·g(v), rótulos de f seguidos dos de g"""
    return compose_at(compose_at(amb.mu, g, 2), f, 1)


def _com_elemento(f: OmegaMap, a: np.ndarray, amb: Ambient) -> OmegaMap:
    """⟦f, a⟧ para f de aridade ≥ 1 e a ∈ A"""
    m = f.arity
    a = np.asarray(a, dtype=object)
    ad_m = (np.tensordot(a, amb.module.left, axes=([0], [0]))
            - np.tensordot(a, amb.module.right, axes=([0], [1])))
    ad_m_til = amb.element_map(ad_m, (amb.slot_m,), amb.slot_m)
    dir_a = amb.element_map(np.tensordot(a, amb.algebra.mul, axes=([0], [1])), (amb.slot_a,), amb.slot_a)
    esq_a = amb.element_map(np.tensordot(a, amb.algebra.mul, axes=([0], [0])), (amb.slot_a,), amb.slot_a)
    termos = [compose_at(f, ad_m_til, i) for i in range(1, m + 1)]
    termos.append(compose_at(dir_a, f, 1))
    termos.append(-compose_at(esq_a, f, 1))
    return _soma(termos, amb.cochain_zero(m))


def derived_bracket(f: OmegaMap, g: OmegaMap, ctx: Union[Ambient, RelRBFamily]) -> OmegaMap:
    """⟦f, g⟧ pela fórmula explícita; aridades 0 pelas fórmulas de extensão"""
    amb = Ambient.of(ctx)
    _checar_cocadeia(f, amb)
    _checar_cocadeia(g, amb)
    m, n = f.arity, g.arity
    if m == 0 and n == 0:
        a, b = f.data, g.data
        dados = amb.algebra.product(a, b) - amb.algebra.product(b, a)
        return OmegaMap(amb.omega, (), amb.slot_a, dados)
    if n == 0:
        return _com_elemento(f, g.data, amb)
    if m == 0:
        return -_com_elemento(g, f.data, amb)

    g_esq = compose_at(amb.left, g, 1)
    g_dir = compose_at(amb.right, g, 2)
    f_esq = compose_at(amb.left, f, 1)
    f_dir = compose_at(amb.right, f, 2)
    sinal_mn = (-1) ** (m * n)

    termos = []
    for i in range(1, m + 1):
        termos.append(compose_at(f, g_esq, i).scale((-1) ** ((i - 1) * n)))
        termos.append(compose_at(f, g_dir, i).scale(-((-1) ** (i * n))))
    for i in range(1, n + 1):
        termos.append(compose_at(g, f_esq, i).scale(-sinal_mn * (-1) ** ((i - 1) * m)))
        termos.append(compose_at(g, f_dir, i).scale(sinal_mn * (-1) ** (i * m)))
    termos.append(_produto(amb, f, g).scale(sinal_mn))
    termos.append(-_produto(amb, g, f))
    return _soma(termos, amb.cochain_zero(m + n))


def derived_bracket_via_bracket(f: OmegaMap, g: OmegaMap, ctx: Union[Ambient, RelRBFamily]) -> OmegaMap:
    """(−1)^m [[Δ̃, f]_Ω, g]_Ω calculado em A ⊕ M e restrito a Hom_Ω(M^{m+n}, A)"""
    amb = Ambient.of(ctx)
    if f.arity == 0 or g.arity == 0:
        raise StructureError("rota pelo colchete de Gerstenhaber exige aridades ≥ 1")
    soma = amb.direct_sum
    grande = gerstenhaber_bracket(gerstenhaber_bracket(amb.delta, embed(f, soma)), embed(g, soma))
    bloco = restrict(grande, soma, ("M",) * (f.arity + g.arity), "A")
    return bloco.scale((-1) ** f.arity)

# ============================================================================
# MAURER-CARTAN E DIFERENCIAL
# ============================================================================

def _componentes(s: RelRBFamily, cap: int) -> ValidationReport:
    relatorio = ValidationReport("mc", cap)
    relatorio.extend(check_semigroup(s.omega, cap), "semigroup")
    relatorio.extend(check_algebra(s.algebra, cap), "algebra")
    relatorio.extend(check_bimodule(s.algebra, s.module, cap), "bimodule")
    return relatorio


def mc_check(s: RelRBFamily, cap: int = DEFAULT_LIMITS.report_cap) -> ValidationReport:
    """Relatório das entradas não nulas de ⟦R, R⟧ (índices α, β, u, v, saída)"""
    relatorio = _componentes(s, cap)
    if relatorio.ok:
        amb = Ambient.of(s)
        r = amb.operators(s)
        relatorio.add_tensor("[[R,R]]", derived_bracket(r, r, amb).data)
    return relatorio


def _d_r(f: OmegaMap, r: OmegaMap, amb: Ambient) -> OmegaMap:
    n = f.arity
    if n == 0:
        return _com_elemento(r, f.data, amb)
    estrela = compose_at(amb.left, r, 1) + compose_at(amb.right, r, 2)
    termos = [
        _produto(amb, r, f),
        -compose_at(r, compose_at(amb.right, f, 2), 1),
    ]
    for i in range(1, n + 1):
        termos.append(compose_at(f, estrela, i).scale((-1) ** i))
    sinal = (-1) ** (n + 1)
    termos.append(_produto(amb, f, r).scale(sinal))
    termos.append(compose_at(r, compose_at(amb.left, f, 1), 1).scale(-sinal))
    return _soma(termos, amb.cochain_zero(n + 1))


def _exigir_mc(s: RelRBFamily, force: bool):
    if force:
        return
    relatorio = mc_check(s)
    if not relatorio.ok:
        raise NotMaurerCartanError(f"R não é Maurer-Cartan: {'; '.join(relatorio.lines()[:3])}")


def d_R(f: OmegaMap, s: RelRBFamily, force: bool = False) -> OmegaMap:
    """Diferencial d_R(f) = (−1)^n ⟦R, f⟧ pela fórmula explícita"""
    _exigir_mc(s, force)
    amb = Ambient.of(s)
    _checar_cocadeia(f, amb)
    return _d_r(f, amb.operators(s), amb)


def d_R_matrix(s: RelRBFamily, n: int, force: bool = False) -> np.ndarray:
    """Matriz de d_R: Hom_Ω(M^n, A) → Hom_Ω(M^{n+1}, A) nas bases canônicas"""
    _exigir_mc(s, force)
    amb = Ambient.of(s)
    r = amb.operators(s)
    return matrix_from_linear_map(lambda v: _d_r(amb.cochain_from_vector(n, v), r, amb).flatten(),
                                  amb.cochain_dim(n), amb.cochain_dim(n + 1))

# ============================================================================
# COHOMOLOGIA
# ============================================================================

@dataclass(frozen=True)
class DegreeRow:
    """Dimensões de C, Z, B, H em um grau"""
    degree: int
    dim_c: int
    rank_out: int
    dim_z: int
    dim_b: int
    dim_h: int


@dataclass
class ComplexSummary:
    """Resumo de um complexo truncado"""
    name: str
    rows: List[DegreeRow] = field(default_factory=list)

    @property
    def dims(self) -> List[int]:
        return [r.dim_h for r in self.rows]

    def row(self, degree: int) -> DegreeRow:
        for r in self.rows:
            if r.degree == degree:
                return r
        raise KeyError(degree)


def summarize_complex(name: str, degrees: Sequence[int], dims_c: Sequence[int],
                      ranks_out: Sequence[int], ranks_in: Sequence[int]) -> ComplexSummary:
    """dim H = dim C − posto de saída − posto de entrada, grau a grau"""
    resumo = ComplexSummary(name)
    for grau, c, r_out, r_in in zip(degrees, dims_c, ranks_out, ranks_in):
        z = c - r_out
        resumo.rows.append(DegreeRow(grau, c, r_out, z, r_in, z - r_in))
    return resumo


@dataclass
class OperatorCohomology:
    """H_R nas duas convenções: com e sem cocadeias de grau 0"""
    with_degree_zero: ComplexSummary
    without_degree_zero: ComplexSummary

    @property
    def dims(self) -> List[int]:
        return [r.dim_h for r in self.with_degree_zero.rows if r.degree >= 1]

    @property
    def dims_without_degree_zero(self) -> List[int]:
        return self.without_degree_zero.dims


def cohomology_R(s: RelRBFamily, max_degree: int, limits: Limits = DEFAULT_LIMITS) -> OperatorCohomology:
    """dim H^n_R(M, A) para 1 ≤ n ≤ N por postos exatos"""
    if max_degree < 1:
        raise StructureError("max_degree deve ser ≥ 1")
    limits.guard_degree(max_degree)
    amb = Ambient.of(s)
    limits.guard_structure(s.omega.size, s.dim_a, s.dim_m)
    limits.guard_entries(amb.cochain_dim(max_degree + 1), "H_R")
    _exigir_mc(s, False)

    dims = [amb.cochain_dim(n) for n in range(max_degree + 1)]
    postos = [rank(d_R_matrix(s, n, force=True)) for n in range(max_degree + 1)]
    logger.info("H_R: postos de d_R %s", postos)

    graus = list(range(max_degree + 1))
    com_zero = summarize_complex("H_R", graus, dims, postos, [0] + postos[:-1])
    sem_zero = summarize_complex("H_R (sem grau 0)", graus[1:], dims[1:], postos[1:], [0] + postos[1:-1])
    return OperatorCohomology(com_zero, sem_zero)
