"""
Deformações formais - jatos truncados (μ_t, l_t, r_t, R_t), equivalências
(φ_t, ψ_t), o infinitesimal em Z²_rRBf e a classificação por H²_rRBf
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np

from algebra import RelRBFamily, ValidationReport
from config import DEFAULT_LIMITS, Limits
from errors import DeformationError, StructureError, TruncationError
from linalg import extend_basis, matmul, nullspace, rank, solve, stack_columns
from omega_hom import OmegaMap
from operator_complex import Ambient, _exigir_mc
from rbf_cohomology import MixedCochain, RelCochainSpace, delta_rRBf, delta_rRBf_matrix
from tensors import as_tensor, compose, identity, is_zero, tensors_equal, tidy, zeros

logger = logging.getLogger(__name__)

# ============================================================================
# JATOS
# ============================================================================

def _como_mapa(matriz: np.ndarray) -> np.ndarray:
    """Matriz (saída × entrada) no layout de tensor (entrada, saída)"""
    return np.ascontiguousarray(np.asarray(matriz, dtype=object).T)


def _parcelas(n: int, fatores: int):
    """Tuplas de ordens (i1, ..., ik) com soma n"""
    return [t for t in product(range(n + 1), repeat=fatores) if sum(t) == n]


@dataclass(frozen=True, eq=False)
class DeformationJet:
    """Fatias μ_i, l_i, r_i, R_i para 0 ≤ i ≤ N; a fatia 0 é a estrutura base"""
    base: RelRBFamily
    mu: Tuple[np.ndarray, ...]
    left: Tuple[np.ndarray, ...]
    right: Tuple[np.ndarray, ...]
    ops: Tuple[np.ndarray, ...]

    def __post_init__(self):
        s = self.base
        da, dm, w = s.dim_a, s.dim_m, s.omega.size
        formas = {
            "mu": (da, da, da),
            "left": (da, dm, dm),
            "right": (dm, da, dm),
            "ops": (w, da, dm),
        }
        tamanhos = set()
        for nome, forma in formas.items():
            fatias = tuple(as_tensor(x, forma) for x in getattr(self, nome))
            object.__setattr__(self, nome, fatias)
            tamanhos.add(len(fatias))
        if len(tamanhos) != 1 or 0 in tamanhos:
            raise StructureError("todas as séries do jato precisam da mesma ordem")
        base_ok = (tensors_equal(self.mu[0], s.algebra.mul) and tensors_equal(self.left[0], s.module.left)
                   and tensors_equal(self.right[0], s.module.right) and tensors_equal(self.ops[0], s.ops.maps))
        if not base_ok:
            raise StructureError("fatia de ordem 0 difere da estrutura base")

    @property
    def order(self) -> int:
        return len(self.mu) - 1

    def truncate(self, order: int) -> "DeformationJet":
        if order > self.order:
            raise TruncationError(f"ordem {order} além dos dados do jato (N = {self.order})")
        k = order + 1
        return DeformationJet(self.base, self.mu[:k], self.left[:k], self.right[:k], self.ops[:k])


@dataclass(frozen=True, eq=False)
class EquivalenceJet:
    """φ_t = Σ tⁱφ_i em A e ψ_t = Σ tⁱψ_i em M, matrizes (saída × entrada), φ_0 = id, ψ_0 = id"""
    phi: Tuple[np.ndarray, ...]
    psi: Tuple[np.ndarray, ...]

    def __post_init__(self):
        phi = tuple(as_tensor(x) for x in self.phi)
        psi = tuple(as_tensor(x) for x in self.psi)
        if not phi or len(phi) != len(psi):
            raise StructureError("φ e ψ precisam da mesma ordem")
        if not (tensors_equal(phi[0], identity(phi[0].shape[0]))
                and tensors_equal(psi[0], identity(psi[0].shape[0]))):
            raise StructureError("φ_0 e ψ_0 devem ser identidades")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "psi", psi)

    @property
    def order(self) -> int:
        return len(self.phi) - 1

    @classmethod
    def identity(cls, dim_a: int, dim_m: int, order: int) -> "EquivalenceJet":
        return cls(tuple(identity(dim_a) if i == 0 else zeros((dim_a, dim_a)) for i in range(order + 1)),
                   tuple(identity(dim_m) if i == 0 else zeros((dim_m, dim_m)) for i in range(order + 1)))


def constant_jet(s: RelRBFamily, order: int = DEFAULT_LIMITS.jet_order) -> DeformationJet:
    """Jato com todas as fatias superiores nulas"""
    def serie(t):
        return (t,) + tuple(zeros(t.shape) for _ in range(order))
    return DeformationJet(s, serie(s.algebra.mul), serie(s.module.left), serie(s.module.right),
                          serie(s.ops.maps))


def jet_from_cochain(s: RelRBFamily, c: MixedCochain) -> DeformationJet:
    """Jato de ordem 1 μ + tμ₁, l + tl₁, r + tr₁, R + tR₁ a partir de (μ₁, β₁, R₁)"""
    if c.degree != 2:
        raise DeformationError("cocadeia de grau 2 esperada")
    r_1 = np.ascontiguousarray(np.transpose(c.gamma.data, (0, 2, 1)))
    return DeformationJet(s, (s.algebra.mul, c.f), (s.module.left, c.g[1]),
                          (s.module.right, c.g[0]), (s.ops.maps, r_1))

# ============================================================================
# EQUAÇÕES DE DEFORMAÇÃO
# ============================================================================

def _ordem(j: DeformationJet, n: int) -> List[Tuple[str, np.ndarray]]:
    """Resíduos das cinco famílias de equações na ordem n"""
    s = j.base
    da, dm, w = s.dim_a, s.dim_m, s.omega.size
    assoc = zeros((da,) * 4)
    esq_esq = zeros((da, da, dm, dm))
    meio = zeros((da, dm, da, dm))
    dir_dir = zeros((dm, da, da, dm))
    for i, k in _parcelas(n, 2):
        assoc = assoc + compose(j.mu[i], j.mu[k], 1) - compose(j.mu[i], j.mu[k], 2)
        esq_esq = esq_esq + compose(j.left[i], j.mu[k], 1) - compose(j.left[i], j.left[k], 2)
        meio = meio + compose(j.right[i], j.left[k], 1) - compose(j.left[i], j.right[k], 2)
        dir_dir = dir_dir + compose(j.right[i], j.right[k], 1) - compose(j.right[i], j.mu[k], 2)

    produtos = s.omega.products(2)
    rb = zeros((w, w, dm, dm, da))
    for i, a, b in _parcelas(n, 3):
        rb = rb + np.einsum("pau,qbv,abk->pquvk", j.ops[a], j.ops[b], j.mu[i])
    for i, a, b in _parcelas(n, 3):
        x_esq = np.einsum("pau,avm->puvm", j.ops[b], j.left[a])
        x_dir = np.einsum("qbv,ubm->quvm", j.ops[b], j.right[a])
        interno = x_esq[:, None] + x_dir[None, :]
        r_prod = np.take(j.ops[i], produtos, axis=0)
        rb = rb - np.einsum("pqkm,pquvm->pquvk", r_prod, interno)
    return [
        ("(ab)c=a(bc)", tidy(assoc)),
        ("(ab)u=a(bu)", tidy(esq_esq)),
        ("(au)b=a(ub)", tidy(meio)),
        ("(ua)b=u(ab)", tidy(dir_dir)),
        ("rb-family", tidy(rb)),
    ]


def check_deformation(j: DeformationJet, up_to_order: Optional[int] = None,
                      cap: int = DEFAULT_LIMITS.report_cap) -> ValidationReport:
    """Equações de deformação em cada ordem 0..n; vazio sse j é deformação mod t^{n+1}"""
    n = j.order if up_to_order is None else up_to_order
    if n > j.order:
        raise TruncationError(f"ordem {n} além dos dados do jato (N = {j.order})")
    relatorio = ValidationReport("deformation", cap)
    for ordem in range(n + 1):
        for regra, residuo in _ordem(j, ordem):
            relatorio.add_tensor(f"ordem {ordem}: {regra}", residuo)
    logger.debug("check_deformation: ordem %d, %d violações", n, relatorio.total)
    return relatorio


def infinitesimal_of(j: DeformationJet) -> MixedCochain:
    """(μ₁, β₁, R₁) com β₁(u, a) = r₁(u, a) e β₁(a, u) = l₁(a, u)"""
    if j.order < 1:
        raise TruncationError("jato sem fatia de ordem 1")
    relatorio = check_deformation(j, 1)
    if not relatorio.ok:
        raise DeformationError(f"jato inválido mod t²: {'; '.join(relatorio.lines()[:3])}")
    amb = Ambient.of(j.base)
    gamma = OmegaMap(amb.omega, (amb.slot_m,), amb.slot_a,
                     np.ascontiguousarray(np.transpose(j.ops[1], (0, 2, 1))))
    return MixedCochain(2, j.mu[1], (j.right[1], j.left[1]), gamma)


def infinitesimal_from_cocycle(s: RelRBFamily, z: MixedCochain) -> DeformationJet:
    """Deformação infinitesimal associada a um 2-cociclo de C_rRBf"""
    if z.degree != 2:
        raise DeformationError("cociclo de grau 2 esperado")
    imagem = delta_rRBf(z, s)
    espaco = RelCochainSpace(Ambient.of(s), 3)
    if not is_zero(espaco.to_vector(imagem)):
        raise DeformationError("cocadeia não é fechada para δ_rRBf")
    return jet_from_cochain(s, z)

# ============================================================================
# EQUIVALÊNCIAS
# ============================================================================

def check_equivalence(j: DeformationJet, j2: DeformationJet, e: EquivalenceJet,
                      up_to_order: Optional[int] = None, cap: int = DEFAULT_LIMITS.report_cap) -> ValidationReport:
    """φ_t μ_t = μ'_t(φ_t, φ_t), ψ_t l_t = l'_t(φ_t, ψ_t), ψ_t r_t = r'_t(ψ_t, φ_t), φ_t R_t = R'_t ψ_t"""
    n = min(j.order, j2.order, e.order) if up_to_order is None else up_to_order
    if n > min(j.order, j2.order, e.order):
        raise TruncationError(f"ordem {n} além dos dados disponíveis")
    if j.base.omega != j2.base.omega or j.base.dim_a != j2.base.dim_a or j.base.dim_m != j2.base.dim_m:
        raise StructureError("jatos sobre espaços diferentes")
    phi = [_como_mapa(x) for x in e.phi]
    psi = [_como_mapa(x) for x in e.psi]
    relatorio = ValidationReport("equivalence", cap)
    for ordem in range(n + 1):
        mu = sum((compose(phi[i], j.mu[k], 1) for i, k in _parcelas(ordem, 2)), zeros(j.mu[0].shape))
        esq = sum((compose(psi[i], j.left[k], 1) for i, k in _parcelas(ordem, 2)), zeros(j.left[0].shape))
        dir_ = sum((compose(psi[i], j.right[k], 1) for i, k in _parcelas(ordem, 2)), zeros(j.right[0].shape))
        for i, a, b in _parcelas(ordem, 3):
            mu = mu - compose(compose(j2.mu[i], phi[a], 1), phi[b], 2)
            esq = esq - compose(compose(j2.left[i], phi[a], 1), psi[b], 2)
            dir_ = dir_ - compose(compose(j2.right[i], psi[a], 1), phi[b], 2)
        ops = zeros(j.ops[0].shape)
        for i, k in _parcelas(ordem, 2):
            for alfa in range(j.base.omega.size):
                ops[alfa] = ops[alfa] + matmul(e.phi[i], j.ops[k][alfa]) - matmul(j2.ops[i][alfa], e.psi[k])
        relatorio.add_tensor(f"ordem {ordem}: phi(ab)", tidy(mu))
        relatorio.add_tensor(f"ordem {ordem}: psi(au)", tidy(esq))
        relatorio.add_tensor(f"ordem {ordem}: psi(ua)", tidy(dir_))
        relatorio.add_tensor(f"ordem {ordem}: phi R = R' psi", tidy(ops))
    return relatorio


def _inversa_serie(serie: Sequence[np.ndarray], order: int) -> List[np.ndarray]:
    """Inversa de id + tX₁ + t²X₂ + ... módulo t^{order+1}"""
    inv = [identity(serie[0].shape[0])]
    for n in range(1, order + 1):
        acc = zeros(serie[0].shape)
        for i in range(1, min(n, len(serie) - 1) + 1):
            acc = acc + matmul(serie[i], inv[n - i])
        inv.append(tidy(-acc))
    return inv


def transport_jet(j: DeformationJet, e: EquivalenceJet, order: Optional[int] = None) -> DeformationJet:
    """Empurra j ao longo de (φ_t, ψ_t): μ'_t = φ_t μ_t(φ_t⁻¹, φ_t⁻¹) etc., até a ordem pedida"""
    n = min(j.order, e.order) if order is None else order
    if n > min(j.order, e.order):
        raise TruncationError(f"ordem {n} além dos dados disponíveis")
    phi = [_como_mapa(x) for x in e.phi[:n + 1]]
    psi = [_como_mapa(x) for x in e.psi[:n + 1]]
    phi_inv = [_como_mapa(x) for x in _inversa_serie(e.phi, n)]
    psi_inv = [_como_mapa(x) for x in _inversa_serie(e.psi, n)]

    def empurrar(serie, externo, primeiro, segundo):
        saida = []
        for ordem in range(n + 1):
            acc = zeros(serie[0].shape)
            for i, k, a, b in _parcelas(ordem, 4):
                interno = compose(compose(serie[k], primeiro[a], 1), segundo[b], 2)
                acc = acc + compose(externo[i], interno, 1)
            saida.append(tidy(acc))
        return tuple(saida)

    ops = []
    psi_inv_mat = _inversa_serie(e.psi, n)
    for ordem in range(n + 1):
        acc = zeros(j.ops[0].shape)
        for i, k, a in _parcelas(ordem, 3):
            for alfa in range(j.base.omega.size):
                acc[alfa] = acc[alfa] + matmul(matmul(e.phi[i], j.ops[k][alfa]), psi_inv_mat[a])
        ops.append(tidy(acc))
    logger.debug("transport_jet: ordem %d", n)
    return DeformationJet(j.base,
                          empurrar(j.mu, phi, phi_inv, phi_inv),
                          empurrar(j.left, psi, phi_inv, psi_inv),
                          empurrar(j.right, psi, psi_inv, phi_inv),
                          tuple(ops))

# ============================================================================
# CLASSIFICAÇÃO POR H²
# ============================================================================

def _cocadeia_grau1(s: RelRBFamily, vetor) -> Tuple[np.ndarray, np.ndarray]:
    """(φ₁, ψ₁) como matrizes a partir de um vetor de C¹_rRBf"""
    c = RelCochainSpace(Ambient.of(s), 1).from_vector(vetor)
    return _como_mapa(c.f), _como_mapa(c.g[0])


@dataclass
class InfinitesimalClassification:
    """dim H²_rRBf, representantes e testemunhas de equivalência"""
    family: RelRBFamily
    dim_h2: int
    representatives: List[MixedCochain] = field(default_factory=list)
    coboundaries: np.ndarray = None
    space: RelCochainSpace = None

    @property
    def jets(self) -> List[DeformationJet]:
        return [jet_from_cochain(self.family, z) for z in self.representatives]

    def class_coordinates(self, z: MixedCochain) -> List:
        """Coordenadas da classe de z na base de representantes"""
        base = stack_columns([self.space.to_vector(r) for r in self.representatives], self.space.dim)
        sistema = np.concatenate([base, self.coboundaries], axis=1)
        x = solve(sistema, self.space.to_vector(z))
        if x is None:
            raise DeformationError("cocadeia não é um 2-cociclo")
        return list(x[:self.dim_h2])

    def equivalence_witness(self, z: MixedCochain, z2: MixedCochain) -> Optional[EquivalenceJet]:
        """(id + tφ₁, id + tψ₁) com z − z2 = δ_rRBf(φ₁, ψ₁), ou None se não cohomólogos"""
        diferenca = self.space.to_vector(z) - self.space.to_vector(z2)
        x = solve(self.coboundaries, diferenca)
        if x is None:
            return None
        phi_1, psi_1 = _cocadeia_grau1(self.family, x)
        return EquivalenceJet((identity(self.family.dim_a), phi_1), (identity(self.family.dim_m), psi_1))


def classify_infinitesimals(s: RelRBFamily, limits: Limits = DEFAULT_LIMITS) -> InfinitesimalClassification:
    """Classes de deformações infinitesimais ↔ H²_rRBf"""
    limits.guard_structure(s.omega.size, s.dim_a, s.dim_m)
    amb = Ambient.of(s)
    espaco = RelCochainSpace(amb, 2)
    limits.guard_entries(RelCochainSpace(amb, 3).dim, "C³_rRBf")
    _exigir_mc(s, False)
    d1 = delta_rRBf_matrix(s, 1, force=True)
    d2 = delta_rRBf_matrix(s, 2, force=True)
    ciclos = list(nullspace(d2))
    bordos = [d1[:, k] for k in range(d1.shape[1])]
    escolhidos = extend_basis(bordos, ciclos, espaco.dim)
    representantes = [espaco.from_vector(ciclos[k]) for k in escolhidos]
    dim_h2 = len(ciclos) - rank(d1)
    if dim_h2 != len(representantes):
        raise DeformationError("bordos fora dos ciclos: δ_rRBf² ≠ 0")
    logger.info("classify_infinitesimals: dim Z² = %d, dim H² = %d", len(ciclos), dim_h2)
    return InfinitesimalClassification(s, dim_h2, representantes, d1, espaco)
