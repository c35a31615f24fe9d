"""
Estruturas homotópicas truncadas em aridade

A∞-álgebras e representações, o colchete graduado sobre Ω, famílias
Rota-Baxter homotópicas (relativas), álgebras Dend∞ de família e Ω-A∞,
com as construções de transferência entre elas. Espaços graduados são
guardados na base total com um vetor de graus; cada mapa é um tensor
denso cujas entradas fora do grau correto devem ser nulas.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra import AssocAlgebra, Bimodule, RelRBFamily, Semigroup, ValidationReport
from config import DEFAULT_LIMITS, Limits
from dendriform import DendFamily
from errors import StructureError, TruncationError
from omega_hom import DirectSum, OmegaMap, Slot, compose_at, constant_lift, embed, restrict
from tensors import as_tensor, block_slices, broadcast_labels, embed_block, is_zero, tidy, zeros

logger = logging.getLogger(__name__)

# ============================================================================
# ESPAÇOS GRADUADOS E SINAIS
# ============================================================================

@dataclass(frozen=True)
class GradedSpace:
    """Espaço graduado pela lista de graus dos vetores da base"""
    degrees: Tuple[int, ...]
    tag: str = "A"

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(g) for g in self.degrees))

    @classmethod
    def from_support(cls, support: Dict[int, int], tag: str = "A") -> "GradedSpace":
        graus = []
        for grau in sorted(support):
            if support[grau] < 0:
                raise StructureError(f"dimensão negativa no grau {grau}")
            graus.extend([grau] * support[grau])
        return cls(tuple(graus), tag)

    @classmethod
    def concentrated(cls, dim: int, degree: int = -1, tag: str = "A") -> "GradedSpace":
        return cls((degree,) * dim, tag)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def slot(self) -> Slot:
        return Slot(self.tag, self.dim)

    @property
    def support(self) -> Dict[int, int]:
        saida: Dict[int, int] = {}
        for g in self.degrees:
            saida[g] = saida.get(g, 0) + 1
        return dict(sorted(saida.items()))

    def retag(self, tag: str) -> "GradedSpace":
        return GradedSpace(self.degrees, tag)

    def tensor_omega(self, omega_size: int) -> "GradedSpace":
        """Graus de A ⊗ kΩ na base x·|Ω| + α"""
        return GradedSpace(tuple(g for g in self.degrees for _ in range(omega_size)), self.tag)


def koszul_sign(degrees: Sequence[int], permutation: Sequence[int]) -> int:
    """Sinal de reordenar elementos homogêneos: permutation[k] é o índice do elemento na posição k"""
    sinal = 1
    n = len(permutation)
    for a in range(n):
        for b in range(a + 1, n):
            x, y = permutation[a], permutation[b]
            if x > y and (degrees[x] * degrees[y]) % 2:
                sinal = -sinal
    return sinal


def position_sign(degrees: Sequence[int], i: int, degree: int = 1) -> int:
    """(−1)^{degree·(|x_1| + ... + |x_{i−1}|)} para o slot i (a partir de 1)"""
    return -1 if (degree * sum(degrees[:i - 1])) % 2 else 1


def _sinais(graus: Sequence[int]) -> np.ndarray:
    return np.array([1 if g % 2 == 0 else -1 for g in graus], dtype=object)


def graded_compose_at(f: OmegaMap, g: OmegaMap, i: int, degrees: Dict[str, Sequence[int]],
                      g_degree: int = 1) -> OmegaMap:
    """f ∘_i g com o sinal de Koszul de passar g pelas entradas 1..i−1"""
    composta = compose_at(f, g, i)
    if g_degree % 2 == 0 or i == 1:
        return composta
    mascara = np.array(1, dtype=object)
    for s in composta.sources[:i - 1]:
        mascara = np.multiply.outer(mascara, _sinais(degrees[s.tag]))
    r = composta.arity
    forma = (1,) * r + mascara.shape + (1,) * (r - i + 1) + (1,)
    return OmegaMap(composta.omega, composta.sources, composta.target,
                    tidy(composta.data * mascara.reshape(forma)))


def _checar_grau(data: np.ndarray, n_rotulos: int, entradas: Sequence[Sequence[int]],
                 saida: Sequence[int], grau: int, nome: str):
    """Entradas não nulas só onde grau(saída) = Σ graus(entradas) + grau"""
    soma = np.zeros((), dtype=np.int64)
    for graus in entradas:
        soma = np.add.outer(soma, np.asarray(graus, dtype=np.int64))
    permitido = np.equal.outer(soma + grau, np.asarray(saida, dtype=np.int64))
    arr = np.asarray(data, dtype=object)
    for idx in np.argwhere(~permitido):
        fatia = (slice(None),) * n_rotulos + tuple(int(x) for x in idx)
        if not is_zero(arr[fatia]):
            raise StructureError(f"{nome} não tem grau {grau} (entrada {tuple(int(x) for x in idx)})")


def _exigir_truncamento(max_n: int, k_max: int, limits: Limits):
    if max_n > k_max:
        raise TruncationError(f"max_n = {max_n} além de K_max = {k_max}")
    limits.guard_arity(max_n)

# ============================================================================
# MAPAS GRADUADOS Σ_k f_k SOBRE Ω
# ============================================================================

@dataclass(frozen=True, eq=False)
class GradedOmegaMap:
    """Elemento Σ_k f_k de Hom^d_Ω(T̄V, V), componentes por aridade"""
    space: GradedSpace
    omega: Semigroup
    degree: int
    components: Dict[int, OmegaMap] = field(default_factory=dict)

    def component(self, k: int) -> OmegaMap:
        if k in self.components:
            return self.components[k]
        return OmegaMap.zeros(self.omega, (self.space.slot,) * k, self.space.slot)

    @property
    def arities(self) -> List[int]:
        return sorted(self.components)

    def _combinar(self, other: "GradedOmegaMap", sinal: int) -> "GradedOmegaMap":
        if other.degree != self.degree or other.space != self.space:
            raise StructureError("mapas graduados em espaços ou graus diferentes")
        comps = dict(self.components)
        for k, m in other.components.items():
            comps[k] = comps[k] + m.scale(sinal) if k in comps else m.scale(sinal)
        return GradedOmegaMap(self.space, self.omega, self.degree, comps)

    def __add__(self, other):
        return self._combinar(other, 1)

    def __sub__(self, other):
        return self._combinar(other, -1)

    def scale(self, c) -> "GradedOmegaMap":
        return GradedOmegaMap(self.space, self.omega, self.degree,
                              {k: m.scale(c) for k, m in self.components.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def truncated(self, max_arity: int) -> "GradedOmegaMap":
        return GradedOmegaMap(self.space, self.omega, self.degree,
                              {k: m for k, m in self.components.items() if k <= max_arity})


def graded_composition(f: GradedOmegaMap, g: GradedOmegaMap, max_arity: int) -> GradedOmegaMap:
    """f ∘ g = Σ_{k,l,i} ± f_k ∘_i g_l, aridades k + l − 1 ≤ max_arity"""
    if f.space != g.space or f.omega != g.omega:
        raise StructureError("mapas graduados sobre espaços diferentes")
    graus = {f.space.tag: f.space.degrees}
    comps: Dict[int, OmegaMap] = {}
    for k, fk in f.components.items():
        for l, gl in g.components.items():
            n = k + l - 1
            if n > max_arity or fk.is_zero() or gl.is_zero():
                continue
            for i in range(1, k + 1):
                termo = graded_compose_at(fk, gl, i, graus, g.degree)
                comps[n] = comps[n] + termo if n in comps else termo
    return GradedOmegaMap(f.space, f.omega, f.degree + g.degree, comps)


def graded_omega_bracket(f: GradedOmegaMap, g: GradedOmegaMap, max_arity: int) -> GradedOmegaMap:
    """{[f, g]}_Ω = f ∘ g − (−1)^{|f||g|} g ∘ f"""
    fg = graded_composition(f, g, max_arity)
    gf = graded_composition(g, f, max_arity)
    sinal = -1 if (f.degree * g.degree) % 2 else 1
    return fg - gf.scale(sinal)


def _stasheff(maps: Dict[int, OmegaMap], degrees: Dict[str, Sequence[int]], n: int) -> Optional[OmegaMap]:
    """Σ_{k+l=n+1} Σ_i (−1)^{|a_1|+...+|a_{i−1}|} m_k ∘_i m_l"""
    total = None
    for k in range(1, n + 1):
        l = n + 1 - k
        if k not in maps or l not in maps or maps[k].is_zero() or maps[l].is_zero():
            continue
        for i in range(1, k + 1):
            termo = graded_compose_at(maps[k], maps[l], i, degrees, 1)
            total = termo if total is None else total + termo
    return total

# ============================================================================
# A∞-ÁLGEBRAS E REPRESENTAÇÕES
# ============================================================================

@dataclass(frozen=True, eq=False)
class AInfStructure:
    """μ_k: A^k → A de grau 1 para 1 ≤ k ≤ K_max (ausentes são nulas)"""
    space: GradedSpace
    mu: Dict[int, np.ndarray]
    k_max: int = DEFAULT_LIMITS.k_max

    def __post_init__(self):
        d = self.space.dim
        mus = {}
        for k, t in self.mu.items():
            if not 1 <= k <= self.k_max:
                raise TruncationError(f"μ_{k} fora de 1..{self.k_max}")
            tensor = as_tensor(t, (d,) * (k + 1))
            _checar_grau(tensor, 0, [self.space.degrees] * k, self.space.degrees, 1, f"μ_{k}")
            mus[k] = tensor
        object.__setattr__(self, "mu", mus)

    def mu_k(self, k: int) -> np.ndarray:
        return self.mu.get(k, zeros((self.space.dim,) * (k + 1)))

    def maps(self, omega: Optional[Semigroup] = None) -> Dict[int, OmegaMap]:
        omega = omega or Semigroup.trivial()
        slot = self.space.slot
        return {k: constant_lift(t, omega, (slot,) * k, slot) for k, t in self.mu.items()}

    def as_graded(self, omega: Optional[Semigroup] = None) -> GradedOmegaMap:
        omega = omega or Semigroup.trivial()
        return GradedOmegaMap(self.space, omega, 1, self.maps(omega))


def check_ainf(a: AInfStructure, max_n: Optional[int] = None, limits: Limits = DEFAULT_LIMITS,
               cap: Optional[int] = None) -> ValidationReport:
    """Identidades de Stasheff para n ≤ max_n em todos os blocos de grau"""
    max_n = a.k_max if max_n is None else max_n
    _exigir_truncamento(max_n, a.k_max, limits)
    limits.guard_entries(a.space.dim ** (max_n + 1), "A∞")
    relatorio = ValidationReport("ainf", cap or limits.report_cap)
    maps = a.maps()
    graus = {a.space.tag: a.space.degrees}
    for n in range(1, max_n + 1):
        residuo = _stasheff(maps, graus, n)
        if residuo is not None:
            relatorio.add_tensor(f"stasheff n={n}", residuo.data[(0,) * n])
    return relatorio


def _formas_blocos(d_a: int, d_m: int, k: int) -> List[Tuple[int, ...]]:
    return [tuple(d_m if j == r else d_a for j in range(k)) + (d_m,) for r in range(k)]


@dataclass(frozen=True, eq=False)
class AInfRepresentation:
    """η_k em 𝒜^{k−1,1} → M guardado por blocos: bloco r com o slot M na posição r"""
    algebra_space: GradedSpace
    space: GradedSpace
    eta: Dict[int, Tuple[np.ndarray, ...]]
    k_max: int = DEFAULT_LIMITS.k_max

    def __post_init__(self):
        da, dm = self.algebra_space.dim, self.space.dim
        etas = {}
        for k, blocos in self.eta.items():
            if not 1 <= k <= self.k_max:
                raise TruncationError(f"η_{k} fora de 1..{self.k_max}")
            if len(blocos) != k:
                raise StructureError(f"η_{k} precisa de {k} blocos")
            formas = _formas_blocos(da, dm, k)
            convertidos = []
            for r, (t, forma) in enumerate(zip(blocos, formas)):
                tensor = as_tensor(t, forma)
                entradas = [self.space.degrees if j == r else self.algebra_space.degrees for j in range(k)]
                _checar_grau(tensor, 0, entradas, self.space.degrees, 1, f"η_{k}[{r + 1}]")
                convertidos.append(tensor)
            etas[k] = tuple(convertidos)
        object.__setattr__(self, "eta", etas)

    def block(self, k: int, r: int) -> np.ndarray:
        """Bloco com o slot M na posição r (a partir de 1)"""
        if k in self.eta:
            return self.eta[k][r - 1]
        return zeros(_formas_blocos(self.algebra_space.dim, self.space.dim, k)[r - 1])


def adjoint_representation(a: AInfStructure) -> AInfRepresentation:
    """M = A com η_k = μ_k em todos os blocos"""
    return AInfRepresentation(a.space, a.space.retag("M"),
                              {k: tuple(t for _ in range(k)) for k, t in a.mu.items()}, a.k_max)


def _soma_direta(a_space: GradedSpace, m_space: GradedSpace) -> Tuple[DirectSum, GradedSpace]:
    soma = DirectSum((Slot("A", a_space.dim), Slot("M", m_space.dim)))
    return soma, GradedSpace(a_space.degrees + m_space.degrees, soma.tag)


def semidirect_ainf(a: AInfStructure, m: AInfRepresentation) -> AInfStructure:
    """A∞ em A ⊕ M com μ_k nos blocos de A e η_k nos blocos com uma entrada em M"""
    if m.algebra_space != a.space:
        raise StructureError("representação sobre outro espaço")
    _, espaco = _soma_direta(a.space, m.space)
    sa, sm = block_slices((a.space.dim, m.space.dim))
    k_max = min(a.k_max, m.k_max)
    mus = {}
    for k in sorted(set(a.mu) | set(m.eta)):
        if k > k_max:
            continue
        total = embed_block(a.mu_k(k), [sa] * k, sa, espaco.dim)
        for r in range(1, k + 1):
            fatias = [sm if j == r - 1 else sa for j in range(k)]
            total = total + embed_block(m.block(k, r), fatias, sm, espaco.dim)
        mus[k] = tidy(total)
    return AInfStructure(espaco, mus, k_max)


def check_representation(a: AInfStructure, m: AInfRepresentation, max_n: Optional[int] = None,
                         limits: Limits = DEFAULT_LIMITS, cap: Optional[int] = None) -> ValidationReport:
    """Identidades de Stasheff com exatamente uma entrada em M"""
    k_max = min(a.k_max, m.k_max)
    max_n = k_max if max_n is None else max_n
    _exigir_truncamento(max_n, k_max, limits)
    grande = semidirect_ainf(a, m)
    limits.guard_entries(grande.space.dim ** (max_n + 1), "representação A∞")
    soma, _ = _soma_direta(a.space, m.space)
    relatorio = ValidationReport("ainf-rep", cap or limits.report_cap)
    maps = grande.maps()
    graus = {grande.space.tag: grande.space.degrees}
    for n in range(1, max_n + 1):
        residuo = _stasheff(maps, graus, n)
        if residuo is None:
            continue
        for r in range(n):
            tags = tuple("M" if j == r else "A" for j in range(n))
            bloco = restrict(residuo, soma, tags, "M")
            relatorio.add_tensor(f"rep n={n} M@{r + 1}", bloco.data[(0,) * n])
    return relatorio

# ============================================================================
# FAMÍLIAS ROTA-BAXTER HOMOTÓPICAS
# ============================================================================

@dataclass(frozen=True, eq=False)
class HomotopyRBFamily:
    """((A, μ), (M, η), R = Σ R_k) com R_k: M^k → A de grau 0 indexado por Ω^k"""
    algebra: AInfStructure
    rep: AInfRepresentation
    omega: Semigroup
    ops: Dict[int, np.ndarray]

    def __post_init__(self):
        if self.rep.algebra_space != self.algebra.space:
            raise StructureError("representação sobre outro espaço")
        da, dm, w = self.algebra.space.dim, self.rep.space.dim, self.omega.size
        ops = {}
        for k, t in self.ops.items():
            if not 1 <= k <= self.k_max:
                raise TruncationError(f"R_{k} fora de 1..{self.k_max}")
            tensor = as_tensor(t, (w,) * k + (dm,) * k + (da,))
            _checar_grau(tensor, k, [self.rep.space.degrees] * k, self.algebra.space.degrees, 0, f"R_{k}")
            ops[k] = tensor
        object.__setattr__(self, "ops", ops)

    @property
    def k_max(self) -> int:
        return min(self.algebra.k_max, self.rep.k_max)

    @property
    def slot_a(self) -> Slot:
        return Slot("A", self.algebra.space.dim)

    @property
    def slot_m(self) -> Slot:
        return Slot("M", self.rep.space.dim)

    @property
    def degrees(self) -> Dict[str, Tuple[int, ...]]:
        return {"A": self.algebra.space.degrees, "M": self.rep.space.degrees}

    @property
    def is_strict(self) -> bool:
        return all(is_zero(t) for k, t in self.ops.items() if k != 1)

    def r_map(self, k: int) -> OmegaMap:
        return OmegaMap(self.omega, (self.slot_m,) * k, self.slot_a, self.ops[k])

    def mu_map(self, k: int) -> OmegaMap:
        return constant_lift(self.algebra.mu_k(k), self.omega, (self.slot_a,) * k, self.slot_a)

    def eta_map(self, k: int, r: int) -> OmegaMap:
        fontes = tuple(self.slot_m if j == r else self.slot_a for j in range(1, k + 1))
        return constant_lift(self.rep.block(k, r), self.omega, fontes, self.slot_m)


def _preencher(mapa: OmegaMap, posicoes: Sequence[int], r_maps: Dict[int, OmegaMap], max_n: int) -> List[OmegaMap]:
    """Todas as maneiras de pôr algum R_b em cada posição dada (da direita para a esquerda)"""
    atuais = [mapa]
    for p in sorted(posicoes, reverse=True):
        novos = []
        for m in atuais:
            for b, r in r_maps.items():
                if m.arity - 1 + b <= max_n:
                    novos.append(compose_at(m, r, p))
        atuais = novos
    return atuais


def _acumular(destino: Dict[int, OmegaMap], termo: OmegaMap, sinal: int = 1):
    n = termo.arity
    termo = termo if sinal == 1 else termo.scale(sinal)
    destino[n] = destino[n] + termo if n in destino else termo


def homotopy_rbf_residual(h: HomotopyRBFamily, max_n: int) -> Dict[int, OmegaMap]:
    """Σ μ_k(R(..), ..., R(..)) − Σ ± R(u, ..., η_k(R(..), ..., u, ..., R(..)), ..., u) por aridade"""
    r_maps = {k: h.r_map(k) for k, t in h.ops.items() if not is_zero(t)}
    residuos: Dict[int, OmegaMap] = {}
    if not r_maps:
        return residuos
    for k in range(1, max_n + 1):
        if is_zero(h.algebra.mu_k(k)):
            continue
        for termo in _preencher(h.mu_map(k), range(1, k + 1), r_maps, max_n):
            _acumular(residuos, termo)
    for k in range(1, max_n + 1):
        for r in range(1, k + 1):
            if is_zero(h.rep.block(k, r)):
                continue
            internos = _preencher(h.eta_map(k, r), [j for j in range(1, k + 1) if j != r], r_maps, max_n)
            for interno in internos:
                for p, r_p in r_maps.items():
                    if p - 1 + interno.arity > max_n:
                        continue
                    for i in range(1, p + 1):
                        _acumular(residuos, graded_compose_at(r_p, interno, i, h.degrees, 1), -1)
    return residuos


def check_homotopy_rbf(h: HomotopyRBFamily, max_n: Optional[int] = None, limits: Limits = DEFAULT_LIMITS,
                       cap: Optional[int] = None) -> ValidationReport:
    """Resíduo de Maurer-Cartan de R por aridade, índices (α..., u..., saída)"""
    max_n = h.k_max if max_n is None else max_n
    _exigir_truncamento(max_n, h.k_max, limits)
    limits.guard_entries(h.omega.size ** max_n * h.rep.space.dim ** max_n * h.algebra.space.dim,
                         "família homotópica")
    relatorio = ValidationReport("homotopy-rbf", cap or limits.report_cap)
    residuos = homotopy_rbf_residual(h, max_n)
    for n in sorted(residuos):
        relatorio.add_tensor(f"homotopy-rbf n={n}", residuos[n].data)
    logger.debug("check_homotopy_rbf: %d violações até n=%d", relatorio.total, max_n)
    return relatorio


def homotopy_residual_via_bracket(h: HomotopyRBFamily, max_n: int) -> Dict[int, OmegaMap]:
    """Σ_k 1/k! P[...[Δ, R], ..., R] em A ⊕ M, restrito a Hom_Ω(M^n, A)"""
    _exigir_truncamento(max_n, h.k_max, DEFAULT_LIMITS)
    soma, _ = _soma_direta(h.algebra.space, h.rep.space)
    delta = semidirect_ainf(h.algebra, h.rep).as_graded(h.omega).truncated(max_n)
    r_grande = GradedOmegaMap(delta.space, h.omega, 0, {k: embed(h.r_map(k), soma) for k in h.ops})
    residuos: Dict[int, OmegaMap] = {}
    atual = delta
    for k in range(1, max_n + 1):
        atual = graded_omega_bracket(atual, r_grande, max_n)
        for n, m in atual.components.items():
            bloco = restrict(m, soma, ("M",) * n, "A").scale(Fraction(1, factorial(k)))
            _acumular(residuos, bloco)
    return residuos


def check_strict(h: HomotopyRBFamily, max_n: Optional[int] = None, limits: Limits = DEFAULT_LIMITS,
                 cap: Optional[int] = None) -> ValidationReport:
    """μ_k(R u_1, ..., R u_k) − Σ_r R_{α1⋯αk}(η_k(R u_1, ..., u_r, ..., R u_k))"""
    if not h.is_strict:
        raise StructureError("família homotópica não é estrita")
    max_n = h.k_max if max_n is None else max_n
    _exigir_truncamento(max_n, h.k_max, limits)
    relatorio = ValidationReport("strict", cap or limits.report_cap)
    if 1 not in h.ops:
        return relatorio
    r1 = {1: h.r_map(1)}
    for k in range(1, max_n + 1):
        (lado_a,) = _preencher(h.mu_map(k), range(1, k + 1), r1, k)
        total = lado_a
        for r in range(1, k + 1):
            (interno,) = _preencher(h.eta_map(k, r), [j for j in range(1, k + 1) if j != r], r1, k)
            total = total - compose_at(h.r_map(1), interno, 1)
        relatorio.add_tensor(f"strict k={k}", total.data)
    return relatorio

# ============================================================================
# DEND∞ DE FAMÍLIA E Ω-A∞
# ============================================================================

@dataclass(frozen=True, eq=False)
class DendInfFamily:
    """θ_k^{[r]}: D^k → D de grau 1 indexado por Ω^k, para cada seletor r de 1..k"""
    space: GradedSpace
    omega: Semigroup
    theta: Dict[int, Tuple[np.ndarray, ...]]
    k_max: int = DEFAULT_LIMITS.k_max

    def __post_init__(self):
        d, w = self.space.dim, self.omega.size
        thetas = {}
        for k, seletores in self.theta.items():
            if not 1 <= k <= self.k_max:
                raise TruncationError(f"θ_{k} fora de 1..{self.k_max}")
            if len(seletores) != k:
                raise StructureError(f"θ_{k} precisa de {k} seletores")
            convertidos = []
            for r, t in enumerate(seletores, start=1):
                tensor = as_tensor(t, (w,) * k + (d,) * (k + 1))
                _checar_grau(tensor, k, [self.space.degrees] * k, self.space.degrees, 1, f"θ_{k}^[{r}]")
                convertidos.append(tensor)
            thetas[k] = tuple(convertidos)
        object.__setattr__(self, "theta", thetas)

    def selector(self, k: int, r: int) -> OmegaMap:
        slot = self.space.slot
        if k in self.theta:
            return OmegaMap(self.omega, (slot,) * k, slot, self.theta[k][r - 1])
        return OmegaMap.zeros(self.omega, (slot,) * k, slot)

    def nu(self, k: int) -> OmegaMap:
        """ν_k = Σ_r θ_k^{[r]}"""
        total = self.selector(k, 1)
        for r in range(2, k + 1):
            total = total + self.selector(k, r)
        return total

    def __eq__(self, other):
        if not (isinstance(other, DendInfFamily) and self.space == other.space and self.omega == other.omega):
            return False
        ks = set(self.theta) | set(other.theta)
        return all(self.selector(k, r) == other.selector(k, r) for k in ks for r in range(1, k + 1))

    __hash__ = None


def check_independence(d: DendInfFamily, cap: int = DEFAULT_LIMITS.report_cap) -> ValidationReport:
    """θ_k^{[r]} não pode depender de α_r"""
    relatorio = ValidationReport("dendinf-independence", cap)
    for k, seletores in d.theta.items():
        for r, t in enumerate(seletores, start=1):
            referencia = np.take(t, [0], axis=r - 1)
            relatorio.add_tensor(f"θ_{k}^[{r}] depende de α_{r}", tidy(t - referencia))
    return relatorio


def check_dendinf(d: DendInfFamily, max_n: Optional[int] = None, limits: Limits = DEFAULT_LIMITS,
                  cap: Optional[int] = None) -> ValidationReport:
    """Σ_{k+l=n+1} Σ_i (θ_k ⋄_i θ_l)^{[r]} = 0 para cada n ≤ max_n e cada seletor r"""
    max_n = d.k_max if max_n is None else max_n
    _exigir_truncamento(max_n, d.k_max, limits)
    limits.guard_entries(d.omega.size ** max_n * d.space.dim ** (max_n + 1), "Dend∞")
    cap = cap or limits.report_cap
    independencia = check_independence(d, cap)
    if not independencia.ok:
        return independencia

    relatorio = ValidationReport("dendinf", cap)
    graus = {d.space.tag: d.space.degrees}
    nus = {k: d.nu(k) for k in range(1, max_n + 1)}
    for n in range(1, max_n + 1):
        for r in range(1, n + 1):
            total = None
            for k in range(1, n + 1):
                l = n + 1 - k
                for i in range(1, k + 1):
                    if r < i:
                        externo, interno = d.selector(k, r), nus[l]
                    elif r <= i + l - 1:
                        externo, interno = d.selector(k, i), d.selector(l, r - i + 1)
                    else:
                        externo, interno = d.selector(k, r - l + 1), nus[l]
                    if externo.is_zero() or interno.is_zero():
                        continue
                    termo = graded_compose_at(externo, interno, i, graus, 1)
                    total = termo if total is None else total + termo
            if total is not None:
                relatorio.add_tensor(f"dendinf n={n} [{r}]", total.data)
    return relatorio


@dataclass(frozen=True, eq=False)
class OmegaAInf:
    """ν_k: A^k → A de grau 1 indexado por Ω^k"""
    space: GradedSpace
    omega: Semigroup
    nu: Dict[int, np.ndarray]
    k_max: int = DEFAULT_LIMITS.k_max

    def __post_init__(self):
        d, w = self.space.dim, self.omega.size
        nus = {}
        for k, t in self.nu.items():
            if not 1 <= k <= self.k_max:
                raise TruncationError(f"ν_{k} fora de 1..{self.k_max}")
            tensor = as_tensor(t, (w,) * k + (d,) * (k + 1))
            _checar_grau(tensor, k, [self.space.degrees] * k, self.space.degrees, 1, f"ν_{k}")
            nus[k] = tensor
        object.__setattr__(self, "nu", nus)

    def maps(self) -> Dict[int, OmegaMap]:
        slot = self.space.slot
        return {k: OmegaMap(self.omega, (slot,) * k, slot, t) for k, t in self.nu.items()}


def check_omega_ainf(a: OmegaAInf, max_n: Optional[int] = None, limits: Limits = DEFAULT_LIMITS,
                     cap: Optional[int] = None) -> ValidationReport:
    """Stasheff com rótulos: o slot i de ν_k recebe o produto α_i⋯α_{i+l−1}"""
    max_n = a.k_max if max_n is None else max_n
    _exigir_truncamento(max_n, a.k_max, limits)
    relatorio = ValidationReport("omega-ainf", cap or limits.report_cap)
    maps = a.maps()
    graus = {a.space.tag: a.space.degrees}
    for n in range(1, max_n + 1):
        residuo = _stasheff(maps, graus, n)
        if residuo is not None:
            relatorio.add_tensor(f"omega-stasheff n={n}", residuo.data)
    return relatorio


def dendinf_to_omega_ainf(d: DendInfFamily) -> OmegaAInf:
    return OmegaAInf(d.space, d.omega, {k: d.nu(k).data for k in d.theta}, d.k_max)


def _com_rotulos_na_base(omega: Semigroup, dados: np.ndarray, k: int, d: int) -> np.ndarray:
    """(x1⊗α1, ..., xk⊗αk) ↦ f_{α}(x) ⊗ α1⋯αk na base x·|Ω| + α"""
    w = omega.size
    out = zeros((d * w,) * (k + 1))
    produtos = omega.products(k)
    for rotulos in product(range(w), repeat=k):
        gama = int(produtos[rotulos])
        fatias = tuple(slice(a, None, w) for a in rotulos) + (slice(gama, None, w),)
        out[fatias] = dados[rotulos]
    return out


def omega_ainf_to_ainf(a: OmegaAInf) -> AInfStructure:
    """μ_k(a1⊗α1, ..., ak⊗αk) = ν_k(a1, ..., ak)_{α} ⊗ α1⋯αk"""
    espaco = a.space.tensor_omega(a.omega.size)
    mus = {k: _com_rotulos_na_base(a.omega, t, k, a.space.dim) for k, t in a.nu.items()}
    return AInfStructure(espaco, mus, a.k_max)


def tot_dendinf(d: DendInfFamily) -> DendInfFamily:
    """θ̄_k^{[r]}(x1⊗α1, ...) = θ_k^{[r]}_{α}(x) ⊗ α1⋯αk, álgebra Dend∞ (Ω trivial) em D ⊗ kΩ"""
    espaco = d.space.tensor_omega(d.omega.size)
    thetas = {k: tuple(broadcast_labels(_com_rotulos_na_base(d.omega, t, k, d.space.dim), 1, k)
                       for t in seletores)
              for k, seletores in d.theta.items()}
    return DendInfFamily(espaco, Semigroup.trivial(), thetas, d.k_max)

# ============================================================================
# TRANSFERÊNCIAS ESTRITO ↔ DEND∞
# ============================================================================

def strict_to_dendinf(h: HomotopyRBFamily) -> DendInfFamily:
    """θ_k^{[r]}_{α}(u) = η_k(R_{α1} u1, ..., u_r, ..., R_{αk} uk)"""
    if not h.is_strict:
        raise StructureError("família homotópica não é estrita")
    espaco = h.rep.space
    if 1 not in h.ops:
        return DendInfFamily(espaco, h.omega, {}, h.k_max)
    r1 = {1: h.r_map(1)}
    thetas = {}
    for k in sorted(h.rep.eta):
        seletores = []
        for r in range(1, k + 1):
            (theta,) = _preencher(h.eta_map(k, r), [j for j in range(1, k + 1) if j != r], r1, k)
            seletores.append(theta.data)
        thetas[k] = tuple(seletores)
    return DendInfFamily(espaco, h.omega, thetas, h.k_max)


def dendinf_to_strict(d: DendInfFamily) -> HomotopyRBFamily:
    """((D⊗kΩ, μ), (D, η), R_α(x) = x⊗α) com μ_k = Σ_r θ̄_k^{[r]} e η_k(.., x_r, ..) = θ_k^{[r]}"""
    w, n = d.omega.size, d.space.dim
    algebra = omega_ainf_to_ainf(dendinf_to_omega_ainf(d))
    algebra = AInfStructure(algebra.space.retag("A"), algebra.mu, d.k_max)
    modulo = d.space.retag("M")
    etas = {}
    for k, seletores in d.theta.items():
        blocos = []
        for r, t in enumerate(seletores, start=1):
            formas = tuple(n if j == r else n * w for j in range(1, k + 1)) + (n,)
            bloco = zeros(formas)
            for rotulos in product(range(w), repeat=k):
                if rotulos[r - 1] != 0:
                    continue
                fatias = tuple(slice(None) if j == r else slice(a, None, w)
                               for j, a in enumerate(rotulos, start=1)) + (slice(None),)
                bloco[fatias] = t[rotulos]
            blocos.append(bloco)
        etas[k] = tuple(blocos)
    rep = AInfRepresentation(algebra.space, modulo, etas, d.k_max)
    r1 = zeros((w, n, n * w))
    for alfa in range(w):
        for x in range(n):
            r1[alfa, x, x * w + alfa] = 1
    return HomotopyRBFamily(algebra, rep, d.omega, {1: r1})

# ============================================================================
# SUSPENSÃO: ESTRUTURAS CLÁSSICAS EM GRAU −1
# ============================================================================

def suspend_algebra(alg: AssocAlgebra, k_max: int = DEFAULT_LIMITS.k_max) -> AInfStructure:
    """A em grau −1 com μ_2 = produto e μ_k = 0 nos demais"""
    return AInfStructure(GradedSpace.concentrated(alg.dim, -1, "A"), {2: alg.mul}, k_max)


def suspend_bimodule(alg: AssocAlgebra, mod: Bimodule, k_max: int = DEFAULT_LIMITS.k_max) -> AInfRepresentation:
    """η_2(u, a) = u·a e η_2(a, u) = a·u"""
    return AInfRepresentation(GradedSpace.concentrated(alg.dim, -1, "A"),
                              GradedSpace.concentrated(mod.dim, -1, "M"),
                              {2: (mod.right, mod.left)}, k_max)


def suspend_rel_rbf(s: RelRBFamily, k_max: int = DEFAULT_LIMITS.k_max) -> HomotopyRBFamily:
    return HomotopyRBFamily(suspend_algebra(s.algebra, k_max), suspend_bimodule(s.algebra, s.module, k_max),
                            s.omega, {1: s.ops.as_map_tensor()})


def suspend_dend_family(d: DendFamily, k_max: int = DEFAULT_LIMITS.k_max) -> DendInfFamily:
    """(θ_2)^{[1]}_{α,β} = ≺_β e (θ_2)^{[2]}_{α,β} = ≻_α, θ_k = 0 para k ≠ 2"""
    w = d.omega.size
    forma = (w, w) + (d.dim,) * 3
    theta_1 = np.broadcast_to(d.prec[None, :], forma).copy()
    theta_2 = np.broadcast_to(d.succ[:, None], forma).copy()
    return DendInfFamily(GradedSpace.concentrated(d.dim, -1, "M"), d.omega, {2: (theta_1, theta_2)}, k_max)


def unsuspend_dend_family(d: DendInfFamily) -> DendFamily:
    """Inversa de suspend_dend_family para estruturas concentradas em grau −1"""
    if set(d.space.degrees) - {-1}:
        raise StructureError("estrutura não concentrada em grau −1")
    if any(not is_zero(t) for k, sel in d.theta.items() if k != 2 for t in sel):
        raise StructureError("θ_k ≠ 0 para k ≠ 2")
    w, n = d.omega.size, d.space.dim
    if 2 not in d.theta:
        return DendFamily(d.omega, n, zeros((w, n, n, n)), zeros((w, n, n, n)))
    theta_1, theta_2 = d.theta[2]
    return DendFamily(d.omega, n, theta_1[0].copy(), theta_2[:, 0].copy())
