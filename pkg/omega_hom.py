"""
Espaços Hom_Ω - mapas multilineares indexados por Ω^n, composições
parciais rotuladas e o colchete de Gerstenhaber sobre Ω
"""

import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from algebra import Semigroup
from errors import StructureError
from tensors import (_LETTERS, apply_map, as_tensor, block_slices, broadcast_labels, embed_block,
                     extract_block, identity as identity_matrix, is_zero, tensors_equal, tidy, zeros)

logger = logging.getLogger(__name__)

# ============================================================================
# ESPAÇOS
# ============================================================================

@dataclass(frozen=True)
class Slot:
    """Espaço de um slot: etiqueta ('A', 'M', 'V', ...) e dimensão"""
    tag: str
    dim: int

    def __str__(self):
        return f"{self.tag}{self.dim}"


@dataclass(frozen=True)
class DirectSum:
    """Soma direta V = P1 ⊕ P2 ⊕ ... com blocos consecutivos"""
    parts: Tuple[Slot, ...]
    tag: str = "V"

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.parts)

    @property
    def slot(self) -> Slot:
        return Slot(self.tag, self.dim)

    def block(self, tag: str) -> slice:
        for parte, fatia in zip(self.parts, block_slices(p.dim for p in self.parts)):
            if parte.tag == tag:
                return fatia
        raise StructureError(f"bloco {tag} inexistente em {self.tag}")

# ============================================================================
# MAPAS INDEXADOS POR Ω
# ============================================================================

@dataclass(frozen=True, eq=False)
class OmegaMap:
    """Coleção {f_{α1..αn}} guardada como um único array denso.

    Formato dos dados: (|Ω|,)*n + (dim dos slots) + (dim do alvo,).
    Aridade 0 representa um elemento do alvo.
    """
    omega: Semigroup
    sources: Tuple[Slot, ...]
    target: Slot
    data: np.ndarray

    def __post_init__(self):
        fontes = tuple(self.sources)
        object.__setattr__(self, "sources", fontes)
        dados = np.asarray(self.data, dtype=object)
        esperado = (self.omega.size,) * len(fontes) + tuple(s.dim for s in fontes) + (self.target.dim,)
        if dados.shape != esperado:
            raise StructureError(f"dados com formato {dados.shape}, esperado {esperado}")
        dados.setflags(write=False)
        object.__setattr__(self, "data", dados)

    # ------------------------------------------------------------------ construção

    @classmethod
    def zeros(cls, omega: Semigroup, sources: Sequence[Slot], target: Slot) -> "OmegaMap":
        forma = (omega.size,) * len(sources) + tuple(s.dim for s in sources) + (target.dim,)
        return cls(omega, tuple(sources), target, zeros(forma))

    @classmethod
    def from_vector(cls, omega: Semigroup, sources: Sequence[Slot], target: Slot, vector) -> "OmegaMap":
        forma = (omega.size,) * len(sources) + tuple(s.dim for s in sources) + (target.dim,)
        return cls(omega, tuple(sources), target, np.asarray(vector, dtype=object).reshape(forma).copy())

    @staticmethod
    def space_dim(omega: Semigroup, sources: Sequence[Slot], target: Slot) -> int:
        total = omega.size ** len(sources) * target.dim
        for s in sources:
            total *= s.dim
        return total

    # ------------------------------------------------------------------ acesso

    @property
    def arity(self) -> int:
        return len(self.sources)

    def component(self, labels: Sequence[int]) -> np.ndarray:
        """O mapa multilinear f_{α1..αn} como tensor"""
        if len(labels) != self.arity:
            raise StructureError(f"{len(labels)} rótulos para aridade {self.arity}")
        return self.data[tuple(labels)]

    def evaluate(self, labels: Sequence[int], vectors: Sequence[np.ndarray]) -> np.ndarray:
        return apply_map(self.component(labels), vectors)

    def flatten(self) -> np.ndarray:
        return self.data.reshape(-1).copy()

    def is_zero(self) -> bool:
        return is_zero(self.data)

    def same_space(self, other: "OmegaMap") -> bool:
        return (self.omega == other.omega and self.sources == other.sources
                and self.target == other.target)

    # ------------------------------------------------------------------ aritmética

    def _com(self, dados: np.ndarray) -> "OmegaMap":
        return OmegaMap(self.omega, self.sources, self.target, tidy(dados))

    def _exigir_mesmo_espaco(self, other: "OmegaMap"):
        if not self.same_space(other):
            raise StructureError("mapas em espaços Hom_Ω diferentes")

    def __add__(self, other: "OmegaMap") -> "OmegaMap":
        self._exigir_mesmo_espaco(other)
        return self._com(self.data + other.data)

    def __sub__(self, other: "OmegaMap") -> "OmegaMap":
        self._exigir_mesmo_espaco(other)
        return self._com(self.data - other.data)

    def __neg__(self) -> "OmegaMap":
        return self._com(-self.data)

    def scale(self, c) -> "OmegaMap":
        return self._com(self.data * c)

    def __rmul__(self, c) -> "OmegaMap":
        return self.scale(c)

    def __eq__(self, other):
        return (isinstance(other, OmegaMap) and self.same_space(other)
                and tensors_equal(self.data, other.data))

    __hash__ = None


def constant_lift(tensor, omega: Semigroup, sources: Sequence[Slot], target: Slot) -> OmegaMap:
    """f̃_{α1..αn} = f para todos os rótulos"""
    t = as_tensor(tensor)
    return OmegaMap(omega, tuple(sources), target, broadcast_labels(t, omega.size, len(sources)))


def omega_identity(omega: Semigroup, slot: Slot) -> OmegaMap:
    """I_α = id_V para todo α"""
    return constant_lift(identity_matrix(slot.dim), omega, (slot,), slot)

# ============================================================================
# COMPOSIÇÕES PARCIAIS E COLCHETE
# ============================================================================

def compose_at(f: OmegaMap, g: OmegaMap, i: int) -> OmegaMap:
    """f ∘_i g: o slot i de f recebe o rótulo produto αi⋯α_{i+n−1} e a saída de g"""
    m, n = f.arity, g.arity
    if not 1 <= i <= m:
        raise StructureError(f"slot {i} fora de 1..{m}")
    if n == 0:
        raise StructureError("composição com mapa de aridade 0 não tem rótulo definido")
    if f.omega != g.omega:
        raise StructureError("mapas sobre semigrupos diferentes")
    if g.target != f.sources[i - 1]:
        raise StructureError(f"alvo {g.target} de g difere do slot {i} ({f.sources[i - 1]}) de f")
    r = m + n - 1
    expandido = np.take(f.data, f.omega.products(n), axis=i - 1)

    letras = iter(_LETTERS)
    rotulos = [next(letras) for _ in range(r)]
    entradas = [next(letras) for _ in range(r)]
    contraida = next(letras)
    saida = next(letras)

    f_entradas = entradas[:i - 1] + [contraida] + entradas[i - 1 + n:]
    g_rotulos = rotulos[i - 1:i - 1 + n]
    g_entradas = entradas[i - 1:i - 1 + n]
    sub_f = "".join(rotulos + f_entradas) + saida
    sub_g = "".join(g_rotulos + g_entradas) + contraida
    sub_r = "".join(rotulos + entradas) + saida
    dados = np.einsum(f"{sub_f},{sub_g}->{sub_r}", expandido, g.data)
    fontes = f.sources[:i - 1] + g.sources + f.sources[i:]
    return OmegaMap(f.omega, fontes, f.target, tidy(dados))


def _soma(mapas, modelo: OmegaMap) -> OmegaMap:
    total = modelo
    for x in mapas:
        total = total + x
    return total


def gerstenhaber_bracket(f: OmegaMap, g: OmegaMap) -> OmegaMap:
    """[f,g]_Ω com graus |f| = m−1 e |g| = n−1"""
    m, n = f.arity, g.arity
    if m == 0 or n == 0:
        raise StructureError("colchete de Gerstenhaber definido para aridades ≥ 1")
    espaco = f.target
    if any(s != espaco for s in f.sources + g.sources) or g.target != espaco:
        raise StructureError("colchete exige todos os slots e alvos no mesmo espaço")
    zero = OmegaMap.zeros(f.omega, (espaco,) * (m + n - 1), espaco)
    f_g = _soma((compose_at(f, g, i).scale((-1) ** ((i - 1) * (n - 1))) for i in range(1, m + 1)), zero)
    g_f = _soma((compose_at(g, f, i).scale((-1) ** ((i - 1) * (m - 1))) for i in range(1, n + 1)), zero)
    return f_g - g_f.scale((-1) ** ((m - 1) * (n - 1)))

# ============================================================================
# SOMAS DIRETAS: MERGULHO E RESTRIÇÃO DE BLOCOS
# ============================================================================

def embed(f: OmegaMap, total: DirectSum) -> OmegaMap:
    """Estende f por zero a um mapa V^n → V, V = soma direta"""
    fatias = [total.block(s.tag) for s in f.sources]
    dados = embed_block(f.data, fatias, total.block(f.target.tag), total.dim, offset=f.arity)
    return OmegaMap(f.omega, (total.slot,) * f.arity, total.slot, dados)


def restrict(big: OmegaMap, total: DirectSum, tags: Sequence[str], target_tag: str) -> OmegaMap:
    """Bloco de um mapa V^n → V com slots e alvo escolhidos"""
    if len(tags) != big.arity:
        raise StructureError("número de etiquetas difere da aridade")
    fatias = [total.block(t) for t in tags]
    dados = extract_block(big.data, fatias, total.block(target_tag), offset=big.arity)
    fontes = tuple(p for t in tags for p in total.parts if p.tag == t)
    alvo = next(p for p in total.parts if p.tag == target_tag)
    return OmegaMap(big.omega, fontes, alvo, dados)


def lift_blocks(omega: Semigroup, total: DirectSum, blocks: Dict[Tuple[Tuple[str, ...], str], np.ndarray]) -> OmegaMap:
    """Mapa constante em V^n → V montado a partir de blocos {(etiquetas, alvo): tensor}"""
    aridades = {len(tags) for tags, _ in blocks}
    if len(aridades) != 1:
        raise StructureError("blocos de aridades diferentes")
    n = aridades.pop()
    plano = zeros((total.dim,) * (n + 1))
    for (tags, alvo), tensor in blocks.items():
        fatias = tuple(total.block(t) for t in tags) + (total.block(alvo),)
        plano[fatias] = plano[fatias] + as_tensor(tensor)
    logger.debug("lift_blocks: aridade %d sobre %s", n, total.tag)
    return constant_lift(plano, omega, (total.slot,) * n, total.slot)
