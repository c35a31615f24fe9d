"""
Núcleo algébrico - semigrupos, álgebras associativas, bimódulos e
famílias de operadores Rota-Baxter relativas, com seus verificadores
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import DEFAULT_LIMITS
from errors import StructureError
from linalg import inverse, matmul
from tensors import as_tensor, change_basis, compose, count_nonzero, nonzero_entries, tensors_equal

logger = logging.getLogger(__name__)


def _congelar(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr

# ============================================================================
# RELATÓRIOS DE VALIDAÇÃO
# ============================================================================

@dataclass(frozen=True)
class Violation:
    """Uma identidade violada em índices de base específicos"""
    rule: str
    indices: Tuple
    value: object = None

    def __str__(self):
        valor = "" if self.value is None else f" = {self.value}"
        return f"{self.rule}{list(self.indices)}{valor}"


@dataclass
class ValidationReport:
    """Relatório com todas as violações até o limite `cap` (total sempre contado)"""
    subject: str
    cap: int = DEFAULT_LIMITS.report_cap
    violations: List[Violation] = field(default_factory=list)
    total: int = 0

    @property
    def ok(self) -> bool:
        return self.total == 0

    def __len__(self):
        return self.total

    def add(self, rule: str, indices: Sequence, value=None):
        self.total += 1
        if len(self.violations) < self.cap:
            self.violations.append(Violation(rule, tuple(indices), value))

    def add_tensor(self, rule: str, residual: np.ndarray, prefix: Sequence = ()):
        """Registra cada entrada não nula de um tensor de resíduos"""
        restantes = self.cap - len(self.violations)
        if restantes > 0:
            for idx, valor in nonzero_entries(residual, limit=restantes):
                self.violations.append(Violation(rule, tuple(prefix) + idx, valor))
        self.total += count_nonzero(residual)

    def extend(self, other: "ValidationReport", provenance: str):
        for v in other.violations:
            if len(self.violations) < self.cap:
                self.violations.append(Violation(f"{provenance}:{v.rule}", v.indices, v.value))
        self.total += other.total

    def lines(self) -> List[str]:
        saida = [str(v) for v in self.violations]
        if self.total > len(self.violations):
            saida.append(f"... {self.total - len(self.violations)} violações omitidas")
        return saida

# ============================================================================
# SEMIGRUPOS
# ============================================================================

@lru_cache(maxsize=256)
def _product_table(table: Tuple[Tuple[int, ...], ...], n: int) -> np.ndarray:
    tabela = np.array(table, dtype=np.int64)
    size = len(table)
    produtos = np.arange(size, dtype=np.int64)
    for _ in range(n - 1):
        produtos = tabela[produtos[..., None], np.arange(size)]
    return _congelar(produtos)


@dataclass(frozen=True)
class Semigroup:
    """Semigrupo finito dado por tabela de multiplicação"""
    table: Tuple[Tuple[int, ...], ...]
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        tabela = tuple(tuple(int(x) for x in linha) for linha in self.table)
        n = len(tabela)
        if n == 0 or any(len(linha) != n for linha in tabela):
            raise StructureError("tabela do semigrupo deve ser quadrada e não vazia")
        for i, linha in enumerate(tabela):
            for j, x in enumerate(linha):
                if not 0 <= x < n:
                    raise StructureError(f"entrada table[{i}][{j}] = {x} fora de [0, {n})")
        nomes = tuple(str(x) for x in self.names) if self.names else tuple(str(i) for i in range(n))
        if len(nomes) != n:
            raise StructureError("número de nomes difere do tamanho do semigrupo")
        object.__setattr__(self, "table", tabela)
        object.__setattr__(self, "names", nomes)

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def product(self, labels: Sequence[int]) -> int:
        if not labels:
            raise StructureError("produto vazio não existe em semigrupo")
        acc = labels[0]
        for x in labels[1:]:
            acc = self.table[acc][x]
        return acc

    def products(self, n: int) -> np.ndarray:
        """Array (|Ω|,)*n com o índice de α1⋯αn"""
        return _product_table(self.table, n)

    @classmethod
    def trivial(cls) -> "Semigroup":
        return cls(((0,),), ("e",))

    @classmethod
    def cyclic(cls, n: int) -> "Semigroup":
        return cls(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))

    @classmethod
    def left_zero_band(cls, n: int) -> "Semigroup":
        return cls(tuple(tuple(i for _ in range(n)) for i in range(n)))


def check_semigroup(omega: Semigroup, cap: int = DEFAULT_LIMITS.report_cap) -> ValidationReport:
    """Associatividade da tabela em todas as triplas"""
    relatorio = ValidationReport("semigroup", cap)
    t = omega.table
    for i in range(omega.size):
        for j in range(omega.size):
            for k in range(omega.size):
                if t[t[i][j]][k] != t[i][t[j][k]]:
                    relatorio.add("associativity", (i, j, k))
    return relatorio

# ============================================================================
# ÁLGEBRAS E BIMÓDULOS
# ============================================================================

@dataclass(frozen=True, eq=False)
class AssocAlgebra:
    """Álgebra por constantes de estrutura: mul[i, j, k] = coeficiente de e_k em e_i·e_j"""
    dim: int
    mul: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise StructureError("dimensão da álgebra deve ser positiva")
        object.__setattr__(self, "mul", _congelar(as_tensor(self.mul, (self.dim,) * 3)))

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.tensordot(y, np.tensordot(x, self.mul, axes=([0], [0])), axes=([0], [0]))

    def __eq__(self, other):
        return isinstance(other, AssocAlgebra) and tensors_equal(self.mul, other.mul)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Bimodule:
    """Bimódulo: left[a, u, v] em e_a·e_u, right[u, a, v] em e_u·e_a"""
    dim: int
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise StructureError("dimensão do módulo deve ser positiva")
        esq = as_tensor(self.left)
        dir_ = as_tensor(self.right)
        if esq.ndim != 3 or esq.shape[1:] != (self.dim, self.dim):
            raise StructureError(f"ação à esquerda com formato {esq.shape}")
        if dir_.shape != (self.dim, esq.shape[0], self.dim):
            raise StructureError(f"ação à direita com formato {dir_.shape}")
        object.__setattr__(self, "left", _congelar(esq))
        object.__setattr__(self, "right", _congelar(dir_))

    @property
    def algebra_dim(self) -> int:
        return self.left.shape[0]

    def __eq__(self, other):
        return (isinstance(other, Bimodule) and tensors_equal(self.left, other.left)
                and tensors_equal(self.right, other.right))

    __hash__ = None


def check_algebra(alg: AssocAlgebra, cap: int = DEFAULT_LIMITS.report_cap) -> ValidationReport:
    relatorio = ValidationReport("algebra", cap)
    associador = compose(alg.mul, alg.mul, 1) - compose(alg.mul, alg.mul, 2)
    relatorio.add_tensor("associativity", associador)
    return relatorio


def _checar_dimensoes(alg: AssocAlgebra, mod: Bimodule):
    if mod.algebra_dim != alg.dim:
        raise StructureError(f"bimódulo sobre álgebra de dimensão {mod.algebra_dim}, esperado {alg.dim}")


def check_bimodule(alg: AssocAlgebra, mod: Bimodule, cap: int = DEFAULT_LIMITS.report_cap) -> ValidationReport:
    """Os três axiomas de bimódulo em todas as triplas da base"""
    _checar_dimensoes(alg, mod)
    relatorio = ValidationReport("bimodule", cap)
    mul, esq, dir_ = alg.mul, mod.left, mod.right
    relatorio.add_tensor("(ab)u=a(bu)", compose(esq, mul, 1) - compose(esq, esq, 2))
    relatorio.add_tensor("(au)b=a(ub)", compose(dir_, esq, 1) - compose(esq, dir_, 2))
    relatorio.add_tensor("(ua)b=u(ab)", compose(dir_, dir_, 1) - compose(dir_, mul, 2))
    return relatorio


def adjoint_bimodule(alg: AssocAlgebra) -> Bimodule:
    return Bimodule(alg.dim, alg.mul, alg.mul)

# ============================================================================
# FAMÍLIAS ROTA-BAXTER RELATIVAS
# ============================================================================

@dataclass(frozen=True, eq=False)
class OperatorFamily:
    """Uma matriz dim_A × dim_M por elemento de Ω"""
    maps: np.ndarray

    def __post_init__(self):
        arr = as_tensor(self.maps)
        if arr.ndim != 3:
            raise StructureError(f"família de operadores com formato {arr.shape}")
        object.__setattr__(self, "maps", _congelar(arr))

    @property
    def omega_size(self) -> int:
        return self.maps.shape[0]

    def as_map_tensor(self) -> np.ndarray:
        """Layout (rótulo, entrada em M, saída em A)"""
        return np.ascontiguousarray(np.transpose(self.maps, (0, 2, 1)))

    def __eq__(self, other):
        return isinstance(other, OperatorFamily) and tensors_equal(self.maps, other.maps)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class RelRBFamily:
    """Tripla (A, M, {R_α}) sobre o semigrupo Ω"""
    omega: Semigroup
    algebra: AssocAlgebra
    module: Bimodule
    ops: OperatorFamily

    def __post_init__(self):
        _checar_dimensoes(self.algebra, self.module)
        esperado = (self.omega.size, self.algebra.dim, self.module.dim)
        if self.ops.maps.shape != esperado:
            raise StructureError(f"operadores com formato {self.ops.maps.shape}, esperado {esperado}")

    @property
    def dim_a(self) -> int:
        return self.algebra.dim

    @property
    def dim_m(self) -> int:
        return self.module.dim

    def with_ops(self, maps) -> "RelRBFamily":
        return RelRBFamily(self.omega, self.algebra, self.module, OperatorFamily(maps))


def is_rb_family(s: RelRBFamily) -> bool:
    """Verdadeiro quando M é o bimódulo adjunto de A"""
    return s.module == adjoint_bimodule(s.algebra)


def rb_family(omega: Semigroup, alg: AssocAlgebra, maps) -> RelRBFamily:
    return RelRBFamily(omega, alg, adjoint_bimodule(alg), OperatorFamily(maps))


def rel_rbf_residual(s: RelRBFamily) -> np.ndarray:
    """R_α(u)·R_β(v) − R_αβ(R_α(u)·v + u·R_β(v)) com eixos (α, β, u, v, saída)"""
    r = s.ops.maps
    mul, esq, dir_ = s.algebra.mul, s.module.left, s.module.right
    lhs = np.einsum("pau,qbv,abk->pquvk", r, r, mul)
    x_esq = np.einsum("pau,avm->puvm", r, esq)
    x_dir = np.einsum("qbv,ubm->quvm", r, dir_)
    meio = x_esq[:, None] + x_dir[None, :]
    r_prod = np.take(r, s.omega.products(2), axis=0)
    rhs = np.einsum("pqkm,pquvm->pquvk", r_prod, meio)
    return lhs - rhs


def check_rel_rbf(s: RelRBFamily, cap: int = DEFAULT_LIMITS.report_cap) -> ValidationReport:
    """Componentes primeiro (com procedência), depois a identidade Rota-Baxter de família"""
    relatorio = ValidationReport("rel-rbf", cap)
    relatorio.extend(check_semigroup(s.omega, cap), "semigroup")
    relatorio.extend(check_algebra(s.algebra, cap), "algebra")
    relatorio.extend(check_bimodule(s.algebra, s.module, cap), "bimodule")
    if relatorio.ok:
        relatorio.add_tensor("rb-family", rel_rbf_residual(s))
    logger.debug("check_rel_rbf: %d violações", relatorio.total)
    return relatorio

# ============================================================================
# MUDANÇA DE BASE
# ============================================================================

def change_basis_algebra(alg: AssocAlgebra, p: np.ndarray) -> AssocAlgebra:
    """Constantes de estrutura na base dada pelas colunas de p"""
    return AssocAlgebra(alg.dim, change_basis(alg.mul, [p, p], inverse(p)))


def change_basis_bimodule(mod: Bimodule, p_a: np.ndarray, p_m: np.ndarray) -> Bimodule:
    p_m_inv = inverse(p_m)
    return Bimodule(mod.dim,
                    change_basis(mod.left, [p_a, p_m], p_m_inv),
                    change_basis(mod.right, [p_m, p_a], p_m_inv))


def change_basis_rel_rbf(s: RelRBFamily, p_a: np.ndarray, p_m: Optional[np.ndarray] = None) -> RelRBFamily:
    """Transporta (A, M, R) para novas bases; p_m = None usa p_a (caso adjunto)"""
    p_m = p_a if p_m is None else p_m
    p_a_inv = inverse(p_a)
    maps = np.stack([matmul(matmul(p_a_inv, r), p_m) for r in s.ops.maps])
    return RelRBFamily(s.omega, change_basis_algebra(s.algebra, p_a),
                       change_basis_bimodule(s.module, p_a, p_m), OperatorFamily(maps))
