"""
Álgebra linear exata sobre ℚ (DomainMatrix do sympy)
"""

import logging
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from errors import StructureError
from tensors import identity, normalize, unit_vector, zeros

logger = logging.getLogger(__name__)

# ============================================================================
# CONVERSÕES
# ============================================================================

def _to_qq(value):
    f = Fraction(value)
    return QQ(f.numerator, f.denominator)


def _from_qq(value):
    return normalize(Fraction(int(value.numerator), int(value.denominator)))


def to_domain_matrix(matrix) -> DomainMatrix:
    arr = np.asarray(matrix, dtype=object)
    if arr.ndim != 2:
        raise StructureError(f"matriz esperada, recebido formato {arr.shape}")
    linhas, colunas = arr.shape
    dados = [[_to_qq(x) for x in linha] for linha in arr]
    return DomainMatrix(dados, (linhas, colunas), QQ)


def from_domain_matrix(dm: DomainMatrix) -> np.ndarray:
    linhas, colunas = dm.shape
    out = zeros((linhas, colunas))
    for i, linha in enumerate(dm.to_list()):
        for j, x in enumerate(linha):
            out[i, j] = _from_qq(x)
    return out

# ============================================================================
# POSTO, FORMA ESCALONADA E NÚCLEO
# ============================================================================

def _vazia(matrix) -> bool:
    arr = np.asarray(matrix, dtype=object)
    return arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0


def rank(matrix) -> int:
    if _vazia(matrix):
        return 0
    return len(to_domain_matrix(matrix).rref()[1])


def rref(matrix) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Forma escalonada reduzida e colunas pivô"""
    if _vazia(matrix):
        return np.asarray(matrix, dtype=object), ()
    red, pivots = to_domain_matrix(matrix).rref()
    return from_domain_matrix(red), tuple(int(p) for p in pivots)


def nullspace(matrix) -> np.ndarray:
    """Base do núcleo, um vetor por linha (variáveis livres em ordem crescente)"""
    arr = np.asarray(matrix, dtype=object)
    colunas = arr.shape[1]
    if arr.shape[0] == 0:
        return identity(colunas)
    red, pivots = rref(arr)
    livres = [j for j in range(colunas) if j not in pivots]
    base = zeros((len(livres), colunas))
    for k, j in enumerate(livres):
        base[k, j] = 1
        for linha, p in enumerate(pivots):
            base[k, p] = -red[linha, j]
    return base


def solve(matrix, rhs) -> Optional[np.ndarray]:
    """Uma solução de A x = b (variáveis livres nulas) ou None"""
    arr = np.asarray(matrix, dtype=object)
    b = np.asarray(rhs, dtype=object).reshape(-1)
    linhas, colunas = arr.shape
    if linhas == 0:
        return zeros((colunas,))
    aumentada = np.concatenate([arr, b.reshape(linhas, 1)], axis=1)
    red, pivots = rref(aumentada)
    if colunas in pivots:
        return None
    x = zeros((colunas,))
    for linha, p in enumerate(pivots):
        x[p] = red[linha, colunas]
    return x


def inverse(matrix) -> np.ndarray:
    try:
        return from_domain_matrix(to_domain_matrix(matrix).inv())
    except DMNonInvertibleMatrixError as exc:
        raise StructureError("matriz de mudança de base não invertível") from exc


def matmul(a, b) -> np.ndarray:
    return np.asarray(np.dot(np.asarray(a, dtype=object), np.asarray(b, dtype=object)), dtype=object)

# ============================================================================
# MATRIZES DE MAPAS LINEARES E BASES
# ============================================================================

def matrix_from_linear_map(fn: Callable[[np.ndarray], np.ndarray], n_in: int, n_out: int) -> np.ndarray:
    """Matriz (n_out × n_in) de fn avaliado na base canônica"""
    logger.debug("montando matriz %dx%d", n_out, n_in)
    out = zeros((n_out, n_in))
    for j in range(n_in):
        coluna = np.asarray(fn(unit_vector(n_in, j)), dtype=object).reshape(-1)
        if coluna.shape[0] != n_out:
            raise StructureError(f"mapa devolveu {coluna.shape[0]} coordenadas, esperado {n_out}")
        out[:, j] = coluna
    return out


def stack_columns(vectors: Sequence[np.ndarray], length: int) -> np.ndarray:
    if not vectors:
        return zeros((length, 0))
    return np.stack([np.asarray(v, dtype=object).reshape(-1) for v in vectors], axis=1)


def extend_basis(base: Sequence[np.ndarray], candidates: Sequence[np.ndarray], length: int) -> List[int]:
    """Índices dos candidatos que, em ordem, aumentam o posto de `base`"""
    atuais = list(base)
    posto = rank(stack_columns(atuais, length))
    escolhidos = []
    for k, v in enumerate(candidates):
        novo = rank(stack_columns(atuais + [v], length))
        if novo > posto:
            atuais.append(v)
            posto = novo
            escolhidos.append(k)
    return escolhidos
