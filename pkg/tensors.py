"""
Tensores - escalares racionais exatos e tensores de coeficientes

Convenção de armazenamento: um mapa multilinear V1 ⊗ ... ⊗ Vn → W é um
tensor numpy de dtype object com eixos (entradas..., saída).
"""

import string
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from errors import StructureError

_LETTERS = string.ascii_letters

# ============================================================================
# ESCALARES
# ============================================================================

def normalize(value):
    """Frações inteiras viram int (mesmo valor exato, aritmética mais rápida)"""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def to_scalar(value):
    """Converte int, Fraction ou string 'p/q' em racional exato"""
    if isinstance(value, (bool, np.bool_)):
        raise StructureError(f"escalar inválido: {value!r}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return normalize(value)
    if isinstance(value, str):
        texto = value.strip()
        if not texto or any(c in texto for c in ".eE"):
            raise StructureError(f"escalar deve ser racional 'p/q': {value!r}")
        try:
            return normalize(Fraction(texto))
        except (ValueError, ZeroDivisionError) as exc:
            raise StructureError(f"escalar inválido: {value!r}") from exc
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return normalize(Fraction(int(value.numerator), int(value.denominator)))
    raise StructureError(f"escalar inválido: {value!r}")


def format_scalar(value) -> str:
    """Forma canônica 'p/q' (ou inteiro)"""
    return str(normalize(Fraction(value)))


_to_scalar_vec = np.frompyfunc(to_scalar, 1, 1)
_format_vec = np.frompyfunc(format_scalar, 1, 1)
_nonzero_vec = np.frompyfunc(lambda x: x != 0, 1, 1)
_normalize_vec = np.frompyfunc(normalize, 1, 1)

# ============================================================================
# TENSORES
# ============================================================================

def as_tensor(data, shape: Optional[Sequence[int]] = None) -> np.ndarray:
    """Tensor object de racionais exatos, validando o formato se informado"""
    arr = np.array(data, dtype=object)
    if arr.ndim == 0:
        arr = np.array(to_scalar(arr.item()), dtype=object)
    else:
        arr = np.asarray(_to_scalar_vec(arr), dtype=object)
    if shape is not None and tuple(arr.shape) != tuple(shape):
        raise StructureError(f"formato {tuple(arr.shape)} diferente do esperado {tuple(shape)}")
    return arr


def zeros(shape: Sequence[int]) -> np.ndarray:
    return np.zeros(tuple(shape), dtype=object)


def identity(dim: int) -> np.ndarray:
    out = zeros((dim, dim))
    for i in range(dim):
        out[i, i] = 1
    return out


def unit_vector(dim: int, index: int) -> np.ndarray:
    out = zeros((dim,))
    out[index] = 1
    return out


def is_zero(t) -> bool:
    return all(x == 0 for x in np.asarray(t, dtype=object).flat)


def tidy(t: np.ndarray) -> np.ndarray:
    """Normaliza entradas (Fraction inteira → int)"""
    if t.ndim == 0:
        return np.array(normalize(t.item()), dtype=object)
    return np.asarray(_normalize_vec(t), dtype=object)


def nonzero_entries(t: np.ndarray, limit: Optional[int] = None) -> List[Tuple[Tuple[int, ...], object]]:
    """Lista (índice, valor) das entradas não nulas, até `limit`"""
    if t.ndim == 0:
        return [((), t.item())] if t.item() != 0 else []
    mask = np.asarray(_nonzero_vec(t), dtype=bool)
    saida = []
    for idx in np.argwhere(mask):
        chave = tuple(int(i) for i in idx)
        saida.append((chave, t[chave]))
        if limit is not None and len(saida) >= limit:
            break
    return saida


def count_nonzero(t: np.ndarray) -> int:
    if t.ndim == 0:
        return int(t.item() != 0)
    return int(np.asarray(_nonzero_vec(t), dtype=bool).sum())


def to_nested(t: np.ndarray):
    """Listas aninhadas de strings 'p/q' para serialização"""
    if t.ndim == 0:
        return format_scalar(t.item())
    return np.asarray(_format_vec(t), dtype=object).tolist()


def tensors_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))

# ============================================================================
# COMPOSIÇÃO E MUDANÇA DE BASE
# ============================================================================

def compose(f: np.ndarray, g: np.ndarray, i: int) -> np.ndarray:
    """Composição parcial f ∘_i g de mapas multilineares (i começa em 1)"""
    m, n = f.ndim - 1, g.ndim - 1
    if not 1 <= i <= m:
        raise StructureError(f"posição {i} fora de 1..{m}")
    if g.shape[-1] != f.shape[i - 1]:
        raise StructureError(f"saída de dimensão {g.shape[-1]} no slot {i} de dimensão {f.shape[i - 1]}")
    f_in = _LETTERS[:m]
    out = _LETTERS[m]
    g_in = _LETTERS[m + 1:m + 1 + n]
    contr = f_in[i - 1]
    resultado = f_in[:i - 1] + g_in + f_in[i:] + out
    return np.einsum(f"{f_in}{out},{g_in}{contr}->{resultado}", f, g)


def apply_map(f: np.ndarray, vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Avalia f(v1, ..., vn) por contração"""
    res = f
    for v in vectors:
        res = np.tensordot(v, res, axes=([0], [0]))
    return res


def change_basis(t: np.ndarray, in_mats: Sequence[np.ndarray], out_inv: Optional[np.ndarray],
                 offset: int = 0) -> np.ndarray:
    """Transporta o tensor para novas bases.

    A nova base do slot s é dada pelas colunas de in_mats[s]; out_inv é a
    inversa da matriz de base do espaço de saída (None mantém a saída).
    Os primeiros `offset` eixos (rótulos de Ω) não são tocados.
    """
    res = t
    for s, p in enumerate(in_mats):
        eixo = offset + s
        res = np.moveaxis(np.tensordot(res, p, axes=([eixo], [0])), -1, eixo)
    if out_inv is not None:
        res = np.tensordot(res, out_inv, axes=([res.ndim - 1], [1]))
    return tidy(res)


def broadcast_labels(t: np.ndarray, omega_size: int, arity: int) -> np.ndarray:
    """Levanta um tensor para a forma (|Ω|,)*arity + t.shape, constante nos rótulos"""
    forma = (omega_size,) * arity + t.shape
    return np.broadcast_to(t, forma).copy()


def block_slices(dims: Iterable[int]) -> List[slice]:
    """Fatias consecutivas de uma soma direta"""
    fatias, inicio = [], 0
    for d in dims:
        fatias.append(slice(inicio, inicio + d))
        inicio += d
    return fatias


def embed_block(t: np.ndarray, in_slices: Sequence[slice], out_slice: slice, total: int,
                offset: int = 0) -> np.ndarray:
    """Coloca um bloco de mapa dentro do mapa sobre a soma direta (dimensão total)"""
    forma = t.shape[:offset] + (total,) * (len(in_slices) + 1)
    out = zeros(forma)
    out[(slice(None),) * offset + tuple(in_slices) + (out_slice,)] = t
    return out


def extract_block(t: np.ndarray, in_slices: Sequence[slice], out_slice: slice, offset: int = 0) -> np.ndarray:
    return t[(slice(None),) * offset + tuple(in_slices) + (out_slice,)].copy()
