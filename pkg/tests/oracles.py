"""
Oráculos independentes - laços explícitos sobre a base, sem einsum nem sympy
"""

from fractions import Fraction
from itertools import product


def _f(x):
    return Fraction(x)


def gauss_rank(matrix) -> int:
    """Posto por eliminação gaussiana em Fraction"""
    linhas = [[_f(x) for x in linha] for linha in matrix]
    if not linhas or not linhas[0]:
        return 0
    n_linhas, n_colunas = len(linhas), len(linhas[0])
    posto = 0
    for coluna in range(n_colunas):
        pivo = next((i for i in range(posto, n_linhas) if linhas[i][coluna] != 0), None)
        if pivo is None:
            continue
        linhas[posto], linhas[pivo] = linhas[pivo], linhas[posto]
        for i in range(n_linhas):
            if i != posto and linhas[i][coluna] != 0:
                fator = linhas[i][coluna] / linhas[posto][coluna]
                linhas[i] = [a - fator * b for a, b in zip(linhas[i], linhas[posto])]
        posto += 1
    return posto


def _produto(mul, x, y):
    """x·y para vetores de coordenadas com constantes mul[i][j][k]"""
    d_out = len(mul[0][0])
    saida = [Fraction(0)] * d_out
    for i, a in enumerate(x):
        if a == 0:
            continue
        for j, b in enumerate(y):
            if b == 0:
                continue
            for k in range(d_out):
                saida[k] += a * b * _f(mul[i][j][k])
    return saida


def _aplicar(matriz, v):
    """Matriz saída × entrada aplicada a v"""
    return [sum((_f(matriz[i][j]) * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(matriz))]


def _base(dim, i):
    return [Fraction(1) if k == i else Fraction(0) for k in range(dim)]


def associative(mul) -> bool:
    d = len(mul)
    for i, j, k in product(range(d), repeat=3):
        x, y, z = _base(d, i), _base(d, j), _base(d, k)
        if _produto(mul, _produto(mul, x, y), z) != _produto(mul, x, _produto(mul, y, z)):
            return False
    return True


def associator(mul):
    """Tensor (a,b,c,saída) de (ab)c − a(bc) como listas aninhadas"""
    d = len(mul)
    saida = {}
    for i, j, k in product(range(d), repeat=3):
        x, y, z = _base(d, i), _base(d, j), _base(d, k)
        esq = _produto(mul, _produto(mul, x, y), z)
        dir_ = _produto(mul, x, _produto(mul, y, z))
        saida[(i, j, k)] = [a - b for a, b in zip(esq, dir_)]
    return saida


def rb_family_holds(table, mul, left, right, maps) -> bool:
    """R_α(u)R_β(v) = R_αβ(R_α(u)·v + u·R_β(v)) em todos os rótulos e vetores da base"""
    w = len(table)
    dm = len(maps[0][0])
    for alfa, beta in product(range(w), repeat=2):
        gama = table[alfa][beta]
        for u, v in product(range(dm), repeat=2):
            ru = _aplicar(maps[alfa], _base(dm, u))
            rv = _aplicar(maps[beta], _base(dm, v))
            lhs = _produto(mul, ru, rv)
            dentro = [a + b for a, b in zip(_produto(left, ru, _base(dm, v)), _produto(right, _base(dm, u), rv))]
            if lhs != _aplicar(maps[gama], dentro):
                return False
    return True


def dend_family_holds(table, prec, succ) -> bool:
    """Os três axiomas de família dendriforme expandidos um a um"""
    w, d = len(table), len(prec[0])
    for alfa, beta in product(range(w), repeat=2):
        ab = table[alfa][beta]
        for i, j, k in product(range(d), repeat=3):
            x, y, z = _base(d, i), _base(d, j), _base(d, k)
            pa, pb, pab = prec[alfa], prec[beta], prec[ab]
            sa, sb, sab = succ[alfa], succ[beta], succ[ab]
            # (x ≺_α y) ≺_β z = x ≺_αβ (y ≺_β z + y ≻_α z)
            interno = [a + b for a, b in zip(_produto(pb, y, z), _produto(sa, y, z))]
            if _produto(pb, _produto(pa, x, y), z) != _produto(pab, x, interno):
                return False
            # (x ≻_α y) ≺_β z = x ≻_α (y ≺_β z)
            if _produto(pb, _produto(sa, x, y), z) != _produto(sa, x, _produto(pb, y, z)):
                return False
            # (x ≺_β y + x ≻_α y) ≻_αβ z = x ≻_α (y ≻_β z)
            estrela = [a + b for a, b in zip(_produto(pb, x, y), _produto(sa, x, y))]
            if _produto(sab, estrela, z) != _produto(sa, x, _produto(sb, y, z)):
                return False
    return True


def partial_composition(f, g, i, dim):
    """f ∘_i g clássico (Ω trivial) por soma explícita; devolve dict índice → valor"""
    m = len(f.shape) - 1
    n = len(g.shape) - 1
    saida = {}
    for entradas in product(range(dim), repeat=m + n - 1):
        antes, meio, depois = entradas[:i - 1], entradas[i - 1:i - 1 + n], entradas[i - 1 + n:]
        for o in range(dim):
            total = Fraction(0)
            for c in range(dim):
                total += _f(g[meio + (c,)]) * _f(f[antes + (c,) + depois + (o,)])
            saida[entradas + (o,)] = total
    return saida


def classical_bracket(f, g, dim):
    """[f, g] de Gerstenhaber para mapas V^m → V com V de dimensão dim"""
    m, n = len(f.shape) - 1, len(g.shape) - 1
    total = {}
    for i in range(1, m + 1):
        for k, v in partial_composition(f, g, i, dim).items():
            total[k] = total.get(k, 0) + (-1) ** ((i - 1) * (n - 1)) * v
    sinal = (-1) ** ((m - 1) * (n - 1))
    for i in range(1, n + 1):
        for k, v in partial_composition(g, f, i, dim).items():
            total[k] = total.get(k, 0) - sinal * (-1) ** ((i - 1) * (m - 1)) * v
    return total
