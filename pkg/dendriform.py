"""
Álgebras dendriformes de família - axiomas, estrutura induzida em M por
uma família Rota-Baxter relativa e a construção Tot em D ⊗ kΩ
"""

import logging
from dataclasses import dataclass

import numpy as np

from algebra import (AssocAlgebra, Bimodule, OperatorFamily, RelRBFamily, Semigroup, ValidationReport,
                     check_rel_rbf, check_semigroup)
from config import DEFAULT_LIMITS
from errors import StructureError
from tensors import as_tensor, broadcast_labels, tensors_equal, tidy, zeros

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DendFamily:
    """prec[α][x, y, z]: coeficiente de e_z em e_x ≺_α e_y (idem succ para ≻_α)"""
    omega: Semigroup
    dim: int
    prec: np.ndarray
    succ: np.ndarray

    def __post_init__(self):
        forma = (self.omega.size,) + (self.dim,) * 3
        prec = as_tensor(self.prec, forma)
        succ = as_tensor(self.succ, forma)
        prec.setflags(write=False)
        succ.setflags(write=False)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "succ", succ)

    def star(self) -> np.ndarray:
        """x ★_{α,β} y = x ≺_β y + x ≻_α y, eixos (α, β, x, y, z)"""
        return tidy(self.prec[None, :] + self.succ[:, None])

    def __eq__(self, other):
        return (isinstance(other, DendFamily) and self.omega == other.omega
                and tensors_equal(self.prec, other.prec) and tensors_equal(self.succ, other.succ))

    __hash__ = None


def constant_dend_family(omega: Semigroup, dim: int, prec, succ) -> DendFamily:
    """Álgebra dendriforme vista como família: ≺_α = ≺ e ≻_α = ≻"""
    return DendFamily(omega, dim, broadcast_labels(as_tensor(prec), omega.size, 1),
                      broadcast_labels(as_tensor(succ), omega.size, 1))


def check_dend_family(d: DendFamily, cap: int = DEFAULT_LIMITS.report_cap) -> ValidationReport:
    """Os três axiomas em todas as triplas da base e todos (α, β); índices (α, β, x, y, z, saída)"""
    relatorio = ValidationReport("dend-family", cap)
    relatorio.extend(check_semigroup(d.omega, cap), "semigroup")
    if not relatorio.ok:
        return relatorio
    prec, succ = d.prec, d.succ
    produtos = d.omega.products(2)
    prec_ab = np.take(prec, produtos, axis=0)
    succ_ab = np.take(succ, produtos, axis=0)
    estrela = d.star()

    # (x ≺_α y) ≺_β z = x ≺_{αβ} (y ≺_β z + y ≻_α z)
    lhs = np.einsum("pxyw,qwzo->pqxyzo", prec, prec)
    rhs = np.einsum("pqxwo,pqyzw->pqxyzo", prec_ab, estrela)
    relatorio.add_tensor("(x<y)<z", tidy(lhs - rhs))

    # (x ≻_α y) ≺_β z = x ≻_α (y ≺_β z)
    lhs = np.einsum("pxyw,qwzo->pqxyzo", succ, prec)
    rhs = np.einsum("pxwo,qyzw->pqxyzo", succ, prec)
    relatorio.add_tensor("(x>y)<z", tidy(lhs - rhs))

    # (x ≺_β y + x ≻_α y) ≻_{αβ} z = x ≻_α (y ≻_β z)
    lhs = np.einsum("pqxyw,pqwzo->pqxyzo", estrela, succ_ab)
    rhs = np.einsum("pxwo,qyzw->pqxyzo", succ, succ)
    relatorio.add_tensor("(x*y)>z", tidy(lhs - rhs))
    return relatorio


def induced_dend_family(s: RelRBFamily) -> DendFamily:
    """u ≺_α v = u · R_α(v) e u ≻_α v = R_α(u) · v em M"""
    relatorio = check_rel_rbf(s)
    if not relatorio.ok:
        raise StructureError(f"família inválida: {'; '.join(relatorio.lines()[:3])}")
    r = s.ops.maps
    prec = np.einsum("pav,uaw->puvw", r, s.module.right)
    succ = np.einsum("pau,avw->puvw", r, s.module.left)
    return DendFamily(s.omega, s.dim_m, tidy(prec), tidy(succ))


def tot_construction(d: DendFamily) -> RelRBFamily:
    """(D ⊗ kΩ, D, R_α(x) = x ⊗ α) com base de D ⊗ kΩ indexada por x·|Ω| + α"""
    relatorio = check_dend_family(d)
    if not relatorio.ok:
        raise StructureError(f"família dendriforme inválida: {'; '.join(relatorio.lines()[:3])}")
    w, n = d.omega.size, d.dim
    total = n * w
    mul = zeros((total,) * 3)
    esq = zeros((total, n, n))
    dir_ = zeros((n, total, n))
    ops = zeros((w, total, n))
    for alfa in range(w):
        fatia_a = slice(alfa, None, w)
        esq[fatia_a] = d.succ[alfa]
        dir_[:, fatia_a] = d.prec[alfa]
        for x in range(n):
            ops[alfa, x * w + alfa, x] = 1
        for beta in range(w):
            gama = d.omega.mul(alfa, beta)
            mul[fatia_a, slice(beta, None, w), slice(gama, None, w)] = d.prec[beta] + d.succ[alfa]
    logger.debug("tot_construction: dim D = %d, |Ω| = %d", n, w)
    return RelRBFamily(d.omega, AssocAlgebra(total, tidy(mul)), Bimodule(n, tidy(esq), tidy(dir_)),
                       OperatorFamily(ops))
