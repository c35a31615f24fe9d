"""
Manifestos - leitura e escrita das estruturas em JSON

Um único formato para todas as estruturas, com a etiqueta `kind`.
Escalares são inteiros JSON ou strings racionais "p/q"; a forma canônica
usa chaves ordenadas, indentação 2 e sempre strings.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from algebra import (AssocAlgebra, Bimodule, OperatorFamily, RelRBFamily, Semigroup, adjoint_bimodule,
                     check_semigroup, is_rb_family)
from config import DEFAULT_LIMITS
from deformations import DeformationJet, EquivalenceJet
from dendriform import DendFamily
from errors import ManifestError, RotaBaxterError
from homotopy import AInfRepresentation, AInfStructure, DendInfFamily, GradedSpace, HomotopyRBFamily
from tensors import as_tensor, identity, to_nested

logger = logging.getLogger(__name__)

KINDS = ("semigroup", "algebra", "rel-rbf", "rb-family", "dend-family", "jet", "ainf", "homotopy-rbf", "dendinf")
OPTION_KEYS = ("max_degree", "max_arity", "order", "report_cap")


@dataclass
class Manifest:
    """Manifesto lido: etiqueta, estrutura validada, opções e dados extras (equivalência de jatos)"""
    kind: str
    structure: Any
    options: Dict[str, int] = field(default_factory=dict)
    extras: Dict[str, Any] = field(default_factory=dict)
    source: Optional[str] = None

# ============================================================================
# LEITURA
# ============================================================================

def _campos(payload: Dict, obrigatorios: Sequence[str], opcionais: Sequence[str] = (), contexto: str = "") -> Dict:
    if not isinstance(payload, dict):
        raise ManifestError(f"{contexto or 'manifesto'}: objeto JSON esperado")
    for chave in obrigatorios:
        if chave not in payload:
            raise ManifestError(f"{contexto or 'manifesto'}: campo obrigatório ausente '{chave}'")
    sobrando = set(payload) - set(obrigatorios) - set(opcionais)
    if sobrando:
        raise ManifestError(f"{contexto or 'manifesto'}: campos desconhecidos {sorted(sobrando)}")
    return payload


def _omega(payload: Dict) -> Semigroup:
    _campos(payload, ("table",), ("elements",), "omega")
    omega = Semigroup(tuple(tuple(linha) for linha in payload["table"]), tuple(payload.get("elements", ())))
    relatorio = check_semigroup(omega, cap=1)
    if not relatorio.ok:
        i, j, k = relatorio.violations[0].indices
        raise ManifestError(f"omega: tabela não associativa na tripla ({i}, {j}, {k}): "
                            f"({i}·{j})·{k} ≠ {i}·({j}·{k})")
    return omega


def _algebra(payload: Dict) -> AssocAlgebra:
    _campos(payload, ("dim", "mul"), (), "algebra")
    return AssocAlgebra(int(payload["dim"]), payload["mul"])


def _modulo(payload: Dict) -> Bimodule:
    _campos(payload, ("dim", "left", "right"), (), "module")
    return Bimodule(int(payload["dim"]), payload["left"], payload["right"])


def _rel_rbf(payload: Dict) -> RelRBFamily:
    _campos(payload, ("omega", "algebra", "module", "ops"), (), "rel-rbf")
    return RelRBFamily(_omega(payload["omega"]), _algebra(payload["algebra"]), _modulo(payload["module"]),
                       OperatorFamily(payload["ops"]))


def _rb_family(payload: Dict) -> RelRBFamily:
    _campos(payload, ("omega", "algebra", "ops"), (), "rb-family")
    alg = _algebra(payload["algebra"])
    return RelRBFamily(_omega(payload["omega"]), alg, adjoint_bimodule(alg), OperatorFamily(payload["ops"]))


def _dend_family(payload: Dict) -> DendFamily:
    _campos(payload, ("omega", "dim", "prec", "succ"), (), "dend-family")
    return DendFamily(_omega(payload["omega"]), int(payload["dim"]), payload["prec"], payload["succ"])


def _termos_jato(base: RelRBFamily, payload: Dict, contexto: str) -> DeformationJet:
    _campos(payload, ("mu", "left", "right", "ops"), (), contexto)
    return DeformationJet(base,
                          (base.algebra.mul,) + tuple(payload["mu"]),
                          (base.module.left,) + tuple(payload["left"]),
                          (base.module.right,) + tuple(payload["right"]),
                          (base.ops.maps,) + tuple(payload["ops"]))


def _jet(payload: Dict) -> Tuple[DeformationJet, Dict[str, Any]]:
    _campos(payload, ("base", "terms"), ("equivalence",), "jet")
    base = _estrutura_base(payload["base"])
    jato = _termos_jato(base, payload["terms"], "jet.terms")
    extras = {}
    if "equivalence" in payload:
        eq = _campos(payload["equivalence"], ("target", "phi", "psi"), (), "jet.equivalence")
        extras["target"] = _termos_jato(base, eq["target"], "jet.equivalence.target")
        extras["equivalence"] = EquivalenceJet((identity(base.dim_a),) + tuple(as_tensor(x) for x in eq["phi"]),
                                               (identity(base.dim_m),) + tuple(as_tensor(x) for x in eq["psi"]))
    return jato, extras


def _estrutura_base(payload: Dict) -> RelRBFamily:
    """Base de um jato: manifesto rel-rbf ou rb-family aninhado (com kind)"""
    tipo = payload.get("kind") if isinstance(payload, dict) else None
    corpo = {k: v for k, v in payload.items() if k != "kind"} if isinstance(payload, dict) else payload
    if tipo == "rb-family":
        return _rb_family(corpo)
    if tipo == "rel-rbf":
        return _rel_rbf(corpo)
    raise ManifestError("jet.base: kind deve ser 'rel-rbf' ou 'rb-family'")


def _indices_aridade(payload: Dict, contexto: str) -> Dict[int, Any]:
    if not isinstance(payload, dict):
        raise ManifestError(f"{contexto}: objeto {{aridade: dados}} esperado")
    saida = {}
    for chave, valor in payload.items():
        try:
            saida[int(chave)] = valor
        except ValueError as exc:
            raise ManifestError(f"{contexto}: aridade inválida '{chave}'") from exc
    return saida


def _ainf(payload: Dict, tag: str = "A") -> AInfStructure:
    _campos(payload, ("degrees", "mu"), ("k_max",), "ainf")
    k_max = int(payload.get("k_max", DEFAULT_LIMITS.k_max))
    return AInfStructure(GradedSpace(tuple(payload["degrees"]), tag), _indices_aridade(payload["mu"], "ainf.mu"),
                         k_max)


def _homotopy_rbf(payload: Dict) -> HomotopyRBFamily:
    _campos(payload, ("omega", "algebra", "module", "ops"), (), "homotopy-rbf")
    algebra = _ainf(payload["algebra"])
    mod = _campos(payload["module"], ("degrees", "eta"), (), "homotopy-rbf.module")
    etas = {k: tuple(v) for k, v in _indices_aridade(mod["eta"], "module.eta").items()}
    rep = AInfRepresentation(algebra.space, GradedSpace(tuple(mod["degrees"]), "M"), etas, algebra.k_max)
    return HomotopyRBFamily(algebra, rep, _omega(payload["omega"]), _indices_aridade(payload["ops"], "ops"))


def _dendinf(payload: Dict) -> DendInfFamily:
    _campos(payload, ("omega", "degrees", "theta"), ("k_max",), "dendinf")
    thetas = {k: tuple(v) for k, v in _indices_aridade(payload["theta"], "dendinf.theta").items()}
    return DendInfFamily(GradedSpace(tuple(payload["degrees"]), "M"), _omega(payload["omega"]), thetas,
                         int(payload.get("k_max", DEFAULT_LIMITS.k_max)))


_LEITORES = {
    "semigroup": _omega,
    "algebra": _algebra,
    "rel-rbf": _rel_rbf,
    "rb-family": _rb_family,
    "dend-family": _dend_family,
    "ainf": _ainf,
    "homotopy-rbf": _homotopy_rbf,
    "dendinf": _dendinf,
}


def _opcoes(payload) -> Dict[str, int]:
    if payload is None:
        return {}
    if not isinstance(payload, dict):
        raise ManifestError("options: objeto JSON esperado")
    desconhecidas = set(payload) - set(OPTION_KEYS)
    if desconhecidas:
        raise ManifestError(f"options: chaves desconhecidas {sorted(desconhecidas)}")
    opcoes = {}
    for chave, valor in payload.items():
        if isinstance(valor, bool) or not isinstance(valor, int) or valor < 0:
            raise ManifestError(f"options.{chave}: inteiro não negativo esperado")
        if chave == "report_cap" and valor < 1:
            raise ManifestError("options.report_cap: deve ser ≥ 1")
        opcoes[chave] = valor
    return opcoes


def load_structure(data: Dict, source: Optional[str] = None) -> Manifest:
    """Valida um manifesto já decodificado e constrói a estrutura"""
    if not isinstance(data, dict) or "kind" not in data:
        raise ManifestError("manifesto sem campo 'kind'")
    kind = data["kind"]
    if kind not in KINDS:
        raise ManifestError(f"kind desconhecido: {kind!r} (esperado um de {', '.join(KINDS)})")
    opcoes = _opcoes(data.get("options"))
    corpo = {k: v for k, v in data.items() if k not in ("kind", "options")}
    try:
        if kind == "jet":
            estrutura, extras = _jet(corpo)
        else:
            estrutura, extras = _LEITORES[kind](corpo), {}
    except ManifestError:
        raise
    except RotaBaxterError as exc:
        raise ManifestError(f"{kind}: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ManifestError(f"{kind}: dados mal formados ({exc})") from exc
    logger.debug("load_structure: kind=%s opções=%s", kind, opcoes)
    return Manifest(kind, estrutura, opcoes, extras, source)


def parse_manifest(source: Union[str, Path]) -> Manifest:
    """Lê um manifesto de um caminho ou de texto JSON"""
    origem = None
    if isinstance(source, Path) or not str(source).lstrip().startswith("{"):
        caminho = Path(source)
        try:
            texto = caminho.read_text(encoding="utf-8")
        except OSError as exc:
            raise ManifestError(f"não foi possível ler {caminho}: {exc.strerror}") from exc
        origem = str(caminho)
    else:
        texto = str(source)
    try:
        dados = json.loads(texto)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"JSON inválido: {exc.msg}", exc.lineno, exc.colno) from exc
    return load_structure(dados, origem)

# ============================================================================
# ESCRITA CANÔNICA
# ============================================================================

def _omega_payload(omega: Semigroup) -> Dict:
    return {"table": [list(linha) for linha in omega.table], "elements": list(omega.names)}


def _algebra_payload(alg: AssocAlgebra) -> Dict:
    return {"dim": alg.dim, "mul": to_nested(alg.mul)}


def _rel_rbf_payload(s: RelRBFamily, kind: str) -> Dict:
    payload = {"omega": _omega_payload(s.omega), "algebra": _algebra_payload(s.algebra),
               "ops": to_nested(s.ops.maps)}
    if kind == "rel-rbf":
        payload["module"] = {"dim": s.dim_m, "left": to_nested(s.module.left), "right": to_nested(s.module.right)}
    elif not is_rb_family(s):
        raise ManifestError("rb-family exige o bimódulo adjunto")
    return payload


def _termos_payload(j: DeformationJet) -> Dict:
    return {nome: [to_nested(x) for x in getattr(j, nome)[1:]] for nome in ("mu", "left", "right", "ops")}


def _ainf_payload(a: AInfStructure) -> Dict:
    return {"degrees": list(a.space.degrees), "k_max": a.k_max,
            "mu": {str(k): to_nested(t) for k, t in sorted(a.mu.items())}}


def _payload(kind: str, obj, extras: Dict[str, Any]) -> Dict:
    if kind == "semigroup":
        return _omega_payload(obj)
    if kind == "algebra":
        return _algebra_payload(obj)
    if kind in ("rel-rbf", "rb-family"):
        return _rel_rbf_payload(obj, kind)
    if kind == "dend-family":
        return {"omega": _omega_payload(obj.omega), "dim": obj.dim, "prec": to_nested(obj.prec),
                "succ": to_nested(obj.succ)}
    if kind == "jet":
        base_kind = "rb-family" if is_rb_family(obj.base) else "rel-rbf"
        payload = {"base": dict(_rel_rbf_payload(obj.base, base_kind), kind=base_kind),
                   "terms": _termos_payload(obj)}
        if "equivalence" in extras:
            e = extras["equivalence"]
            payload["equivalence"] = {"target": _termos_payload(extras["target"]),
                                      "phi": [to_nested(x) for x in e.phi[1:]],
                                      "psi": [to_nested(x) for x in e.psi[1:]]}
        return payload
    if kind == "ainf":
        return _ainf_payload(obj)
    if kind == "homotopy-rbf":
        return {"omega": _omega_payload(obj.omega), "algebra": _ainf_payload(obj.algebra),
                "module": {"degrees": list(obj.rep.space.degrees),
                           "eta": {str(k): [to_nested(b) for b in blocos] for k, blocos in sorted(obj.rep.eta.items())}},
                "ops": {str(k): to_nested(t) for k, t in sorted(obj.ops.items())}}
    if kind == "dendinf":
        return {"omega": _omega_payload(obj.omega), "degrees": list(obj.space.degrees), "k_max": obj.k_max,
                "theta": {str(k): [to_nested(t) for t in sel] for k, sel in sorted(obj.theta.items())}}
    raise ManifestError(f"kind desconhecido: {kind!r}")


def serialize_structure(kind: str, obj, options: Optional[Dict[str, int]] = None,
                        extras: Optional[Dict[str, Any]] = None) -> str:
    """Texto JSON canônico (chaves ordenadas, indentação 2, escalares 'p/q')"""
    dados = {"kind": kind, **_payload(kind, obj, extras or {})}
    if options:
        dados["options"] = dict(_opcoes(options))
    return json.dumps(dados, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_manifest(m: Manifest) -> str:
    return serialize_structure(m.kind, m.structure, m.options, m.extras)
