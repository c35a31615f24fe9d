"""
ROTA-BAXTER FAMILY TOOLKIT - linha de comando
Verificação, coomologia, deformações e transferências homotópicas
"""

import argparse
import json
import logging
import os
import sys
from typing import Callable, Dict, Optional, Sequence, Tuple

# Adicionar diretório ao path para importar módulos
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from algebra import check_algebra, check_rel_rbf, check_semigroup, is_rb_family
from config import DEFAULT_LIMITS, VERSION, Limits
from database import DatabaseManager
from deformations import check_deformation, check_equivalence, classify_infinitesimals, infinitesimal_of
from dendriform import check_dend_family, induced_dend_family, tot_construction
from errors import ManifestError, RotaBaxterError, SizeGuardError
from fixtures import FIXTURES, fixture_names, load_fixture
from homotopy import (check_ainf, check_dendinf, check_homotopy_rbf, check_omega_ainf, check_representation,
                      check_strict, dendinf_to_omega_ainf, dendinf_to_strict, homotopy_rbf_residual,
                      homotopy_residual_via_bracket, strict_to_dendinf, suspend_dend_family, suspend_rel_rbf)
from manifest import Manifest, parse_manifest, serialize_structure
from operator_complex import Ambient, cohomology_R, mc_check
from rbf_cohomology import RelCochainSpace, cohomology_hoch, cohomology_RBf, cohomology_rRBf, delta_rRBf, les_check
from report import EXIT_INPUT, EXIT_SIZE, Report, ReportPDF
from tensors import is_zero, tensors_equal

logger = logging.getLogger(__name__)

FAMILIAS = ("rel-rbf", "rb-family")

# ============================================================================
# COMANDOS
# ============================================================================

def _max_n(opts: Dict, k_max: int) -> int:
    return opts.get("max_arity", k_max)


def _cmd_validate(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    s, cap = m.structure, limits.report_cap
    if m.kind == "semigroup":
        rep.add_validation("semigrupo", check_semigroup(s, cap))
    elif m.kind == "algebra":
        rep.add_validation("álgebra", check_algebra(s, cap))
    elif m.kind in FAMILIAS:
        limits.guard_structure(s.omega.size, s.dim_a, s.dim_m)
        rep.add_validation("família Rota-Baxter", check_rel_rbf(s, cap))
    elif m.kind == "dend-family":
        rep.add_validation("família dendriforme", check_dend_family(s, cap))
    elif m.kind == "jet":
        rep.add_validation("deformação", check_deformation(s, opts.get("order"), cap))
    elif m.kind == "ainf":
        rep.add_validation("A∞", check_ainf(s, _max_n(opts, s.k_max), limits, cap))
    elif m.kind == "homotopy-rbf":
        n = _max_n(opts, s.k_max)
        rep.add_validation("A∞", check_ainf(s.algebra, n, limits, cap))
        rep.add_validation("representação", check_representation(s.algebra, s.rep, n, limits, cap))
        rep.add_validation("família homotópica", check_homotopy_rbf(s, n, limits, cap))
    elif m.kind == "dendinf":
        rep.add_validation("Dend∞", check_dendinf(s, _max_n(opts, s.k_max), limits, cap))


def _cmd_mc_check(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    s, cap = m.structure, limits.report_cap
    limits.guard_structure(s.omega.size, s.dim_a, s.dim_m)
    via_colchete = mc_check(s, cap)
    direto = check_rel_rbf(s, cap)
    rep.add_validation("⟦R, R⟧ = 0", via_colchete)
    rep.add_validation("identidade direta", direto)
    concordam = via_colchete.ok == direto.ok
    rep.add_section("concordância", [f"colchete={via_colchete.ok} direto={direto.ok}"], concordam)
    rep.data["maurer_cartan"] = via_colchete.ok


def _exigir_valida(s, rep: Report, cap: int) -> bool:
    relatorio = check_rel_rbf(s, cap)
    if not relatorio.ok:
        rep.add_validation("família Rota-Baxter", relatorio)
    return relatorio.ok


def _cmd_cohomology(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    s = m.structure
    if not _exigir_valida(s, rep, limits.report_cap):
        return
    n = opts.get("max_degree", 3)
    h_r = cohomology_R(s, n, limits)
    rep.add_summary(h_r.with_degree_zero)
    rep.add_summary(h_r.without_degree_zero)
    h_rel = cohomology_rRBf(s, n, limits)
    rep.add_summary(h_rel)
    rep.data["H_R"] = h_r.dims
    rep.data["H_R_without_degree_zero"] = h_r.dims_without_degree_zero
    rep.data["H_rRBf"] = h_rel.dims
    if is_rb_family(s):
        h_rb = cohomology_RBf(s, n, limits)
        h_hoch = cohomology_hoch(s.algebra, n, limits)
        rep.add_summary(h_rb)
        rep.add_summary(h_hoch)
        rep.data["H_RBf"] = h_rb.dims
        rep.data["H_Hoch"] = h_hoch.dims


def _cmd_les(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    s = m.structure
    if not _exigir_valida(s, rep, limits.report_cap):
        return
    les = les_check(s, opts.get("max_degree", 3), limits)
    linhas = [[n.name, n.degree, n.dim_h, n.dim_image_in, n.dim_kernel_out, "sim" if n.exact else "não"]
              for n in les.nodes]
    rep.add_table("sequência exata longa", ["nó", "grau", "dim H", "dim imagem", "dim núcleo", "exata"], linhas)
    for resumo in les.complexes:
        rep.add_summary(resumo)
    falhas = [f"{n.name}^{n.degree}" for n in les.nodes if not n.exact]
    rep.add_section("exatidão", falhas or ["todos os nós exatos"], les.ok)
    rep.data["exact"] = {f"{n.name}^{n.degree}": n.exact for n in les.nodes}


def _cmd_deform_check(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    j, cap = m.structure, limits.report_cap
    ordem = opts.get("order", j.order)
    relatorio = check_deformation(j, ordem, cap)
    rep.add_validation(f"deformação até a ordem {ordem}", relatorio)
    if j.order >= 1 and check_deformation(j, 1, cap).ok:
        z = infinitesimal_of(j)
        imagem = RelCochainSpace(Ambient.of(j.base), 3).to_vector(delta_rRBf(z, j.base, force=True))
        rep.add_section("infinitesimal em Z²_rRBf", ["δ_rRBf(μ₁, β₁, R₁) = 0" if is_zero(imagem) else "não fechado"],
                        is_zero(imagem))
    if "equivalence" in m.extras:
        rep.add_validation("equivalência", check_equivalence(j, m.extras["target"], m.extras["equivalence"],
                                                             None, cap))


def _cmd_classify(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    s = m.structure
    if not _exigir_valida(s, rep, limits.report_cap):
        return
    classes = classify_infinitesimals(s, limits)
    h2 = cohomology_rRBf(s, 2, limits).row(2).dim_h
    rep.add_section("classes infinitesimais",
                    [f"dim H²_rRBf = {h2}", f"representantes = {len(classes.representatives)}"],
                    classes.dim_h2 == h2 == len(classes.representatives))
    rep.data["dim_h2"] = classes.dim_h2
    rep.data["representatives"] = [json.loads(serialize_structure("jet", jato)) for jato in classes.jets]


def _cmd_dend_induce(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    s = m.structure
    if not _exigir_valida(s, rep, limits.report_cap):
        return
    d = induced_dend_family(s)
    rep.add_validation("família dendriforme induzida", check_dend_family(d, limits.report_cap))
    rep.data["manifest"] = json.loads(serialize_structure("dend-family", d))


def _cmd_tot(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    d = m.structure
    relatorio = check_dend_family(d, limits.report_cap)
    if not relatorio.ok:
        rep.add_validation("família dendriforme", relatorio)
        return
    s = tot_construction(d)
    rep.add_validation("família Rota-Baxter em D ⊗ kΩ", check_rel_rbf(s, limits.report_cap))
    volta = induced_dend_family(s) == d
    rep.add_section("induzida ∘ Tot = identidade", ["igual" if volta else "diferente"], volta)
    rep.data["manifest"] = json.loads(serialize_structure("rel-rbf", s))


def _residuos_iguais(a: Dict, b: Dict) -> bool:
    for n in set(a) | set(b):
        x = a[n].data if n in a else None
        y = b[n].data if n in b else None
        if x is None or y is None:
            if not is_zero(x if y is None else y):
                return False
        elif not tensors_equal(x, y):
            return False
    return True


def _cmd_homotopy_check(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    s, cap = m.structure, limits.report_cap
    if m.kind == "ainf":
        rep.add_validation("Stasheff", check_ainf(s, _max_n(opts, s.k_max), limits, cap))
        return
    if m.kind == "dendinf":
        n = _max_n(opts, s.k_max)
        rep.add_validation("Dend∞", check_dendinf(s, n, limits, cap))
        rep.add_validation("Ω-A∞ associada", check_omega_ainf(dendinf_to_omega_ainf(s), n, limits, cap))
        return
    n = _max_n(opts, s.k_max)
    rep.add_validation("família homotópica", check_homotopy_rbf(s, n, limits, cap))
    iguais = _residuos_iguais(homotopy_rbf_residual(s, n), homotopy_residual_via_bracket(s, n))
    rep.add_section("rota do colchete", ["resíduos coincidem" if iguais else "resíduos diferem"], iguais)
    if s.is_strict:
        rep.add_validation("identidade estrita", check_strict(s, n, limits, cap))


def _cmd_transfer(m: Manifest, opts: Dict, limits: Limits, rep: Report):
    s, cap = m.structure, limits.report_cap
    if m.kind == "dendinf":
        n = _max_n(opts, s.k_max)
        h = dendinf_to_strict(s)
        rep.add_validation("família homotópica estrita", check_homotopy_rbf(h, n, limits, cap))
        volta = strict_to_dendinf(h) == s
        rep.add_section("strict_to_dendinf ∘ dendinf_to_strict", ["identidade" if volta else "diferente"], volta)
        rep.data["manifest"] = json.loads(serialize_structure("homotopy-rbf", h))
    elif m.kind == "homotopy-rbf":
        d = strict_to_dendinf(s)
        rep.add_validation("Dend∞ induzida", check_dendinf(d, _max_n(opts, d.k_max), limits, cap))
        rep.data["manifest"] = json.loads(serialize_structure("dendinf", d))
    else:
        if not _exigir_valida(s, rep, cap):
            return
        d = strict_to_dendinf(suspend_rel_rbf(s))
        esperado = suspend_dend_family(induced_dend_family(s))
        igual = d == esperado
        rep.add_section("transferência ∘ suspensão", ["igual à suspensão da induzida" if igual else "diferente"],
                        igual)
        rep.data["manifest"] = json.loads(serialize_structure("dendinf", d))


COMMANDS: Dict[str, Tuple[Tuple[str, ...], Callable]] = {
    "validate": (("semigroup", "algebra", "rel-rbf", "rb-family", "dend-family", "jet", "ainf", "homotopy-rbf",
                  "dendinf"), _cmd_validate),
    "mc-check": (FAMILIAS, _cmd_mc_check),
    "cohomology": (FAMILIAS, _cmd_cohomology),
    "les": (("rb-family",), _cmd_les),
    "deform-check": (("jet",), _cmd_deform_check),
    "classify": (FAMILIAS, _cmd_classify),
    "dend-induce": (FAMILIAS, _cmd_dend_induce),
    "tot": (("dend-family",), _cmd_tot),
    "homotopy-check": (("homotopy-rbf", "ainf", "dendinf"), _cmd_homotopy_check),
    "transfer": (("dendinf", "homotopy-rbf", "rel-rbf", "rb-family"), _cmd_transfer),
}

# ============================================================================
# EXECUÇÃO
# ============================================================================

def resolve_options(manifest_options: Dict, cli_options: Dict) -> Dict:
    """Opções do manifesto sobrescritas pelas flags explícitas"""
    opcoes = dict(manifest_options)
    opcoes.update({k: v for k, v in cli_options.items() if v is not None})
    return opcoes


def limits_for(options: Dict) -> Limits:
    cap = options.get("report_cap")
    if cap is not None and cap < 1:
        raise ManifestError(f"report_cap deve ser ≥ 1, recebeu {cap}")
    limites = DEFAULT_LIMITS.with_overrides(report_cap=cap)
    if options.get("cap_override"):
        limites = limites.with_overrides(enforce=False)
    else:
        limites.guard_degree(options.get("max_degree", 0))
        limites.guard_arity(options.get("max_arity", 0))
    return limites


def run(command: str, m: Manifest, options: Optional[Dict] = None) -> Report:
    """Executa o comando; erros de entrada e de tamanho viram relatórios com código 2 ou 3"""
    opcoes = resolve_options(m.options, options or {})
    rep = Report(command, subject=m.source or m.kind, options=opcoes)
    if command not in COMMANDS:
        rep.error, rep.exit_override = f"comando desconhecido: {command}", EXIT_INPUT
        return rep
    kinds, handler = COMMANDS[command]
    try:
        if m.kind not in kinds:
            raise ManifestError(f"{command} espera kind em {list(kinds)}, recebeu {m.kind!r}")
        handler(m, opcoes, limits_for(opcoes), rep)
    except SizeGuardError as exc:
        rep.error, rep.exit_override = str(exc), EXIT_SIZE
    except RotaBaxterError as exc:
        rep.error, rep.exit_override = str(exc), EXIT_INPUT
    logger.info("%s: código %d", command, rep.exit_code)
    return rep


def _cmd_fixtures(args) -> int:
    if args.action == "export":
        if args.name not in FIXTURES:
            print(f"fixture desconhecido: {args.name}", file=sys.stderr)
            return EXIT_INPUT
        kind, estrutura = load_fixture(args.name)
        sys.stdout.write(serialize_structure(kind, estrutura))
        return 0
    rep = Report("fixtures", subject="corpus")
    rep.add_table("fixtures", ["nome", "kind"], [[nome, FIXTURES[nome][0]] for nome in fixture_names()])
    if args.db:
        inseridos = DatabaseManager(args.db).seed_fixtures()
        rep.add_section("banco", [f"{inseridos} fixtures gravados em {args.db}"])
    _emitir(rep, args)
    return rep.exit_code


def _emitir(rep: Report, args):
    sys.stdout.write(rep.to_json() + "\n" if args.format == "machine" else rep.to_text())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rbfam", description="Famílias Rota-Baxter: verificação e coomologia")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    comum = argparse.ArgumentParser(add_help=False)
    comum.add_argument("--format", choices=("human", "machine"), default="human")
    comum.add_argument("--db", help="grava a execução no histórico SQLite")
    comum.add_argument("-v", "--verbose", action="count", default=0)

    sub = parser.add_subparsers(dest="command", required=True)
    for nome in COMMANDS:
        p = sub.add_parser(nome, parents=[comum])
        p.add_argument("manifest", help="caminho do manifesto JSON")
        p.add_argument("--max-degree", type=int)
        p.add_argument("--max-arity", type=int)
        p.add_argument("--order", type=int)
        p.add_argument("--report-cap", type=int)
        p.add_argument("--cap-override", action="store_true", help="desliga os limites de tamanho (pode ser lento)")
        p.add_argument("--pdf", help="exporta o relatório em PDF")
    p = sub.add_parser("fixtures", parents=[comum])
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("name", nargs="?")
    return parser


def _configurar_logging(verbose: int):
    nivel = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=nivel, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configurar_logging(args.verbose)
    if args.command == "fixtures":
        return _cmd_fixtures(args)

    cli = {"max_degree": args.max_degree, "max_arity": args.max_arity, "order": args.order,
           "report_cap": args.report_cap, "cap_override": args.cap_override or None}
    try:
        m = parse_manifest(args.manifest)
    except ManifestError as exc:
        rep = Report(args.command, subject=args.manifest, options=resolve_options({}, cli))
        rep.error, rep.exit_override = str(exc), EXIT_INPUT
    else:
        rep = run(args.command, m, cli)

    _emitir(rep, args)
    if args.pdf:
        with open(args.pdf, "wb") as f:
            f.write(ReportPDF(rep).build().getvalue())
    if args.db:
        DatabaseManager(args.db).record_run(rep, args.manifest)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
