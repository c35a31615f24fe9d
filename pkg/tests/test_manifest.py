import json

import pytest

import fixtures as corpus
from algebra import check_rel_rbf
from deformations import EquivalenceJet, constant_jet, transport_jet
from errors import ManifestError
from manifest import KINDS, load_structure, parse_manifest, serialize_manifest, serialize_structure
from tensors import identity, zeros

D2_MUL = [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]


def _rb_family(**extra):
    dados = {
        "kind": "rb-family",
        "omega": {"table": [[0]]},
        "algebra": {"dim": 2, "mul": D2_MUL},
        "ops": [[[0, 0], [1, 0]]],
    }
    dados.update(extra)
    return dados


def test_parse_rb_family_from_text():
    m = parse_manifest(json.dumps(_rb_family()))
    assert m.kind == "rb-family"
    assert m.source is None
    assert check_rel_rbf(m.structure).ok
    assert m.structure.ops.maps[0, 1, 0] == 1


def test_parse_from_path(manifest_file):
    caminho = manifest_file("rbf-d2-nilpotent-z2", {"max_degree": 2})
    m = parse_manifest(caminho)
    assert m.source == caminho
    assert m.options == {"max_degree": 2}
    assert m.structure.omega.size == 2


def test_semigroup_element_names():
    m = load_structure(_rb_family(omega={"elements": ["e"], "table": [[0]]}))
    assert m.structure.omega.names == ("e",)
    texto = serialize_structure("semigroup", corpus.z2())
    assert json.loads(texto)["elements"] == list(corpus.z2().names)
    assert parse_manifest(texto).structure == corpus.z2()
    with pytest.raises(ManifestError):
        load_structure(_rb_family(omega={"names": ["e"], "table": [[0]]}))


def test_rational_strings_are_accepted():
    dados = _rb_family(ops=[[["0", "0"], ["-1/2", "0"]]])
    assert load_structure(dados).structure.ops.maps[0, 1, 0] * 2 == -1


def test_missing_file_is_a_manifest_error(tmp_path):
    with pytest.raises(ManifestError):
        parse_manifest(str(tmp_path / "nao-existe.json"))


def test_syntax_error_reports_position():
    with pytest.raises(ManifestError) as info:
        parse_manifest('{\n  "kind": "algebra",\n  "dim": 1,,\n}')
    assert info.value.line == 3
    assert info.value.column is not None


def test_non_associative_omega_names_triple():
    dados = _rb_family(omega={"table": [[1, 0], [0, 0]]}, ops=[[[0, 0], [0, 0]], [[0, 0], [0, 0]]])
    with pytest.raises(ManifestError) as info:
        load_structure(dados)
    assert "(0, 0, 1)" in str(info.value)


@pytest.mark.parametrize("valor", [0.5, True, "x", None])
def test_non_rational_scalars_are_rejected(valor):
    with pytest.raises(ManifestError):
        load_structure(_rb_family(ops=[[[valor, 0], [1, 0]]]))


def test_unknown_kind_and_fields():
    with pytest.raises(ManifestError):
        load_structure({"kind": "lie-algebra"})
    with pytest.raises(ManifestError):
        load_structure({"dim": 1})
    with pytest.raises(ManifestError):
        load_structure(_rb_family(extra_field=1))
    with pytest.raises(ManifestError):
        load_structure({"kind": "rb-family", "omega": {"table": [[0]]}})


def test_shape_mismatch_is_a_manifest_error():
    with pytest.raises(ManifestError):
        load_structure(_rb_family(ops=[[[0, 0, 0], [1, 0, 0]]]))


def test_options_are_validated():
    assert load_structure(_rb_family(options={"order": 2, "report_cap": 5})).options == {"order": 2,
                                                                                           "report_cap": 5}
    with pytest.raises(ManifestError):
        load_structure(_rb_family(options={"colour": 1}))
    with pytest.raises(ManifestError):
        load_structure(_rb_family(options={"max_degree": -1}))
    with pytest.raises(ManifestError):
        load_structure(_rb_family(options={"max_degree": True}))
    with pytest.raises(ManifestError):
        load_structure(_rb_family(options={"report_cap": 0}))


@pytest.mark.parametrize("nome", corpus.fixture_names())
def test_canonical_serialisation_is_stable(nome):
    kind, estrutura = corpus.load_fixture(nome)
    assert kind in KINDS
    texto = serialize_structure(kind, estrutura)
    m = parse_manifest(texto)
    assert m.kind == kind
    assert serialize_manifest(m) == texto


def test_rb_family_serialisation_requires_adjoint_module(relative_field):
    with pytest.raises(ManifestError):
        serialize_structure("rb-family", relative_field)


def test_jet_with_equivalence(d2_nilpotent):
    j = constant_jet(d2_nilpotent, 1)
    phi_1 = zeros((2, 2))
    phi_1[1, 0] = 1
    e = EquivalenceJet((identity(2), phi_1), (identity(2), zeros((2, 2))))
    alvo = transport_jet(j, e)
    texto = serialize_structure("jet", j, {"order": 1}, {"target": alvo, "equivalence": e})
    m = parse_manifest(texto)
    assert m.kind == "jet"
    assert m.options == {"order": 1}
    assert m.extras["equivalence"].order == 1
    assert serialize_manifest(m) == texto
    assert json.loads(texto)["base"]["kind"] == "rb-family"


def test_jet_base_needs_family_kind():
    dados = {"kind": "jet", "base": {"kind": "algebra", "dim": 1, "mul": [[[1]]]},
             "terms": {"mu": [], "left": [], "right": [], "ops": []}}
    with pytest.raises(ManifestError):
        load_structure(dados)


def test_homotopy_manifest_round_trip(manifest_file):
    m = parse_manifest(manifest_file("homotopy-d2-nilpotent", {"max_arity": 3}))
    assert m.structure.is_strict
    assert m.options["max_arity"] == 3
    m2 = parse_manifest(manifest_file("dendinf-left-two-cell"))
    assert m2.structure == corpus.dendinf_fixtures()["left-two-cell-z2"]
