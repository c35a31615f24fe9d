import pytest

import fixtures as corpus
from algebra import check_algebra, check_rel_rbf
from dendriform import DendFamily, check_dend_family, constant_dend_family, induced_dend_family, tot_construction
from errors import StructureError
from oracles import dend_family_holds
from tensors import as_tensor, zeros


@pytest.mark.parametrize("nome", sorted(corpus.dend_fixtures()))
def test_dend_fixtures_are_valid(nome):
    d = corpus.dend_fixtures()[nome]
    assert check_dend_family(d).ok
    assert dend_family_holds(d.omega.table, d.prec, d.succ)


def test_invalid_family_names_axiom():
    d = corpus.dend_family_1d((1, 1), (1, 1))
    relatorio = check_dend_family(d)
    assert not relatorio.ok
    assert relatorio.violations[0].rule in {"(x<y)<z", "(x>y)<z", "(x*y)>z"}


def test_non_associative_labels_are_reported_first():
    d = corpus.dend_family_1d((0, 0), (0, 0), corpus.non_associative_table())
    relatorio = check_dend_family(d)
    assert not relatorio.ok
    assert relatorio.violations[0].rule.startswith("semigroup:")


def test_exhaustive_search_matches_oracle():
    encontradas = corpus.search_dend_families_1d()
    esperadas = []
    for p0 in (-1, 0, 1):
        for p1 in (-1, 0, 1):
            for s0 in (-1, 0, 1):
                for s1 in (-1, 0, 1):
                    d = corpus.dend_family_1d((p0, p1), (s0, s1))
                    if dend_family_holds(d.omega.table, d.prec, d.succ):
                        esperadas.append(d)
    assert encontradas == esperadas
    assert corpus.dend_fixtures()["dend-prec"] in encontradas


def test_star_has_label_pair_axes():
    d = corpus.dend_fixtures()["dend-prec-split"]
    estrela = d.star()
    assert estrela.shape == (2, 2, 1, 1, 1)
    # x ★_{α,β} y = x ≺_β y + x ≻_α y
    assert estrela[1, 0, 0, 0, 0] == 1
    assert estrela[0, 1, 0, 0, 0] == 0


def test_shapes_are_checked(z2):
    with pytest.raises(StructureError):
        DendFamily(z2, 2, zeros((2, 1, 1, 1)), zeros((2, 1, 1, 1)))


def test_constant_family_repeats_operations(z2):
    d = constant_dend_family(z2, 1, as_tensor([[[1]]]), as_tensor([[[0]]]))
    assert d == corpus.dend_family_1d((1, 1), (0, 0))

# ============================================================================
# FAMÍLIA INDUZIDA E CONSTRUÇÃO TOT
# ============================================================================

@pytest.mark.parametrize("nome", sorted(corpus.rb_family_fixtures()))
def test_rb_family_induces_dend_family(nome):
    s = corpus.rb_family_fixtures()[nome]
    d = induced_dend_family(s)
    assert d.dim == s.dim_m
    assert check_dend_family(d).ok


def test_relative_family_induces_dend_family(relative_field, d2_nilpotent):
    assert check_dend_family(induced_dend_family(relative_field)).ok
    d = induced_dend_family(d2_nilpotent)
    # R = e1 ↦ e2: e1 ≻ e1 = R(e1)·e1 = e2
    assert d.succ[0, 0, 0, 1] == 1
    assert d.prec[0, 0, 0, 1] == 1


def test_invalid_family_induces_nothing(bad_family):
    with pytest.raises(StructureError):
        induced_dend_family(bad_family)


def test_tot_round_trip_on_every_search_result():
    for d in corpus.search_dend_families_1d():
        s = tot_construction(d)
        assert check_algebra(s.algebra).ok
        assert check_rel_rbf(s).ok
        assert induced_dend_family(s) == d


def test_tot_of_invalid_family_fails():
    with pytest.raises(StructureError):
        tot_construction(corpus.dend_family_1d((1, 1), (1, 1)))


def test_tot_dimensions():
    s = corpus.tot_fixture()
    assert s.dim_a == 2
    assert s.dim_m == 1
    assert s.ops.maps[1, 1, 0] == 1
