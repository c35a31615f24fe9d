"""
Configuração do pytest - raiz do projeto no path e fixtures compartilhados
"""

import os
import sys

import pytest

# Adicionar diretório raiz ao path para importar módulos
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import fixtures as corpus  # noqa: E402
from algebra import Semigroup  # noqa: E402


@pytest.fixture
def trivial():
    return Semigroup.trivial()


@pytest.fixture
def z2():
    return corpus.z2()


@pytest.fixture
def dual():
    return corpus.dual_numbers()


@pytest.fixture
def d2_zero():
    return corpus.d2_zero()


@pytest.fixture
def d2_zero_z2():
    return corpus.d2_zero(corpus.z2())


@pytest.fixture
def d2_nilpotent():
    return corpus.d2_nilpotent()


@pytest.fixture
def d2_nilpotent_z2():
    return corpus.d2_nilpotent(corpus.z2())


@pytest.fixture
def relative_field():
    return corpus.relative_field_on_d2()


@pytest.fixture
def bad_family():
    return corpus.identity_on_d2()


@pytest.fixture
def two_cell():
    return corpus.two_cell_ainf()


@pytest.fixture
def manifest_file(tmp_path):
    """Escreve um fixture do corpus como manifesto e devolve o caminho"""
    from manifest import serialize_structure

    def escrever(nome: str, options=None) -> str:
        kind, estrutura = corpus.load_fixture(nome)
        caminho = tmp_path / f"{nome}.json"
        caminho.write_text(serialize_structure(kind, estrutura, options), encoding="utf-8")
        return str(caminho)
    return escrever
