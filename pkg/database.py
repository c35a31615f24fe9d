"""
Database Models - Rota-Baxter Family Toolkit
Catálogo de fixtures e histórico de execuções com SQLAlchemy
"""

import json
import logging
from datetime import datetime
from typing import List, Optional

from sqlalchemy import Column, DateTime, Integer, String, Text, create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

from fixtures import fixture_names, load_fixture
from manifest import serialize_structure
from report import Report

logger = logging.getLogger(__name__)

# Base para os modelos
Base = declarative_base()

# ============================================================================
# MODELOS
# ============================================================================

class FixtureRecord(Base):
    """Estrutura nomeada guardada como manifesto canônico"""
    __tablename__ = 'fixtures'

    id = Column(Integer, primary_key=True, autoincrement=True)
    nome = Column(String(100), nullable=False, unique=True)
    kind = Column(String(30), nullable=False)
    manifesto = Column(Text, nullable=False)
    criado_em = Column(DateTime, default=datetime.now)

    def __repr__(self):
        return f"<FixtureRecord(id={self.id}, nome='{self.nome}', kind='{self.kind}')>"


class RunRecord(Base):
    """Uma execução de comando com o registro JSON produzido"""
    __tablename__ = 'execucoes'

    id = Column(Integer, primary_key=True, autoincrement=True)
    comando = Column(String(30), nullable=False)
    rotulo = Column(String(300))
    codigo_saida = Column(Integer, nullable=False)
    registro = Column(Text, nullable=False)
    criado_em = Column(DateTime, default=datetime.now)

    def __repr__(self):
        return f"<RunRecord(id={self.id}, comando='{self.comando}', codigo={self.codigo_saida})>"

    def record(self) -> dict:
        return json.loads(self.registro)

# ============================================================================
# FUNÇÕES DE GERENCIAMENTO DO BANCO
# ============================================================================

class DatabaseManager:
    """Gerenciador do banco de dados"""

    def __init__(self, db_path='rota_baxter.db'):
        """Inicializa o banco de dados (':memory:' para um banco temporário)"""
        self.db_path = db_path
        self.engine = create_engine(f'sqlite:///{db_path}', echo=False)
        Base.metadata.create_all(self.engine)
        self.Session = sessionmaker(bind=self.engine)

    def get_session(self):
        """Retorna uma nova sessão"""
        return self.Session()

    def seed_fixtures(self) -> int:
        """Grava o corpus de fixtures (uma vez); devolve quantos foram inseridos"""
        session = self.get_session()
        try:
            existentes = {nome for (nome,) in session.query(FixtureRecord.nome)}
            novos = []
            for nome in fixture_names():
                if nome in existentes:
                    continue
                kind, estrutura = load_fixture(nome)
                novos.append(FixtureRecord(nome=nome, kind=kind, manifesto=serialize_structure(kind, estrutura)))
            session.add_all(novos)
            session.commit()
            logger.info("seed_fixtures: %d fixtures inseridos", len(novos))
            return len(novos)
        except Exception as e:
            session.rollback()
            logger.error("Erro ao gravar fixtures: %s", e)
            raise
        finally:
            session.close()

    def get_fixture_manifest(self, nome: str) -> Optional[str]:
        session = self.get_session()
        try:
            registro = session.query(FixtureRecord).filter_by(nome=nome).first()
            return registro.manifesto if registro else None
        finally:
            session.close()

    def record_run(self, report: Report, rotulo: str = "") -> int:
        """Grava a execução e devolve o id"""
        session = self.get_session()
        try:
            registro = RunRecord(comando=report.command, rotulo=rotulo or report.subject,
                                 codigo_saida=report.exit_code, registro=report.to_json())
            session.add(registro)
            session.commit()
            return registro.id
        except Exception as e:
            session.rollback()
            logger.error("Erro ao gravar execução: %s", e)
            raise
        finally:
            session.close()

    def list_runs(self, limit: int = 20) -> List[RunRecord]:
        """Execuções mais recentes primeiro"""
        session = self.get_session()
        try:
            return (session.query(RunRecord)
                    .order_by(RunRecord.criado_em.desc(), RunRecord.id.desc())
                    .limit(limit)
                    .all())
        finally:
            session.close()
