"""
Relatórios - texto humano, registro JSON versionado e PDF
"""

import json
import logging
from dataclasses import dataclass, field
from datetime import datetime
from io import BytesIO
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
from reportlab.lib.pagesizes import A4
from reportlab.pdfgen import canvas

from algebra import ValidationReport
from config import RECORD_SCHEMA, VERSION
from operator_complex import ComplexSummary

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_SIZE = 3

# ============================================================================
# MODELO DO RELATÓRIO
# ============================================================================

@dataclass
class Section:
    title: str
    lines: List[str] = field(default_factory=list)
    passed: Optional[bool] = None


@dataclass
class Table:
    """Tabela simples: colunas e linhas de valores inteiros ou textuais"""
    title: str
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=self.columns)


@dataclass
class Report:
    """Resultado de um comando: seções de verificação e tabelas de dimensões"""
    command: str
    subject: str = ""
    options: Dict[str, Any] = field(default_factory=dict)
    sections: List[Section] = field(default_factory=list)
    tables: List[Table] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None
    exit_override: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(s.passed is not False for s in self.sections)

    @property
    def exit_code(self) -> int:
        if self.exit_override is not None:
            return self.exit_override
        return EXIT_PASS if self.passed else EXIT_FAIL

    # ------------------------------------------------------------------ montagem

    def add_section(self, title: str, lines: Sequence[str] = (), passed: Optional[bool] = None) -> Section:
        secao = Section(title, list(lines), passed)
        self.sections.append(secao)
        return secao

    def add_validation(self, title: str, relatorio: ValidationReport) -> Section:
        linhas = [f"{relatorio.total} violações"] + relatorio.lines() if not relatorio.ok else ["ok"]
        return self.add_section(title, linhas, relatorio.ok)

    def add_table(self, title: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> Table:
        tabela = Table(title, list(columns), [list(r) for r in rows])
        self.tables.append(tabela)
        return tabela

    def add_summary(self, resumo: ComplexSummary) -> Table:
        linhas = [[r.degree, r.dim_c, r.dim_z, r.dim_b, r.dim_h] for r in resumo.rows]
        return self.add_table(resumo.name, ["grau", "dim C", "dim Z", "dim B", "dim H"], linhas)

    # ------------------------------------------------------------------ saída

    def to_record(self) -> Dict[str, Any]:
        """Registro JSON versionado (esquema, versão e opções sempre presentes)"""
        return {
            "schema": RECORD_SCHEMA,
            "version": VERSION,
            "command": self.command,
            "subject": self.subject,
            "options": dict(sorted(self.options.items())),
            "passed": self.passed,
            "exit_code": self.exit_code,
            "error": self.error,
            "sections": [{"title": s.title, "passed": s.passed, "lines": s.lines} for s in self.sections],
            "tables": [{"title": t.title, "columns": t.columns, "rows": t.rows} for t in self.tables],
            "data": self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        veredito = "PASSOU" if self.passed else "FALHOU"
        saida = [f"{self.command} [{self.subject}] - {veredito}"]
        if self.error:
            saida.append(f"erro: {self.error}")
        for s in self.sections:
            marca = {True: "ok", False: "FALHA", None: "-"}[s.passed]
            saida.append(f"\n== {s.title} ({marca})")
            saida.extend(f"  {linha}" for linha in s.lines)
        for t in self.tables:
            saida.append(f"\n== {t.title}")
            saida.append(t.frame().to_string(index=False) if t.rows else "  (vazia)")
        return "\n".join(saida) + "\n"

# ============================================================================
# PDF
# ============================================================================

class ReportPDF:
    """Gera PDF do relatório pronto para impressão"""

    def __init__(self, report: Report, titulo: str = "Rota-Baxter Family Toolkit"):
        self.report = report
        self.titulo = titulo

    def build(self) -> BytesIO:
        buffer = BytesIO()
        pdf = canvas.Canvas(buffer, pagesize=A4)
        largura_pagina, altura_pagina = A4
        self._pagina = 1

        pdf.setFont("Helvetica-Bold", 16)
        pdf.drawCentredString(largura_pagina / 2, altura_pagina - 50, self.titulo.upper())
        pdf.setFont("Helvetica", 10)
        veredito = "PASSOU" if self.report.passed else "FALHOU"
        pdf.drawCentredString(largura_pagina / 2, altura_pagina - 68,
                              f"{self.report.command} - {self.report.subject} - {veredito}")
        y = altura_pagina - 100

        for secao in self.report.sections:
            y = self._titulo_bloco(pdf, secao.title, y, largura_pagina, altura_pagina)
            pdf.setFont("Courier", 8)
            for linha in secao.lines:
                y = self._linha(pdf, linha, y, largura_pagina, altura_pagina)

        for tabela in self.report.tables:
            y = self._titulo_bloco(pdf, tabela.title, y, largura_pagina, altura_pagina)
            pdf.setFont("Courier", 8)
            texto = tabela.frame().to_string(index=False) if tabela.rows else "(vazia)"
            for linha in texto.splitlines():
                y = self._linha(pdf, linha, y, largura_pagina, altura_pagina)

        self._rodape(pdf, largura_pagina)
        pdf.save()
        buffer.seek(0)
        logger.debug("ReportPDF: %d páginas", self._pagina)
        return buffer

    def _titulo_bloco(self, pdf, titulo, y, largura_pagina, altura_pagina):
        if y < 100:
            y = self._nova_pagina(pdf, largura_pagina, altura_pagina)
        y -= 10
        pdf.setFont("Helvetica-Bold", 11)
        pdf.drawString(40, y, titulo)
        y -= 6
        pdf.setLineWidth(0.5)
        pdf.line(40, y, largura_pagina - 40, y)
        return y - 14

    def _linha(self, pdf, texto, y, largura_pagina, altura_pagina):
        if y < 50:
            y = self._nova_pagina(pdf, largura_pagina, altura_pagina)
            pdf.setFont("Courier", 8)
        pdf.drawString(50, y, texto[:110])
        return y - 11

    def _nova_pagina(self, pdf, largura_pagina, altura_pagina):
        self._rodape(pdf, largura_pagina)
        pdf.showPage()
        self._pagina += 1
        return altura_pagina - 50

    def _rodape(self, pdf, largura_pagina):
        pdf.setFont("Helvetica", 8)
        pdf.drawString(30, 20, f"Página {self._pagina} | {self.titulo} {VERSION}")
        pdf.drawRightString(largura_pagina - 30, 20, datetime.now().strftime("%d/%m/%Y %H:%M"))
