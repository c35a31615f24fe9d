"""
Exceções - Rota-Baxter Family Toolkit
Hierarquia única de erros da biblioteca
"""

from typing import Optional


class RotaBaxterError(Exception):
    """Erro base da biblioteca"""


class StructureError(RotaBaxterError):
    """Dimensões, formatos ou índices incompatíveis"""


class NotMaurerCartanError(RotaBaxterError):
    """Diferencial pedido para uma família que não passa no mc_check"""


class SizeGuardError(RotaBaxterError):
    """Limite de tamanho configurado seria ultrapassado"""


class TruncationError(RotaBaxterError):
    """Aridade ou ordem além dos dados truncados"""


class DeformationError(RotaBaxterError):
    """Jato ou cociclo fora das hipóteses"""


class ManifestError(RotaBaxterError):
    """Erro de leitura ou validação de manifesto, com posição quando houver"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (linha {line}, coluna {column})"
        super().__init__(message)
