"""
Configuração - limites e constantes globais
"""

from dataclasses import dataclass, replace

from errors import SizeGuardError

VERSION = "1.0.0"
RECORD_SCHEMA = "rbfam-report/1"


@dataclass(frozen=True)
class Limits:
    """Limites de tamanho e padrões de truncamento"""
    report_cap: int = 32
    k_max: int = 4
    jet_order: int = 2
    max_omega: int = 6
    max_dim: int = 6
    max_degree: int = 5
    max_arity: int = 5
    max_cochain_entries: int = 250_000
    enforce: bool = True

    def with_overrides(self, **kwargs) -> "Limits":
        """Cópia com os campos informados (None é ignorado)"""
        valores = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **valores)

    def guard(self, condition: bool, message: str):
        """Dispara SizeGuardError se a condição falhar e os limites estiverem ativos"""
        if self.enforce and not condition:
            raise SizeGuardError(message)

    def guard_entries(self, entries: int, what: str):
        self.guard(entries <= self.max_cochain_entries,
                   f"{what}: {entries} coeficientes excede o limite {self.max_cochain_entries}")

    def guard_structure(self, omega_size: int, *dims: int):
        self.guard(omega_size <= self.max_omega, f"|Ω| = {omega_size} excede {self.max_omega}")
        for d in dims:
            self.guard(d <= self.max_dim, f"dimensão {d} excede {self.max_dim}")

    def guard_degree(self, degree: int):
        self.guard(degree <= self.max_degree, f"grau {degree} excede {self.max_degree}")

    def guard_arity(self, arity: int):
        self.guard(arity <= self.max_arity, f"aridade {arity} excede {self.max_arity}")


DEFAULT_LIMITS = Limits()
