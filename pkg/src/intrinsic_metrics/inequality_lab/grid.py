from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError

T_MAX = 700.0


@dataclass(frozen=True)
class GridSpec:
    """Tensor grid of ``c`` values and positive ``t`` nodes."""

    c_values: tuple = (0.5, 1.0, 2.0, 10.0)
    t_range: tuple = (1e-6, 100.0)
    t_samples: int = 10_000
    spacing: str = "log"

    def __post_init__(self):
        object.__setattr__(self, "c_values", tuple(float(c) for c in self.c_values))
        t_min, t_max = self.t_range
        if not 0.0 < t_min < t_max <= T_MAX:
            raise DomainError(f"need 0 < t_min < t_max <= {T_MAX}, got {self.t_range}")
        if self.t_samples < 2:
            raise DomainError("t_samples must be >= 2")
        if self.spacing not in ("linear", "log"):
            raise DomainError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if any(not c > 0 for c in self.c_values):
            raise DomainError("c values must be positive")

    def t_nodes(self) -> np.ndarray:
        t_min, t_max = self.t_range
        if self.spacing == "log":
            return np.geomspace(t_min, t_max, self.t_samples)
        return np.linspace(t_min, t_max, self.t_samples)

    def with_(self, **changes) -> "GridSpec":
        return GridSpec(**{**self.describe(), **changes})

    def describe(self) -> dict:
        return {"c_values": list(self.c_values), "t_range": list(self.t_range),
                "t_samples": self.t_samples, "spacing": self.spacing}


DEFAULT_GRID = GridSpec()
