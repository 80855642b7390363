from dataclasses import dataclass, replace
from typing import Optional

from src.config.config import config


@dataclass(frozen=True)
class KernelSettings:
    """Границы и параметры вычислений ядра (из KERNEL_SETTINGS и TATE_SETTINGS)."""
    deg_bound: int
    dim_bound: int
    seed: int
    primitive_retries: int
    factor_cap: int
    random_samples: int
    eps: str
    max_division_steps: int
    max_basis_size: int
    random_elements: int

    @classmethod
    def from_config(cls, **overrides) -> "KernelSettings":
        kernel = config.get_section("KERNEL_SETTINGS")
        tate = config.get_section("TATE_SETTINGS")
        settings = cls(
            deg_bound=kernel["DEG_BOUND"],
            dim_bound=kernel["DIM_BOUND"],
            seed=kernel["RANDOM_SEED"],
            primitive_retries=kernel["PRIMITIVE_RETRIES"],
            factor_cap=kernel["FACTOR_COMBINATION_CAP"],
            random_samples=kernel["RANDOM_SAMPLES"],
            eps=tate["DEFAULT_EPS"],
            max_division_steps=tate["MAX_DIVISION_STEPS"],
            max_basis_size=tate["MAX_BASIS_SIZE"],
            random_elements=tate["RANDOM_ELEMENTS"],
        )
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(settings, **clean) if clean else settings


_DEFAULT: Optional[KernelSettings] = None


def default_settings() -> KernelSettings:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = KernelSettings.from_config()
    return _DEFAULT


def resolve(settings: Optional[KernelSettings]) -> KernelSettings:
    return settings if settings is not None else default_settings()
