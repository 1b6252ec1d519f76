"""Exposes the configuration for tolerances used across tfkit.
"""

import os
from typing import Optional

from pydantic import ConfigDict, BaseModel, Field

TOLERANCE_ENV_VAR = "TFKIT_TOL"


class TfkitConfig(BaseModel):
    """Tolerances used when checking numerical relations.

    The defaults are tuned for the desk-scale grids (N=1024, fs=32) that
    the test-suite runs on. A `TfkitConfig` can be passed to any operation
    that compares a measured value against a bound; when omitted, the
    defaults below apply.

    Attributes:
        inequality_slack (float): relative slack allowed on the Heisenberg and
            marginal-TFD inequalities i.e. `lhs >= rhs * (1 - slack)` (default: 1e-6).
        strong_tolerance (float): the strong-uncertainty determinant may dip
            to `-strong_tolerance * var_t * var_f` and still pass (default: 1e-4).
        imag_residue (float): largest imaginary residue, relative to the peak,
            tolerated on distributions built from Hermitian kernels (default: 1e-8).
        marginal_tolerance (float): tolerance of the kernel marginality
            predicates (default: 1e-10).
        overflow_warning (float): fraction of energy pushed off the grid by a
            signal action above which a warning is logged (default: 1e-6).
        overflow_error (Optional[float]): fraction of energy pushed off the grid
            above which the action fails. None disables the hard failure (default: None).
    """

    model_config = ConfigDict(from_attributes=True, frozen=True)

    inequality_slack: float = Field(default=1e-6, ge=0)
    strong_tolerance: float = Field(default=1e-4, ge=0)
    imag_residue: float = Field(default=1e-8, ge=0)
    marginal_tolerance: float = Field(default=1e-10, gt=0)
    overflow_warning: float = Field(default=1e-6, ge=0)
    overflow_error: Optional[float] = Field(default=None, ge=0)

    @classmethod
    def from_env(cls, **overrides) -> "TfkitConfig":
        """Builds a config, letting the `TFKIT_TOL` environment variable override the inequality slack.

        Args:
            overrides: any other field values to set explicitly

        Returns:
            the configuration to use

        Raises:
            ValueError: if `TFKIT_TOL` is set but is not a float
        """
        raw = os.environ.get(TOLERANCE_ENV_VAR)
        if raw is not None and raw.strip():
            try:
                overrides.setdefault("inequality_slack", float(raw))
            except ValueError:
                raise ValueError(f"{TOLERANCE_ENV_VAR} should be a float, got {raw!r}")
        return cls(**overrides)


def resolve_config(config: Optional[TfkitConfig]) -> TfkitConfig:
    """Returns `config` or the default configuration when it is None."""
    return config if config is not None else TfkitConfig()
