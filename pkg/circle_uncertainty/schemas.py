import math
from enum import Enum
from typing import Annotated, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, PlainSerializer, field_validator, model_validator

from .models import TWO_PI
from .validator import parse_grid, parse_int_range

SCHEMA_VERSION = "1.0"


def _inf_to_text(value):
    if isinstance(value, float) and math.isinf(value) and value > 0:
        return "inf"
    return value


# +infinity has no JSON literal; it travels as the string "inf"
InfFloat = Annotated[float, PlainSerializer(_inf_to_text, when_used="json")]


# Enums
class Verb(str, Enum):
    measure = "measure"
    sweep = "sweep"
    minimize = "minimize"
    evolve = "evolve"
    demo_line = "demo-line"


class StateKind(str, Enum):
    coherent = "coherent"
    cat = "cat"
    squeezed = "squeezed"
    number = "number"
    random = "random"
    file = "file"


class PacketKind(str, Enum):
    char = "char"
    uniform = "uniform"
    two_arc = "two-arc"


class OutputFormat(str, Enum):
    csv = "csv"
    json = "json"


class SeedKind(str, Enum):
    coherent = "coherent"
    cat = "cat"
    number = "number"
    random = "random"


# ----------------------------------- Command Schemas -----------------------------------
VERB_PARAMS = {
    Verb.measure: {"state", "packet", "l", "alpha", "s", "phase", "n", "epsilon", "lambda", "state_file", "dump_state"},
    Verb.sweep: {"packet", "epsilon", "lambda_grid", "epsilon_grid"},
    Verb.minimize: {"restarts", "max_iters", "step_tol", "random_samples", "workers", "l_grid"},
    Verb.evolve: {"state", "l", "alpha", "s", "phase", "n", "state_file", "time_grid", "hamiltonian_scale"},
    Verb.demo_line: {"L", "sigma2_grid"},
}


class Command(BaseModel):
    verb: Verb
    params: dict = {}
    output: Optional[str] = None

    @model_validator(mode="after")
    def check_params(self):
        unknown = set(self.params) - VERB_PARAMS[self.verb]
        if unknown:
            raise ValueError(f"unknown parameters for {self.verb.value}: {sorted(unknown)}")
        return self


# ----------------------------------- State Schemas -----------------------------------
class CoherentParams(BaseModel):
    """Centre (l, alpha) and width s of a lattice-Gaussian state; s = 1 is coherent."""

    l: float = 0.0
    alpha: float = 0.0
    s: float = Field(1.0, gt=0)

    @field_validator("alpha")
    def reduce_alpha(cls, v):
        v = math.fmod(v, TWO_PI)
        return v + TWO_PI if v < 0 else v

    class Config:
        frozen = True


class StateDump(BaseModel):
    schema_version: str = SCHEMA_VERSION
    n_min: int
    n_max: int
    re: List[float]
    im: List[float]

    @model_validator(mode="after")
    def check_lengths(self):
        expected = self.n_max - self.n_min + 1
        if len(self.re) != expected or len(self.im) != expected:
            raise ValueError(f"expected {expected} coefficients, got {len(self.re)} real and {len(self.im)} imaginary")
        return self


# ----------------------------------- Report Schemas -----------------------------------
class ReportBase(BaseModel):
    schema_version: str = SCHEMA_VERSION

    class Config:
        populate_by_name = True


class UncertaintyReport(ReportBase):
    lambda_: float = Field(0.0, alias="lambda")
    circ_variance: Optional[InfFloat] = None
    kr_angle: InfFloat
    j_variance: InfFloat
    sum_kr: InfFloat
    u2_magnitude: float


class LambdaSweepRow(BaseModel):
    lambda_: float = Field(alias="lambda")
    circ_variance: float
    difference: float
    kr_angle: InfFloat
    closed_form: Optional[float] = None

    class Config:
        populate_by_name = True


class EpsilonSweepRow(BaseModel):
    epsilon: float
    u2_magnitude: float
    u2_closed_form: float
    kr_angle: InfFloat
    circ_variance: float


class SweepReport(ReportBase):
    kind: str
    epsilon: Optional[float] = None
    lambda_rows: List[LambdaSweepRow] = []
    epsilon_rows: List[EpsilonSweepRow] = []


class RestartResult(BaseModel):
    index: int
    seed_kind: SeedKind
    start_value: InfFloat
    final_value: InfFloat
    iterations: int
    converged: bool


class CoherentFamilyRow(BaseModel):
    l: float
    kr_angle: InfFloat
    j_variance: InfFloat
    sum_kr: InfFloat


class MinimizationReport(ReportBase):
    method: str
    n_range: Tuple[int, int]
    seed: int
    best_value: InfFloat
    below_one: bool
    best_re: List[float]
    best_im: List[float]
    restarts: List[RestartResult]
    coherent_value: InfFloat
    coherent_rows: List[CoherentFamilyRow] = []
    cat_value: InfFloat
    cat_overlap: float
    cat_overlap_best_alpha: float
    best_alpha: float
    even_weight: float
    random_samples: int = 0
    random_sweep_min: Optional[InfFloat] = None
    any_non_convergence: bool = False


class Trajectory(ReportBase):
    times: List[float]
    phase_estimate: List[Optional[float]]
    u1_magnitude: List[float]
    windowed_mean: List[float]
    norm: List[float]
    report_per_time: List[UncertaintyReport]

    @model_validator(mode="after")
    def check_lengths(self):
        lengths = {len(self.times), len(self.phase_estimate), len(self.u1_magnitude),
                   len(self.windowed_mean), len(self.norm), len(self.report_per_time)}
        if len(lengths) != 1:
            raise ValueError("trajectory columns differ in length")
        return self


class HeisenbergPoint(BaseModel):
    sigma2: float
    sum: float


class LineDemoReport(ReportBase):
    L: float
    box_variance: float
    split_box_variance: float
    ratio: float
    heisenberg_curve: List[HeisenbergPoint]
    heisenberg_min: float
    heisenberg_argmin: float


# ----------------------------------- Experiment Config Schemas -----------------------------------
def _default_lambda_grid() -> List[float]:
    return [TWO_PI * k / 64 for k in range(64)]


def _default_epsilon_grid() -> List[float]:
    return [TWO_PI * k / 17 for k in range(1, 17)]


def _default_time_grid() -> List[float]:
    return np.linspace(0.0, 2 * TWO_PI, 256).tolist()


class OptimizerSettings(BaseModel):
    restarts: int = Field(32, ge=1)
    max_iters: int = Field(20000, ge=1)
    step_tol: float = Field(1e-8, gt=0)
    seed: int = 42
    method: Literal["Nelder-Mead", "Powell"] = "Nelder-Mead"
    workers: int = Field(1, ge=1)

    class Config:
        extra = "forbid"


class ExperimentConfig(BaseModel):
    lambda_grid: List[float] = Field(default_factory=_default_lambda_grid)
    epsilon_grid: List[float] = Field(default_factory=_default_epsilon_grid)
    l_grid: List[float] = Field(default_factory=lambda: [0.0, 0.3, 0.7])
    time_grid: List[float] = Field(default_factory=_default_time_grid)
    sigma2_grid: List[float] = Field(default_factory=lambda: parse_grid("0.125:2:31"))
    n_range: Optional[Tuple[int, int]] = None
    hamiltonian_scale: float = Field(1.0, gt=0)
    random_samples: int = Field(10000, ge=0)
    optimizer: OptimizerSettings = Field(default_factory=OptimizerSettings)
    output_path: Optional[str] = None

    @field_validator("lambda_grid", "epsilon_grid", "l_grid", "time_grid", "sigma2_grid", mode="before")
    def expand_grid(cls, v):
        if isinstance(v, str):
            v = parse_grid(v)
        if not v:
            raise ValueError("grids must not be empty")
        return v

    @field_validator("n_range", mode="before")
    def expand_range(cls, v):
        if isinstance(v, str):
            return parse_int_range(v)
        return v

    @model_validator(mode="after")
    def check_range(self):
        if self.n_range is not None and self.n_range[0] > self.n_range[1]:
            raise ValueError(f"n_range {self.n_range} is empty")
        return self

    def lattice(self, default: Tuple[int, int]) -> Tuple[int, int]:
        return self.n_range if self.n_range is not None else default

    class Config:
        extra = "forbid"
