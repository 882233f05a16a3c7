"""Shared lookups for the command handlers: config, states and packets."""
import logging
from typing import Any, Optional

import click
import numpy as np
from pydantic import ValidationError

from . import circle_state, state_families
from .config import resolve_experiment_config, settings
from .models import FourierState, PiecewisePacket
from .schemas import CoherentParams, Command, ExperimentConfig, PacketKind, StateDump, StateKind, Verb

logger = logging.getLogger(__name__)


def record_command(verb: Verb, params: dict[str, Any], output: Optional[str]) -> Command:
    try:
        command = Command(verb=verb, params={k: v for k, v in params.items() if v is not None}, output=output)
    except ValidationError as exc:
        raise click.UsageError(str(exc)) from exc
    logger.info("%s %s", command.verb.value, command.params)
    return command


def get_config(config_path: Optional[str], seed: Optional[int], n_range: Optional[str], output: Optional[str], **overrides) -> ExperimentConfig:
    """Defaults, then the config file, then flags."""
    data: dict[str, Any] = {k: v for k, v in overrides.items() if v is not None}
    optimizer = data.pop("optimizer", {}) or {}
    if seed is not None:
        optimizer["seed"] = seed
    if optimizer:
        data["optimizer"] = optimizer
    if n_range is not None:
        data["n_range"] = n_range
    if output is not None:
        data["output_path"] = output
    try:
        return resolve_experiment_config(config_path, data)
    except (ValidationError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc


def get_state(
    kind: str,
    config: ExperimentConfig,
    l: float = 0.0,
    alpha: float = 0.0,
    s: float = 1.0,
    phase: float = 0.0,
    n: int = 0,
    state_file: Optional[str] = None,
    lattice: Optional[tuple[int, int]] = None,
) -> FourierState:
    n_min, n_max = lattice or config.lattice((settings.N_MIN, settings.N_MAX))
    kind = StateKind(kind)
    if kind is StateKind.file:
        if not state_file:
            raise click.UsageError("--state file needs --state-file")
        try:
            with open(state_file, encoding="utf-8") as handle:
                dump = StateDump.model_validate_json(handle.read())
        except (OSError, ValueError) as exc:
            raise click.UsageError(f"cannot read state dump {state_file}: {exc}") from exc
        return circle_state.from_dump(dump)
    if kind is StateKind.number:
        return state_families.number_state(n, n_min, n_max)
    if kind is StateKind.random:
        return state_families.random_state(np.random.default_rng(config.optimizer.seed), n_min, n_max)
    try:
        params = CoherentParams(l=l, alpha=alpha, s=s)
    except ValidationError as exc:
        raise click.UsageError(str(exc)) from exc
    if kind is StateKind.coherent:
        return state_families.coherent_state(params, n_min, n_max)
    if kind is StateKind.cat:
        return state_families.cat_state(params, phase, n_min, n_max)
    return state_families.squeezed_state(params, n_min, n_max)


def get_packet(kind: str, epsilon: Optional[float]) -> PiecewisePacket:
    kind = PacketKind(kind)
    if kind is PacketKind.uniform:
        return state_families.uniform_packet()
    if epsilon is None:
        raise click.UsageError(f"--packet {kind.value} needs --epsilon")
    if kind is PacketKind.char:
        return state_families.char_packet(epsilon)
    return state_families.two_arc_packet(epsilon)
