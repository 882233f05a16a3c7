import math

import numpy as np
import pytest

from circle_uncertainty import state_families
from circle_uncertainty.schemas import CoherentParams, ExperimentConfig

from .oracles import coherent_j_variance_oracle


@pytest.fixture(scope="session")
def coherent_j_variance():
    return coherent_j_variance_oracle(0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def small_config():
    return ExperimentConfig(
        n_range=(-8, 8),
        random_samples=500,
        optimizer={"restarts": 4, "max_iters": 3000, "step_tol": 1e-9, "seed": 42},
    )


@pytest.fixture(scope="session")
def state_corpus():
    """Packets and lattice states used for the origin-invariance checks."""
    corpus = [state_families.char_packet(eps) for eps in (0.3, 1.0, 2.0, 4.0, 5.5)]
    corpus.append(state_families.uniform_packet())
    corpus.append(state_families.two_arc_packet(0.5))
    for l, alpha in [(0.0, 0.0), (0.3, 1.0), (0.7, 2.5), (-3.2, 4.0)]:
        corpus.append(state_families.coherent_state(CoherentParams(l=l, alpha=alpha)))
    corpus.append(state_families.cat_state(CoherentParams()))
    corpus.append(state_families.cat_state(CoherentParams(l=0.4, alpha=1.0), phase=math.pi / 3))
    for s in (0.2, 3.0):
        corpus.append(state_families.squeezed_state(CoherentParams(l=0.5, alpha=0.3, s=s)))
    rng = np.random.default_rng(7)
    corpus.extend(state_families.random_state(rng, -8, 8) for _ in range(10))
    return corpus
