import numpy as np

from ionsynth import StateVector, Truncation, random_target


def random_state(truncation: Truncation, rng: np.random.Generator) -> StateVector:
    """Random unit state over the full (vibrational x electronic) basis."""
    amps = rng.normal(size=truncation.dim) + 1j * rng.normal(size=truncation.dim)
    return StateVector(amps / np.linalg.norm(amps), truncation)


def random_level_a(truncation: Truncation, rng: np.random.Generator) -> StateVector:
    """Random unit state supported only on electronic level a."""
    return random_target(truncation, rng).state
