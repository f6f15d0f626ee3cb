import numpy as np
import pytest

from doublewell import FockVector, MixedEnsemble


def random_pure_state(rng: np.random.Generator, n_atoms: int) -> FockVector:
    amp = rng.normal(size=n_atoms + 1) + 1j * rng.normal(size=n_atoms + 1)
    return FockVector(amp / np.linalg.norm(amp))


def random_ensemble(rng: np.random.Generator, n_atoms: int,
                    components: int = 3) -> MixedEnsemble:
    weights = rng.uniform(0.1, 1.0, size=components)
    weights /= weights.sum()
    return MixedEnsemble(tuple(
        (float(w), random_pure_state(rng, n_atoms)) for w in weights
    ))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260811)
