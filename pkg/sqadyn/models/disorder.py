""" Reproducible disorder realizations with an exactly realized spread.

    Raw draws are shifted and rescaled so that the EMPIRICAL mean of the qubit
    frequencies equals the requested mean and their EMPIRICAL population spread
    equals sigma times the mean, for every realization with N >= 2.
"""
import logging

from dataclasses import dataclass

import numpy as np

from sqadyn.exceptions import ConfigurationError
from sqadyn.models.hamiltonians import QubitParams, qubit_frequencies
from sqadyn.utilities import random

__all__ = ["DisorderSpec", "sample", "measure", "MAX_ATTEMPTS"]

log = logging.getLogger(__name__)

MAX_ATTEMPTS = 1000

@dataclass(frozen=True)
class DisorderSpec:
    """ Disorder of one qubit array.

        Args:
            sigma: (float)
                Relative frequency spread, 0 <= sigma < 0.5.
            target: {'delta','epsilon'}, default='delta'
                Parameter carrying the disorder.
            mean_frequency: (float, default=1.0)
            seed: (int, default=0)
                64-bit seed of the Philox stream.
            distribution: {'gaussian','uniform'}, default='gaussian'
            bias_delta: (float, default=None)
                Uniform gap for target 'epsilon'; the smallest frequency when
                omitted.
    """
    sigma: float = 0.0
    target: str = 'delta'
    mean_frequency: float = 1.0
    seed: int = 0
    distribution: str = 'gaussian'
    bias_delta: float = None

    def __post_init__(self):
        if not 0.0 <= self.sigma < 0.5:
            raise ConfigurationError(f"sigma={self.sigma} outside [0, 0.5); "
                                     f"frequencies must stay positive", "disorder.sigma")
        if self.target not in ('delta', 'epsilon'):
            raise ConfigurationError("target not in {'delta','epsilon'}", "disorder.target")
        if self.distribution not in ('gaussian', 'uniform'):
            raise ConfigurationError("distribution not in {'gaussian','uniform'}",
                                     "disorder.distribution")
        if not self.mean_frequency > 0.0:
            raise ConfigurationError("mean frequency must be positive",
                                     "disorder.mean_frequency")
        if int(self.seed) != self.seed:
            raise ConfigurationError("seed must be an integer", "disorder.seed")
        object.__setattr__(self, 'seed', int(self.seed) & random.SEED_MASK)

    def to_serializable(self):
        return {"type": "DisorderSpec",
                "sigma": self.sigma,
                "target": self.target,
                "mean_frequency": self.mean_frequency,
                "seed": self.seed,
                "distribution": self.distribution,
                "bias_delta": self.bias_delta}

    @classmethod
    def from_serializable(cls, obj):
        fields = {k: v for k, v in obj.items() if k != "type"}
        try:
            return cls(**fields)
        except TypeError as error:
            raise ConfigurationError(str(error), "disorder")

def sample(spec, n_qubits):
    """ Draw one disordered parameter set.

        Args:
            spec: (DisorderSpec)
            n_qubits: (int)

        Returns:
            params: (QubitParams)
                Deterministic for a fixed spec. With target 'delta' the
                frequencies are the gaps and all biases vanish; with target
                'epsilon' the gap is uniform and the biases carry the disorder
                with random signs.
    """
    if int(n_qubits) != n_qubits or n_qubits < 1:
        raise ConfigurationError("must be a positive integer", "model.n_qubits")
    if n_qubits == 1 and spec.sigma > 0.0:
        raise ConfigurationError("the spread of a single qubit is undefined",
                                 "disorder.sigma")

    rng = random.generator(spec.seed)
    mean = spec.mean_frequency
    for attempt in range(MAX_ATTEMPTS):
        z = random.normalized_draws(rng, n_qubits, spec.distribution)
        omega = mean*(1.0 + spec.sigma*z)
        if np.all(omega > 0.0):
            break
        log.debug("seed %d: redrawing non-positive frequencies (attempt %d)",
                  spec.seed, attempt + 1)
    else:
        raise ConfigurationError(f"no positive realization in {MAX_ATTEMPTS} "
                                 f"draws", "disorder.sigma")

    if spec.target == 'delta':
        return QubitParams.from_frequencies(omega, 'delta')
    signs = random.random_signs(rng, n_qubits)
    return QubitParams.from_frequencies(omega, 'epsilon', spec.bias_delta, signs)

def measure(params):
    """ (mean frequency, relative spread) of a parameter set """
    stats = qubit_frequencies(params)
    return stats.mean, stats.sigma
