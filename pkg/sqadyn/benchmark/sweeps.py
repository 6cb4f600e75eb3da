""" Parameter scans over interaction, disorder, array size and cavity coupling.

    Seed policy:
        g, gamma    one disorder realization shared by every point, so level
                    tracks are continuous across the scan.
        sigma       fresh realizations per point (and per ensemble member),
                    derived from the base seed.
        n_qubits    one derived seed per array size.
    Explicit per-point seeds override the derivation. The policy applied is
    recorded in the result metadata.
"""
import logging
import time

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

import numpy as np
import pandas as pd

from sqadyn.exceptions import ConfigurationError
from sqadyn.models.disorder import DisorderSpec, sample
from sqadyn.models.hamiltonians import (ModelSpec, QubitParams, assemble,
                                        interaction_from_serializable, resolve)
from sqadyn.package_info import __version__
from sqadyn.response.stark import FOLLOW_MODES, check_fock_values, stark_point
from sqadyn.response.susceptibility import (dominant_resonance,
                                            susceptibility_lines,
                                            susceptibility_nonequilibrium)
from sqadyn.solvers.eigensolve import diagonalize
from sqadyn.space.operators import total_polarization
from sqadyn.utilities import random
from sqadyn.utilities.stats import linear_fit, spread

__all__ = ["ArraySpec", "SweepConfig", "SweepPoint", "SweepResult",
           "FockConvergence", "AXES", "OBSERVABLES", "evaluate_point",
           "run_sweep", "sweep_interaction", "sweep_disorder", "sweep_size",
           "sweep_coupling", "fock_convergence_check"]

log = logging.getLogger(__name__)

AXES = ('g', 'gamma', 'sigma', 'n_qubits')
OBSERVABLES = ('levels', 'lines', 'dominant', 'stark')

FockConvergence = namedtuple("FockConvergence", ["value", "value_extended", "delta", "photon_dim"])

""" ############################### Specs ################################ """

@dataclass(frozen=True)
class ArraySpec:
    """ A model family before its disorder is drawn.

        Args:
            n_qubits: (int)
            interaction: (ShortRangeIsing, GlobalExchange, CavityCoupled or None)
            disorder: (DisorderSpec)
            temperature: (float, default=0.0)
            qubits: (QubitParams, default=None)
                Explicit parameters; disorder sampling is skipped when given.
            override_convention: (bool, default=False)
    """
    n_qubits: int
    interaction: object = None
    disorder: DisorderSpec = field(default_factory=DisorderSpec)
    temperature: float = 0.0
    qubits: QubitParams = None
    override_convention: bool = False

    def __post_init__(self):
        if int(self.n_qubits) != self.n_qubits or self.n_qubits < 1:
            raise ConfigurationError("must be a positive integer", "model.n_qubits")
        object.__setattr__(self, 'n_qubits', int(self.n_qubits))
        if self.qubits is not None and self.qubits.n_qubits != self.n_qubits:
            raise ConfigurationError(f"{self.qubits.n_qubits} explicit qubits for "
                                     f"n_qubits={self.n_qubits}", "model.qubits")

    @property
    def kind(self):
        return 'none' if self.interaction is None else self.interaction.kind

    def realize(self, seed=None):
        """ ModelSpec of one realization; `seed` replaces the disorder seed """
        if self.qubits is not None:
            qubits = self.qubits
        else:
            disorder = self.disorder if seed is None else replace(self.disorder, seed=seed)
            qubits = sample(disorder, self.n_qubits)
        return ModelSpec(qubits, self.interaction, self.temperature,
                         self.override_convention)

    def with_value(self, axis, value):
        if axis in ('g', 'gamma'):
            if self.interaction is None:
                raise ConfigurationError("a non-interacting model has no coupling",
                                         "model.interaction")
            return replace(self, interaction=self.interaction.with_strength(value))
        if axis == 'sigma':
            return replace(self, disorder=replace(self.disorder, sigma=float(value)))
        if axis == 'n_qubits':
            if self.qubits is not None:
                raise ConfigurationError("explicit qubits cannot be resized", "model.qubits")
            return replace(self, n_qubits=int(value))
        raise ConfigurationError(f"axis not in {AXES}", "sweep.axis")

    def to_serializable(self):
        return {"type": "ArraySpec",
                "n_qubits": self.n_qubits,
                "interaction": None if self.interaction is None else self.interaction.to_serializable(),
                "disorder": self.disorder.to_serializable(),
                "temperature": self.temperature,
                "qubits": None if self.qubits is None else self.qubits.to_serializable(),
                "override_convention": self.override_convention}

    @classmethod
    def from_serializable(cls, obj):
        disorder = obj.get("disorder") or {}
        if not isinstance(disorder, DisorderSpec):
            disorder = DisorderSpec.from_serializable(disorder)
        qubits = obj.get("qubits")
        if qubits is not None and not isinstance(qubits, QubitParams):
            qubits = QubitParams.from_serializable(qubits)
        return cls(n_qubits=obj["n_qubits"],
                   interaction=interaction_from_serializable(obj.get("interaction")),
                   disorder=disorder,
                   temperature=float(obj.get("temperature", 0.0)),
                   qubits=qubits,
                   override_convention=bool(obj.get("override_convention", False)))

@dataclass(frozen=True)
class SweepConfig:
    """ One parameter scan.

        Args:
            base: (ArraySpec)
            axis: {'g','gamma','sigma','n_qubits'}
            values: (sequence)
                Non-empty and strictly monotone.
            observables: (tuple, default=('levels','lines','dominant'))
                Subset of {'levels','lines','dominant','stark'}.
            seeds: (int or sequence of int, default=None)
                One base seed, or one seed per point. The disorder seed of
                `base` when omitted.
            ensemble: (int, default=1)
                Realizations per point.
            fock_values: (tuple, default=(0,1,2))
            follow: {'matched','dominant'}, default='matched'
            max_qubits: (int, default=8)
                Largest array size accepted.
            relative_levels: (bool, default=False)
                Report levels relative to the ground state.
            workers: (int, default=1)
    """
    base: ArraySpec
    axis: str
    values: tuple
    observables: tuple = ('levels', 'lines', 'dominant')
    seeds: object = None
    ensemble: int = 1
    fock_values: tuple = (0, 1, 2)
    follow: str = 'matched'
    max_qubits: int = 8
    relative_levels: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigurationError(f"axis not in {AXES}", "sweep.axis")
        values = tuple(float(v) for v in np.ravel(self.values))
        if not values:
            raise ConfigurationError("at least one value is required", "sweep.values")
        steps = np.diff(values)
        if len(steps) and not (np.all(steps > 0.0) or np.all(steps < 0.0)):
            raise ConfigurationError("values must be strictly monotone", "sweep.values")
        if self.axis == 'n_qubits':
            if any(v != int(v) or v < 1 for v in values):
                raise ConfigurationError("array sizes must be positive integers", "sweep.values")
            values = tuple(int(v) for v in values)
        object.__setattr__(self, 'values', values)

        observables = tuple(self.observables)
        unknown = set(observables) - set(OBSERVABLES)
        if unknown:
            raise ConfigurationError(f"unknown observables {sorted(unknown)}", "sweep.observables")
        object.__setattr__(self, 'observables', observables)

        kind = self.base.kind
        if self.axis == 'g' and kind not in ('ising', 'exchange'):
            raise ConfigurationError("a g scan needs an Ising or exchange model", "sweep.axis")
        if (self.axis == 'gamma' or 'stark' in observables) and kind != 'cavity':
            raise ConfigurationError("gamma scans and Stark tracks need a cavity model",
                                     "sweep.axis")
        if kind == 'cavity':
            object.__setattr__(self, 'fock_values',
                               tuple(check_fock_values(self.fock_values,
                                                       self.base.interaction.photon_dim)))
        if self.follow not in FOLLOW_MODES:
            raise ConfigurationError(f"follow not in {FOLLOW_MODES}", "sweep.follow")
        if int(self.ensemble) != self.ensemble or self.ensemble < 1:
            raise ConfigurationError("must be a positive integer", "sweep.ensemble")
        if int(self.workers) != self.workers or self.workers < 1:
            raise ConfigurationError("must be a positive integer", "sweep.workers")
        if isinstance(self.seeds, (list, tuple)):
            if len(self.seeds) != len(values):
                raise ConfigurationError(f"{len(self.seeds)} seeds for {len(values)} "
                                         f"points", "sweep.seeds")
            object.__setattr__(self, 'seeds', tuple(int(s) for s in self.seeds))

        sizes = values if self.axis == 'n_qubits' else (self.base.n_qubits,)
        if max(sizes) > self.max_qubits:
            raise ConfigurationError(f"N={max(sizes)} exceeds max_qubits="
                                     f"{self.max_qubits}", "sweep.max_qubits")

    @property
    def seed_policy(self):
        if isinstance(self.seeds, tuple):
            return 'explicit'
        return 'fixed' if self.axis in ('g', 'gamma') else 'fresh'

    def point_seeds(self):
        """ Seeds of every realization, one tuple per point """
        count = len(self.values)
        if isinstance(self.seeds, tuple):
            return [(s,) if self.ensemble == 1 else tuple(random.derive_seeds(s, self.ensemble))
                    for s in self.seeds]
        base = self.base.disorder.seed if self.seeds is None else int(self.seeds)
        if self.seed_policy == 'fixed':
            shared = (base,) if self.ensemble == 1 else tuple(random.derive_seeds(base, self.ensemble))
            return [shared]*count
        flat = random.derive_seeds(base, count*self.ensemble)
        return [tuple(flat[i*self.ensemble:(i + 1)*self.ensemble]) for i in range(count)]

    def to_serializable(self):
        return {"type": "SweepConfig",
                "base": self.base.to_serializable(),
                "axis": self.axis,
                "values": list(self.values),
                "observables": list(self.observables),
                "seeds": list(self.seeds) if isinstance(self.seeds, tuple) else self.seeds,
                "ensemble": self.ensemble,
                "fock_values": list(self.fock_values),
                "follow": self.follow,
                "max_qubits": self.max_qubits,
                "relative_levels": self.relative_levels,
                "workers": self.workers}

    @classmethod
    def from_serializable(cls, obj):
        base = obj["base"]
        if not isinstance(base, ArraySpec):
            base = ArraySpec.from_serializable(base)
        fields = {k: v for k, v in obj.items() if k not in ("type", "base")}
        for key in ("observables", "fock_values"):
            if key in fields:
                fields[key] = tuple(fields[key])
        try:
            return cls(base=base, **fields)
        except TypeError as error:
            raise ConfigurationError(str(error), "sweep")

""" ############################### Results ############################## """

@dataclass(frozen=True, eq=False)
class SweepPoint:
    """ Observables of one axis value. Levels, lines and the dominant
        resonance belong to the first realization; `amplitudes` holds A_d of
        every realization.
    """
    value: float
    seeds: tuple
    qubits: tuple
    levels: np.ndarray = None
    susceptibility: object = None
    fock_susceptibilities: dict = None
    dominant: object = None
    amplitudes: tuple = ()
    stark: object = None
    warnings: tuple = ()

    @property
    def amplitude_spread(self):
        return spread(self.amplitudes)

    def to_serializable(self):
        return {"type": "SweepPoint",
                "value": self.value,
                "seeds": list(self.seeds),
                "qubits": [q.to_serializable() for q in self.qubits],
                "levels": None if self.levels is None else [float(E) for E in self.levels],
                "susceptibility": None if self.susceptibility is None else self.susceptibility.to_serializable(),
                "fock_susceptibilities": None if self.fock_susceptibilities is None else
                    {str(n): s.to_serializable() for n, s in self.fock_susceptibilities.items()},
                "dominant": None if self.dominant is None else
                    {"frequency": self.dominant.frequency, "amplitude": self.dominant.amplitude},
                "amplitudes": list(self.amplitudes),
                "stark": None if self.stark is None else self.stark.to_serializable(),
                "warnings": list(self.warnings)}

@dataclass(frozen=True, eq=False)
class SweepResult:
    config: SweepConfig
    points: tuple
    fit: object = None
    convergence: object = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.points) != len(self.config.values):
            raise ConfigurationError(f"{len(self.points)} points for "
                                     f"{len(self.config.values)} axis values", "sweep.values")

    @property
    def values(self):
        return self.config.values

    @property
    def tracks(self):
        return [p.stark for p in self.points]

    def dominant_frame(self):
        rows = []
        for p in self.points:
            stats = p.amplitude_spread
            rows.append({self.config.axis: p.value,
                         "frequency": None if p.dominant is None else p.dominant.frequency,
                         "amplitude": None if p.dominant is None else p.dominant.amplitude,
                         "amplitude_mean": stats.mean,
                         "amplitude_std": stats.std,
                         "realizations": len(p.amplitudes)})
        return pd.DataFrame(rows)

    def levels_frame(self):
        rows = []
        for p in self.points:
            if p.levels is None:
                continue
            row = {self.config.axis: p.value}
            row.update({f"E{k}": float(E) for k, E in enumerate(p.levels)})
            rows.append(row)
        return pd.DataFrame(rows)

    def lines_frame(self):
        frames = []
        for p in self.points:
            sets = p.fock_susceptibilities or ({0: p.susceptibility} if p.susceptibility else {})
            for n, sus in sets.items():
                frame = sus.to_frame()
                frame.insert(0, "n", n)
                frame.insert(0, self.config.axis, p.value)
                frames.append(frame)
        if not frames:
            return pd.DataFrame()
        return pd.concat(frames, ignore_index=True)

    def stark_frame(self):
        rows = [row for p in self.points if p.stark is not None for row in p.stark.to_rows()]
        return pd.DataFrame(rows)

    def ensemble_frame(self):
        rows = [{self.config.axis: p.value, "seed": s, "amplitude": A}
                for p in self.points for s, A in zip(p.seeds, p.amplitudes)]
        return pd.DataFrame(rows)

    def to_serializable(self):
        doc = {"type": "SweepResult",
               "config": self.config.to_serializable(),
               "points": [p.to_serializable() for p in self.points],
               "metadata": self.metadata}
        if self.fit is not None:
            doc["fit"] = dict(self.fit._asdict())
        if self.convergence is not None:
            doc["convergence"] = {"photon_dim": self.convergence.photon_dim,
                                  "delta": self.convergence.delta,
                                  "value": list(map(float, self.convergence.value)),
                                  "value_extended": list(map(float, self.convergence.value_extended))}
        return doc

""" ############################## Evaluation ############################ """

def _realization(config, spec, seed):
    model = resolve(spec.realize(seed))
    spectrum = diagonalize(assemble(model).hamiltonian)
    M = total_polarization(spectrum.space)
    observed = {"qubits": model.qubits, "levels": spectrum.eigenvalues, "notes": []}
    observed["notes"].extend(model.regime_issues())

    if model.kind == 'cavity':
        track = stark_point(model, config.fock_values, config.follow, spectrum=spectrum)
        observed["stark"] = track
        observed["dominant"] = track.per_fock[0]
        observed["notes"].extend(track.warnings)
        if 'lines' in config.observables:
            observed["fock"] = {n: susceptibility_nonequilibrium(spectrum, M, n, model.qubits)
                                for n in config.fock_values}
            observed["lines"] = observed["fock"][0]
    else:
        sus = susceptibility_lines(spectrum, M, 0, model.temperature)
        observed["lines"] = sus
        observed["dominant"] = dominant_resonance(sus)
    return observed

def evaluate_point(config, value, seeds):
    """ All requested observables at one axis value.

        Args:
            config: (SweepConfig)
            value: (float or int)
            seeds: (tuple of int)
                One seed per realization.

        Returns:
            SweepPoint
    """
    spec = config.base.with_value(config.axis, value)
    realizations = [_realization(config, spec, seed) for seed in seeds]
    first = realizations[0]
    levels = None
    if 'levels' in config.observables:
        levels = np.array(first["levels"])
        if config.relative_levels:
            levels = levels - levels[0]
    obs = config.observables
    log.debug("%s=%g: A_d=%.6f over %d realization(s)", config.axis, value,
              first["dominant"].amplitude, len(seeds))
    return SweepPoint(value=value,
                      seeds=tuple(seeds),
                      qubits=tuple(r["qubits"] for r in realizations),
                      levels=levels,
                      susceptibility=first.get("lines") if 'lines' in obs else None,
                      fock_susceptibilities=first.get("fock") if 'lines' in obs else None,
                      dominant=first["dominant"],
                      amplitudes=tuple(float(r["dominant"].amplitude) for r in realizations),
                      stark=first.get("stark") if ('stark' in obs or config.axis == 'gamma') else None,
                      warnings=tuple(dict.fromkeys(first["notes"])))

def _evaluate_all(config):
    jobs = list(zip(config.values, config.point_seeds()))
    if config.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(lambda job: evaluate_point(config, *job), jobs))
    return [evaluate_point(config, *job) for job in jobs]

def _timestamp():
    return datetime.now(timezone.utc).isoformat(timespec='seconds')

def run_sweep(config):
    """ Dispatch a SweepConfig to the scan of its axis """
    runners = {'g': sweep_interaction,
               'gamma': sweep_coupling,
               'sigma': sweep_disorder,
               'n_qubits': sweep_size}
    return runners[config.axis](config)

def _run(config, expected_axis):
    if config.axis != expected_axis:
        raise ConfigurationError(f"expected axis '{expected_axis}', got '{config.axis}'",
                                 "sweep.axis")
    started = _timestamp()
    start = time.time()
    points = tuple(_evaluate_all(config))
    runtime = time.time() - start
    log.info("%s sweep: %d points in %.2f s", config.axis, len(points), runtime)
    metadata = {"spec": config.to_serializable(),
                "version": __version__,
                "seed_policy": config.seed_policy,
                "started": started,
                "finished": _timestamp(),
                "runtime": runtime}
    return points, metadata

def sweep_interaction(config):
    """ Levels, lines and dominant resonance versus g with one fixed
        disorder realization.
    """
    points, metadata = _run(config, 'g')
    return SweepResult(config, points, metadata=metadata)

def sweep_disorder(config):
    """ A_d versus sigma, with ensemble mean and spread when `ensemble` > 1 """
    points, metadata = _run(config, 'sigma')
    return SweepResult(config, points, metadata=metadata)

def sweep_size(config):
    """ A_d versus N with a least-squares line through the ensemble means.

        Returns:
            SweepResult whose `fit` is LinearFit(slope, intercept, r_squared).
    """
    points, metadata = _run(config, 'n_qubits')
    means = [p.amplitude_spread.mean for p in points]
    fit = linear_fit(config.values, means) if len(points) >= 2 else None
    return SweepResult(config, points, fit=fit, metadata=metadata)

def sweep_coupling(config):
    """ Stark tracks versus gamma, plus a Fock-truncation check at the
        largest |gamma| of the grid.
    """
    points, metadata = _run(config, 'gamma')
    extreme = max(config.values, key=abs)
    spec = config.base.with_value('gamma', extreme).realize(config.point_seeds()[0][0])
    convergence = fock_convergence_check(spec, fock_values=config.fock_values,
                                         follow=config.follow)
    log.info("Fock truncation check at gamma=%g: relative change %.3e",
             extreme, convergence.delta)
    metadata["convergence_gamma"] = extreme
    return SweepResult(config, points, convergence=convergence, metadata=metadata)

def _stark_observables(fock_values, follow):
    def extract(spec):
        track = stark_point(spec, fock_values, follow)
        return [x for n in track.fock_values
                for x in (track.frequency(n), track.amplitude(n))]
    return extract

def fock_convergence_check(spec, extractor=None, fock_values=(0, 1, 2),
                           follow='matched', extra=2):
    """ Sensitivity of an observable to the Fock-space truncation.

        Args:
            spec: (ModelSpec)
                Cavity-coupled model.
            extractor: (callable, default=None)
                Maps a ModelSpec to a sequence of floats; by default the
                dominant (omega_d, A_d) of every Fock value.
            extra: (int, default=2)
                Additional Fock states of the comparison run.

        Returns:
            FockConvergence(value, value_extended, delta, photon_dim)
                delta is the largest relative change; it is reported as is,
                however large.
    """
    if spec.kind != 'cavity':
        raise ConfigurationError("needs a cavity-coupled model", "model.interaction.kind")
    extractor = extractor or _stark_observables(fock_values, follow)
    value = np.asarray(extractor(spec), dtype=float)
    wider = replace(spec, interaction=spec.interaction.with_photon_dim(spec.photon_dim + extra))
    extended = np.asarray(extractor(wider), dtype=float)
    scale = np.maximum(np.abs(value), 1e-12)
    delta = float(np.max(np.abs(extended - value)/scale)) if value.size else 0.0
    return FockConvergence(value, extended, delta, spec.photon_dim)
