""" Run configuration documents.

    A run is described by a JSON document with top-level keys

        command     spectrum | susceptibility | sweep | stark | transmission |
                    reproduce-figure
        model       {n_qubits, interaction: {kind, g, periodic, gamma, omega0,
                    photon_dim}, temperature, qubits: {delta, epsilon},
                    override_convention}
        disorder    {sigma, target, mean_frequency, seed, distribution,
                    bias_delta}
        sweep       {axis, values | {start, stop, num}, observables, seeds,
                    ensemble, fock_values, follow, max_qubits,
                    relative_levels, workers}
        output      {directory, formats, broadening, grid: {start, stop, num}}

    and the optional keys `figure`, `times`, `photons` and `transmission`.
    All physical quantities are in units of the mean qubit frequency.
"""
import json
import copy
import warnings

from dataclasses import dataclass, field

import numpy as np

from sqadyn.benchmark.sweeps import ArraySpec, SweepConfig
from sqadyn.exceptions import ConfigurationError
from sqadyn.models.disorder import DisorderSpec
from sqadyn.models.hamiltonians import (QubitParams, interaction_from_serializable,
                                        qubit_frequencies)
from sqadyn.interfaces.writers import FORMATS

__all__ = ["COMMANDS", "FIGURES", "DISTRIBUTIONS", "OutputSpec", "RunConfig",
           "ValidationReport", "load_document", "apply_overrides",
           "parse_config", "validate"]

COMMANDS = ('spectrum', 'susceptibility', 'sweep', 'stark', 'transmission',
            'reproduce-figure')

FIGURES = ('pic3', 'pic5', 'pic8', 'pic10', 'pic11', 'pic6')

DISTRIBUTIONS = ('fock', 'poisson', 'thermal')

TOP_LEVEL = ('command', 'model', 'disorder', 'sweep', 'output', 'figure',
             'times', 'photons', 'transmission', 'realized')

@dataclass(frozen=True)
class OutputSpec:
    directory: str = 'sqadyn-output'
    formats: tuple = FORMATS
    broadening: float = None
    grid: tuple = None

    def frequency_grid(self):
        if self.grid is None:
            return None
        return np.linspace(*self.grid)

    def to_document(self):
        return {"directory": self.directory,
                "formats": list(self.formats),
                "broadening": self.broadening,
                "grid": None if self.grid is None else
                    {"start": self.grid[0], "stop": self.grid[1], "num": self.grid[2]}}

@dataclass(frozen=True)
class RunConfig:
    """ Parsed and validated run.

        Args:
            command: (str)
            model: (ArraySpec or None)
                Model family with its disorder; None for figure reproduction.
            sweep: (SweepConfig or None)
            output: (OutputSpec)
            figure: (str or None)
            times: (tuple(start, stop, num) or None)
                Time grid of C(t) tables.
            photons: (dict)
                {'fock_values': [...], 'distribution': ..., 'mean': ...}
            scale: (float)
                Transmission proportionality constant.
            seed: (int or None)
                Seed override for figure presets.
    """
    command: str
    model: ArraySpec = None
    sweep: SweepConfig = None
    output: OutputSpec = field(default_factory=OutputSpec)
    figure: str = None
    times: tuple = None
    photons: dict = field(default_factory=dict)
    scale: float = 1.0
    seed: int = None

    @property
    def disorder(self):
        return None if self.model is None else self.model.disorder

    def time_grid(self):
        return None if self.times is None else np.linspace(*self.times)

    def to_document(self):
        """ The input schema of this run, fed back by `parse_config` """
        doc = {"command": self.command, "output": self.output.to_document()}
        if self.figure is not None:
            doc["figure"] = self.figure
        if self.model is not None:
            model = self.model.to_serializable()
            doc["model"] = {k: model[k] for k in ("n_qubits", "interaction", "temperature",
                                                  "qubits", "override_convention")}
            doc["disorder"] = {k: v for k, v in model["disorder"].items() if k != "type"}
        elif self.seed is not None:
            doc["disorder"] = {"seed": self.seed}
        if self.sweep is not None:
            doc["sweep"] = {k: v for k, v in self.sweep.to_serializable().items()
                            if k not in ("type", "base")}
        if self.times is not None:
            doc["times"] = {"start": self.times[0], "stop": self.times[1], "num": self.times[2]}
        if self.photons:
            doc["photons"] = dict(self.photons)
        if self.scale != 1.0:
            doc["transmission"] = {"scale": self.scale}
        return doc

@dataclass
class ValidationReport:
    """ Issues (field, message) block a run; warnings do not """
    issues: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.issues

    def lines(self):
        out = [f"error: {m}" for _, m in self.issues]
        out.extend(f"warning: {w}" for w in self.warnings)
        return out

""" ############################### Loading ############################## """

def load_document(path):
    try:
        with open(path, 'r', encoding='utf-8') as fp:
            doc = json.load(fp)
    except OSError as error:
        raise ConfigurationError(f"cannot read {path}: {error.strerror}", "config")
    except json.JSONDecodeError as error:
        raise ConfigurationError(f"invalid JSON at line {error.lineno}: {error.msg}", "config")
    if not isinstance(doc, dict):
        raise ConfigurationError("top level must be an object", "config")
    return doc

def apply_overrides(doc, seed=None, out=None, formats=None, threads=None):
    """ Copy of `doc` with command-line overrides applied """
    doc = copy.deepcopy(doc)
    if seed is not None:
        doc.setdefault("disorder", {})["seed"] = int(seed)
        sweep = doc.get("sweep")
        if isinstance(sweep, dict) and isinstance(sweep.get("seeds"), int):
            sweep["seeds"] = int(seed)
    if out is not None:
        doc.setdefault("output", {})["directory"] = out
    if formats is not None:
        doc.setdefault("output", {})["formats"] = list(formats)
    if threads is not None and isinstance(doc.get("sweep"), dict):
        doc["sweep"]["workers"] = int(threads)
    return doc

""" ############################### Parsing ############################## """

def _section(doc, key):
    value = doc.get(key)
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigurationError("must be an object", key)
    return value

def _grid(value, name):
    if isinstance(value, dict):
        try:
            grid = (float(value["start"]), float(value["stop"]), int(value["num"]))
        except (KeyError, TypeError, ValueError):
            raise ConfigurationError("expected {start, stop, num}", name)
        if grid[2] < 1:
            raise ConfigurationError("num must be positive", f"{name}.num")
        return grid
    raise ConfigurationError("expected {start, stop, num}", name)

def _number(section, key, name, default, kind=float):
    value = section.get(key, default)
    if value is None:
        return None
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"expected a number, got {value!r}", name)

def _parse_model(doc):
    model = _section(doc, "model")
    if "n_qubits" not in model:
        raise ConfigurationError("missing", "model.n_qubits")
    n_qubits = model["n_qubits"]
    if not isinstance(n_qubits, int) or isinstance(n_qubits, bool) or n_qubits < 1:
        raise ConfigurationError("must be a positive integer", "model.n_qubits")

    interaction = model.get("interaction")
    if interaction is not None and not isinstance(interaction, dict):
        raise ConfigurationError("must be an object", "model.interaction")
    interaction = interaction_from_serializable(interaction)

    qubits = model.get("qubits")
    if qubits is not None:
        try:
            qubits = QubitParams(tuple(qubits["delta"]),
                                 tuple(qubits.get("epsilon", (0.0,)*len(qubits["delta"]))))
        except (KeyError, TypeError):
            raise ConfigurationError("expected {delta, epsilon}", "model.qubits")

    disorder = dict(_section(doc, "disorder"))
    disorder.pop("type", None)
    disorder = DisorderSpec.from_serializable(disorder)

    temperature = _number(model, "temperature", "model.temperature", 0.0)
    if temperature < 0.0:
        raise ConfigurationError("must be non-negative", "model.temperature")
    return ArraySpec(n_qubits, interaction, disorder, temperature, qubits,
                     bool(model.get("override_convention", False)))

def _parse_sweep(doc, base):
    sweep = dict(_section(doc, "sweep"))
    sweep.pop("type", None)
    if "axis" not in sweep:
        raise ConfigurationError("missing", "sweep.axis")
    values = sweep.pop("values", None)
    if values is None:
        raise ConfigurationError("missing", "sweep.values")
    if isinstance(values, dict):
        values = tuple(np.linspace(*_grid(values, "sweep.values")))
    elif isinstance(values, list):
        values = tuple(values)
    else:
        raise ConfigurationError("expected a list or {start, stop, num}", "sweep.values")
    for key in ("observables", "fock_values", "seeds"):
        if isinstance(sweep.get(key), list):
            sweep[key] = tuple(sweep[key])
    try:
        return SweepConfig(base=base, values=values, **sweep)
    except TypeError as error:
        raise ConfigurationError(str(error), "sweep")

def _parse_output(doc):
    output = _section(doc, "output")
    unknown = set(output) - {"directory", "formats", "broadening", "grid"}
    if unknown:
        raise ConfigurationError(f"unknown keys {sorted(unknown)}", "output")
    formats = output.get("formats", list(FORMATS))
    if isinstance(formats, str):
        formats = list(FORMATS) if formats == 'both' else [formats]
    if not formats or any(f not in FORMATS for f in formats):
        raise ConfigurationError(f"formats must be a non-empty subset of {FORMATS}",
                                 "output.formats")
    broadening = _number(output, "broadening", "output.broadening", None)
    if broadening is not None and broadening <= 0.0:
        raise ConfigurationError("must be positive", "output.broadening")
    grid = output.get("grid")
    grid = None if grid is None else _grid(grid, "output.grid")
    return OutputSpec(str(output.get("directory", OutputSpec.directory)),
                      tuple(formats), broadening, grid)

def _parse_photons(doc, base):
    photons = dict(_section(doc, "photons"))
    if not photons:
        return {}
    unknown = set(photons) - {"fock_values", "distribution", "mean"}
    if unknown:
        raise ConfigurationError(f"unknown keys {sorted(unknown)}", "photons")
    distribution = photons.get("distribution", 'fock')
    if distribution not in DISTRIBUTIONS:
        raise ConfigurationError(f"not in {DISTRIBUTIONS}", "photons.distribution")
    fock_values = photons.get("fock_values", [0])
    if not isinstance(fock_values, list) or not all(isinstance(n, int) and n >= 0 for n in fock_values):
        raise ConfigurationError("expected a list of non-negative integers", "photons.fock_values")
    photon_dim = base.interaction.photon_dim if base is not None and base.kind == 'cavity' else 0
    if any(n >= photon_dim for n in fock_values):
        raise ConfigurationError(f"Fock states must lie below photon_dim={photon_dim}",
                                 "photons.fock_values")
    mean = _number(photons, "mean", "photons.mean", 0.0)
    if mean < 0.0:
        raise ConfigurationError("must be non-negative", "photons.mean")
    return {"fock_values": sorted(fock_values), "distribution": distribution, "mean": mean}

def parse_config(doc):
    """ RunConfig from a configuration document.

        Raises:
            ConfigurationError: naming the offending field.
    """
    unknown = set(doc) - set(TOP_LEVEL)
    if unknown:
        raise ConfigurationError(f"unknown keys {sorted(unknown)}", "config")
    command = doc.get("command")
    if command not in COMMANDS:
        raise ConfigurationError(f"{command!r} not in {COMMANDS}", "command")
    output = _parse_output(doc)

    if command == 'reproduce-figure':
        figure = doc.get("figure")
        if figure not in FIGURES:
            raise ConfigurationError(f"{figure!r} not in {FIGURES}", "figure")
        seed = _section(doc, "disorder").get("seed")
        if seed is not None and (not isinstance(seed, int) or seed < 0):
            raise ConfigurationError("must be a non-negative integer", "disorder.seed")
        return RunConfig(command, output=output, figure=figure, seed=seed)

    base = _parse_model(doc)
    sweep = None
    if command == 'sweep' or ("sweep" in doc and doc["sweep"] is not None):
        sweep = _parse_sweep(doc, base)
    if command in ('stark',) and base.kind != 'cavity':
        raise ConfigurationError("the stark command needs a cavity model", "model.interaction.kind")

    times = doc.get("times")
    times = None if times is None else _grid(times, "times")
    scale = _number(_section(doc, "transmission"), "scale", "transmission.scale", 1.0)
    return RunConfig(command, base, sweep, output,
                     times=times,
                     photons=_parse_photons(doc, base),
                     scale=scale,
                     seed=base.disorder.seed)

""" ############################# Validation ############################# """

def validate(source):
    """ Dry-run validation of a path or document; never raises.

        Schema and physics-range violations become issues with a dotted field
        path. Advisory conditions, such as a coupling not below the mean
        frequency, become warnings.

        Returns:
            ValidationReport
    """
    report = ValidationReport()
    try:
        doc = load_document(source) if isinstance(source, str) else source
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            config = parse_config(doc)
            if config.model is not None:
                spec = config.model.realize()
                report.warnings.extend(spec.regime_issues())
                mean = qubit_frequencies(spec).mean
                if config.sweep is not None and config.sweep.axis in ('g', 'gamma'):
                    largest = max(abs(v) for v in config.sweep.values)
                    if largest >= mean:
                        report.warnings.append(f"sweep reaches |{config.sweep.axis}| = "
                                               f"{largest:g}, not below the mean qubit "
                                               f"frequency {mean:g}")
        report.warnings.extend(str(w.message) for w in caught)
    except ConfigurationError as error:
        report.issues.append((error.field, str(error)))
    except (TypeError, ValueError, KeyError) as error:
        report.issues.append((None, str(error)))
    report.warnings = list(dict.fromkeys(report.warnings))
    return report
