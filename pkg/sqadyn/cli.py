""" Batch command-line front end.

    sqadyn [command] [figure] --config run.json [--seed S] [--out DIR]
           [--format csv|structured|both] [--threads K] [--validate-only]

    Exit status: 0 success, 2 configuration error, 3 numerical error.
    All results are computed before the first file is written.
"""
import sys
import logging
import argparse

import numpy as np
import pandas as pd

from sqadyn.benchmark.presets import reproduce_figure
from sqadyn.benchmark.sweeps import run_sweep, sweep_coupling
from sqadyn.exceptions import ConfigurationError, NumericalError, ValidationError
from sqadyn.interfaces.config import (COMMANDS, FIGURES, apply_overrides,
                                      load_document, parse_config, validate)
from sqadyn.interfaces.writers import OutputBundle, write_bundle
from sqadyn.models.hamiltonians import assemble, resolve
from sqadyn.package_info import __version__
from sqadyn.response.correlation import correlation_time
from sqadyn.response.stark import stark_point
from sqadyn.response.susceptibility import (broaden, photon_mixture,
                                            poisson_distribution,
                                            susceptibility_lines,
                                            susceptibility_nonequilibrium,
                                            thermal_distribution)
from sqadyn.response.transmission import transmission_suppression
from sqadyn.solvers.eigensolve import diagonalize
from sqadyn.space.operators import total_polarization

__all__ = ["EXIT_OK", "EXIT_CONFIG", "EXIT_NUMERICAL", "build_parser",
           "execute", "run", "main"]

log = logging.getLogger("sqadyn")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

def build_parser():
    parser = argparse.ArgumentParser(prog="sqadyn",
                                     description="Coherent dynamics of disordered "
                                                 "interacting superconducting qubit arrays.")
    parser.add_argument("command", nargs="?", choices=COMMANDS,
                        help="Overrides the command of the config file.")
    parser.add_argument("figure", nargs="?", choices=FIGURES,
                        help="Figure preset for reproduce-figure.")
    parser.add_argument("--config", type=str, default=None, help="JSON run configuration.")
    parser.add_argument("--seed", type=int, default=None, help="Disorder seed override (u64).")
    parser.add_argument("--out", type=str, default=None, help="Output directory.")
    parser.add_argument("--format", choices=("csv", "structured", "both"), default=None)
    parser.add_argument("--threads", type=int, default=None, help="Sweep worker threads.")
    parser.add_argument("--validate-only", action="store_true",
                        help="Report configuration issues without computing.")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("-q", "--quiet", action="store_true")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser

def _configure_logging(args):
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)

def _document(args):
    doc = load_document(args.config) if args.config else {}
    if args.command is not None:
        doc["command"] = args.command
    if args.figure is not None:
        doc["figure"] = args.figure
    formats = None
    if args.format is not None:
        formats = ["csv", "structured"] if args.format == "both" else [args.format]
    return apply_overrides(doc, seed=args.seed, out=args.out, formats=formats,
                           threads=args.threads)

""" ############################### Commands ############################# """

def _single_point(config):
    spec = resolve(config.model.realize())
    spectrum = diagonalize(assemble(spec).hamiltonian)
    return spec, spectrum, total_polarization(spectrum.space)

def _bundle(config, spec=None):
    provenance = {"seed": config.seed, "config": config.to_document()}
    if spec is not None:
        provenance["config"]["realized"] = spec.qubits.to_serializable()
    return OutputBundle(config.command, provenance=provenance)

def _broadened(config, sus):
    eta = config.output.broadening
    if eta is None or not len(sus):
        return sus
    grid = config.output.frequency_grid()
    if grid is None:
        freqs = sus.frequencies
        grid = np.linspace(max(freqs.min() - 10*eta, 0.0), freqs.max() + 10*eta, 2001)
    return broaden(sus, eta, grid)

def _add_susceptibility(bundle, stem, sus):
    bundle.add_table(f"{stem}_lines", sus.to_frame())
    if sus.curve is not None:
        bundle.add_table(f"{stem}_curve", sus.curve_frame())
    bundle.add_document(stem, sus)

def _susceptibilities(config, spec, spectrum, M):
    """ Equilibrium C(omega), or C_n(omega) and their photon mixture for a cavity """
    if spec.kind != 'cavity':
        return {"susceptibility": susceptibility_lines(spectrum, M, 0, spec.temperature)}
    photons = config.photons or {"fock_values": [0], "distribution": 'fock', "mean": 0.0}
    fock_values = photons["fock_values"]
    per_fock = {n: susceptibility_nonequilibrium(spectrum, M, n, spec.qubits)
                for n in fock_values}
    out = {f"fock{n}": sus for n, sus in per_fock.items()}
    if photons["distribution"] == 'poisson':
        out["mixture"] = photon_mixture(per_fock, poisson_distribution(photons["mean"], fock_values))
    elif photons["distribution"] == 'thermal':
        out["mixture"] = photon_mixture(per_fock, thermal_distribution(photons["mean"], fock_values))
    return out

def command_spectrum(config):
    spec, spectrum, M = _single_point(config)
    bundle = _bundle(config, spec)
    E = spectrum.eigenvalues
    bundle.add_table("levels", pd.DataFrame({"level": np.arange(len(E)), "energy": E,
                                             "relative": E - E[0]}))
    times = config.time_grid()
    if times is not None:
        C = correlation_time(spectrum, M, spec.temperature, times)
        bundle.add_table("correlation", pd.DataFrame({"t": times, "re": C.real, "im": C.imag}))
    bundle.add_document("spectrum", {"model": spec, "eigenvalues": E})
    return bundle

def command_susceptibility(config):
    spec, spectrum, M = _single_point(config)
    bundle = _bundle(config, spec)
    for stem, sus in _susceptibilities(config, spec, spectrum, M).items():
        _add_susceptibility(bundle, stem, _broadened(config, sus))
    times = config.time_grid()
    if times is not None and spec.kind != 'cavity':
        C = correlation_time(spectrum, M, spec.temperature, times)
        bundle.add_table("correlation", pd.DataFrame({"t": times, "re": C.real, "im": C.imag}))
    return bundle

def command_transmission(config):
    spec, spectrum, M = _single_point(config)
    bundle = _bundle(config, spec)
    for stem, sus in _susceptibilities(config, spec, spectrum, M).items():
        delta_s21 = transmission_suppression(_broadened(config, sus), config.scale)
        _add_susceptibility(bundle, f"{stem}_transmission", delta_s21)
    return bundle

def _sweep_bundle(config, result):
    bundle = _bundle(config)
    observables = config.sweep.observables
    if 'levels' in observables:
        bundle.add_table("levels", result.levels_frame())
    if 'lines' in observables:
        bundle.add_table("lines", result.lines_frame())
    bundle.add_table("dominant", result.dominant_frame())
    if config.sweep.ensemble > 1:
        bundle.add_table("ensemble", result.ensemble_frame())
    if config.sweep.axis == 'gamma':
        bundle.add_table("stark", result.stark_frame())
    bundle.add_document("sweep", result)
    return bundle

def command_sweep(config):
    return _sweep_bundle(config, run_sweep(config.sweep))

def command_stark(config):
    if config.sweep is not None:
        if config.sweep.axis != 'gamma':
            raise ConfigurationError("the stark command sweeps gamma", "sweep.axis")
        return _sweep_bundle(config, sweep_coupling(config.sweep))
    spec = resolve(config.model.realize())
    track = stark_point(spec)
    bundle = _bundle(config, spec)
    bundle.add_table("stark", pd.DataFrame(track.to_rows()))
    bundle.add_document("stark", track)
    return bundle

def command_reproduce(config, threads=1):
    bundle = reproduce_figure(config.figure, config.seed, workers=threads)
    bundle.provenance["config"] = {"run": config.to_document(),
                                   "preset": bundle.provenance.get("config")}
    return bundle

COMMAND_RUNNERS = {'spectrum': command_spectrum,
                   'susceptibility': command_susceptibility,
                   'transmission': command_transmission,
                   'sweep': command_sweep,
                   'stark': command_stark}

def execute(config, threads=1):
    """ OutputBundle of a parsed RunConfig; nothing is written """
    if config.command == 'reproduce-figure':
        return command_reproduce(config, threads)
    return COMMAND_RUNNERS[config.command](config)

""" ################################ Entry ############################### """

def run(argv=None):
    """ Parse arguments, validate, compute and write.

        Returns:
            status: (int)
    """
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        doc = _document(args)
    except ConfigurationError as error:
        log.error("%s", error)
        return EXIT_CONFIG

    report = validate(doc)
    for line in report.lines():
        (log.error if line.startswith("error") else log.warning)("%s", line)
    if args.validate_only:
        if report.ok:
            log.info("configuration is valid")
        return EXIT_OK if report.ok else EXIT_CONFIG
    if not report.ok:
        return EXIT_CONFIG

    try:
        config = parse_config(doc)
        bundle = execute(config, threads=args.threads or 1)
    except (ConfigurationError, ValidationError, KeyError) as error:
        log.error("configuration error: %s", error)
        return EXIT_CONFIG
    except (NumericalError, np.linalg.LinAlgError) as error:
        log.error("numerical error: %s", error)
        return EXIT_NUMERICAL

    try:
        write_bundle(bundle, config.output.directory, config.output.formats)
    except OSError as error:
        log.error("cannot write outputs: %s", error)
        return EXIT_CONFIG
    return EXIT_OK

def main():
    sys.exit(run())

if __name__ == "__main__":
    main()
