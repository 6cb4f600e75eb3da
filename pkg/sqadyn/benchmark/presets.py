""" Figure-reproduction presets.

    Every preset hard-codes its parameters and lists the assumptions it makes
    (boundary conditions, seed policy, grids). Each returns an OutputBundle of
    plot-ready tables.

        pic3    Im C(t) and C(omega) lines, N=6 Ising, four (sigma, g) pairs
        pic5    levels and line amplitudes versus g, N=2 and N=6 Ising
        pic8    A_d versus g for several sigma, and A_d versus N
        pic10   levels and lines versus g, exchange model, N=6 and N=7
        pic11   levels and per-Fock line amplitudes versus gamma, cavity model
        pic6    Stark table omega_d(n, gamma), n = 0, 1, 2
"""
import logging

from dataclasses import replace

import numpy as np
import pandas as pd

from sqadyn.benchmark.sweeps import (ArraySpec, SweepConfig, sweep_coupling,
                                     sweep_interaction, sweep_size)
from sqadyn.interfaces.writers import OutputBundle
from sqadyn.models.disorder import DisorderSpec
from sqadyn.models.hamiltonians import (CavityCoupled, GlobalExchange,
                                        ShortRangeIsing, assemble, resolve)
from sqadyn.response.correlation import correlation_time
from sqadyn.response.stark import perturbative_stark_estimate
from sqadyn.response.susceptibility import dominant_resonance, susceptibility_lines
from sqadyn.solvers.eigensolve import diagonalize
from sqadyn.space.operators import total_polarization

__all__ = ["DEFAULT_SEED", "PRESETS", "reproduce_figure", "pic3", "pic5",
           "pic8", "pic10", "pic11", "pic6"]

log = logging.getLogger(__name__)

DEFAULT_SEED = 20190115

ISING_G = tuple(np.linspace(-0.3, 0.3, 61))
EXCHANGE_G = tuple(np.linspace(-0.2, 0.2, 41))
CAVITY_GAMMA = tuple(np.linspace(0.0, 0.3, 31))
STARK_GAMMA = tuple(np.linspace(0.0, 0.15, 16))

FIXED_SEED = "one disorder realization per panel, shared by every coupling value"
OPEN_CHAIN = "Ising coupling between nearest neighbours of an open chain"

def _bundle(name, seed, parameters, assumptions):
    return OutputBundle(name, provenance={"seed": seed,
                                          "config": {"figure": name,
                                                     "seed": seed,
                                                     "parameters": parameters}},
                        assumptions=list(assumptions))

def _sweep_tables(bundle, prefix, result):
    bundle.add_table(f"{prefix}_levels", result.levels_frame())
    bundle.add_table(f"{prefix}_lines", result.lines_frame())
    bundle.add_table(f"{prefix}_dominant", result.dominant_frame())
    bundle.add_document(f"{prefix}_sweep", result)

def pic3(seed=DEFAULT_SEED, workers=1):
    """ C(t) and C(omega) of N=6 Ising arrays at (sigma, g) in
        {(0, 0), (0.2, 0), (0.2, -0.2), (0.2, 0.2)}.

        Eight tables: one Im C(t) series and one line set per pair, on
        t in [0, 100] with 2001 samples.
    """
    pairs = {'a': (0.0, 0.0), 'b': (0.2, 0.0), 'c': (0.2, -0.2), 'd': (0.2, 0.2)}
    times = np.linspace(0.0, 100.0, 2001)
    bundle = _bundle('pic3', seed, {"n_qubits": 6, "pairs": pairs},
                     [OPEN_CHAIN, "the same disorder seed for every panel",
                      "zero temperature, ground-state initial level"])
    for panel, (sigma, g) in pairs.items():
        base = ArraySpec(6, ShortRangeIsing(g), DisorderSpec(sigma, seed=seed))
        spec = resolve(base.realize())
        spectrum = diagonalize(assemble(spec).hamiltonian)
        M = total_polarization(spectrum.space)
        C = correlation_time(spectrum, M, 0.0, times)
        bundle.add_table(f"{panel}_time", pd.DataFrame({"t": times, "re": C.real, "im": C.imag}))
        bundle.add_table(f"{panel}_lines", susceptibility_lines(spectrum, M).to_frame())
    return bundle

def pic5(seed=DEFAULT_SEED, workers=1):
    """ Levels relative to the ground state and line amplitudes versus
        g in [-0.3, 0.3] (61 points), N=2 and N=6, sigma=0.2.
    """
    bundle = _bundle('pic5', seed, {"n_qubits": [2, 6], "sigma": 0.2, "g": list(ISING_G)},
                     [OPEN_CHAIN, FIXED_SEED, "levels tracked by sorted order"])
    for N in (2, 6):
        base = ArraySpec(N, ShortRangeIsing(0.0), DisorderSpec(0.2, seed=seed))
        config = SweepConfig(base, 'g', ISING_G, relative_levels=True, workers=workers)
        _sweep_tables(bundle, f"n{N}", sweep_interaction(config))
    return bundle

def pic8(seed=DEFAULT_SEED, workers=1):
    """ (a) A_d versus g in [0, 0.3] for sigma in {0.05, 0.1, 0.2} at N=6;
        (b) A_d versus N = 2..8 at g=0.2 for sigma in {0.1, 0.2}, with a
        least-squares line.
    """
    bundle = _bundle('pic8', seed, {"a": {"n_qubits": 6, "sigma": [0.05, 0.1, 0.2]},
                                    "b": {"g": 0.2, "sigma": [0.1, 0.2], "n_qubits": [2, 8]}},
                     [OPEN_CHAIN, "(a) " + FIXED_SEED, "(b) one derived seed per array size"])
    couplings = tuple(np.linspace(0.0, 0.3, 31))
    frames = []
    for sigma in (0.05, 0.1, 0.2):
        base = ArraySpec(6, ShortRangeIsing(0.0), DisorderSpec(sigma, seed=seed))
        config = SweepConfig(base, 'g', couplings, observables=('dominant',), workers=workers)
        frame = sweep_interaction(config).dominant_frame()
        frame.insert(0, "sigma", sigma)
        frames.append(frame)
    bundle.add_table("a_amplitude", pd.concat(frames, ignore_index=True))

    frames, fits = [], {}
    for sigma in (0.1, 0.2):
        base = ArraySpec(2, ShortRangeIsing(0.2), DisorderSpec(sigma, seed=seed))
        config = SweepConfig(base, 'n_qubits', tuple(range(2, 9)),
                             observables=('dominant',), workers=workers)
        result = sweep_size(config)
        frame = result.dominant_frame()
        frame.insert(0, "sigma", sigma)
        frames.append(frame)
        fits[str(sigma)] = dict(result.fit._asdict())
    bundle.add_table("b_amplitude", pd.concat(frames, ignore_index=True))
    bundle.add_document("b_fit", fits)
    return bundle

def pic10(seed=DEFAULT_SEED, workers=1):
    """ Exchange model, N=6 and N=7, sigma=0.12: levels and lines versus
        g in [-0.2, 0.2] (41 points), and the line sets at g=-0.033 (N=6)
        and g=-0.044 (N=7).
    """
    insets = {6: -0.033, 7: -0.044}
    bundle = _bundle('pic10', seed, {"n_qubits": [6, 7], "sigma": 0.12,
                                     "g": list(EXCHANGE_G), "insets": insets},
                     ["all-to-all exchange summed over ordered pairs",
                      "uniform gap equal to the smallest frequency, disorder in the biases",
                      FIXED_SEED])
    for N, g in insets.items():
        base = ArraySpec(N, GlobalExchange(0.0), DisorderSpec(0.12, target='epsilon', seed=seed))
        config = SweepConfig(base, 'g', EXCHANGE_G, relative_levels=True, workers=workers)
        _sweep_tables(bundle, f"n{N}", sweep_interaction(config))
        spec = resolve(replace(base, interaction=GlobalExchange(g)).realize())
        spectrum = diagonalize(assemble(spec).hamiltonian)
        sus = susceptibility_lines(spectrum, total_polarization(spectrum.space))
        bundle.add_table(f"n{N}_inset_lines", sus.to_frame())
    return bundle

def _cavity_base(seed):
    return ArraySpec(4, CavityCoupled(0.0, omega0=1.3, photon_dim=4),
                     DisorderSpec(0.1, seed=seed))

def pic11(seed=DEFAULT_SEED, workers=1):
    """ Cavity model, N=4, sigma=0.1, omega0=1.3, 4 Fock states: levels and
        C_n lines versus gamma in [0, 0.3] for n = 0, 1, 2.
    """
    bundle = _bundle('pic11', seed, {"n_qubits": 4, "sigma": 0.1, "omega0": 1.3,
                                     "photon_dim": 4, "gamma": list(CAVITY_GAMMA)},
                     [FIXED_SEED, "initial states identified by maximal overlap with "
                      "|down...down> x |n>", "levels tracked by sorted order"])
    config = SweepConfig(_cavity_base(seed), 'gamma', CAVITY_GAMMA,
                         observables=('levels', 'lines', 'dominant', 'stark'),
                         relative_levels=True, workers=workers)
    result = sweep_coupling(config)
    _sweep_tables(bundle, "cavity", result)
    bundle.add_table("cavity_stark", result.stark_frame())
    return bundle

def pic6(seed=DEFAULT_SEED, workers=1):
    """ Stark table omega_d(n, gamma) for n = 0, 1, 2 on gamma in [0, 0.15],
        with the perturbative estimate evaluated at the cavity frequency.
    """
    omega0 = 1.3
    bundle = _bundle('pic6', seed, {"n_qubits": 4, "sigma": 0.1, "omega0": omega0,
                                    "photon_dim": 4, "gamma": list(STARK_GAMMA)},
                     [FIXED_SEED, "shifts follow the n-photon image of the n=0 "
                      "dominant final state when that line has positive frequency "
                      "and conserves the photon number, the dominant line otherwise",
                      "perturbative estimate uses the cavity frequency in its denominator"])
    config = SweepConfig(_cavity_base(seed), 'gamma', STARK_GAMMA,
                         observables=('dominant', 'stark'), workers=workers)
    result = sweep_coupling(config)
    table = result.stark_frame()
    base = {n: result.tracks[0].per_fock[n].frequency for n in config.fock_values}
    table["perturbative"] = [perturbative_stark_estimate(base[row.n], row.amplitude,
                                                         row.gamma, row.n, omega0)
                             for row in table.itertuples()]
    bundle.add_table("stark", table)
    bundle.add_document("convergence", result.to_serializable()["convergence"])
    return bundle

PRESETS = {'pic3': pic3,
           'pic5': pic5,
           'pic8': pic8,
           'pic10': pic10,
           'pic11': pic11,
           'pic6': pic6}

def reproduce_figure(name, seed=None, workers=1):
    """ OutputBundle of a figure preset """
    if name not in PRESETS:
        raise KeyError(f"unknown figure '{name}', expected one of {sorted(PRESETS)}")
    seed = DEFAULT_SEED if seed is None else seed
    log.info("reproducing %s with seed %d", name, seed)
    return PRESETS[name](seed=seed, workers=workers)
