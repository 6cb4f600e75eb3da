import warnings
import unittest

import numpy as np
import scipy.linalg

from scipy.integrate import trapezoid
from scipy.stats import unitary_group

from sqadyn.exceptions import (BroadeningWarning, ConvergenceWarning,
                               OverlapWarning, ValidationError)
from sqadyn.models.disorder import DisorderSpec, sample
from sqadyn.models.hamiltonians import (CavityCoupled, GlobalExchange, ModelSpec,
                                        QubitParams, ShortRangeIsing, assemble)
from sqadyn.response.correlation import (correlation_time, sum_rule_check,
                                         time_domain_check)
from sqadyn.response.susceptibility import (SpectralLine, Susceptibility,
                                            broaden, dominant_resonance,
                                            merge_lines, photon_mixture,
                                            poisson_distribution, reference_state,
                                            resonance_contrast,
                                            single_qubit_ground,
                                            susceptibility_lines,
                                            susceptibility_nonequilibrium,
                                            thermal_distribution)
from sqadyn.response.transmission import transmission_suppression
from sqadyn.solvers.eigensolve import Spectrum, diagonalize
from sqadyn.space.operators import HilbertSpace, total_polarization

def solve(spec):
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        model = assemble(spec)
    spectrum = diagonalize(model.hamiltonian)
    return spectrum, total_polarization(model.space)

def disordered(N, sigma, interaction=None, seed=11, target='delta'):
    return ModelSpec(sample(DisorderSpec(sigma, target=target, seed=seed), N), interaction)

class TestLines(unittest.TestCase):

    def test_single_qubit(self):
        sus = susceptibility_lines(*solve(ModelSpec(QubitParams.uniform(1))))
        self.assertEqual(len(sus), 1)
        self.assertAlmostEqual(sus.lines[0].frequency, 1.0, places=10)
        self.assertAlmostEqual(sus.lines[0].weight, 1.0, places=10)

    def test_biased_qubit(self):
        sus = susceptibility_lines(*solve(ModelSpec(QubitParams((3.0,), (4.0,)))))
        self.assertEqual(len(sus), 1)
        self.assertAlmostEqual(sus.lines[0].frequency, 5.0, places=10)
        self.assertAlmostEqual(sus.lines[0].weight, 0.36, places=10)

    def test_clean_array_single_line(self):
        sus = susceptibility_lines(*solve(ModelSpec(QubitParams.uniform(6))))
        self.assertEqual(len(sus), 1)
        self.assertAlmostEqual(sus.lines[0].frequency, 1.0, places=10)
        self.assertAlmostEqual(sus.lines[0].weight, 6.0, places=10)

    def test_disordered_array_equal_lines(self):
        spec = disordered(6, 0.2)
        sus = susceptibility_lines(*solve(spec))
        self.assertEqual(len(sus), 6)
        np.testing.assert_allclose(sus.weights, np.ones(6), atol=1e-10)
        np.testing.assert_allclose(sus.frequencies, np.sort(spec.qubits.frequencies), atol=1e-10)
        self.assertAlmostEqual(resonance_contrast(sus), 1.0, places=9)

    def test_mirror_lines(self):
        spectrum, M = solve(ModelSpec(QubitParams.uniform(1)))
        # only the ground state is populated at T = 0
        cold = susceptibility_lines(spectrum, M, mirror=True)
        np.testing.assert_allclose(cold.frequencies, [1.0], atol=1e-12)
        hot = susceptibility_lines(spectrum, M, temperature=1.0, mirror=True)
        np.testing.assert_allclose(hot.frequencies, [-1.0, 1.0], atol=1e-12)
        self.assertAlmostEqual(hot.weights[1]/hot.weights[0], np.e, places=10)
        self.assertEqual(len(hot.positive()), 1)

    def test_merge_keeps_heaviest_levels(self):
        lines = [SpectralLine(1.0, 0.2, 0, 3), SpectralLine(1.0 + 1e-10, 0.5, 0, 4),
                 SpectralLine(2.0, 0.1, 0, 5)]
        merged = merge_lines(lines)
        self.assertEqual(len(merged), 2)
        self.assertAlmostEqual(merged[0].weight, 0.7)
        self.assertEqual(merged[0].to_level, 4)

    def test_regauging_invariance(self):
        spectrum, M = solve(ModelSpec(QubitParams.uniform(4)))
        E = spectrum.eigenvalues
        V = np.array(spectrum.eigenvectors)
        rng = np.random.default_rng(5)
        start = 0
        for stop in list(np.flatnonzero(np.diff(E) > 1e-9) + 1) + [len(E)]:
            k = stop - start
            if k > 1:
                U = unitary_group.rvs(k, random_state=rng)
                V[:, start:stop] = V[:, start:stop] @ U
            start = stop
        regauged = Spectrum(E, V, spectrum.space)
        a = susceptibility_lines(spectrum, M)
        b = susceptibility_lines(regauged, M)
        np.testing.assert_allclose(a.frequencies, b.frequencies, atol=1e-12)
        np.testing.assert_allclose(a.weights, b.weights, atol=1e-10)

    def test_thermal_lines(self):
        spectrum, M = solve(disordered(3, 0.1, ShortRangeIsing(0.1)))
        cold = susceptibility_lines(spectrum, M, temperature=1e-4)
        ground = susceptibility_lines(spectrum, M)
        np.testing.assert_allclose(cold.weights, ground.weights, atol=1e-10)
        self.assertIsNone(cold.reference_level)
        hot = susceptibility_lines(spectrum, M, temperature=0.5, mirror=True)
        self.assertAlmostEqual(hot.total_weight + hot.diagonal_weight, hot.sum_rule, places=10)
        with self.assertRaises(ValidationError):
            susceptibility_lines(spectrum, M, temperature=-1.0)

class TestSumRule(unittest.TestCase):

    def test_regression_models(self):
        specs = [disordered(4, 0.2, ShortRangeIsing(-0.2)),
                 disordered(6, 0.2, ShortRangeIsing(0.2)),
                 disordered(5, 0.12, GlobalExchange(-0.033), target='epsilon'),
                 disordered(3, 0.1, CavityCoupled(0.1, 1.3, 4))]
        for spec in specs:
            spectrum, M = solve(spec)
            for level in (0, 1):
                check = sum_rule_check(spectrum, M, level)
                self.assertLessEqual(check.residual, 1e-10)
                sus = susceptibility_lines(spectrum, M, level, mirror=True)
                self.assertAlmostEqual(sus.total_weight + sus.diagonal_weight,
                                       check.rhs, delta=1e-10)

    def test_noninteracting_value(self):
        spectrum, M = solve(disordered(5, 0.2))
        self.assertAlmostEqual(sum_rule_check(spectrum, M).rhs, 5.0, places=10)

class TestCorrelation(unittest.TestCase):

    def test_single_qubit(self):
        spectrum, M = solve(ModelSpec(QubitParams.uniform(1)))
        t = np.linspace(0.0, 20.0, 201)
        C = correlation_time(spectrum, M, 0.0, t)
        np.testing.assert_allclose(C, np.exp(-1j*t), atol=1e-12)

    def test_initial_value(self):
        spectrum, M = solve(disordered(4, 0.15))
        self.assertAlmostEqual(correlation_time(spectrum, M, 0.0, [0.0])[0].real, 4.0, places=10)

    def test_matrix_exponential_oracle(self):
        spec = ModelSpec(QubitParams.uniform(2), ShortRangeIsing(-0.2))
        spectrum, M = solve(spec)
        H = assemble(spec).hamiltonian.matrix
        g = spectrum.eigenvectors[:, 0]
        for t in (0.0, 0.7, 3.1, 12.5):
            U = scipy.linalg.expm(-1j*H*t)
            expected = np.vdot(g, U.conj().T @ M.matrix @ U @ M.matrix @ g)
            value = correlation_time(spectrum, M, 0.0, [t])[0]
            self.assertAlmostEqual(abs(value - expected), 0.0, places=10)

    def test_rejects_infinite_times(self):
        spectrum, M = solve(ModelSpec(QubitParams.uniform(1)))
        with self.assertRaises(ValidationError):
            correlation_time(spectrum, M, 0.0, [0.0, np.inf])

class TestTimeDomain(unittest.TestCase):

    t0 = 2000*2*np.pi

    def test_single_qubit(self):
        spectrum, M = solve(ModelSpec(QubitParams.uniform(1)))
        line = susceptibility_lines(spectrum, M).lines[0]
        check = time_domain_check(spectrum, M, line, self.t0)
        self.assertLessEqual(check.residual, 1e-3)
        self.assertFalse(check.short)

    def test_small_configurations(self):
        specs = [ModelSpec(QubitParams.uniform(2), ShortRangeIsing(0.2)),
                 disordered(2, 0.2, ShortRangeIsing(-0.2)),
                 disordered(2, 0.2, GlobalExchange(0.1), target='epsilon'),
                 disordered(3, 0.2)]
        for spec in specs:
            spectrum, M = solve(spec)
            for line in susceptibility_lines(spectrum, M).lines:
                self.assertLessEqual(time_domain_check(spectrum, M, line, self.t0).residual, 1e-3)

    def test_off_resonance(self):
        spectrum, M = solve(disordered(2, 0.2))
        lines = susceptibility_lines(spectrum, M).lines
        middle = 0.5*(lines[0].frequency + lines[1].frequency)
        check = time_domain_check(spectrum, M, SpectralLine(middle, 0.0, 0, 0), self.t0)
        self.assertLessEqual(abs(check.numeric), 1e-3)

    def test_forbidden_transition(self):
        g = 0.2
        spectrum, M = solve(ModelSpec(QubitParams.uniform(2), ShortRangeIsing(g)))
        forbidden = -g + np.sqrt(1 + g**2)
        check = time_domain_check(spectrum, M, SpectralLine(forbidden, 0.0, 0, 1), self.t0)
        self.assertLessEqual(abs(check.numeric), 1e-3)

    def test_short_window(self):
        spectrum, M = solve(disordered(2, 0.2))
        line = susceptibility_lines(spectrum, M).lines[0]
        with self.assertWarns(ConvergenceWarning):
            check = time_domain_check(spectrum, M, line, 10.0)
        self.assertTrue(check.short)

class TestResonances(unittest.TestCase):

    def test_single_line(self):
        sus = Susceptibility((SpectralLine(1.3, 0.4, 0, 1),))
        resonance = dominant_resonance(sus)
        self.assertEqual((resonance.frequency, resonance.amplitude), (1.3, 0.4))
        self.assertEqual(resonance_contrast(sus), float('inf'))

    def test_tie_goes_to_lower_frequency(self):
        sus = Susceptibility((SpectralLine(1.2, 1.0, 0, 2), SpectralLine(0.9, 1.0, 0, 1)))
        self.assertEqual(dominant_resonance(sus).frequency, 0.9)

    def test_empty(self):
        with self.assertRaises(ValidationError):
            dominant_resonance(Susceptibility(()))
        with self.assertRaises(ValidationError):
            dominant_resonance(Susceptibility((SpectralLine(-1.0, 1.0, 1, 0),)))

class TestBroadening(unittest.TestCase):

    def test_peak_height(self):
        sus = Susceptibility((SpectralLine(1.0, 1.0, 0, 1),))
        grid = np.linspace(0.0, 2.0, 2001)
        curve = broaden(sus, 0.01, grid).curve[1]
        self.assertAlmostEqual(curve[1000], 1/(np.pi*0.01), places=8)
        self.assertAlmostEqual(curve.max(), 31.830988618, places=6)

    def test_integral(self):
        sus = Susceptibility((SpectralLine(0.9, 0.5, 0, 1), SpectralLine(1.1, 1.5, 0, 2)))
        grid = np.linspace(-50.0, 52.0, 204001)
        grid_sus = broaden(sus, 0.01, grid)
        total = trapezoid(grid_sus.curve[1], grid)
        self.assertAlmostEqual(total, 2.0, delta=0.02)

    def test_resolved_maxima(self):
        sus = Susceptibility((SpectralLine(0.9, 1.0, 0, 1), SpectralLine(1.1, 1.0, 0, 2)))
        grid = np.linspace(0.5, 1.5, 1001)
        values = broaden(sus, 0.01, grid).curve[1]
        peaks = [i for i in range(1, len(grid) - 1)
                 if values[i] > values[i-1] and values[i] > values[i+1]]
        np.testing.assert_allclose(grid[peaks], [0.9, 1.1], atol=1e-9)

    def test_grid_warning(self):
        sus = Susceptibility((SpectralLine(1.0, 1.0, 0, 1),))
        with self.assertWarns(BroadeningWarning):
            result = broaden(sus, 0.1, np.linspace(0.8, 1.2, 41))
        self.assertTrue(result.warnings)
        with self.assertRaises(ValidationError):
            broaden(sus, 0.0, np.linspace(0.0, 2.0, 11))

class TestNonEquilibrium(unittest.TestCase):

    def setUp(self):
        self.spec = disordered(3, 0.1, CavityCoupled(0.0, 1.3, 4))
        self.spectrum, self.M = solve(self.spec)

    def test_single_qubit_ground(self):
        np.testing.assert_allclose(single_qubit_ground(1.0, 0.0), np.array([1, -1])/np.sqrt(2))
        psi = single_qubit_ground(3.0, 4.0)
        h = 0.5*np.array([[4.0, 3.0], [3.0, -4.0]])
        self.assertAlmostEqual(np.vdot(psi, h @ psi).real, -2.5)

    def test_decoupled_cavity(self):
        reference = susceptibility_lines(*solve(ModelSpec(self.spec.qubits)))
        for n in (0, 1, 2):
            sus = susceptibility_nonequilibrium(self.spectrum, self.M, n, self.spec.qubits)
            self.assertAlmostEqual(sus.overlap, 1.0, places=10)
            np.testing.assert_allclose(sus.frequencies, reference.frequencies, atol=1e-12)
            np.testing.assert_allclose(sus.weights, reference.weights, atol=1e-12)

    def test_overlap_gate(self):
        with self.assertWarns(OverlapWarning):
            sus = susceptibility_nonequilibrium(self.spectrum, self.M, 0,
                                                self.spec.qubits, threshold=1.5)
        self.assertTrue(sus.warnings)

    def test_fock_bounds(self):
        with self.assertRaises(IndexError):
            susceptibility_nonequilibrium(self.spectrum, self.M, 4, self.spec.qubits)
        with self.assertRaises(ValidationError):
            reference_state(HilbertSpace(3), self.spec.qubits, 0)

class TestMixtures(unittest.TestCase):

    def setUp(self):
        self.C0 = Susceptibility((SpectralLine(1.0, 2.0, 0, 1),), sum_rule=2.0)
        self.C1 = Susceptibility((SpectralLine(1.2, 2.0, 4, 5),), sum_rule=2.0)

    def test_pure_state(self):
        mixed = photon_mixture({0: self.C0, 1: self.C1}, {0: 1.0, 1: 0.0})
        np.testing.assert_array_equal(mixed.frequencies, self.C0.frequencies)
        np.testing.assert_array_equal(mixed.weights, self.C0.weights)

    def test_equal_mixture(self):
        mixed = photon_mixture({0: self.C0, 1: self.C1}, {0: 0.5, 1: 0.5})
        np.testing.assert_allclose(mixed.weights, [1.0, 1.0])
        self.assertEqual(mixed.label, 'C_ph')

    def test_poisson_linearity(self):
        P = poisson_distribution(0.7, [0, 1])
        self.assertAlmostEqual(sum(P.values()), 1.0, places=12)
        mixed = photon_mixture({0: self.C0, 1: self.C1}, P)
        expected = P[0]*self.C0.total_weight + P[1]*self.C1.total_weight
        self.assertAlmostEqual(mixed.total_weight, expected, places=12)

    def test_thermal(self):
        P = thermal_distribution(0.5, [0, 1, 2])
        self.assertAlmostEqual(sum(P.values()), 1.0, places=12)
        self.assertGreater(P[0], P[1])
        self.assertEqual(thermal_distribution(0.0, [0, 1]), {0: 1.0, 1: 0.0})

    def test_normalization(self):
        with self.assertRaises(ValidationError):
            photon_mixture({0: self.C0, 1: self.C1}, {0: 0.5, 1: 0.4})
        with self.assertRaises(ValidationError):
            photon_mixture({0: self.C0}, {0: 0.5, 1: 0.5})

class TestTransmission(unittest.TestCase):

    def test_identity(self):
        spectrum, M = solve(disordered(4, 0.2, ShortRangeIsing(-0.2)))
        sus = susceptibility_lines(spectrum, M)
        delta_s21 = transmission_suppression(sus)
        np.testing.assert_array_equal(delta_s21.weights, sus.weights)
        self.assertEqual(delta_s21.label, 'delta_s21')
        self.assertEqual(dominant_resonance(delta_s21).frequency, dominant_resonance(sus).frequency)

    def test_scaled(self):
        sus = Susceptibility((SpectralLine(1.0, 1.0, 0, 1), SpectralLine(1.5, 0.5, 0, 2)))
        delta_s21 = transmission_suppression(sus, -2.0)
        np.testing.assert_allclose(delta_s21.weights, [2.0, 1.0])
        self.assertEqual(delta_s21.scale, -2.0)
        self.assertEqual(dominant_resonance(delta_s21).frequency, 1.0)
