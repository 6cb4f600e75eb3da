import unittest

import numpy as np

from hypothesis import given, settings
from hypothesis import strategies as st

from sqadyn.exceptions import ConfigurationError, ValidationError
from sqadyn.models.disorder import DisorderSpec, sample
from sqadyn.models.hamiltonians import CavityCoupled, ModelSpec, ShortRangeIsing
from sqadyn.response.stark import (StarkTrack, check_fock_values,
                                   perturbative_stark_estimate, stark_point,
                                   stark_track)

def cavity_model(gamma, N=4, sigma=0.1, seed=21):
    return ModelSpec(sample(DisorderSpec(sigma, seed=seed), N), CavityCoupled(gamma, 1.3, 4))

class TestStarkPoint(unittest.TestCase):

    def test_decoupled_cavity(self):
        for follow in ('matched', 'dominant'):
            track = stark_point(cavity_model(0.0), follow=follow)
            self.assertEqual(track.fock_values, [0, 1, 2])
            for n in (1, 2):
                self.assertLessEqual(abs(track.shifts[n]), 1e-12)
                self.assertAlmostEqual(track.amplitude(n), track.amplitude(0), places=10)
            self.assertEqual(track.shifts[0], 0.0)

    def test_quadratic_in_coupling(self):
        gammas = [0.01, 0.02, 0.04]
        tracks = stark_track(cavity_model(0.0), gammas)
        shifts = np.array([abs(track.shifts[1]) for track in tracks])
        slope = np.polyfit(np.log(gammas), np.log(shifts), 1)[0]
        self.assertAlmostEqual(slope, 2.0, delta=0.3)

    def test_equal_spacing(self):
        track = stark_point(cavity_model(0.02))
        first = track.shifts[1] - track.shifts[0]
        second = track.shifts[2] - track.shifts[1]
        self.assertLessEqual(abs(second - first), 0.3*abs(first))

    def test_photon_diagnostic(self):
        track = stark_point(cavity_model(0.05))
        for n in track.fock_values:
            initial, final = track.photon_numbers[n]
            self.assertLess(abs(final - initial), 0.5)
            self.assertAlmostEqual(initial, n, delta=0.5)
            self.assertGreater(track.overlaps[n], 0.25)

    def test_matched_lines_are_admissible(self):
        for gamma in (0.05, 0.2, 0.3):
            track = stark_point(cavity_model(gamma))
            raw = stark_point(cavity_model(gamma), follow='dominant')
            for n in track.fock_values:
                self.assertGreater(track.frequency(n), 0.0)
                initial, final = track.photon_numbers[n]
                if track.frequency(n) != raw.frequency(n):
                    self.assertLess(abs(final - initial), 0.5)

    def test_rows_and_serialization(self):
        track = stark_point(cavity_model(0.03))
        rows = track.to_rows()
        self.assertEqual([row["n"] for row in rows], [0, 1, 2])
        copy = StarkTrack.from_serializable(track.to_serializable())
        self.assertEqual(copy.shifts, track.shifts)
        self.assertEqual(copy.frequency(2), track.frequency(2))

    def test_requires_cavity(self):
        spec = ModelSpec(sample(DisorderSpec(0.1, seed=1), 3), ShortRangeIsing(0.1))
        with self.assertRaises(ConfigurationError):
            stark_point(spec)
        with self.assertRaises(ConfigurationError):
            stark_point(cavity_model(0.01), follow='nearest')

    def test_non_contiguous_track(self):
        with self.assertRaises(ValidationError):
            StarkTrack(0.1, {0: None, 2: None}, {0: 0.0, 2: 0.0})

class TestFockValues(unittest.TestCase):

    def test_valid(self):
        self.assertEqual(check_fock_values((2, 0, 1), 4), [0, 1, 2])

    def test_invalid(self):
        with self.assertRaises(ConfigurationError) as context:
            check_fock_values((0, 2), 5)
        self.assertEqual(context.exception.field, "sweep.fock_values")
        with self.assertRaises(ConfigurationError):
            check_fock_values((0, 1, 2), 3)
        with self.assertRaises(ConfigurationError):
            check_fock_values((), 4)

class TestPerturbativeEstimate(unittest.TestCase):

    def test_decoupled(self):
        self.assertEqual(perturbative_stark_estimate(1.0, 4.0, 0.0, 2, 1.3), 1.0)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(min_value=0.001, max_value=0.2),
           st.floats(min_value=0.5, max_value=6.0))
    def test_scaling(self, gamma, A_d):
        omega_d0, probe = 1.0, 1.3
        shift = lambda g, n: perturbative_stark_estimate(omega_d0, A_d, g, n, probe) - omega_d0
        self.assertAlmostEqual(shift(2*gamma, 0)/shift(gamma, 0), 4.0, places=9)
        self.assertAlmostEqual(shift(gamma, 1)/shift(gamma, 0), 3.0, places=9)

    def test_on_resonance(self):
        with self.assertRaises(ValidationError):
            perturbative_stark_estimate(1.3, 4.0, 0.1, 0, 1.3)
