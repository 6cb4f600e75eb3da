import unittest

import numpy as np

from hypothesis import given, settings
from hypothesis import strategies as st

from sqadyn.exceptions import ConfigurationError, ValidationError
from sqadyn.space.operators import (HilbertSpace, Operator, StateVector,
                                    basis_index, boson_ladder, commutator,
                                    identity, number_operator, pauli_site,
                                    product_state, total_polarization)

class TestHilbertSpace(unittest.TestCase):

    def test_dimensions(self):
        space = HilbertSpace(3)
        self.assertEqual(space.total_dim, 8)
        self.assertFalse(space.has_photons)
        space = HilbertSpace(4, 4)
        self.assertEqual(space.total_dim, 64)
        self.assertTrue(space.has_photons)

    def test_invalid(self):
        with self.assertRaises(ConfigurationError):
            HilbertSpace(0)
        with self.assertRaises(ConfigurationError):
            HilbertSpace(2, -1)

    def test_basis_index(self):
        space = HilbertSpace(2, 4)
        self.assertEqual(basis_index(space, (0, 0)), 0)
        self.assertEqual(basis_index(space, (1, 0), fock=2), 10)
        self.assertEqual(basis_index(space, (0, 1), fock=3), 7)
        with self.assertRaises(IndexError):
            basis_index(space, (0, 0), fock=4)

class TestOperators(unittest.TestCase):

    def test_pauli_site_ordering(self):
        space = HilbertSpace(2)
        Z0 = pauli_site(space, 'z', 0).matrix.diagonal().real
        Z1 = pauli_site(space, 'z', 1).matrix.diagonal().real
        np.testing.assert_array_equal(Z0, [1, 1, -1, -1])
        np.testing.assert_array_equal(Z1, [1, -1, 1, -1])

    def test_pauli_site_bounds(self):
        space = HilbertSpace(2)
        with self.assertRaises(IndexError):
            pauli_site(space, 'x', 2)
        with self.assertRaises(ConfigurationError):
            pauli_site(space, 'w', 0)

    def test_total_polarization(self):
        space = HilbertSpace(3, 2)
        M = total_polarization(space)
        diag = M.matrix.diagonal().real
        self.assertEqual(sorted(set(diag)), [-3, -1, 1, 3])
        # every qubit configuration repeats once per Fock state
        np.testing.assert_array_equal(diag[0::2], diag[1::2])
        expected = sum(pauli_site(space, 'z', i).matrix for i in range(3))
        np.testing.assert_allclose(M.matrix, expected)

    def test_ladder_truncation(self):
        space = HilbertSpace(1, 4)
        a = boson_ladder(space, 'annihilate')
        adag = boson_ladder(space, 'create')
        C = commutator(a, adag).matrix.diagonal().real
        np.testing.assert_allclose(C, [1, 1, 1, -3]*2)
        n = number_operator(space)
        np.testing.assert_allclose((adag @ a).matrix, n.matrix)

    def test_ladder_requires_mode(self):
        with self.assertRaises(ConfigurationError):
            boson_ladder(HilbertSpace(2), 'create')
        with self.assertRaises(ConfigurationError):
            boson_ladder(HilbertSpace(2, 3), 'destroy')

    def test_operator_algebra(self):
        space = HilbertSpace(1)
        X = pauli_site(space, 'x', 0)
        Y = pauli_site(space, 'y', 0)
        Z = pauli_site(space, 'z', 0)
        np.testing.assert_allclose((X @ Y).matrix, (1j*Z).matrix)
        np.testing.assert_allclose((2*X - X).matrix, X.matrix)
        np.testing.assert_allclose((X @ X).matrix, identity(space).matrix)
        self.assertTrue(Z.is_hermitian())
        self.assertFalse((1j*Z).is_hermitian())
        with self.assertRaises(ConfigurationError):
            X + pauli_site(HilbertSpace(2), 'x', 0)

    def test_matrix_is_read_only(self):
        Z = pauli_site(HilbertSpace(1), 'z', 0)
        with self.assertRaises(ValueError):
            Z.matrix[0, 0] = 2.0

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=2, max_value=4), st.data())
    def test_distinct_sites_commute(self, N, data):
        space = HilbertSpace(N)
        i = data.draw(st.integers(min_value=0, max_value=N-1))
        j = data.draw(st.integers(min_value=0, max_value=N-1).filter(lambda k: k != i))
        a = data.draw(st.sampled_from('xyz'))
        b = data.draw(st.sampled_from('xyz'))
        C = commutator(pauli_site(space, a, i), pauli_site(space, b, j))
        self.assertEqual(np.max(np.abs(C.matrix)), 0.0)

class TestStates(unittest.TestCase):

    def test_product_state(self):
        space = HilbertSpace(2, 3)
        up, down = np.array([1, 0]), np.array([0, 1])
        psi = product_state(space, [down, up], fock=2)
        index = basis_index(space, (1, 0), fock=2)
        self.assertAlmostEqual(abs(psi.amplitudes[index]), 1.0, places=14)
        self.assertAlmostEqual(psi.norm, 1.0, places=14)

    def test_product_state_defaults_to_vacuum(self):
        space = HilbertSpace(1, 3)
        psi = product_state(space, [np.array([1, 0])])
        self.assertEqual(abs(psi.amplitudes[0]), 1.0)

    def test_product_state_checks(self):
        space = HilbertSpace(1, 3)
        with self.assertRaises(IndexError):
            product_state(space, [np.array([1, 0])], fock=3)
        with self.assertRaises(ConfigurationError):
            product_state(space, [np.array([1, 1])])
        with self.assertRaises(ConfigurationError):
            product_state(space, [np.array([1, 0]), np.array([1, 0])])

    def test_expectation(self):
        space = HilbertSpace(1)
        plus = StateVector(space, [1, 1])
        self.assertAlmostEqual(pauli_site(space, 'x', 0).expectation(plus).real, 1.0)
        self.assertAlmostEqual(abs(pauli_site(space, 'z', 0).expectation(plus)), 0.0)

    def test_hermitian_guard(self):
        from sqadyn.utilities.decorators import hermitian

        @hermitian()
        def skew(space):
            return Operator(space, [[0, 1], [-1, 0]])

        with self.assertRaises(ValidationError):
            skew(HilbertSpace(1))
