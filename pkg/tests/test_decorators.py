import unittest
import numpy as np
import networkx as nx

from sqadyn.exceptions import ValidationError
from sqadyn.space.operators import HilbertSpace, Operator
from sqadyn.utilities.decorators import coupling_graph, hermitian

class TestDecorators(unittest.TestCase):

    def test_coupling_graph(self):
        self.mock_graph_method([(0, 1), (1, 2)])
        self.mock_graph_method(((0, 1), (1, 2)))
        self.mock_graph_method(nx.path_graph(3))
        self.assertIsNone(self.mock_optional_graph_method(None))

    def test_coupling_graph_rejects(self):
        with self.assertRaises(TypeError):
            self.mock_graph_method("0-1")

    def test_hermitian(self):
        space = HilbertSpace(1)
        op = self.mock_operator(space, [[1.0, 1j], [-1j, -1.0]])
        self.assertTrue(op.is_hermitian())
        with self.assertRaises(ValidationError):
            self.mock_operator(space, [[0.0, 1.0], [0.0, 0.0]])

    def test_hermitian_tolerance(self):
        space = HilbertSpace(1)
        nearly = np.array([[1.0, 1e-9], [0.0, 1.0]])
        with self.assertRaises(ValidationError):
            self.mock_operator(space, nearly)
        self.assertIsNotNone(self.mock_loose_operator(space, nearly))

    @coupling_graph(1)
    def mock_graph_method(self, G):
        self.assertIsInstance(G, nx.Graph)
        self.assertEqual(G.number_of_edges(), 2)

    @coupling_graph(1)
    def mock_optional_graph_method(self, G):
        return G

    @hermitian()
    def mock_operator(self, space, matrix):
        return Operator(space, matrix)

    @hermitian(tol=1e-6)
    def mock_loose_operator(self, space, matrix):
        return Operator(space, matrix)
