import networkx as nx

from decorator import decorator

from sqadyn.exceptions import ValidationError

__all__ = ["coupling_graph", "hermitian"]

""" =============================== NetworkX ============================= """

def coupling_graph(*graph_index):
    """ Supports graph arguments given as NetworkX graphs or edge lists, and
        leaves `None` untouched so the callee can pick its default topology.
    """
    def _parse_graph(G):
        if G is None or isinstance(G, nx.Graph):
            H = G
        elif isinstance(G, (list, tuple)):
            H = nx.Graph()
            H.add_edges_from(G)
        else:
            raise TypeError("Unsupported type of coupling graph.")
        return H

    @decorator
    def _graph_argument(func, *args, **kwargs):
        new_args = list(args)
        for i in graph_index:
            new_args[i] = _parse_graph(new_args[i])
        return func(*new_args, **kwargs)
    return _graph_argument

""" ============================== Hermiticity ============================ """

def hermitian(tol=1e-12):
    """ Check that the `Operator` returned by the wrapped constructor is
        Hermitian: max|A - A^H| <= tol * max|A|.
    """
    @decorator
    def _hermitian_result(func, *args, **kwargs):
        op = func(*args, **kwargs)
        error = op.hermiticity_error()
        if error > tol:
            raise ValidationError(f"{func.__name__} produced a non-Hermitian "
                                  f"operator (relative error {error:.3e})")
        return op
    return _hermitian_result
