""" Coupling graphs of qubit arrays.

    Sites are labelled 0..N-1, matching the qubit order of the Hilbert space.
"""
import networkx as nx

__all__ = ["chain_graph", "ring_graph", "complete_graph", "ising_graph",
           "check_sites"]

def chain_graph(N):
    """ Linear array with open ends: bonds (i, i+1) for i < N-1 """
    G = nx.path_graph(N)
    G.graph['name'] = 'chain'
    return G

def ring_graph(N):
    """ Linear array closed into a ring. For N == 2 the closing bond
        coincides with the single chain bond and is not doubled.
    """
    G = nx.cycle_graph(N) if N > 2 else nx.path_graph(N)
    G.graph['name'] = 'ring'
    return G

def complete_graph(N):
    """ All-to-all coupling, as provided by a common resonator bus """
    G = nx.complete_graph(N)
    G.graph['name'] = 'complete'
    return G

def ising_graph(N, periodic=False):
    return ring_graph(N) if periodic else chain_graph(N)

def check_sites(G, N):
    """ Every node of the coupling graph must be a qubit index """
    bad = [v for v in G.nodes if not (isinstance(v, int) and 0 <= v < N)]
    if bad:
        raise IndexError(f"coupling graph nodes {bad} are not qubit sites of "
                         f"a {N}-qubit array")
    return G
