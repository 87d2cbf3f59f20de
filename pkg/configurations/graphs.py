import logging
from dataclasses import dataclass, field

import networkx as nx

from formalitykit.exceptions import InputValidationError

logger = logging.getLogger(__name__)


class GraphError(InputValidationError):
    pass


class ConfigGraph:
    """
    Simple graph of a configuration, backed by a networkx Graph.

    Each edge may carry the directed hom-degrees a_uv, a_vu and an edge
    hom-degree d used by the sign rule.
    """

    def __init__(self, vertices, edges=()):
        self.graph = nx.Graph()
        vertices = list(vertices)
        if not vertices:
            raise GraphError("A configuration needs at least one vertex.")
        if len(set(vertices)) != len(vertices):
            raise GraphError("Repeated vertex.")
        self.graph.add_nodes_from(vertices)
        self._edges = []
        for edge in edges:
            u, v, data = self._unpack(edge)
            if u not in self.graph or v not in self.graph:
                raise GraphError(f"Edge ({u}, {v}) uses an unknown vertex.")
            if u == v:
                raise GraphError(f"Self-loop at {u}: configurations have no edge from a vertex to itself.")
            if self.graph.has_edge(u, v):
                raise GraphError(f"Repeated edge between {u} and {v}.")
            degrees = {}
            if data.get('a_uv') is not None:
                degrees[(u, v)] = int(data['a_uv'])
            if data.get('a_vu') is not None:
                degrees[(v, u)] = int(data['a_vu'])
            d = data.get('d')
            self.graph.add_edge(u, v, degrees=degrees, d=None if d is None else int(d))
            self._edges.append((u, v))

    @staticmethod
    def _unpack(edge):
        if isinstance(edge, dict):
            return edge['u'], edge['v'], edge
        if len(edge) == 3:
            return edge[0], edge[1], dict(edge[2])
        u, v = edge
        return u, v, {}

    @classmethod
    def path(cls, m, **data):
        """
        The A_m chain 1 - 2 - ... - m.
        """
        vertices = list(range(1, m + 1))
        return cls(vertices, [(i, i + 1, data) for i in vertices[:-1]])

    @classmethod
    def cycle(cls, m, **data):
        vertices = list(range(1, m + 1))
        return cls(vertices, [(i, i % m + 1, data) for i in vertices])

    def __repr__(self):
        return f"ConfigGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    @property
    def vertices(self):
        return tuple(self.graph.nodes)

    @property
    def edges(self):
        return tuple(self._edges)

    def hom_degree(self, i, j):
        """
        a_ij, the degree of the one-dimensional Hom from P_i to P_j.
        """
        return self.graph.edges[i, j]['degrees'].get((i, j))

    def edge_degree(self, u, v):
        return self.graph.edges[u, v]['d']

    def neighbors(self, v):
        return list(self.graph.neighbors(v))

    def is_tree(self):
        return nx.is_tree(self.graph)

    def cycle_basis(self):
        return nx.cycle_basis(self.graph)


@dataclass
class PotentialSolution:
    """
    Vertex potentials x with x_v - x_u = w(u, v) on every edge, or the
    first cycle whose holonomy does not vanish.
    """

    values: dict | None
    witness: list = field(default_factory=list)
    holonomy: int = 0

    @property
    def feasible(self):
        return self.values is not None


def solve_potentials(graph, weight, modulus=None):
    """
    Integrate an antisymmetric edge weight along BFS spanning trees.

    ``weight(u, v)`` must satisfy weight(v, u) = -weight(u, v). Values are
    integers, or residues when ``modulus`` is given. Each connected
    component is rooted at its first vertex in input order with value 0.
    """
    def reduce(x):
        return x % modulus if modulus else x

    values = {}
    tree = nx.Graph()
    tree.add_nodes_from(graph.vertices)
    for root in graph.vertices:
        if root in values:
            continue
        values[root] = 0
        for u, v in nx.bfs_edges(graph.graph, root):
            values[v] = reduce(values[u] + weight(u, v))
            tree.add_edge(u, v)
    for u, v in graph.edges:
        if tree.has_edge(u, v):
            continue
        holonomy = reduce(values[u] + weight(u, v) - values[v])
        if holonomy:
            # the tree path v -> u closed by the edge u -> v
            witness = nx.shortest_path(tree, v, u)
            logger.debug("potential obstruction %s on cycle %s", holonomy, witness)
            return PotentialSolution(None, witness, holonomy)
    return PotentialSolution(values)
