import logging
from dataclasses import dataclass, field

from .graphs import GraphError, solve_potentials

logger = logging.getLogger(__name__)


@dataclass
class SignAssignment:
    signs: dict | None
    witness: list = field(default_factory=list)
    # some independent cycle mixes odd and even degrees
    extrapolated: bool = False

    @property
    def feasible(self):
        return self.signs is not None

    def as_dict(self):
        return {
            'feasible': self.feasible,
            'signs': None if self.signs is None else {str(v): s for v, s in self.signs.items()},
            'witness': [str(v) for v in self.witness],
            'extrapolated': self.extrapolated,
        }


def _require_degrees(graph):
    for u, v in graph.edges:
        if graph.edge_degree(u, v) is None:
            raise GraphError(f"Edge ({u}, {v}) has no hom-degree d.")


def _cycle_edges(cycle):
    return zip(cycle, cycle[1:] + cycle[:1])


def sign_assignment(graph):
    """
    Signs eps_v with eps_u * eps_v = (-1)^d on every edge.

    Solved as Z/2 potentials; an odd cycle of degrees is returned as the
    witness instead.
    """
    _require_degrees(graph)
    solution = solve_potentials(graph, lambda u, v: graph.edge_degree(u, v) % 2, modulus=2)
    extrapolated = any(
        len({graph.edge_degree(u, v) % 2 for u, v in _cycle_edges(cycle)}) > 1
        for cycle in graph.cycle_basis()
    )
    if extrapolated:
        logger.warning("sign_assignment: cycle with mixed degree parities; holonomy rule extrapolated")
    if not solution.feasible:
        return SignAssignment(None, solution.witness, extrapolated)
    signs = {v: -1 if x else 1 for v, x in solution.values.items()}
    return SignAssignment(signs, extrapolated=extrapolated)


def cycle_parity_holds(graph):
    """
    True iff every cycle has even total degree, checked on a cycle basis.
    """
    _require_degrees(graph)
    return all(
        sum(graph.edge_degree(u, v) for u, v in _cycle_edges(cycle)) % 2 == 0
        for cycle in graph.cycle_basis()
    )
