import logging
from dataclasses import dataclass, field

from .graphs import GraphError, solve_potentials

logger = logging.getLogger(__name__)


class SerreDualityError(GraphError):
    pass


@dataclass
class ShiftNormalization:
    h: int
    shifts: dict | None
    normalized: dict = field(default_factory=dict)
    witness: list = field(default_factory=list)
    holonomy: int = 0

    @property
    def feasible(self):
        return self.shifts is not None

    def as_dict(self):
        return {
            'h': self.h,
            'feasible': self.feasible,
            'shifts': None if self.shifts is None else {str(v): n for v, n in self.shifts.items()},
            'normalized': {f'{u}->{v}': d for (u, v), d in self.normalized.items()},
            'witness': [str(v) for v in self.witness],
            'holonomy': self.holonomy,
        }


def normalize_shifts(graph, nk):
    """
    Shifts n_v making every hom-degree equal to h = nk/2.

    Shifting P_v to P_v[n_v] turns a_ij into a_ij + n_i - n_j, so the shifts
    solve n_j - n_i = a_ij - h along every edge.
    """
    if nk % 2:
        raise GraphError(f"nk must be even, got {nk}.")
    h = nk // 2
    for u, v in graph.edges:
        a_uv, a_vu = graph.hom_degree(u, v), graph.hom_degree(v, u)
        if a_uv is None or a_vu is None:
            raise GraphError(f"Edge ({u}, {v}) needs both hom-degrees a_uv and a_vu.")
        if a_uv + a_vu != nk:
            raise SerreDualityError(f"Edge ({u}, {v}): a_uv + a_vu = {a_uv + a_vu}, expected nk = {nk}.")

    solution = solve_potentials(graph, lambda i, j: graph.hom_degree(i, j) - h)
    if not solution.feasible:
        logger.info("normalize_shifts: obstruction %d on cycle %s", solution.holonomy, solution.witness)
        return ShiftNormalization(h, None, witness=solution.witness, holonomy=solution.holonomy)
    shifts = solution.values
    normalized = {}
    for u, v in graph.edges:
        for i, j in ((u, v), (v, u)):
            normalized[(i, j)] = graph.hom_degree(i, j) + shifts[i] - shifts[j]
    return ShiftNormalization(h, shifts, normalized)
