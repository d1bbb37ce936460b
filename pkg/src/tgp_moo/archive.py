"""
Bounded archive of nondominated solutions.

When the archive overflows, the closest pair in objective space is found
and one member of it is removed, repeatedly, until the capacity is met.
Repeated objective points are kept once, as the lowest id.
Of the pair, the member whose second-nearest neighbour is closer goes;
ties remove the larger id.
"""

import logging
from typing import List, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .dominance import EvaluatedIndividual, nondominated_filter, objective_matrix

logger = logging.getLogger(__name__)

DEFAULT_CAPACITY = 100


def _victim(D: np.ndarray, ids: np.ndarray) -> int:
    """Index (into D) of the member to drop. ``D`` has inf on the diagonal and for removed rows."""
    flat = int(np.argmin(D))
    a, b = divmod(flat, D.shape[1])
    # second-nearest: the closest member other than the pair partner
    da = np.delete(D[a], [a, b]).min(initial=np.inf)
    db = np.delete(D[b], [a, b]).min(initial=np.inf)
    if da < db:
        return a
    if db < da:
        return b
    return a if ids[a] > ids[b] else b


def collapse_duplicates(members: Sequence[EvaluatedIndividual]) -> List[EvaluatedIndividual]:
    """One member per distinct objective point, the lowest id, in input order."""
    keep = {}
    for m in members:
        key = tuple(m.objectives)
        if key not in keep or m.id < keep[key].id:
            keep[key] = m
    chosen = {id(m) for m in keep.values()}
    return [m for m in members if id(m) in chosen]


def prune_to_size(members: Sequence[EvaluatedIndividual], size: int) -> List[EvaluatedIndividual]:
    """Remove closest-pair members one at a time until ``size`` remain."""
    members = list(members)
    if size < 1:
        raise ValueError(f"Cannot prune to size {size}")
    if len(members) <= size:
        return members

    F = objective_matrix(members)
    D = cdist(F, F)
    np.fill_diagonal(D, np.inf)
    ids = np.array([m.id for m in members])
    alive = np.ones(len(members), dtype=bool)

    for _ in range(len(members) - size):
        victim = _victim(D, ids)
        alive[victim] = False
        D[victim, :] = np.inf
        D[:, victim] = np.inf

    return [m for m, keep in zip(members, alive) if keep]


class Archive:
    """Nondominated solutions found so far, at most ``capacity`` of them."""

    def __init__(self, capacity: int = DEFAULT_CAPACITY,
                 members: Sequence[EvaluatedIndividual] = ()):
        if capacity < 1:
            raise ValueError(f"Archive capacity must be positive, got {capacity}")
        self.capacity = capacity
        self.members: List[EvaluatedIndividual] = list(members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def update(self, new_pop: Sequence[EvaluatedIndividual]) -> 'Archive':
        """Merge ``new_pop``, keep the nondominated union, drop repeated points, prune to capacity."""
        candidates = collapse_duplicates(nondominated_filter(self.members + list(new_pop)))
        if len(candidates) > self.capacity:
            logger.debug("Pruning archive from %d to %d members", len(candidates), self.capacity)
        return Archive(self.capacity, prune_to_size(candidates, self.capacity))

    def prune_closest_pair(self) -> 'Archive':
        """Drop exactly one member of the closest pair."""
        if len(self.members) < 2:
            raise ValueError("Closest-pair pruning needs at least 2 members")
        return Archive(self.capacity, prune_to_size(self.members, len(self.members) - 1))
