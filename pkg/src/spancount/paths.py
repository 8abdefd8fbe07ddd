"""ell-paths, ell-cycles, powers of tight cycles, and exact solvers.

An ell-path on vertices v_1..v_t has edges given by the consecutive
k-windows at stride k-ell, so consecutive edges share exactly ell
vertices; an ell-cycle wraps the windows cyclically.  The solvers here
are exhaustive backtracking searches with explicit node budgets: a
partial result never masquerades as an exact one.

Hamilton ell-cycles are counted as sub-hypergraphs (distinct edge
sets), not orderings; rotations, reflections and small-n coincidences
are deduplicated by canonicalizing each found cycle's edge set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import BudgetExceededError, DivisibilityError, InvalidQueryError, InvalidStructureError
from .hypergraphs import Hypergraph


# -- domain types --------------------------------------------------------


def _check_distinct(order: Sequence[int]) -> None:
    if len(set(order)) != len(order):
        raise InvalidStructureError("ordering contains repeated vertices")


@dataclass(frozen=True)
class EllPath:
    """A linear ordering whose edges are k-windows at stride k-ell."""

    order: Tuple[int, ...]
    k: int
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        _check_distinct(self.order)
        t = len(self.order)
        gap = self.k - self.ell
        if not 0 <= self.ell < self.k:
            raise InvalidStructureError(f"need 0 <= ell < k, got ell={self.ell}, k={self.k}")
        if t < self.k:
            raise InvalidStructureError(f"path needs at least k={self.k} vertices, got {t}")
        if (t - self.ell) % gap != 0:
            raise InvalidStructureError(
                f"(k-ell)={gap} must divide (t-ell)={t - self.ell}"
            )

    def windows(self) -> List[Tuple[int, ...]]:
        gap = self.k - self.ell
        t = len(self.order)
        return [self.order[i:i + self.k] for i in range(0, t - self.k + 1, gap)]

    def ends(self) -> "EndPair":
        return EndPair(self.order[:self.ell], self.order[-self.ell:] if self.ell else ())

    def edge_set(self) -> frozenset:
        return frozenset(tuple(sorted(w)) for w in self.windows())


@dataclass(frozen=True)
class EllCycle:
    """A cyclic ordering whose edges are cyclic k-windows at stride k-ell."""

    order: Tuple[int, ...]
    k: int
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        _check_distinct(self.order)
        t = len(self.order)
        gap = self.k - self.ell
        if not 0 <= self.ell < self.k:
            raise InvalidStructureError(f"need 0 <= ell < k, got ell={self.ell}, k={self.k}")
        if t < self.k:
            raise InvalidStructureError(f"cycle needs at least k={self.k} vertices, got {t}")
        if t % gap != 0:
            raise InvalidStructureError(f"(k-ell)={gap} must divide the cycle length {t}")

    def windows(self) -> List[Tuple[int, ...]]:
        gap = self.k - self.ell
        t = len(self.order)
        out = []
        for start in range(0, t, gap):
            out.append(tuple(self.order[(start + i) % t] for i in range(self.k)))
        return out

    def edge_set(self) -> frozenset:
        return frozenset(tuple(sorted(w)) for w in self.windows())


@dataclass(frozen=True)
class PowerCycle:
    """A cyclic ordering where every t consecutive vertices span a clique."""

    order: Tuple[int, ...]
    t: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        _check_distinct(self.order)
        if self.t < self.k:
            raise InvalidStructureError(f"window width t={self.t} must be >= k={self.k}")
        if len(self.order) < self.t:
            raise InvalidStructureError(
                f"cycle needs at least t={self.t} vertices, got {len(self.order)}"
            )


@dataclass(frozen=True)
class EndPair:
    """Ordered, disjoint end tuples of an ell-path."""

    a: Tuple[int, ...]
    b: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != len(self.b):
            raise InvalidStructureError("end tuples must have equal length")
        _check_distinct(self.a)
        _check_distinct(self.b)
        if set(self.a) & set(self.b):
            raise InvalidStructureError("end tuples must be vertex-disjoint")


# -- validators ----------------------------------------------------------


def validate_ell_path(H: Hypergraph, P: EllPath) -> bool:
    """True iff every consecutive k-window of P is an edge of H."""
    if P.k != H.k:
        raise InvalidStructureError(f"path uniformity {P.k} != host uniformity {H.k}")
    if any(v < 0 or v >= H.n for v in P.order):
        raise InvalidStructureError("path visits vertices outside the host")
    return all(H.has_edge(w) for w in P.windows())


def validate_ell_cycle(H: Hypergraph, C: EllCycle) -> bool:
    """True iff every cyclic k-window of C is an edge of H."""
    if C.k != H.k:
        raise InvalidStructureError(f"cycle uniformity {C.k} != host uniformity {H.k}")
    if any(v < 0 or v >= H.n for v in C.order):
        raise InvalidStructureError("cycle visits vertices outside the host")
    return all(H.has_edge(w) for w in C.windows())


def validate_power_cycle(H: Hypergraph, C: PowerCycle) -> bool:
    """True iff every cyclic t-window of C spans a k-uniform clique of H."""
    if C.k != H.k:
        raise InvalidStructureError(f"cycle uniformity {C.k} != host uniformity {H.k}")
    if any(v < 0 or v >= H.n for v in C.order):
        raise InvalidStructureError("cycle visits vertices outside the host")
    n = len(C.order)
    for start in range(n):
        window = [C.order[(start + i) % n] for i in range(C.t)]
        for sub in itertools.combinations(sorted(window), H.k):
            if not H.has_edge(sub):
                return False
    return True


# -- backtracking search core --------------------------------------------


class _Budget:
    """Node counter with a hard error on exhaustion."""

    __slots__ = ("remaining",)

    def __init__(self, limit: Optional[int]):
        self.remaining = limit

    def spend(self) -> None:
        if self.remaining is not None:
            self.remaining -= 1
            if self.remaining < 0:
                raise BudgetExceededError("search budget exhausted; result invalid")


def _search_path(
    H: Hypergraph,
    ell: int,
    a: Tuple[int, ...],
    b: Tuple[int, ...],
    total: int,
    pool: Sequence[int],
    budget: _Budget,
) -> Optional[Tuple[int, ...]]:
    """Find an ell-path ordering of `total` vertices from a to b.

    Interior vertices are drawn from `pool` (which excludes the ends).
    Positions total-ell .. total-1 are forced to equal b in order; a
    window is checked as soon as its last position is filled, and the
    closing vertex of each window is codegree-pruned.
    """
    k = H.k
    gap = k - ell
    order = list(a) + [-1] * (total - ell)
    used = set(a)
    free_set = {v for v in pool if v not in used and v not in set(b)}

    def window_closes_at(p: int) -> bool:
        return p >= k - 1 and (p - k + 1) % gap == 0

    def place(p: int) -> Optional[List[int]]:
        if p == total:
            return order
        budget.spend()
        if p >= total - ell:
            # tail positions are forced to spell out b in order
            v = b[p - (total - ell)]
            if window_closes_at(p) and v not in H.codegree_set(order[p - k + 1:p]):
                return None
            order[p] = v
            result = place(p + 1)
            if result is None:
                order[p] = -1
            return result
        if window_closes_at(p):
            candidates = sorted(H.codegree_set(order[p - k + 1:p]) & free_set - used)
        else:
            candidates = sorted(free_set - used)
        for v in candidates:
            order[p] = v
            used.add(v)
            result = place(p + 1)
            if result is not None:
                return result
            used.discard(v)
            order[p] = -1
        return None

    result = place(ell)
    return tuple(result) if result is not None else None


def _search_cycle(
    H: Hypergraph,
    ell: int,
    pool: Sequence[int],
    budget: _Budget,
) -> Optional[Tuple[int, ...]]:
    """First Hamilton ell-cycle ordering of `pool`, or None.

    Each cyclic k-window at stride k-ell is checked as soon as its last
    position fills; the first pool vertex is pinned to position 0.
    """
    pool = sorted(pool)
    n = len(pool)
    k = H.k
    gap = k - ell
    if n % gap != 0 or n < k:
        raise DivisibilityError(f"(k-ell)={gap} must divide the cycle length {n}")
    windows = [
        tuple((start + i) % n for i in range(k)) for start in range(0, n, gap)
    ]
    close_map: dict = {}
    for w in windows:
        close_map.setdefault(max(w), []).append(w)
    order = [-1] * n
    order[0] = pool[0]
    free = set(pool[1:])

    def place(p: int) -> Optional[List[int]]:
        if p == n:
            return order
        budget.spend()
        for v in sorted(free):
            order[p] = v
            free.discard(v)
            if all(
                H.has_edge(order[q] for q in w) for w in close_map.get(p, ())
            ):
                result = place(p + 1)
                if result is not None:
                    return result
            free.add(v)
            order[p] = -1
        return None

    result = place(1)
    return tuple(result) if result is not None else None


# -- Hamilton path / cycle solvers ---------------------------------------


def find_hamilton_ell_path(
    H: Hypergraph,
    ell: int,
    ends: EndPair,
    budget: Optional[int] = None,
) -> Optional[EllPath]:
    """A spanning ell-path of H from ends.a to ends.b, or None.

    Exhaustive backtracking; raises BudgetExceededError if a node
    budget is given and exhausted before the search concludes.
    """
    k = H.k
    if not 0 <= ell < k:
        raise InvalidQueryError(f"need 0 <= ell < k, got ell={ell}, k={k}")
    if len(ends.a) != ell:
        raise InvalidQueryError(f"end tuples must have length ell={ell}")
    if any(v < 0 or v >= H.n for v in ends.a + ends.b):
        raise InvalidQueryError("end vertices must lie in the host")
    if H.n < 2 * ell:
        raise InvalidQueryError(f"host has {H.n} < 2*ell vertices")
    if (H.n - ell) % (k - ell) != 0:
        raise DivisibilityError(
            f"(k-ell)={k - ell} must divide n-ell={H.n - ell} for a Hamilton ell-path"
        )
    order = _search_path(H, ell, ends.a, ends.b, H.n, range(H.n), _Budget(budget))
    return EllPath(order, k, ell) if order is not None else None


def is_hamilton_path_connected(H: Hypergraph, ell: int, budget: Optional[int] = None) -> bool:
    """True iff every disjoint ordered pair of ell-tuples is joined by a
    spanning ell-path."""
    if not 1 <= ell < H.k:
        raise InvalidQueryError(f"need 1 <= ell < k, got ell={ell}, k={H.k}")
    if H.n < 2 * ell:
        raise InvalidQueryError(f"host has {H.n} < 2*ell vertices")
    if (H.n - ell) % (H.k - ell) != 0:
        raise DivisibilityError(
            f"(k-ell)={H.k - ell} must divide n-ell={H.n - ell}"
        )
    for a in itertools.permutations(range(H.n), ell):
        rest = [v for v in range(H.n) if v not in a]
        for b in itertools.permutations(rest, ell):
            if find_hamilton_ell_path(H, ell, EndPair(a, b), budget=budget) is None:
                return False
    return True


def enumerate_hamilton_ell_cycles(
    H: Hypergraph,
    ell: int,
    mode: str = "count",
    budget: Optional[int] = None,
):
    """Count (or list) the distinct Hamilton ell-cycles of H.

    Distinctness is by edge set: each complete ordering's cyclic
    windows are canonicalized and deduplicated, so rotations and
    reflections of the same sub-hypergraph count once.
    """
    if mode not in ("count", "list"):
        raise InvalidQueryError(f"mode must be 'count' or 'list', got {mode!r}")
    k, n = H.k, H.n
    if not 0 <= ell < k:
        raise InvalidQueryError(f"need 0 <= ell < k, got ell={ell}, k={k}")
    gap = k - ell
    if n % gap != 0:
        raise DivisibilityError(f"(k-ell)={gap} must divide n={n}")
    if n < k or not H.edges:
        return 0 if mode == "count" else []

    windows = [
        tuple((j * gap + i) % n for i in range(k)) for j in range(n // gap)
    ]
    close_map: dict = {}
    for w in windows:
        close_map.setdefault(max(w), []).append(w)

    counter = _Budget(budget)
    found: dict = {}
    order = [-1] * n
    free = set(range(1, n))

    def place(p: int, r0: int) -> None:
        if p == n:
            edge_set = frozenset(
                tuple(sorted(order[q] for q in w)) for w in windows
            )
            found.setdefault(edge_set, tuple(order))
            return
        counter.spend()
        candidates = [0] if p == r0 else sorted(free)
        for v in candidates:
            order[p] = v
            if v != 0:
                free.discard(v)
            if all(
                H.has_edge(order[q] for q in w)
                for w in close_map.get(p, ())
                if all(order[q] >= 0 for q in w)
            ):
                place(p + 1, r0)
            if v != 0:
                free.add(v)
            order[p] = -1

    # any cycle ordering can be rotated by a multiple of (k-ell) to put
    # vertex 0 at a position in [0, k-ell), so these roots are exhaustive
    for r0 in range(gap):
        place(0, r0)
    if mode == "count":
        return len(found)
    return [EllCycle(o, k, ell) for o in found.values()]


# -- cliques and powers of tight cycles ----------------------------------


def clique_graph(H: Hypergraph, t: int) -> Hypergraph:
    """K_t(H): the t-graph whose edges are t-sets spanning k-cliques of H."""
    if t < H.k:
        raise InvalidQueryError(f"clique size t={t} must be >= k={H.k}")
    edges = [
        s
        for s in itertools.combinations(range(H.n), t)
        if all(H.has_edge(sub) for sub in itertools.combinations(s, H.k))
    ]
    return Hypergraph(H.n, t, edges)


def find_clique(H: Hypergraph, t: int, budget: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """A t-set spanning a k-uniform clique of H, or None."""
    if t < H.k:
        raise InvalidQueryError(f"clique size t={t} must be >= k={H.k}")
    counter = _Budget(budget)
    chosen: List[int] = []

    def extend(start: int) -> Optional[Tuple[int, ...]]:
        if len(chosen) == t:
            return tuple(chosen)
        counter.spend()
        for v in range(start, H.n):
            if len(chosen) >= H.k - 1:
                ok = all(
                    v in H.codegree_set(sub)
                    for sub in itertools.combinations(chosen, H.k - 1)
                )
                if not ok:
                    continue
            chosen.append(v)
            result = extend(v + 1)
            if result is not None:
                return result
            chosen.pop()
        return None

    return extend(0)


def default_connector_max_vertices(k: int) -> int:
    """Vertex budget 8*k^5 for short connectors between end tuples."""
    return 8 * k ** 5


def find_short_connector(
    H: Hypergraph,
    ell: int,
    ends: EndPair,
    max_vertices: Optional[int] = None,
    budget: Optional[int] = None,
) -> Optional[EllPath]:
    """A minimum-length ell-path joining ends.a to ends.b, or None.

    Searches in increasing vertex-count order, so a returned connector
    has the fewest vertices of any connector within the budget.
    """
    k = H.k
    if not 1 <= ell < k:
        raise InvalidQueryError(f"need 1 <= ell < k, got ell={ell}, k={k}")
    if len(ends.a) != ell:
        raise InvalidQueryError(f"end tuples must have length ell={ell}")
    if max_vertices is None:
        max_vertices = default_connector_max_vertices(k)
    if max_vertices < 2 * ell:
        raise InvalidQueryError(f"max_vertices={max_vertices} below 2*ell={2 * ell}")
    counter = _Budget(budget)
    gap = k - ell
    t = k
    while (t - ell) % gap != 0 or t < 2 * ell:
        t += 1
    while t <= min(max_vertices, H.n):
        order = _search_path(H, ell, ends.a, ends.b, t, range(H.n), counter)
        if order is not None:
            return EllPath(order, k, ell)
        t += gap
    return None
