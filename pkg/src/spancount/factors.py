"""Exact F-factor search, counting, and factor stitching.

An F-factor is a set of vertex-disjoint copies of a pattern k-graph F
covering every vertex of the host.  Copies are canonicalized by their
vertex set together with the edge image in the host, and decompositions
are sets of canonical copies, so counting never multiplies by pattern
automorphisms or by the order copies were found in.

Backtracking always covers the smallest uncovered vertex next, which
eliminates permutation overcounting of the copies during enumeration.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .bounds import RationalBracket, exp_neg_bracket
from .bounds import multinomial as _multinomial
from .errors import DivisibilityError, InvalidQueryError
from .hypergraphs import Hypergraph, complete
from .partition import Partition, SizeVector
from .paths import _Budget


@dataclass(frozen=True)
class FactorSpec:
    """The pattern k-graph F; t is its vertex count."""

    F: Hypergraph

    def __post_init__(self):
        if not self.F.edges:
            raise InvalidQueryError("pattern F must have at least one edge")

    @property
    def t(self) -> int:
        return self.F.n


def single_edge_spec(k: int) -> FactorSpec:
    """F = one edge on k vertices; factors are perfect matchings."""
    return FactorSpec(complete(k, k))


@dataclass(frozen=True)
class FactorDecomposition:
    """Vertex-disjoint injections of V(F) into V(H) covering V(H).

    Each copy is the injection as a tuple: copy[i] is the host vertex
    that F's vertex i maps to.
    """

    copies: Tuple[Tuple[int, ...], ...]

    def vertex_sets(self) -> List[frozenset]:
        return [frozenset(c) for c in self.copies]

    def to_json(self) -> str:
        return json.dumps({"copies": [list(c) for c in self.copies]})


def verify_decomposition(H: Hypergraph, spec: FactorSpec, dec: FactorDecomposition) -> bool:
    """Independent check: disjointness, coverage, edge preservation."""
    covered: set = set()
    for copy in dec.copies:
        if len(copy) != spec.t or len(set(copy)) != spec.t:
            return False
        if covered & set(copy):
            return False
        covered |= set(copy)
        for e in spec.F.edges:
            if not H.has_edge(copy[v] for v in e):
                return False
    return covered == set(range(H.n))


def _canonical_copies(
    H: Hypergraph, spec: FactorSpec, available: Sequence[int], anchor: int
) -> List[Tuple[Tuple[int, ...], frozenset]]:
    """Distinct copies of F on `available` vertices containing `anchor`.

    Returns (representative injection, edge image) pairs, one per
    distinct (vertex set, edge image); sorted for determinism.
    """
    found: Dict[Tuple[Tuple[int, ...], frozenset], Tuple[int, ...]] = {}
    pool = [v for v in available if v != anchor]
    for rest in itertools.combinations(pool, spec.t - 1):
        vset = tuple(sorted((anchor,) + rest))
        for perm in itertools.permutations(vset):
            image = []
            ok = True
            for e in spec.F.edges:
                img = tuple(sorted(perm[v] for v in e))
                if not H.has_edge(img):
                    ok = False
                    break
                image.append(img)
            if ok:
                key = (vset, frozenset(image))
                found.setdefault(key, perm)
    return sorted((found[key], key[1]) for key in found)


def _factor_search(
    H: Hypergraph,
    spec: FactorSpec,
    budget: Optional[int],
    count_all: bool,
):
    """Shared backtracking core: first decomposition, or the exact count."""
    if H.n % spec.t != 0:
        raise DivisibilityError(f"|F| = {spec.t} must divide |H| = {H.n}")
    if spec.F.k != H.k:
        raise InvalidQueryError(f"pattern uniformity {spec.F.k} != host uniformity {H.k}")
    counter = _Budget(budget)
    total = 0
    chosen: List[Tuple[int, ...]] = []

    def descend(uncovered: frozenset):
        nonlocal total
        if not uncovered:
            total += 1
            return tuple(chosen) if not count_all else None
        counter.spend()
        anchor = min(uncovered)
        for injection, _image in _canonical_copies(H, spec, sorted(uncovered), anchor):
            chosen.append(injection)
            result = descend(uncovered - frozenset(injection))
            chosen.pop()
            if result is not None:
                return result
        return None

    result = descend(frozenset(range(H.n)))
    return total if count_all else result


def find_f_factor(
    H: Hypergraph, spec: FactorSpec, budget: Optional[int] = None
) -> Optional[FactorDecomposition]:
    """An F-factor of H found by exact backtracking, or None."""
    result = _factor_search(H, spec, budget, count_all=False)
    if result is None:
        return None
    dec = FactorDecomposition(result)
    if not verify_decomposition(H, spec, dec):
        raise AssertionError("factor search returned an invalid decomposition")
    return dec


def count_f_factors(H: Hypergraph, spec: FactorSpec, budget: Optional[int] = None) -> int:
    """Exact number of distinct F-factors of H."""
    return _factor_search(H, spec, budget, count_all=True)


def perfect_matching(H: Hypergraph, budget: Optional[int] = None) -> Optional[FactorDecomposition]:
    """A perfect matching of H (F = single edge), or None."""
    if H.n % H.k != 0:
        raise DivisibilityError(f"k = {H.k} must divide |H| = {H.n}")
    return find_f_factor(H, single_edge_spec(H.k), budget)


def matching_count_closed_form(n: int, k: int) -> int:
    """Perfect matchings of the complete k-graph: n! / ((k!)^(n/k) (n/k)!)."""
    if n % k != 0:
        raise DivisibilityError(f"k = {k} must divide n = {n}")
    q = n // k
    return math.factorial(n) // (math.factorial(k) ** q * math.factorial(q))


def stitch_factor(
    H: Hypergraph, P: Partition, spec: FactorSpec, budget: Optional[int] = None
) -> Optional[FactorDecomposition]:
    """Per-block F-factors over a partition, unioned; None if any block fails."""
    copies: List[Tuple[int, ...]] = []
    for block in P.blocks:
        if len(block) % spec.t != 0:
            raise DivisibilityError(
                f"|F| = {spec.t} must divide the block size {len(block)}"
            )
        sub = H.induced(block)
        dec = find_f_factor(sub.graph, spec, budget)
        if dec is None:
            return None
        copies.extend(sub.globalize(c) for c in dec.copies)
    result = FactorDecomposition(tuple(copies))
    if not verify_decomposition(H, spec, result):
        raise AssertionError("stitched factor failed verification")
    return result


def partition_multiplicity_bound(n: int, t: int) -> int:
    """(n/t)^(n/t): partitions a single F-factor can be compatible with."""
    if t < 1 or n % t != 0:
        raise DivisibilityError(f"t = {t} must divide n = {n}")
    q = n // t
    return q ** q


def factor_lower_bound(
    n: int, t: int, sv: SizeVector, precision_bits: int = 64
) -> RationalBracket:
    """Bracket of e^{-n} * exp(-(n/t) log n) * multinomial(n; sizes).

    exp(-(n/t) log n) = n^(-n/t) is exact when t divides n; only the
    e^{-n} factor needs directed rounding.
    """
    if t < 1 or n % t != 0:
        raise DivisibilityError(f"t = {t} must divide n = {n}")
    if sv.n != n:
        raise InvalidQueryError(f"size vector sums to {sv.n}, expected {n}")
    mult = _multinomial(n, sv.sizes)
    scale = Fraction(mult, n ** (n // t))
    e_lo, e_hi = exp_neg_bracket(n, precision_bits)
    return RationalBracket(e_lo * scale, e_hi * scale)


@dataclass(frozen=True)
class MatchingCycleRelation:
    """Perfect matchings vs Hamilton 0-cycles of the same host.

    A Hamilton 0-cycle's edge set is exactly a perfect matching;
    ordering the n/k edges cyclically multiplies the count by
    ((n/k) - 1)! / 2.  `ratio_check` confirms the matching count from
    the factor counter equals the 0-cycle count (distinct edge sets)
    from the cycle enumerator.
    """

    matchings: int
    zero_cycle_orderings: int
    ratio_check: bool


def matching_zero_cycle_relation(
    H: Hypergraph, budget: Optional[int] = None
) -> MatchingCycleRelation:
    from .paths import enumerate_hamilton_ell_cycles

    n, k = H.n, H.k
    if n % k != 0:
        raise DivisibilityError(f"k = {k} must divide n = {n}")
    if n < 3 * k:
        raise InvalidQueryError(f"need n >= 3k = {3 * k}, got n = {n}")
    matchings = count_f_factors(H, single_edge_spec(k), budget)
    arrangement_factor = math.factorial(n // k - 1) // 2
    zero_cycles = enumerate_hamilton_ell_cycles(H, 0, mode="count", budget=budget)
    return MatchingCycleRelation(
        matchings=matchings,
        zero_cycle_orderings=matchings * arrangement_factor,
        ratio_check=(matchings == zero_cycles),
    )
