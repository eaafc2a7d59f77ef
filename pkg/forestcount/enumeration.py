"""
Enumeration
Exhaustive, deterministic enumerators used as oracles for every closed form

Strategies:
- Unrooted forests: pre-order search over edge subsets in lexicographic order,
  acyclicity maintained incrementally with an undoable DisjointSet
- Rooted and PPR forests: parent-tuple backtracking, vertex by vertex, with
  choices tried in encoding order (ROOT first, then labels ascending) and a
  cycle check on every link

Both strategies emit structures in canonical encoding order by construction.
Counting may fan out across processes by fixing the top of the search tree;
streams themselves are always sequential.
"""

from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from forestcount.disjoint_set import DisjointSet
from forestcount.errors import CapacityError, DomainError
from forestcount.forest_model import ROOT, Parent, PPRForest, RootedForest, UnrootedForest
from forestcount.observability import instrument_operation, record_enumerated

DEFAULT_LIMIT = 8

KINDS = ('unrooted', 'ppr', 'rooted')

# Marks a vertex whose parent has not been chosen yet
_UNSET = -1

Prefix = Tuple[Parent, ...]


def _check_size(what: str, n: int, limit: int):
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"{what}: n must be a nonnegative integer, got {n!r}")
    if n > limit:
        raise CapacityError(what, n, limit)


# ============================================================================
# Search Primitives
# ============================================================================

def _closes_cycle(work: List[Parent], v: int, p: int) -> bool:
    """Would linking v under p close a cycle among the links chosen so far?"""
    x = p
    while True:
        if x == v:
            return True
        up = work[x]
        if up is ROOT or up == _UNSET:
            return False
        x = up


def _parent_tuples(
    size: int,
    order: Sequence[int],
    options: Callable[[int], Sequence[Parent]],
    prefix: Prefix = (),
    min_roots: int = 0,
    max_roots: Optional[int] = None
) -> Iterator[Tuple[Parent, ...]]:
    """
    Every acyclic assignment of parents to the vertices in order

    Entry 0 is preset to ROOT. prefix fixes the choices of the first
    len(prefix) vertices. The number of ROOT choices among the ordered
    vertices stays within [min_roots, max_roots].
    """
    work: List[Parent] = [_UNSET] * size
    work[0] = ROOT
    total = len(order)
    ceiling = total if max_roots is None else max_roots

    def extend(index: int, roots: int) -> Iterator[Tuple[Parent, ...]]:
        if index == total:
            yield tuple(work)
            return
        v = order[index]
        remaining = total - index - 1
        choices = (prefix[index],) if index < len(prefix) else options(v)
        for p in choices:
            new_roots = roots + (1 if p is ROOT else 0)
            if new_roots > ceiling or new_roots + remaining < min_roots:
                continue
            if p is not ROOT and _closes_cycle(work, v, p):
                continue
            work[v] = p
            yield from extend(index + 1, new_roots)
            work[v] = _UNSET

    return extend(0, 0)


def perfect_matchings(items: Sequence[int]) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Perfect matchings of sorted items, in lexicographic order of their pair lists"""
    if not items:
        yield ()
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = list(items[1:k]) + list(items[k + 1:])
        for matching in perfect_matchings(rest):
            yield ((first, items[k]),) + matching


# ============================================================================
# Unrooted Forests
# ============================================================================

def enumerate_unrooted_forests(
    n: int,
    limit: int = DEFAULT_LIMIT,
    first_edge: Optional[int] = None
) -> Iterator[UnrootedForest]:
    """
    Every acyclic simple graph on [1, n], exactly once

    first_edge restricts the stream to forests whose smallest edge (in
    lexicographic order) has that index; used to partition parallel counts.
    """
    _check_size("enumerate_unrooted_forests", n, limit)
    return _unrooted_stream(n, first_edge)


def _unrooted_stream(n: int, first_edge: Optional[int]) -> Iterator[UnrootedForest]:
    edges = list(combinations(range(1, n + 1), 2))
    components = DisjointSet(n + 1)
    chosen: List[Tuple[int, int]] = []

    def extend(start: int) -> Iterator[UnrootedForest]:
        yield UnrootedForest(n, tuple(chosen))
        for i in range(start, len(edges)):
            u, v = edges[i]
            if components.union(u, v):
                chosen.append(edges[i])
                yield from extend(i + 1)
                chosen.pop()
                components.rollback()

    if first_edge is None:
        yield from extend(0)
        return

    u, v = edges[first_edge]
    components.union(u, v)
    chosen.append(edges[first_edge])
    yield from extend(first_edge + 1)


# ============================================================================
# Rooted Forests
# ============================================================================

def enumerate_rooted_forests(
    m: int,
    roots: Iterable[int],
    limit: int = DEFAULT_LIMIT,
    prefix: Prefix = ()
) -> Iterator[RootedForest]:
    """Every forest on [1, m] whose roots are exactly the given vertices"""
    _check_size("enumerate_rooted_forests", m, limit)
    root_set = frozenset(roots)
    if not root_set:
        raise DomainError("enumerate_rooted_forests needs a nonempty root set")
    outside = sorted(r for r in root_set if isinstance(r, bool) or not isinstance(r, int) or not 1 <= r <= m)
    if outside:
        raise DomainError(f"roots {outside} are not vertices of [1, {m}]")

    linkable = {v: tuple(p for p in range(1, m + 1) if p != v) for v in range(1, m + 1)}

    def options(v: int) -> Sequence[Parent]:
        return (ROOT,) if v in root_set else linkable[v]

    tuples = _parent_tuples(m + 1, range(1, m + 1), options, prefix)
    return (RootedForest(m, parent) for parent in tuples)


def enumerate_all_rooted_forests(
    n: int,
    limit: int = DEFAULT_LIMIT,
    prefix: Prefix = ()
) -> Iterator[RootedForest]:
    """Every forest of rooted trees on [1, n], whatever its root set"""
    _check_size("enumerate_all_rooted_forests", n, limit)
    choices = {v: (ROOT,) + tuple(p for p in range(1, n + 1) if p != v) for v in range(1, n + 1)}
    tuples = _parent_tuples(n + 1, range(1, n + 1), choices.__getitem__, prefix)
    return (RootedForest(n, parent) for parent in tuples)


# ============================================================================
# PPR Forests
# ============================================================================

def enumerate_ppr_forests(
    n: int,
    j: Optional[int] = None,
    limit: int = DEFAULT_LIMIT,
    prefix: Prefix = ()
) -> Iterator[PPRForest]:
    """
    Every PPR n-forest, optionally only those with pair-count j

    Each forest is a rooted forest on [0, n] with root set {0} plus an even
    set S, together with a perfect matching of S.
    """
    _check_size("enumerate_ppr_forests", n, limit)
    if j is not None:
        if isinstance(j, bool) or not isinstance(j, int) or j < 0:
            raise DomainError(f"pair-count must be a nonnegative integer, got {j!r}")
        if 2 * j > n:
            raise DomainError(f"pair-count j={j} needs 2j <= n={n}")
    return _ppr_stream(n, j, prefix)


def _ppr_stream(n: int, j: Optional[int], prefix: Prefix) -> Iterator[PPRForest]:
    choices = {v: (ROOT,) + tuple(p for p in range(n + 1) if p != v) for v in range(1, n + 1)}
    min_roots, max_roots = (0, n) if j is None else (2 * j, 2 * j)

    for parent in _parent_tuples(n + 1, range(1, n + 1), choices.__getitem__, prefix, min_roots, max_roots):
        roots = [v for v in range(1, n + 1) if parent[v] is ROOT]
        if len(roots) % 2:
            continue
        for matching in perfect_matchings(roots):
            yield PPRForest(n, parent, matching)


def ppr_partitions(n: int) -> List[Prefix]:
    """Top-level split of the PPR search: one prefix per parent choice of vertex 1"""
    if n == 0:
        return [()]
    return [(choice,) for choice in (ROOT,) + tuple(p for p in range(n + 1) if p != 1)]


# ============================================================================
# Counting
# ============================================================================

def count_stream(stream: Iterable) -> int:
    """Exact cardinality of a stream"""
    return sum(1 for _ in stream)


def enumerate_forests(
    kind: str,
    n: int,
    j: Optional[int] = None,
    roots: Optional[Iterable[int]] = None,
    limit: int = DEFAULT_LIMIT
) -> Iterator:
    """Dispatch by kind: 'unrooted', 'ppr', or 'rooted' (all root sets unless roots given)"""
    if kind == 'unrooted':
        return enumerate_unrooted_forests(n, limit)
    if kind == 'ppr':
        return enumerate_ppr_forests(n, j, limit)
    if kind == 'rooted':
        if roots is None:
            return enumerate_all_rooted_forests(n, limit)
        return enumerate_rooted_forests(n, roots, limit)
    raise DomainError(f"unknown forest kind {kind!r}; expected one of {', '.join(KINDS)}")


def _partitions(kind: str, n: int, roots: Optional[frozenset]) -> List:
    if kind == 'unrooted':
        # None stands for the edgeless forest on its own
        return [None] + list(range(n * (n - 1) // 2))
    if kind == 'ppr':
        return ppr_partitions(n)
    if n == 0:
        return [()]
    if roots is not None and 1 in roots:
        return [()]
    first_choices = tuple(p for p in range(2, n + 1))
    if roots is None:
        first_choices = (ROOT,) + first_choices
    return [(choice,) for choice in first_choices]


def _count_partition(task: Tuple) -> int:
    kind, n, j, roots, limit, part = task
    if kind == 'unrooted':
        if part is None:
            return 1
        return count_stream(enumerate_unrooted_forests(n, limit, first_edge=part))
    if kind == 'ppr':
        return count_stream(enumerate_ppr_forests(n, j, limit, prefix=part))
    if roots is None:
        return count_stream(enumerate_all_rooted_forests(n, limit, prefix=part))
    return count_stream(enumerate_rooted_forests(n, roots, limit, prefix=part))


@instrument_operation("count_forests")
def count_forests(
    kind: str,
    n: int,
    j: Optional[int] = None,
    roots: Optional[Iterable[int]] = None,
    limit: int = DEFAULT_LIMIT,
    workers: int = 1
) -> int:
    """
    Count a family exhaustively, optionally across worker processes

    The result does not depend on workers: each process counts one
    top-level branch and the branch counts are summed.
    """
    # builds the stream once so argument errors surface before any fan-out
    stream = enumerate_forests(kind, n, j, roots, limit)
    root_set = frozenset(roots) if roots is not None else None

    if workers <= 1:
        total = count_stream(stream)
    else:
        tasks = [(kind, n, j, root_set, limit, part) for part in _partitions(kind, n, root_set)]
        with ProcessPoolExecutor(max_workers=workers) as executor:
            total = sum(executor.map(_count_partition, tasks))

    record_enumerated(kind, n, total)
    return total
