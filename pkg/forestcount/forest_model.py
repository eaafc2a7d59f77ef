"""
Forest Model
Rooted forests, partially-paired rooted (PPR) forests and unrooted forests

Representation:
- A forest is a parent tuple indexed by vertex label, ROOT (None) marking roots
- A PPR n-forest lives on [0, n]; vertex 0 roots the distinguished tree T0 and
  every other root belongs to exactly one unordered pair
- An unrooted forest is a sorted tuple of edges (u, v) with u < v on [1, n]

Children are always reported in ascending label order. All structures are
frozen; operations that "modify" a forest build a new one.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from forestcount.disjoint_set import DisjointSet
from forestcount.errors import DomainError, ValidationError
from forestcount.exactmath import SignedCount

ROOT = None

Vertex = int
Parent = Optional[int]
Pair = Tuple[int, int]
Edge = Tuple[int, int]

# Encodings are fixed-width big-endian words: ROOT -> 0, vertex v -> v + 1
_WORD = 2
_MAX_LABEL = 2 ** (8 * _WORD) - 2


# ============================================================================
# Data Types
# ============================================================================

@dataclass(frozen=True)
class RootedForest:
    """
    Forest of rooted trees on the vertices 1..n_vertices

    parent[0] is an unused placeholder (always ROOT) so that parent[v] is the
    parent of vertex v.
    """
    n_vertices: int
    parent: Tuple[Parent, ...]

    def __post_init__(self):
        object.__setattr__(self, 'parent', tuple(self.parent))

    @property
    def roots(self) -> Tuple[int, ...]:
        return tuple(v for v in range(1, self.n_vertices + 1) if self.parent[v] is ROOT)


@dataclass(frozen=True)
class PPRForest:
    """A tree rooted at 0 plus a perfect matching on the remaining roots"""
    n: int
    parent: Tuple[Parent, ...]
    pairs: Tuple[Pair, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'parent', tuple(self.parent))
        object.__setattr__(self, 'pairs', _normalize_pairs(self.pairs))


@dataclass(frozen=True)
class UnrootedForest:
    """Acyclic simple graph on [1, n]"""
    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'edges', _normalize_pairs(self.edges))


def _normalize_pairs(items: Iterable[Sequence[int]]) -> Tuple[Tuple[int, int], ...]:
    normalized = []
    for item in items:
        first, second = item
        normalized.append((first, second) if first <= second else (second, first))
    return tuple(sorted(normalized))


# ============================================================================
# Validation
# ============================================================================

def _parent_violation(parent: Sequence[Parent], lowest: int, highest: int) -> Optional[str]:
    """Range and acyclicity of parent links over lowest..highest"""
    for v in range(lowest, highest + 1):
        p = parent[v]
        if p is ROOT:
            continue
        if isinstance(p, bool) or not isinstance(p, int) or not lowest <= p <= highest:
            return f"parent of vertex {v} is out of range: {p!r}"
        if p == v:
            return f"vertex {v} is its own parent"

    # 0 = unvisited, 1 = on the current walk, 2 = known to reach a root
    state = [0] * (highest + 1)
    for start in range(lowest, highest + 1):
        walk = []
        v = start
        while v is not ROOT and state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = parent[v]
        if v is not ROOT and state[v] == 1:
            return f"cycle in parent links through vertex {v}"
        for w in walk:
            state[w] = 2
    return None


def validate_ppr(f: PPRForest) -> Optional[str]:
    """
    Check every PPR forest invariant

    Returns None when f is valid, otherwise a description of the first
    violated invariant.
    """
    if f.n < 0:
        return f"vertex count must be >= 0, got {f.n}"
    if len(f.parent) != f.n + 1:
        return f"parent array must have n+1={f.n + 1} entries, got {len(f.parent)}"
    if f.parent[0] is not ROOT:
        return "vertex 0 must be a root"

    violation = _parent_violation(f.parent, 0, f.n)
    if violation:
        return violation

    seen: Dict[int, Pair] = {}
    for pair in f.pairs:
        r, s = pair
        for member in pair:
            if isinstance(member, bool) or not isinstance(member, int) or not 0 <= member <= f.n:
                return f"pair member out of range: {member!r}"
        if r == s:
            return f"pair {list(pair)} has identical members"
        if r == 0:
            return "vertex 0 appears in a pair"
        for member in pair:
            if member in seen:
                return f"vertex {member} appears in more than one pair"
            seen[member] = pair
            if f.parent[member] is not ROOT:
                return f"paired vertex {member} is not a root"

    for v in range(1, f.n + 1):
        if f.parent[v] is ROOT and v not in seen:
            return "unpaired non-zero root"
    return None


def validate_rooted(f: RootedForest) -> Optional[str]:
    """Check a RootedForest on 1..n_vertices; None when valid"""
    if len(f.parent) != f.n_vertices + 1:
        return f"parent array must have {f.n_vertices + 1} entries, got {len(f.parent)}"
    if f.parent[0] is not ROOT:
        return "placeholder entry 0 must be null"
    return _parent_violation(f.parent, 1, f.n_vertices)


def validate_unrooted(g: UnrootedForest) -> Optional[str]:
    """Check that g is a simple acyclic graph on [1, n]; None when valid"""
    if g.n < 0:
        return f"vertex count must be >= 0, got {g.n}"
    components = DisjointSet(g.n + 1)
    previous = None
    for edge in g.edges:
        u, v = edge
        if not (1 <= u <= g.n and 1 <= v <= g.n):
            return f"edge {list(edge)} has an endpoint outside [1, {g.n}]"
        if u == v:
            return f"loop at vertex {u}"
        if edge == previous:
            return f"repeated edge {list(edge)}"
        previous = edge
        if not components.union(u, v):
            return f"edge {list(edge)} closes a cycle"
    return None


def require_valid_ppr(f: PPRForest) -> PPRForest:
    """Raise ValidationError unless f is a valid PPR forest"""
    violation = validate_ppr(f)
    if violation:
        raise ValidationError(violation)
    return f


# ============================================================================
# Structural Queries
# ============================================================================

def pair_count(f: PPRForest) -> int:
    return len(f.pairs)


def weight(f: PPRForest) -> SignedCount:
    """(-1)^pair_count"""
    return SignedCount(-1 if len(f.pairs) % 2 else 1, 1)


def children(f: PPRForest, v: Vertex) -> List[Vertex]:
    """Children of v in ascending order"""
    return [w for w in range(f.n + 1) if f.parent[w] == v]


def child_lists(parent: Sequence[Parent]) -> List[List[int]]:
    """Ascending child lists for every vertex of a parent tuple"""
    lists: List[List[int]] = [[] for _ in parent]
    for w, p in enumerate(parent):
        if p is not ROOT:
            lists[p].append(w)
    return lists


def descendants(f: PPRForest, v: Vertex) -> FrozenSet[Vertex]:
    """Proper descendants of v (v itself excluded)"""
    if not 0 <= v <= f.n:
        raise DomainError(f"vertex {v} is outside [0, {f.n}]")
    kids = child_lists(f.parent)
    found = set()
    queue = deque(kids[v])
    while queue:
        w = queue.popleft()
        found.add(w)
        queue.extend(kids[w])
    return frozenset(found)


def is_inversion_initiating(f: PPRForest, v: Vertex) -> bool:
    """True iff some descendant of v carries a smaller label than v"""
    below = descendants(f, v)
    return bool(below) and min(below) < v


def root_of(f: PPRForest, v: Vertex) -> Vertex:
    """Root of the tree containing v"""
    while f.parent[v] is not ROOT:
        v = f.parent[v]
    return v


def tree_vertices(f: PPRForest, r: Vertex) -> FrozenSet[Vertex]:
    """All vertices of the tree rooted at r, r included"""
    return descendants(f, r) | {r}


def is_special(f: PPRForest) -> bool:
    """Pair-count 0 and every child of vertex 0 regular"""
    if f.pairs:
        return False
    return not any(is_inversion_initiating(f, c) for c in children(f, 0))


# ============================================================================
# Special PPR Forests <-> Unrooted Forests
# ============================================================================

def to_unrooted(f: PPRForest) -> UnrootedForest:
    """Delete vertex 0 from a special PPR forest"""
    require_valid_ppr(f)
    if not is_special(f):
        raise DomainError("to_unrooted requires a special PPR forest")
    edges = [
        (v, p) for v, p in enumerate(f.parent)
        if p is not ROOT and p != 0
    ]
    return UnrootedForest(f.n, edges)


def from_unrooted(g: UnrootedForest) -> PPRForest:
    """Root each component at its smallest vertex and hang those roots from 0"""
    violation = validate_unrooted(g)
    if violation:
        raise ValidationError(violation)

    adjacency: List[List[int]] = [[] for _ in range(g.n + 1)]
    for u, v in g.edges:
        adjacency[u].append(v)
        adjacency[v].append(u)

    parent: List[Parent] = [ROOT] * (g.n + 1)
    placed = [False] * (g.n + 1)
    # ascending scan: the first unplaced vertex is its component's minimum
    for start in range(1, g.n + 1):
        if placed[start]:
            continue
        placed[start] = True
        parent[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in sorted(adjacency[u]):
                if not placed[w]:
                    placed[w] = True
                    parent[w] = u
                    queue.append(w)
    return PPRForest(g.n, parent, ())


# ============================================================================
# Canonical Encodings
# ============================================================================

def _word(value: Parent) -> bytes:
    code = 0 if value is ROOT else value + 1
    return code.to_bytes(_WORD, 'big')


def _check_encodable(n: int):
    if n > _MAX_LABEL:
        raise DomainError(f"labels above {_MAX_LABEL} cannot be encoded")


def canonical_encode(f: PPRForest) -> bytes:
    """
    Injective byte key for PPR forests of a given n

    Layout: n, the parent tuple in vertex order, then the pairs sorted by their
    smaller member. Byte order matches enumeration order.
    """
    _check_encodable(f.n)
    parts = [f.n.to_bytes(_WORD, 'big')]
    parts.extend(_word(p) for p in f.parent)
    for r, s in f.pairs:
        parts.append(_word(r))
        parts.append(_word(s))
    return b''.join(parts)


def encode_rooted(f: RootedForest) -> bytes:
    _check_encodable(f.n_vertices)
    parts = [f.n_vertices.to_bytes(_WORD, 'big')]
    parts.extend(_word(p) for p in f.parent[1:])
    return b''.join(parts)


def encode_unrooted(g: UnrootedForest) -> bytes:
    _check_encodable(g.n)
    parts = [g.n.to_bytes(_WORD, 'big')]
    for u, v in g.edges:
        parts.append(_word(u))
        parts.append(_word(v))
    return b''.join(parts)


def encoding_hex(encoding: bytes) -> str:
    """Printable form used in reports"""
    return encoding.hex()
