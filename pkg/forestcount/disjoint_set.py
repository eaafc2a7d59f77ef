"""
Disjoint Set
Union-find with union by size and undo, for incremental cycle detection

No path compression: rollback() must be able to restore
the exact previous state during backtracking.
"""

from typing import List


class DisjointSet:
    """Union-find over the elements 0..size-1"""

    def __init__(self, size: int):
        self.parent: List[int] = list(range(size))
        self.size: List[int] = [1] * size
        self._history: List[int] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False when they were already joined"""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self._history.append(rb)
        return True

    def rollback(self):
        """Undo the most recent successful union"""
        rb = self._history.pop()
        ra = self.parent[rb]
        self.size[ra] -= self.size[rb]
        self.parent[rb] = rb
