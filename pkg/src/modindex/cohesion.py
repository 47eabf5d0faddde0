"""Per-class raw measures: function count and LCOM4.

LCOM4 is the number of connected components of the graph whose nodes are
the class's functions, with an edge between two functions when they access
a common field of the class or when one calls the other.
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import ExtractionConfig
from .model import ClassNode, FunctionNode


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, i: int) -> int:
        parent = self.parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


@dataclass(frozen=True)
class ClassMetrics:
    qualified_name: str
    ncloc: int
    f: int
    lcom4: int


def _counted(cls: ClassNode, include_constructors: bool) -> list[FunctionNode]:
    if include_constructors:
        return list(cls.functions)
    return [fn for fn in cls.functions if not fn.is_constructor]


def count_functions(cls: ClassNode, config: ExtractionConfig | None = None) -> int:
    include = config is None or config.count_constructors_as_functions
    return len(_counted(cls, include))


def compute_lcom4(cls: ClassNode, *, include_constructors: bool = True) -> int:
    """Connected components of the function graph; 1 for a class without functions."""
    functions = _counted(cls, include_constructors)
    if not functions:
        return 1
    index = {fn.key: i for i, fn in enumerate(functions)}
    uf = UnionFind(len(functions))
    first_user: dict[str, int] = {}
    for i, fn in enumerate(functions):
        for name in fn.accessed_fields:
            j = first_user.setdefault(name, i)
            if j != i:
                uf.union(i, j)
        for key in fn.called_functions:
            j = index.get(key)
            if j is not None:
                uf.union(i, j)
    return uf.components


def class_metrics(cls: ClassNode, config: ExtractionConfig | None = None) -> ClassMetrics:
    include = config is None or config.count_constructors_as_functions
    return ClassMetrics(cls.qualified_name, cls.ncloc, count_functions(cls, config),
                        compute_lcom4(cls, include_constructors=include))
