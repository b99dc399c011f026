"""Shared helpers: canonical ordering, simplicial index combinatorics, reports."""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from functools import lru_cache


def sort_key(x):
    """Total order used for every enumerated output.

    Encoding: None < int < str < tuple < frozenset < dataclass, with
    containers compared elementwise by the same encoding.
    """
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, tuple(sort_key(e) for e in x))
    if isinstance(x, (frozenset, set)):
        return (4, tuple(sorted(sort_key(e) for e in x)))
    if dataclasses.is_dataclass(x):
        return (5, type(x).__name__,
                tuple(sort_key(getattr(x, f.name)) for f in dataclasses.fields(x)))
    return (6, repr(x))


def canonical(items):
    return tuple(sorted(items, key=sort_key))


@lru_cache(maxsize=None)
def pairs(n):
    """Arrows i <= j of the ordinal [n], lexicographic."""
    return tuple((i, j) for i in range(n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def pair_index(n):
    return {p: k for k, p in enumerate(pairs(n))}


@lru_cache(maxsize=None)
def triples(n):
    return tuple((i, j, k) for i in range(n + 1) for j in range(i, n + 1)
                 for k in range(j, n + 1))


@lru_cache(maxsize=None)
def triple_index(n):
    return {t: k for k, t in enumerate(triples(n))}


@lru_cache(maxsize=None)
def monotone_maps(m, n):
    """All order-preserving maps [m] -> [n] as tuples of images."""
    return tuple(itertools.combinations_with_replacement(range(n + 1), m + 1))


def coface(n, i):
    """delta_i : [n-1] -> [n], the injection skipping i."""
    return tuple(k if k < i else k + 1 for k in range(n))


def codegeneracy(n, j):
    """sigma_j : [n+1] -> [n], hitting j twice."""
    return tuple(k if k <= j else k - 1 for k in range(n + 2))


def compose_maps(beta, alpha):
    """beta o alpha for monotone maps given as image tuples."""
    return tuple(beta[a] for a in alpha)


def spine_edge(k):
    """The k-th spine inclusion [1] -> [n], 0 -> k-1, 1 -> k (k >= 1)."""
    return (k - 1, k)


@dataclass
class Report:
    """Outcome of a report-style check; truthy iff no violations."""

    name: str
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, **witness):
        self.violations.append(witness)

    def to_json(self):
        return {"schema_version": 1, "check": self.name, "ok": self.ok,
                "violations": [_jsonable(v) for v in self.violations],
                "details": _jsonable(self.details)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return [_jsonable(v) for v in canonical(x)]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if dataclasses.is_dataclass(x):
        return {f.name: _jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    return repr(x)
