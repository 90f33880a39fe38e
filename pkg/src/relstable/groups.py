"""Finite groups as explicit multiplication tables.

Groups are stored as index tables (table[a][b] is the index of the
product ab), which keeps every representation-theoretic check exact and
total.  Subgroups, left cosets, and direct products cover everything
the stable-category machinery needs; composition is left-to-right in
the usual "act on the left" convention.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

FULL_ASSOCIATIVITY_MAX_ORDER = 64
ASSOCIATIVITY_SAMPLES = 10_000


class FiniteGroup:
    """A finite group given by its multiplication table.

    The identity is inferred from the table.  Generators must generate
    the whole group; if none are supplied a small generating set is
    chosen greedily (deterministically).
    """

    __slots__ = ("table", "order", "identity", "generators", "names")

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        generators: Optional[Sequence[int]] = None,
        names: Optional[Sequence[str]] = None,
    ):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError(f"multiplication table must be square, got shape {t.shape}")
        n = t.shape[0]
        if n == 0:
            raise ValueError("a group has at least one element")
        if t.min(initial=0) < 0 or t.max(initial=0) >= n:
            raise ValueError("table entries must be element indices in [0, order)")

        rng_row = np.arange(n)
        if not (np.all(np.sort(t, axis=1) == rng_row) and np.all(np.sort(t, axis=0) == rng_row[:, None])):
            raise ValueError("multiplication table is not a Latin square")

        identity = None
        for e in range(n):
            if np.array_equal(t[e], rng_row) and np.array_equal(t[:, e], rng_row):
                identity = e
                break
        if identity is None:
            raise ValueError("table has no two-sided identity")

        self._check_associativity(t)

        t.setflags(write=False)
        self.table = t
        self.order = n
        self.identity = identity

        if names is None:
            names = ["e" if i == identity else f"g{i}" for i in range(n)]
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise ValueError(f"expected {n} element names, got {len(names)}")
        if len(set(names)) != n:
            raise ValueError("element names must be unique")
        self.names = names

        if generators is None:
            generators = self._greedy_generators()
        generators = tuple(int(g) for g in generators)
        for g in generators:
            if not 0 <= g < n:
                raise ValueError(f"generator index {g} out of range")
        if len(self._closure(generators)) != n:
            raise ValueError("declared generators do not generate the group")
        self.generators = generators

    @staticmethod
    def _check_associativity(t: np.ndarray) -> None:
        n = t.shape[0]
        if n <= FULL_ASSOCIATIVITY_MAX_ORDER:
            left = t[t, :]
            right = t[:, t]
            if not np.array_equal(left, right):
                raise ValueError("multiplication table is not associative")
        else:
            rng = np.random.default_rng(12345)
            a = rng.integers(0, n, ASSOCIATIVITY_SAMPLES)
            b = rng.integers(0, n, ASSOCIATIVITY_SAMPLES)
            c = rng.integers(0, n, ASSOCIATIVITY_SAMPLES)
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise ValueError("multiplication table failed sampled associativity")

    def _closure(self, seed: Sequence[int]) -> set[int]:
        out = {self.identity}
        out.update(int(s) for s in seed)
        frontier = list(out)
        while frontier:
            x = frontier.pop()
            for y in list(out):
                for z in (int(self.table[x, y]), int(self.table[y, x])):
                    if z not in out:
                        out.add(z)
                        frontier.append(z)
        return out

    def _greedy_generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        covered = {self.identity}
        for x in range(self.order):
            if x not in covered:
                gens.append(x)
                covered = self._closure(gens)
                if len(covered) == self.order:
                    break
        return tuple(gens)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(np.nonzero(self.table[a] == self.identity)[0][0])

    def element_order(self, a: int) -> int:
        x = a
        n = 1
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def elements(self) -> range:
        return range(self.order)

    def rename(self, names: Sequence[str]) -> "FiniteGroup":
        return FiniteGroup(self.table, self.generators, names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, generators={self.generators})"


class Subgroup:
    """A subgroup of a parent group, stored as a sorted list of indices."""

    __slots__ = ("parent", "elements", "_as_group")

    def __init__(self, parent: FiniteGroup, elements: Sequence[int]):
        els = tuple(sorted(set(int(x) for x in elements)))
        for x in els:
            if not 0 <= x < parent.order:
                raise ValueError(f"element index {x} out of range")
        if parent.identity not in els:
            raise ValueError("a subgroup contains the identity")
        el_set = set(els)
        for a in els:
            if parent.inv(a) not in el_set:
                raise ValueError("subgroup is not closed under inverses")
            for b in els:
                if parent.mul(a, b) not in el_set:
                    raise ValueError("subgroup is not closed under the product")
        self.parent = parent
        self.elements = els
        self._as_group: Optional[FiniteGroup] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def index_of(self, parent_element: int) -> int:
        """Position of a parent element inside this subgroup's element list."""
        return self.elements.index(parent_element)

    def as_group(self) -> FiniteGroup:
        """Repackage the subgroup as a standalone group (indices 0..order-1)."""
        if self._as_group is None:
            pos = {x: i for i, x in enumerate(self.elements)}
            n = len(self.elements)
            table = [
                [pos[self.parent.mul(a, b)] for b in self.elements] for a in self.elements
            ]
            names = [self.parent.names[x] for x in self.elements]
            self._as_group = FiniteGroup(table, None, names)
        return self._as_group

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={self.elements})"


def cyclic(n: int) -> FiniteGroup:
    """The cyclic group of order n, generated by element 1 (when n > 1)."""
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    if n == 1:
        return FiniteGroup(table, (), ("e",))
    names = ["e", "g"] + [f"g^{k}" for k in range(2, n)]
    return FiniteGroup(table, (1,), names)


def direct_product(g: FiniteGroup, k: FiniteGroup) -> FiniteGroup:
    """Componentwise product; element (a, b) gets index a*|K| + b."""
    m, n = g.order, k.order
    table = (
        g.table[:, None, :, None] * n + k.table[None, :, None, :]
    ).reshape(m * n, m * n)
    generators = [a * n + k.identity for a in g.generators] + [
        g.identity * n + b for b in k.generators
    ]
    names = [f"({g.names[a]},{k.names[b]})" for a in range(m) for b in range(n)]
    return FiniteGroup(table, generators, names)


def subgroup_closure(g: FiniteGroup, seed: Sequence[int]) -> Subgroup:
    """The smallest subgroup of g containing the seed elements."""
    for x in seed:
        if not 0 <= int(x) < g.order:
            raise ValueError(f"seed index {x} out of range")
    return Subgroup(g, sorted(g._closure(seed)))


def coset_transversal(g: FiniteGroup, h: Subgroup) -> list[int]:
    """One representative per left coset of h in g.

    The identity represents its own coset and comes first; every other
    coset is represented by its smallest element, in ascending order.
    """
    if h.parent != g:
        raise ValueError("subgroup does not live in the given group")
    reps = [g.identity]
    seen = set(int(g.table[g.identity, x]) for x in h.elements)
    for a in range(g.order):
        if a in seen:
            continue
        reps.append(a)
        seen.update(int(g.table[a, x]) for x in h.elements)
    return reps
