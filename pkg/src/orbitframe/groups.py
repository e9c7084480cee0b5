"""Finite groups given by Cayley tables.

Elements are plain integer indices ``0..n-1``; the canonical element order is
construction order.  :class:`GroupElement` is a thin handle for callers that
want ``x * y`` syntax with parent-group checking.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import GroupMismatch, NotAGroup


class FiniteGroup:
    """A validated finite group.

    Attributes
    ----------
    cayley : (n, n) int array, ``cayley[i, j]`` is the index of ``g_i * g_j``.
    identity : index of the identity element.
    inverses : (n,) int array of inverse indices.
    labels : display strings, one per element.
    """

    def __init__(self, cayley, identity: int, inverses, labels: Optional[Sequence[str]] = None):
        self.cayley = np.array(cayley, dtype=np.int64)
        self.cayley.setflags(write=False)
        self.identity = int(identity)
        self.inverses = np.array(inverses, dtype=np.int64)
        self.inverses.setflags(write=False)
        n = self.cayley.shape[0]
        self.labels = tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(n))

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.identity == other.identity and np.array_equal(self.cayley, other.cayley)

    def __hash__(self):
        return hash((self.identity, self.cayley.tobytes()))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def mul(self, x: int, y: int) -> int:
        return int(self.cayley[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverses[x])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def element(self, index: int) -> "GroupElement":
        if not 0 <= index < self.order:
            raise GroupMismatch(f"index {index} out of range for group of order {self.order}")
        return GroupElement(self, int(index))

    def elements(self):
        return [GroupElement(self, i) for i in range(self.order)]

    def cyclic_subgroup(self, x: int) -> list[int]:
        out, y = [self.identity], x
        while y != self.identity:
            out.append(y)
            y = self.mul(y, x)
        return out

    def left_cosets(self, subgroup: Sequence[int]) -> list[tuple[int, ...]]:
        """Left cosets ``gH`` in order of their smallest representative."""
        seen: set[int] = set()
        cosets = []
        for g in range(self.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.mul(g, h) for h in subgroup))
            seen.update(coset)
            cosets.append(coset)
        return cosets


@dataclass(frozen=True)
class GroupElement:
    group: FiniteGroup
    index: int

    def _check(self, other: "GroupElement"):
        if other.group is not self.group and other.group != self.group:
            raise GroupMismatch("elements belong to different groups")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, self.group.mul(self.index, other.index))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, self.group.inv(self.index))

    def __int__(self):
        return self.index

    def __repr__(self):
        return self.group.labels[self.index]


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    return x * y


def inverse(x: GroupElement) -> GroupElement:
    return x.inverse()


def from_cayley_table(table, labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Validate a multiplication table and derive identity and inverses.

    Raises :class:`NotAGroup` naming the first failed axiom.
    """
    try:
        c = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotAGroup(f"table is not an integer array: {exc}") from None
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] == 0:
        raise NotAGroup("table must be a non-empty square array")
    n = c.shape[0]
    if c.min() < 0 or c.max() >= n:
        raise NotAGroup("table entries must lie in 0..n-1")
    target = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(c[i]), target):
            raise NotAGroup(f"row {i} is not a permutation")
        if not np.array_equal(np.sort(c[:, i]), target):
            raise NotAGroup(f"column {i} is not a permutation")

    candidates = [e for e in range(n) if np.array_equal(c[e], target) and np.array_equal(c[:, e], target)]
    if not candidates:
        raise NotAGroup("no two-sided identity element")
    e = candidates[0]

    inverses = np.empty(n, dtype=np.int64)
    for i in range(n):
        (js,) = np.nonzero(c[i] == e)
        j = int(js[0])
        if c[j, i] != e:
            raise NotAGroup(f"element {i} has no two-sided inverse")
        inverses[i] = j

    # cayley[cayley[i, j], k] == cayley[i, cayley[j, k]] for all i, j, k
    lhs = c[c, :]  # lhs[i, j, k] = c[c[i, j], k]
    rhs = c[:, c]  # rhs[i, j, k] = c[i, c[j, k]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        i, j, k = (int(v) for v in bad[0])
        raise NotAGroup(f"associativity fails for ({i}, {j}, {k})")
    if labels is not None and len(labels) != n:
        raise NotAGroup("labels must have one entry per element")
    return FiniteGroup(c, e, inverses, labels)


def build_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    i = np.arange(n)
    table = (i[:, None] + i[None, :]) % n
    return FiniteGroup(table, 0, (-i) % n, [str(k) for k in range(n)])


def build_dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order ``2m`` with elements ``e, a, .., a^(m-1), b, ab, .., a^(m-1)b``.

    ``a`` is the rotation, ``b`` the reflection, and ``b a = a^(m-1) b``.
    Element ``a^i b^s`` has index ``s*m + i``.
    """
    if m < 3:
        raise ValueError("m must be at least 3")
    n = 2 * m
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        s, i = divmod(x, m)
        for y in range(n):
            t, j = divmod(y, m)
            # a^i b^s a^j b^t = a^(i + (-1)^s j) b^(s+t)
            table[x, y] = ((s + t) % 2) * m + (i + (j if s == 0 else -j)) % m
    labels = []
    for x in range(n):
        s, i = divmod(x, m)
        rot = "e" if i == 0 else ("a" if i == 1 else f"a{i}")
        labels.append(rot if s == 0 else ("b" if i == 0 else rot + "b"))
    return from_cayley_table(table, labels)


def build_direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Componentwise product; pair ``(x, y)`` has index ``x*|h| + y``."""
    ng, nh = g.order, h.order
    x = np.repeat(np.arange(ng), nh)
    y = np.tile(np.arange(nh), ng)
    table = g.cayley[x[:, None], x[None, :]] * nh + h.cayley[y[:, None], y[None, :]]
    inverses = g.inverses[x] * nh + h.inverses[y]
    labels = [f"({g.labels[a]},{h.labels[b]})" for a, b in zip(x, y)]
    return FiniteGroup(table, g.identity * nh + h.identity, inverses, labels)
