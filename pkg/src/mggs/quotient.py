"""Finite images ``G / Stab_G(n)`` of groups generated by words.

Two independent routes:

* ``enumerate_quotient`` lists every element by breadth-first search over
  right multiplication with the generator portraits.  It also keeps a BFS
  tree, so every element comes with a word.
* ``LayeredSubgroup`` sifts through the level filtration ``Stab(l)``.  The
  layer quotients ``Stab(l)/Stab(l+1)`` of translation-labelled portraits are
  vector spaces ``F_p^(p^l)``; one echelon table per level gives membership
  and order without listing elements, which reaches depths where the BFS
  cannot.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DepthError, DomainError, ResourceError
from .groups import MggsGroup
from .tree import Portrait, commutator, offsets, size
from .words import Word, evaluate

DEFAULT_ELEMENT_CAP = 200_000
DEFAULT_VERTEX_CAP = 4_000


def _check_vertices(p: int, depth: int, cap: int) -> None:
    if size(p, depth) > cap:
        raise ResourceError(f"depth {depth} over p={p} has {size(p, depth)} labels, cap is {cap}")


def _sort_key(g: Portrait) -> tuple:
    return tuple(np.stack([g.u, g.t], axis=1).ravel().tolist())


class QuotientGroup:
    """The depth-``n`` image of a finitely generated group, listed explicitly."""

    def __init__(self, p: int, depth: int, gens: Sequence[Word], gen_portraits: Sequence[Portrait],
                 nodes: dict):
        self.p = p
        self.depth = depth
        self.gens = tuple(gens)
        self.gen_portraits = tuple(gen_portraits)
        self._nodes = nodes  # key -> (portrait, parent key, generator index)
        self.elements = sorted((n[0] for n in nodes.values()), key=_sort_key)

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Portrait) -> bool:
        return member_at_depth(g, self)

    def __iter__(self):
        return iter(self.elements)

    def word_of(self, g: Portrait) -> Word:
        """The BFS-tree word for an element of the quotient."""
        key = g.truncate(self.depth).key()
        if key not in self._nodes:
            raise DomainError("portrait is not in this quotient")
        idx = []
        while True:
            _, parent, gi = self._nodes[key]
            if parent is None:
                break
            idx.append(gi)
            key = parent
        w = Word(self.p)
        for gi in reversed(idx):
            w = w * self.gens[gi]
        return w

    def fold(self, step, init):
        """Values propagated down the BFS tree: ``value(child) = step(value(parent), gen index)``."""
        vals = {}
        for key, (_, parent, gi) in self._nodes.items():  # insertion order is BFS order
            vals[key] = init if parent is None else step(vals[parent], gi)
        return vals

    def stabilizer(self, level: int = 1) -> list[Portrait]:
        """Elements whose labels above ``level`` are trivial."""
        n = size(self.p, level)
        return [g for g in self.elements if np.all(g.u[:n] == 1) and np.all(g.t[:n] == 0)]

    def to_json_list(self) -> list[dict]:
        return [g.to_dict() for g in self.elements]


def enumerate_quotient(G: MggsGroup, gens: Iterable[Word], depth: int,
                       cap: int = DEFAULT_ELEMENT_CAP,
                       vertex_cap: int = DEFAULT_VERTEX_CAP) -> QuotientGroup:
    _check_vertices(G.p, depth, vertex_cap)
    gens = list(gens)
    gps = [evaluate(w, G, depth) for w in gens]
    return enumerate_portraits(G.p, depth, gps, cap=cap, words=gens)


def enumerate_portraits(p: int, depth: int, gen_portraits: Sequence[Portrait],
                        cap: int = DEFAULT_ELEMENT_CAP, words: Sequence[Word] | None = None) -> QuotientGroup:
    gps = [g.truncate(depth) for g in gen_portraits]
    one = Portrait.identity(p, depth)
    nodes = {one.key(): (one, None, None)}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for i, g in enumerate(gps):
            y = x * g
            k = y.key()
            if k not in nodes:
                nodes[k] = (y, x.key(), i)
                if len(nodes) > cap:
                    raise ResourceError(f"quotient exceeds {cap} elements at depth {depth}")
                queue.append(y)
    if words is None:
        words = [Word(p)] * len(gps)
    return QuotientGroup(p, depth, words, gps, nodes)


class LayeredSubgroup:
    """Subgroup of the translation-labelled depth-``n`` portraits, held as sift tables.

    ``normal_by`` makes it the normal closure of ``gens`` under those elements.
    """

    def __init__(self, p: int, depth: int, gens: Iterable[Portrait],
                 normal_by: Iterable[Portrait] = (), vertex_cap: int = DEFAULT_VERTEX_CAP):
        _check_vertices(p, depth, vertex_cap)
        self.p = p
        self.depth = depth
        self.normal_by = [h.truncate(depth) for h in normal_by]
        self._off = offsets(p, depth)
        # per level: list of (pivot, vector, [r^0, ..., r^(p-1)])
        self.table: list[list[tuple[int, np.ndarray, list[Portrait]]]] = [[] for _ in range(depth)]
        queue = deque(self._check(g) for g in gens)
        while queue:
            res = self.sift(queue.popleft())
            if res is None:
                continue
            level, r, v = res
            new = self._insert(level, r, v)
            queue.append(new ** p)
            for entries in self.table:
                for _, _, pw in entries:
                    if pw[1] is not new:
                        queue.append(commutator(new, pw[1]))
            for h in self.normal_by:
                queue.append(new.conj(h))

    def _check(self, g: Portrait) -> Portrait:
        if g.p != self.p:
            raise DomainError("portrait over a different prime")
        if g.depth < self.depth:
            raise DepthError(f"need depth >= {self.depth}, got {g.depth}")
        g = g.truncate(self.depth)
        if not np.all(g.u == 1):
            raise DomainError("layered sifting needs translation labels (u = 1) only")
        return g

    def _insert(self, level: int, r: Portrait, v: np.ndarray) -> Portrait:
        p = self.p
        piv = int(np.flatnonzero(v)[0])
        c = pow(int(v[piv]), -1, p)
        r = r**c
        v = (v * c) % p
        powers = [Portrait.identity(p, self.depth), r]
        for _ in range(p - 2):
            powers.append(powers[-1] * r)
        self.table[level].append((piv, v, powers))
        return r

    def sift(self, g: Portrait) -> Optional[tuple[int, Portrait, np.ndarray]]:
        """Reduce ``g`` through the tables; None if it lies in the subgroup."""
        p = self.p
        for l in range(self.depth):
            v = g.t[self._off[l]:self._off[l + 1]].copy()
            if not v.any():
                continue
            for piv, vec, powers in self.table[l]:
                c = int(v[piv])
                if c:
                    g = g * powers[(-c) % p]
                    v = (v - c * vec) % p
            if v.any():
                return l, g, v
        return None

    def __contains__(self, g: Portrait) -> bool:
        g = g.truncate(self.depth) if g.depth >= self.depth else g
        if g.depth < self.depth:
            raise DepthError(f"need depth >= {self.depth}, got {g.depth}")
        if not np.all(g.u == 1):
            return False
        return self.sift(g) is None

    def layer_dims(self) -> list[int]:
        return [len(t) for t in self.table]

    @property
    def log_order(self) -> int:
        return sum(self.layer_dims())

    @property
    def order(self) -> int:
        return self.p**self.log_order

    def generators(self) -> list[Portrait]:
        return [pw[1] for entries in self.table for _, _, pw in entries]


def layered(G: MggsGroup, gens: Iterable[Word], depth: int, normal_by: Iterable[Word] = ()) -> LayeredSubgroup:
    return LayeredSubgroup(G.p, depth, [evaluate(w, G, depth) for w in gens],
                           normal_by=[evaluate(w, G, depth) for w in normal_by])


def member_at_depth(g: Portrait, Q) -> bool:
    """Membership of ``g`` in ``Q``'s group times ``Stab(depth)``."""
    if g.depth < Q.depth:
        raise DepthError(f"portrait depth {g.depth} below quotient depth {Q.depth}")
    if isinstance(Q, LayeredSubgroup):
        return g in Q
    return g.truncate(Q.depth).key() in Q._nodes
