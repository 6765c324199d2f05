"""Depth-truncated automorphisms of the p-regular rooted tree.

A portrait of depth ``n`` stores one affine label ``x -> u*x + t`` per vertex
of length ``< n``.  Vertices are numbered breadth first: level ``l`` starts
at ``(p**l - 1) // (p - 1)`` and inside a level a word is read as a base-p
number with its first letter most significant.

Automorphisms act on the right.  For the product ``g * h`` (first ``g``,
then ``h``)::

    (g*h)|^v = g|^v . h|^(v^g)        v^(g*h) = (v^g)^h

where the label product applies ``g|^v`` first.  Sections follow
``(g*h)|_v = g|_v * h|_(v^g)``.

The array kernels (``action``, ``compose_arrays``, ``inverse_arrays``) accept
a leading batch axis, which the exhaustive oracles use.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DepthError, DimensionError, DomainError
from .fpalg import check_prime

Label = tuple[int, int]
Vertex = tuple[int, ...]

IDENTITY_LABEL: Label = (1, 0)


def sigma_power(k: int, p: int) -> Label:
    return (1, k % p)


def label_mul(x: Label, y: Label, p: int) -> Label:
    """Apply ``x`` then ``y``."""
    return ((y[0] * x[0]) % p, (y[0] * x[1] + y[1]) % p)


def label_inv(x: Label, p: int) -> Label:
    ui = pow(x[0], -1, p)
    return (ui, (-ui * x[1]) % p)


@lru_cache(maxsize=None)
def offsets(p: int, depth: int) -> tuple[int, ...]:
    """Start index of every level ``0..depth`` (the last entry is the size)."""
    out = [0]
    for l in range(depth):
        out.append(out[-1] + p**l)
    return tuple(out)


def size(p: int, depth: int) -> int:
    return offsets(p, depth)[-1]


@lru_cache(maxsize=None)
def _inverse_table(p: int) -> np.ndarray:
    tab = np.zeros(p, dtype=np.int64)
    for u in range(1, p):
        tab[u] = pow(u, -1, p)
    return tab


def vertex_index(v: Sequence[int], p: int) -> int:
    rank = 0
    for x in v:
        rank = rank * p + x
    return offsets(p, len(v))[-1] + rank


def index_vertex(i: int, p: int) -> Vertex:
    l = 0
    while (p ** (l + 1) - 1) // (p - 1) <= i:
        l += 1
    rank = i - (p**l - 1) // (p - 1)
    letters = []
    for _ in range(l):
        letters.append(rank % p)
        rank //= p
    return tuple(reversed(letters))


def action(p: int, depth: int, u: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Index of the image of every vertex of length ``< depth``."""
    off = offsets(p, depth)
    img = np.empty(u.shape, dtype=np.int64)
    if depth == 0:
        return img
    img[..., 0] = 0
    x = np.arange(p, dtype=np.int64)
    batch = u.shape[:-1]
    for l in range(depth - 1):
        lo, hi = off[l], off[l + 1]
        par = img[..., lo:hi] - lo
        letter = (u[..., lo:hi, None] * x + t[..., lo:hi, None]) % p
        child = par[..., None] * p + letter
        img[..., hi:off[l + 2]] = child.reshape(batch + (p ** (l + 1),)) + hi
    return img


def _gather(a: np.ndarray, idx: np.ndarray) -> np.ndarray:
    if a.ndim == 1 and idx.ndim == 1:
        return a[idx]
    a, idx = np.broadcast_arrays(a, idx)
    return np.take_along_axis(a, idx, axis=-1)


def compose_arrays(p, depth, gu, gt, hu, ht):
    img = action(p, depth, gu, gt)
    hu2 = _gather(hu, img)
    ht2 = _gather(ht, img)
    return (hu2 * gu) % p, (hu2 * gt + ht2) % p


def inverse_arrays(p, depth, u, t):
    img = action(p, depth, u, t)
    ui = _inverse_table(p)[u]
    ti = (-ui * t) % p
    if u.ndim == 1:
        ou = np.empty_like(u)
        ot = np.empty_like(t)
        ou[img] = ui
        ot[img] = ti
        return ou, ot
    ou = np.empty_like(u)
    ot = np.empty_like(t)
    np.put_along_axis(ou, img, ui, axis=-1)
    np.put_along_axis(ot, img, ti, axis=-1)
    return ou, ot


class Portrait:
    """Immutable depth-``n`` truncation of a tree automorphism."""

    __slots__ = ("p", "depth", "u", "t", "_key")

    def __init__(self, p: int, depth: int, u, t):
        u = np.asarray(u, dtype=np.int64)
        t = np.asarray(t, dtype=np.int64)
        n = size(p, depth)
        if u.shape != (n,) or t.shape != (n,):
            raise DimensionError(f"depth {depth} portrait needs {n} labels, got {u.shape}")
        u.flags.writeable = False
        t.flags.writeable = False
        self.p = p
        self.depth = depth
        self.u = u
        self.t = t
        self._key = None

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls, p: int, depth: int) -> "Portrait":
        n = size(p, depth)
        return cls(p, depth, np.ones(n, dtype=np.int64), np.zeros(n, dtype=np.int64))

    @classmethod
    def from_labels(cls, p: int, depth: int, labels: Iterable[Label]) -> "Portrait":
        labels = list(labels)
        if any(int(lab[0]) % p == 0 for lab in labels):
            raise DomainError("label with u = 0 is not a permutation")
        u = np.array([int(lab[0]) % p for lab in labels], dtype=np.int64)
        t = np.array([int(lab[1]) % p for lab in labels], dtype=np.int64)
        return cls(p, depth, u, t)

    @classmethod
    def from_sections(cls, root: Label, sections: Sequence["Portrait"]) -> "Portrait":
        """Inverse of the first-level decomposition: root label plus ``p`` sections."""
        p = sections[0].p
        if len(sections) != p:
            raise DimensionError(f"need {p} sections, got {len(sections)}")
        d = min(s.depth for s in sections)
        sections = [s.truncate(d) for s in sections]
        depth = d + 1
        off = offsets(p, depth)
        u = np.empty(off[-1], dtype=np.int64)
        t = np.empty(off[-1], dtype=np.int64)
        u[0], t[0] = root[0] % p, root[1] % p
        sub = offsets(p, d)
        for l in range(d):
            for x, s in enumerate(sections):
                blk = p**l
                lo = off[l + 1] + x * blk
                u[lo:lo + blk] = s.u[sub[l]:sub[l + 1]]
                t[lo:lo + blk] = s.t[sub[l]:sub[l + 1]]
        return cls(p, depth, u, t)

    # basic protocol -----------------------------------------------------

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.u.tobytes() + self.t.tobytes()
        return self._key

    def __hash__(self):
        return hash((self.p, self.depth, self.key()))

    def __eq__(self, other):
        if not isinstance(other, Portrait):
            return NotImplemented
        return self.p == other.p and self.depth == other.depth and self.key() == other.key()

    def __repr__(self):
        return f"Portrait(p={self.p}, depth={self.depth}, labels={self.labels()})"

    def labels(self) -> list[Label]:
        return [(int(a), int(b)) for a, b in zip(self.u, self.t)]

    def label(self, v: Sequence[int]) -> Label:
        if len(v) >= self.depth:
            raise DepthError(f"vertex of length {len(v)} has no label at depth {self.depth}")
        i = vertex_index(v, self.p)
        return (int(self.u[i]), int(self.t[i]))

    def is_identity(self) -> bool:
        return bool(np.all(self.u == 1) and np.all(self.t == 0))

    def truncate(self, depth: int) -> "Portrait":
        if depth > self.depth:
            raise DepthError(f"cannot extend depth {self.depth} to {depth}")
        if depth == self.depth:
            return self
        n = size(self.p, depth)
        return Portrait(self.p, depth, self.u[:n].copy(), self.t[:n].copy())

    def level(self, l: int) -> np.ndarray:
        """Translation parts of the labels on level ``l``."""
        off = offsets(self.p, self.depth)
        return self.t[off[l]:off[l + 1]]

    # group operations ---------------------------------------------------

    def _match(self, other: "Portrait") -> tuple["Portrait", "Portrait"]:
        if self.p != other.p:
            raise DomainError("portraits over different primes")
        d = min(self.depth, other.depth)
        return self.truncate(d), other.truncate(d)

    def __mul__(self, other: "Portrait") -> "Portrait":
        g, h = self._match(other)
        u, t = compose_arrays(g.p, g.depth, g.u, g.t, h.u, h.t)
        return Portrait(g.p, g.depth, u, t)

    def inverse(self) -> "Portrait":
        u, t = inverse_arrays(self.p, self.depth, self.u, self.t)
        return Portrait(self.p, self.depth, u, t)

    def __pow__(self, k: int) -> "Portrait":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = Portrait.identity(self.p, self.depth)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self, h: "Portrait") -> "Portrait":
        """``self^h = h^-1 * self * h``."""
        return h.inverse() * self * h

    # action and sections -------------------------------------------------

    def apply(self, v: Sequence[int]) -> Vertex:
        if len(v) > self.depth:
            raise DepthError(f"vertex of length {len(v)} beyond depth {self.depth}")
        p = self.p
        out = []
        prefix: list[int] = []
        for x in v:
            i = vertex_index(prefix, p)
            out.append((int(self.u[i]) * x + int(self.t[i])) % p)
            prefix.append(x)
        return tuple(out)

    def section(self, v: Sequence[int]) -> "Portrait":
        k = len(v)
        if k > self.depth:
            raise DepthError(f"vertex of length {k} beyond depth {self.depth}")
        p = self.p
        d = self.depth - k
        off = offsets(p, self.depth)
        rank = 0
        for x in v:
            rank = rank * p + x
        n = size(p, d)
        u = np.empty(n, dtype=np.int64)
        t = np.empty(n, dtype=np.int64)
        sub = offsets(p, d)
        for l in range(d):
            blk = p**l
            lo = off[k + l] + rank * blk
            u[sub[l]:sub[l + 1]] = self.u[lo:lo + blk]
            t[sub[l]:sub[l + 1]] = self.t[lo:lo + blk]
        return Portrait(p, d, u, t)

    def sections(self) -> list["Portrait"]:
        return [self.section((x,)) for x in range(self.p)]

    # serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {"p": self.p, "depth": self.depth, "labels": [list(l) for l in self.labels()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Portrait":
        check_prime(d["p"])
        return cls.from_labels(d["p"], d["depth"], [tuple(x) for x in d["labels"]])

    @classmethod
    def from_json(cls, s: str) -> "Portrait":
        return cls.from_dict(json.loads(s))


def identity(p: int, depth: int) -> Portrait:
    return Portrait.identity(p, depth)


def rooted(label: Label, p: int, depth: int) -> Portrait:
    if label[0] % p == 0:
        raise DomainError("label with u = 0 is not a permutation")
    g = Portrait.identity(p, depth)
    if depth == 0:
        return g
    u = g.u.copy()
    t = g.t.copy()
    u[0], t[0] = label[0] % p, label[1] % p
    return Portrait(p, depth, u, t)


def place(x: Portrait, v: Sequence[int], depth: int | None = None) -> Portrait:
    """The element acting as ``x`` below vertex ``v`` and trivially elsewhere."""
    p = x.p
    k = len(v)
    if depth is None:
        depth = x.depth + k
    if depth - k > x.depth:
        raise DepthError("section too shallow for requested depth")
    g = Portrait.identity(p, depth)
    if depth <= k:
        return g
    x = x.truncate(depth - k)
    off = offsets(p, depth)
    sub = offsets(p, x.depth)
    rank = 0
    for letter in v:
        rank = rank * p + letter
    u = g.u.copy()
    t = g.t.copy()
    for l in range(x.depth):
        blk = p**l
        lo = off[k + l] + rank * blk
        u[lo:lo + blk] = x.u[sub[l]:sub[l + 1]]
        t[lo:lo + blk] = x.t[sub[l]:sub[l + 1]]
    return Portrait(p, depth, u, t)


def kappa(m: int, g: Portrait, depth: int | None = None) -> Portrait:
    """The m-th diagonal: ``g`` below every vertex of level ``m``."""
    if m < 0:
        raise DomainError("diagonal level must be non-negative")
    p = g.p
    if depth is None:
        depth = g.depth + m
    if depth - m > g.depth:
        raise DepthError(f"kappa_{m} of a depth-{g.depth} portrait reaches depth {g.depth + m} only")
    out = Portrait.identity(p, depth)
    if depth <= m:
        return out
    g = g.truncate(depth - m)
    off = offsets(p, depth)
    sub = offsets(p, g.depth)
    u = out.u.copy()
    t = out.t.copy()
    for l in range(g.depth):
        blk = p**l
        lo, hi = off[m + l], off[m + l + 1]
        u[lo:hi] = np.tile(g.u[sub[l]:sub[l + 1]], p**m)
        t[lo:hi] = np.tile(g.t[sub[l]:sub[l + 1]], p**m)
    return Portrait(p, depth, u, t)


def compose(g: Portrait, h: Portrait) -> Portrait:
    return g * h


def section(g: Portrait, v: Sequence[int]) -> Portrait:
    return g.section(v)


def apply(g: Portrait, v: Sequence[int]) -> Vertex:
    return g.apply(v)


def equal_at_depth(g: Portrait, h: Portrait, n: int) -> bool:
    if g.depth < n or h.depth < n:
        raise DepthError(f"comparison at depth {n} needs portraits at least that deep")
    return g.truncate(n) == h.truncate(n)


def commutator(x: Portrait, y: Portrait) -> Portrait:
    """``[x, y] = x^-1 y^-1 x y``."""
    return x.inverse() * y.inverse() * x * y


def new_portrait(p: int, depth: int, labels: Iterable[Label]) -> Portrait:
    check_prime(p)
    return Portrait.from_labels(p, depth, labels)
