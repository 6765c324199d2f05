"""Multi-GGS groups: the defining space, its classification, generator portraits."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import fpalg
from .errors import DimensionError, RankError, UnsupportedGroupError
from .tree import Portrait, commutator, kappa, offsets, rooted, sigma_power

CONSTANT = "constant"
SYMMETRIC = "symmetric"
REGULAR = "regular"


@dataclass(frozen=True)
class MggsGroup:
    p: int
    E: fpalg.Mat
    classification: str

    @property
    def r(self) -> int:
        return len(self.E)

    def column(self, i: int) -> fpalg.Vec:
        return fpalg.column(self.E, i, self.p)

    def basis(self, j: int) -> fpalg.Vec:
        """Standard basis vector ``s_j`` of F_p^r, 1-indexed."""
        return tuple(int(i == j - 1) for i in range(self.r))

    def exponents(self, n: Sequence[int]) -> fpalg.Vec:
        """``n . E``: the a-exponents of the sections of ``b^n`` at ``1..p-1``."""
        return fpalg.vec_mat(n, self.E, self.p)

    def require_nonconstant(self) -> None:
        if self.classification == CONSTANT:
            raise UnsupportedGroupError(
                "the constant GGS-group is excluded: its automorphism group is not covered"
            )

    def to_dict(self) -> dict:
        return {"p": self.p, "rows": [list(r) for r in self.E]}

    def __str__(self):
        rows = ";".join(",".join(map(str, r)) for r in self.E)
        return f"G(p={self.p}, E={rows})"


def classify(p: int, E: fpalg.Mat) -> str:
    if len(E) == 1:
        row = E[0]
        if len(set(row)) == 1:
            return CONSTANT
        if all(row[i - 1] == row[p - i - 1] for i in range(1, p)):
            return SYMMETRIC
    return REGULAR


def construct(p: int, rows: Iterable[Iterable[int]]) -> MggsGroup:
    fpalg.check_prime(p)
    E = fpalg.mat(rows, p)
    if not E:
        raise RankError("E needs at least one row")
    if len(E[0]) != p - 1:
        raise DimensionError(f"rows must have length p-1 = {p - 1}, got {len(E[0])}")
    rk = fpalg.rank(E, p)
    if rk == 0:
        raise RankError("E is the zero matrix")
    if rk != len(E):
        raise RankError(f"rows are linearly dependent (rank {rk} < {len(E)})")
    return MggsGroup(p, E, classify(p, E))


def from_dict(d: dict) -> MggsGroup:
    return construct(int(d["p"]), d["rows"])


def load(path) -> MggsGroup:
    with open(path) as fh:
        return from_dict(json.load(fh))


def full_space(p: int) -> MggsGroup:
    return construct(p, [[int(i == j) for i in range(p - 1)] for j in range(p - 1)])


def gupta_sidki(p: int) -> MggsGroup:
    return construct(p, [[1, p - 1] + [0] * (p - 3)])


# generator portraits ------------------------------------------------------


def a_portrait(k: int, p: int, depth: int) -> Portrait:
    return rooted(sigma_power(k, p), p, depth)


@lru_cache(maxsize=4096)
def b_portrait(G: MggsGroup, n: tuple[int, ...], depth: int) -> Portrait:
    """``b^n``: identity on the spine ``0^l``, ``a^(n.e_i)`` hanging off it at ``0^l i``."""
    p = G.p
    if len(n) != G.r:
        raise DimensionError(f"b-exponent needs length r = {G.r}")
    x = np.array(G.exponents(n), dtype=np.int64)
    g = Portrait.identity(p, depth)
    t = g.t.copy()
    off = offsets(p, depth)
    for l in range(depth - 1):
        t[off[l + 1] + 1:off[l + 1] + p] = x
    return Portrait(p, depth, g.u, t)


def b_commutator(G: MggsGroup, depth: int) -> Portrait:
    """``[b^{s_1}, a]``."""
    return commutator(b_portrait(G, G.basis(1), depth), a_portrait(1, G.p, depth))


@lru_cache(maxsize=1024)
def c_portrait(G: MggsGroup, k: int, depth: int) -> Portrait:
    """``c^k``: the section ``[b^{s_1}, a]^k`` at vertex 0, trivial elsewhere."""
    p = G.p
    if depth == 0:
        return Portrait.identity(p, 0)
    inner = b_commutator(G, depth - 1) ** k
    ident = Portrait.identity(p, depth - 1)
    return Portrait.from_sections((1, 0), [inner] + [ident] * (p - 1))


def kappa_a_portrait(m: int, k: int, p: int, depth: int) -> Portrait:
    return kappa(m, a_portrait(k, p, max(depth - m, 0)), depth)
