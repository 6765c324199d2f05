"""The subgroups U, V, W of F_p^x, the Aut(G) structure report, and diagonal normalizers.

A unit ``d`` acts on the tree as the rooted automorphism with label
``x -> d*x``.  Conjugating ``b^n`` by the diagonal product
``prod_i kappa_i(d_i)`` turns the first-level exponent vector ``v = n.E``
into ``d_1 * perm_apply(v, d_0^-1)``; all constraints below come from that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from . import fpalg
from .errors import DomainError, PreconditionError
from .groups import SYMMETRIC, MggsGroup, a_portrait, b_portrait, full_space
from .tree import Portrait, kappa, rooted

FLAG_TRIVIAL_MINUS_ONE = "symmetric: -1 acts trivially on E, so it contributes to U but not to W"
FLAG_EXTRA_DIAGONALS = "diagonal normalizer count exceeds |U|*|W|"


def compute_U(G: MggsGroup) -> frozenset[int]:
    G.require_nonconstant()
    p = G.p
    return frozenset(
        u for u in fpalg.units(p) if fpalg.row_space_equal(fpalg.perm_mat(G.E, u, p), G.E, p)
    )


def compute_V(G: MggsGroup, U: Optional[frozenset[int]] = None) -> tuple[frozenset[int], dict[int, int]]:
    """Units of U acting on E as a scalar, with that scalar."""
    if U is None:
        U = compute_U(G)
    scalars = {}
    for v in sorted(U):
        lam = fpalg.scalar_action(G.E, v, G.p)
        if lam is not None:
            scalars[v] = lam
    return frozenset(scalars), scalars


def compute_W(scalars: dict[int, int], p: int) -> frozenset[int]:
    return fpalg.unit_subgroup_generated(scalars.values(), p)


# structure string -------------------------------------------------------------


def _cyclic(n: int) -> str:
    return f"C_{n}"


def _complement(U: frozenset[int], W: frozenset[int]) -> Optional[str]:
    orders = [len(x) for x in (U, W) if len(x) > 1]
    if not orders:
        return None
    if len(orders) == 1:
        return _cyclic(orders[0])
    a, b = orders
    if a == b == 2:
        return "C_2²"
    if a == b:
        return f"({_cyclic(a)})²"
    return f"({_cyclic(a)} × {_cyclic(b)})"


def structure_string(G: MggsGroup, U: frozenset[int], W: frozenset[int]) -> str:
    core = f"G ⋊ C_{G.p}" if G.classification == SYMMETRIC else f"G ⋊ ∏_ω C_{G.p}"
    x = _complement(U, W)
    return core if x is None else f"({core}) ⋊ {x}"


# report -------------------------------------------------------------------------


@dataclass(frozen=True)
class AutReport:
    classification: str
    U: frozenset[int]
    V: frozenset[int]
    W: frozenset[int]
    scalars: dict[int, int]
    structure: str
    out_finite: bool
    coprime_autos: bool
    dbar_count: int
    flags: tuple[str, ...] = field(default=())

    @property
    def orders(self) -> dict[str, int]:
        return {"U": len(self.U), "V": len(self.V), "W": len(self.W)}

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "U": sorted(self.U),
            "V": sorted(self.V),
            "W": sorted(self.W),
            "scalars": {str(k): v for k, v in sorted(self.scalars.items())},
            "structure": self.structure,
            "out_finite": self.out_finite,
            "coprime_autos": self.coprime_autos,
            "dbar_normalizer_order": self.dbar_count,
            "flags": list(self.flags),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "AutReport":
        return cls(
            d["classification"], frozenset(d["U"]), frozenset(d["V"]), frozenset(d["W"]),
            {int(k): v for k, v in d["scalars"].items()}, d["structure"], d["out_finite"],
            d["coprime_autos"], d["dbar_normalizer_order"], tuple(d["flags"]),
        )

    def summary(self) -> str:
        lines = [
            f"classification: {self.classification}",
            f"U = {sorted(self.U)}  (order {len(self.U)})",
            f"V = {sorted(self.V)}  (order {len(self.V)})",
            f"W = {sorted(self.W)}  (order {len(self.W)})",
            "scalars: " + ", ".join(f"{k}->{v}" for k, v in sorted(self.scalars.items())),
            f"Aut(G) = {self.structure}",
            f"Out(G) finite: {self.out_finite}",
            f"automorphisms of order coprime to p: {self.coprime_autos}",
        ]
        lines += [f"flag: {f}" for f in self.flags]
        return "\n".join(lines)


def aut_structure(G: MggsGroup) -> AutReport:
    U = compute_U(G)
    V, scalars = compute_V(G, U)
    W = compute_W(scalars, G.p)
    flags = []
    if G.classification == SYMMETRIC and len(W) == 1:
        flags.append(FLAG_TRIVIAL_MINUS_ONE)
    count = len(valid_diagonal_pairs(G))
    if count != len(U) * len(W):
        flags.append(FLAG_EXTRA_DIAGONALS)
    return AutReport(
        G.classification, U, V, W, scalars, structure_string(G, U, W),
        out_finite=G.classification == SYMMETRIC,
        coprime_autos=len(U) > 1 or len(W) > 1,
        dbar_count=count,
        flags=tuple(flags),
    )


# diagonal normalizers ------------------------------------------------------------


@dataclass(frozen=True)
class NormalizerSequence:
    """``d_0, d_1, ...`` given as ``prefix`` followed by ``cycle`` repeated forever."""

    p: int
    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    @property
    def preperiod(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def __getitem__(self, k: int) -> int:
        if k < len(self.prefix):
            return self.prefix[k]
        return self.cycle[(k - len(self.prefix)) % len(self.cycle)]

    def terms(self, n: int) -> tuple[int, ...]:
        return tuple(self[k] for k in range(n))

    def is_constant(self) -> bool:
        return len(set(self.prefix + self.cycle)) == 1

    def portrait(self, depth: int) -> Portrait:
        """``prod_(i < depth) kappa_i(x -> d_i x)`` truncated at ``depth``."""
        g = Portrait.identity(self.p, depth)
        for i in range(depth):
            g = g * kappa(i, rooted((self[i], 0), self.p, depth - i), depth)
        return g


def _next_term(G: MggsGroup, scalars: dict[int, int], d0: int, d1: int, dk: int) -> Optional[int]:
    # d_(k+1) * P_(d_k^-1) = d_1 * P_(d_0^-1) on E  <=>  d_0/d_k in V with scalar d_1/d_(k+1)
    p = G.p
    lam = scalars.get(d0 * fpalg.inv(dk, p) % p)
    if lam is None:
        return None
    return d1 * fpalg.inv(lam, p) % p


def _solve_sequence(G: MggsGroup, scalars: dict[int, int], d0: int, d1: int) -> Optional[NormalizerSequence]:
    seq = [d0, d1]
    seen = {d1: 1}
    while True:
        nxt = _next_term(G, scalars, d0, d1, seq[-1])
        if nxt is None:
            return None
        if nxt in seen:
            start = seen[nxt]
            return NormalizerSequence(G.p, tuple(seq[:start]), tuple(seq[start:]))
        seen[nxt] = len(seq)
        seq.append(nxt)


def normalizer_sequence(G: MggsGroup, d0: int, w: int) -> NormalizerSequence:
    """The diagonal normalizer with parameters ``d0`` in U and ``w`` in W, where ``d_1 = d0*w``."""
    p = G.p
    U = compute_U(G)
    V, scalars = compute_V(G, U)
    W = compute_W(scalars, p)
    d0, w = d0 % p, w % p
    if d0 not in U:
        raise DomainError(f"d0 = {d0} is not in U = {sorted(U)}")
    if w not in W:
        raise DomainError(f"w = {w} is not in W = {sorted(W)}")
    seq = _solve_sequence(G, scalars, d0, d0 * w % p)
    if seq is None:
        raise PreconditionError(f"no diagonal normalizer for d0={d0}, w={w}: the recurrence has no solution")
    return seq


def valid_diagonal_pairs(G: MggsGroup) -> list[tuple[int, int]]:
    """All ``(d0, d1)`` whose recurrence is solvable at every step, by brute force over units."""
    U = compute_U(G)
    _, scalars = compute_V(G, U)
    return [
        (d0, d1) for d0 in sorted(U) for d1 in fpalg.units(G.p)
        if _solve_sequence(G, scalars, d0, d1) is not None
    ]


@dataclass(frozen=True)
class ConjugationVerdict:
    passed: bool
    witness: Optional[str] = None


def _first_level_exponents(g: Portrait) -> fpalg.Vec:
    return tuple(int(x) for x in g.level(1)[1:])


def normalizer_conjugation_check(seq: NormalizerSequence, G: MggsGroup, depth: int) -> ConjugationVerdict:
    """Check at ``depth`` that the diagonal element of ``seq`` normalizes G.

    Ambient part: for the full-space group, the first-level exponents of
    ``(b^(s_j))^g`` are ``d_1 * s_(d_0 j)``.  Group part: ``a^g`` and every
    ``(b^(s_j))^g`` equal generators of G as portraits.
    """
    if depth < 2:
        raise PreconditionError("conjugation check needs depth >= 2")
    p = G.p
    g = seq.portrait(depth)
    d0, d1 = seq[0], seq[1]
    F = full_space(p)
    for j in range(1, p):
        conj = b_portrait(F, F.basis(j), depth).conj(g)
        expect = fpalg.scale(d1, F.basis(d0 * j % p), p)
        if _first_level_exponents(conj) != expect:
            return ConjugationVerdict(False, f"ambient b^(s_{j}): got {_first_level_exponents(conj)}, expected {expect}")
    if a_portrait(1, p, depth).conj(g) != a_portrait(d0, p, depth):
        return ConjugationVerdict(False, "a^g is not a power of a")
    for j in range(1, G.r + 1):
        conj = b_portrait(G, G.basis(j), depth).conj(g)
        m = fpalg.solve_row_space(_first_level_exponents(conj), G.E, p)
        if m is None:
            return ConjugationVerdict(False, f"(b^(s_{j}))^g has first-level exponents outside E")
        if conj != b_portrait(G, m, depth):
            return ConjugationVerdict(False, f"(b^(s_{j}))^g differs from b^{list(m)} below level 1")
    return ConjugationVerdict(True)


def diagonal_normalizers(G: MggsGroup) -> list[tuple[int, int, NormalizerSequence]]:
    """``(d0, w, sequence)`` for every parameter pair in U x W."""
    U = compute_U(G)
    _, scalars = compute_V(G, U)
    W = compute_W(scalars, G.p)
    return [(d0, w, normalizer_sequence(G, d0, w)) for d0 in sorted(U) for w in sorted(W)]


def raw_sequence(p: int, terms) -> NormalizerSequence:
    """A constant-tail sequence from explicit terms, for building non-normalizers."""
    terms = tuple(int(x) % p for x in terms)
    return NormalizerSequence(p, terms[:-1], terms[-1:])
