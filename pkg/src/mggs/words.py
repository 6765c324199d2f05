"""Words over the generators ``a``, ``b^n``, ``c`` and ``kappa_m(a)``.

A word is a product of syllables, read left to right (right actions).  The
text syntax is ``a^2 * b[1,0] * c^-1 * k3(a)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import fpalg
from .errors import DomainError, PreconditionError
from .groups import MggsGroup, a_portrait, b_portrait, c_portrait, kappa_a_portrait
from .tree import Portrait


@dataclass(frozen=True)
class Gen:
    kind: str  # "a", "b", "c" or "k"
    exp: object  # int, or a tuple for kind "b"
    level: int = 0  # diagonal level for kind "k"

    def is_trivial(self) -> bool:
        if self.kind == "b":
            return not any(self.exp)
        return self.exp == 0

    def inverse(self, p: int) -> "Gen":
        if self.kind == "b":
            return Gen("b", tuple((-x) % p for x in self.exp))
        return Gen(self.kind, (-self.exp) % p, self.level)

    def merges_with(self, other: "Gen") -> bool:
        return self.kind == other.kind and self.level == other.level

    def merged(self, other: "Gen", p: int) -> "Gen":
        if self.kind == "b":
            return Gen("b", fpalg.add(self.exp, other.exp, p))
        return Gen(self.kind, (self.exp + other.exp) % p, self.level)


def A(k: int) -> Gen:
    return Gen("a", k)


def B(n: Sequence[int]) -> Gen:
    return Gen("b", tuple(n))


def C(k: int) -> Gen:
    return Gen("c", k)


def KappaA(m: int, k: int) -> Gen:
    if m < 1:
        raise DomainError("kappa level must be at least 1; kappa_0(a) is a")
    return Gen("k", k, m)


def _normalize(g: Gen, p: int) -> Gen:
    if g.kind == "b":
        return Gen("b", tuple(int(x) % p for x in g.exp))
    if g.kind not in ("a", "c", "k"):
        raise DomainError(f"unknown generator kind {g.kind!r}")
    return Gen(g.kind, int(g.exp) % p, g.level)


class Word:
    """Immutable sequence of syllables over a fixed prime."""

    __slots__ = ("p", "syllables")

    def __init__(self, p: int, syllables: Iterable[Gen] = ()):
        self.p = p
        self.syllables = tuple(_normalize(g, p) for g in syllables)

    def __len__(self):
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __eq__(self, other):
        return isinstance(other, Word) and self.p == other.p and self.syllables == other.syllables

    def __hash__(self):
        return hash((self.p, self.syllables))

    def __mul__(self, other: "Word") -> "Word":
        if self.p != other.p:
            raise DomainError("words over different primes")
        return reduce(Word(self.p, self.syllables + other.syllables))

    def inverse(self) -> "Word":
        return Word(self.p, [g.inverse(self.p) for g in reversed(self.syllables)])

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return reduce(Word(self.p, base.syllables * abs(k)))

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def __str__(self):
        return format_word(self)


def word(p: int, *gens: Gen) -> Word:
    return Word(p, gens)


def reduce(w: Word) -> Word:
    p = w.p
    out: list[Gen] = []
    for g in w.syllables:
        if g.is_trivial():
            continue
        if out and out[-1].merges_with(g):
            m = out.pop().merged(g, p)
            if not m.is_trivial():
                out.append(m)
        else:
            out.append(g)
    return Word(p, out)


def commutator(x: Word, y: Word) -> Word:
    return x.inverse() * y.inverse() * x * y


def conjugate(x: Word, h: Word) -> Word:
    return h.inverse() * x * h


def gen_portrait(g: Gen, G: MggsGroup, depth: int) -> Portrait:
    p = G.p
    if g.kind == "a":
        return a_portrait(g.exp, p, depth)
    if g.kind == "b":
        return b_portrait(G, g.exp, depth)
    if g.kind == "c":
        return c_portrait(G, g.exp, depth)
    return kappa_a_portrait(g.level, g.exp, p, depth)


def evaluate(w: Word, G: MggsGroup, depth: int) -> Portrait:
    if w.p != G.p:
        raise DomainError("word and group over different primes")
    out = Portrait.identity(G.p, depth)
    for g in w.syllables:
        out = out * gen_portrait(g, G, depth)
    return out


def abelianize(w: Word, G: MggsGroup) -> tuple[int, fpalg.Vec]:
    """Image in ``G/G' = F_p x F_p^r``: total a-exponent and total b-vector."""
    p = G.p
    a_exp = 0
    b_vec = (0,) * G.r
    for g in w.syllables:
        if g.kind == "a":
            a_exp = (a_exp + g.exp) % p
        elif g.kind == "b":
            b_vec = fpalg.add(b_vec, g.exp, p)
        else:
            raise DomainError(f"syllable {g} lies outside G; abelianization undefined")
    return a_exp, b_vec


def syllable_length(w: Word) -> int:
    return len(reduce(w))


def a_exponent(w: Word) -> int:
    return sum(g.exp for g in w.syllables if g.kind == "a") % w.p


def b_commutator_word(G: MggsGroup) -> Word:
    """``[b^{s_1}, a]``."""
    return commutator(Word(G.p, [B(G.basis(1))]), Word(G.p, [A(1)]))


def routed_syllables(w: Word) -> list[tuple[int, Gen]]:
    """``(shift, syllable)`` for every non-``a`` syllable of a stabilizer word.

    The shift is the total a-exponent of the prefix, so ``w`` is the product
    of the conjugates ``a^shift * syllable * a^-shift``.
    """
    p = w.p
    tau = 0
    out = []
    for g in w.syllables:
        if g.kind == "a":
            tau = (tau + g.exp) % p
        elif g.kind == "k":
            raise DomainError("kappa_m(a) syllables have no first-level routing")
        else:
            out.append((tau, g))
    if tau:
        raise PreconditionError(f"total a-exponent {tau} != 0: word is not in Stab(1)")
    return out


def sections_of_word(w: Word, G: MggsGroup) -> list[Word]:
    """Words for the first-level sections of a stabilizer word.

    ``a^tau b^n a^-tau`` has section ``b^n`` at ``-tau`` and ``a^(n.e_j)`` with
    ``j = k + tau`` at every other vertex ``k``; ``c`` contributes its
    commutator section at ``-tau`` only.
    """
    p = G.p
    parts: list[list[Gen]] = [[] for _ in range(p)]
    comm = None
    for tau, g in routed_syllables(w):
        if g.kind == "b":
            x = G.exponents(g.exp)
            for k in range(p):
                j = (k + tau) % p
                parts[k].append(g if j == 0 else A(x[j - 1]))
        else:
            if comm is None:
                comm = b_commutator_word(G)
            parts[(-tau) % p].extend((comm ** g.exp).syllables)
    return [reduce(Word(p, gens)) for gens in parts]


# text syntax ----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<a>a)|(?P<b>b)(?:\[(?P<bvec>[-\d,\s]*)\])?|(?P<c>c)|k(?P<lvl>\d+)\(\s*a\s*\))"
    r"(?:\s*\^\s*(?P<exp>[-+]?\d+))?\s*(?P<sep>\*)?"
)


def parse_word(text: str, G: MggsGroup) -> Word:
    """Parse ``a^2 * b[1,0] * c^-1 * k3(a)``; a bare ``b`` means ``b[1]`` when r = 1."""
    p = G.p
    gens: list[Gen] = []
    pos = 0
    text = text.strip()
    if text in ("", "1", "id", "e"):
        return Word(p)
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse word at position {pos}: {text[pos:]!r}")
        e = int(m.group("exp")) if m.group("exp") else 1
        if m.group("a"):
            gens.append(A(e))
        elif m.group("b"):
            if m.group("bvec") is not None:
                n = [int(x) for x in m.group("bvec").split(",") if x.strip()]
            elif G.r == 1:
                n = [1]
            else:
                raise DomainError("b needs an explicit exponent vector when r > 1")
            if len(n) != G.r:
                raise DomainError(f"b-vector needs {G.r} entries, got {len(n)}")
            gens.append(B([e * x for x in n]))
        elif m.group("c"):
            gens.append(C(e))
        else:
            gens.append(KappaA(int(m.group("lvl")), e))
        pos = m.end()
    return reduce(Word(p, gens))


def _fmt_exp(k: int, p: int) -> str:
    k %= p
    if k > p // 2:
        k -= p
    return "" if k == 1 else f"^{k}"


def format_word(w: Word) -> str:
    if not w.syllables:
        return "1"
    parts = []
    for g in w.syllables:
        if g.kind == "a":
            parts.append("a" + _fmt_exp(g.exp, w.p))
        elif g.kind == "b":
            parts.append("b[" + ",".join(map(str, g.exp)) + "]")
        elif g.kind == "c":
            parts.append("c" + _fmt_exp(g.exp, w.p))
        else:
            parts.append(f"k{g.level}(a)" + _fmt_exp(g.exp, w.p))
    return " * ".join(parts)


# random words -----------------------------------------------------------------


def random_word(G: MggsGroup, length: int, rng: np.random.Generator, stabilizer: bool = False) -> Word:
    """Alternating word ``a^i b^n a^i b^n ...`` with ``length`` syllables.

    With ``stabilizer=True`` a closing ``a`` power makes the total
    a-exponent zero (the word may then have ``length + 1`` syllables).
    """
    p = G.p
    gens: list[Gen] = []
    kind = "a" if rng.integers(2) else "b"
    for _ in range(length):
        if kind == "a":
            gens.append(A(int(rng.integers(1, p))))
            kind = "b"
        else:
            n = tuple(int(x) for x in rng.integers(0, p, G.r))
            while not any(n):
                n = tuple(int(x) for x in rng.integers(0, p, G.r))
            gens.append(B(n))
            kind = "a"
    w = Word(p, gens)
    if stabilizer:
        w = reduce(Word(p, gens + [A(-a_exponent(w))]))
    return reduce(w)
