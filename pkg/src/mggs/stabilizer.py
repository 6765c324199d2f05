"""Coordinates on the first-level stabilizer, regularisation, order-p conjugators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import fpalg
from .errors import PreconditionError
from .groups import CONSTANT, REGULAR, SYMMETRIC, MggsGroup
from .tree import Portrait, identity
from .words import (
    A,
    B,
    C,
    Word,
    abelianize,
    evaluate,
    reduce,
    routed_syllables,
    sections_of_word,
)


@dataclass(frozen=True)
class StabCoordinates:
    """``g|_k = a^(s_k) b^(n_k) y_k``: B-coordinates, forced A-coordinates, residues."""

    n: tuple[fpalg.Vec, ...]
    s: tuple[int, ...]
    L: tuple[Word, ...]


def forced_a_coords(n: Sequence[Sequence[int]], G: MggsGroup, shift: int = 0) -> tuple[int, ...]:
    """``s_k = sum_i n_i . e_(k-i)`` with indices mod p and ``e_0 = 0``.

    ``shift`` offsets the column index and exists only to build deliberately
    wrong variants for mutation tests.
    """
    p = G.p
    if len(n) != p:
        raise PreconditionError(f"need {p} B-coordinate vectors, got {len(n)}")
    return tuple(
        sum(fpalg.dot(n[i], G.column(k - i + shift), p) for i in range(p)) % p for k in range(p)
    )


def b_coordinates(w: Word, G: MggsGroup, shift: int = 0) -> StabCoordinates:
    """B-coordinates of a stabilizer word.

    A ``b^m`` syllable preceded by total a-exponent ``tau`` has its
    b-section at vertex ``-tau``, so it counts towards ``n_(-tau)``.
    ``c`` syllables have no B-part.
    """
    p = G.p
    n = [(0,) * G.r for _ in range(p)]
    for tau, g in routed_syllables(w):
        if g.kind == "b":
            k = (-tau) % p
            n[k] = fpalg.add(n[k], g.exp, p)
    s = forced_a_coords(n, G, shift)
    secs = sections_of_word(w, G)
    L = tuple(
        reduce(Word(p, [A(s[k]), B(n[k])]).inverse() * sec) for k, sec in enumerate(secs)
    )
    return StabCoordinates(tuple(n), s, L)


def coordinate_word(n: Sequence[Sequence[int]], G: MggsGroup) -> Word:
    """A word in ``Stab_G(1)`` with prescribed B-coordinates: ``prod_i a^-i b^(n_i) a^i``."""
    p = G.p
    w = Word(p)
    for i in range(p):
        if any(n[i]):
            w = w * Word(p, [A(-i), B(n[i]), A(i)])
    return w


def generator_words(G: MggsGroup) -> list[Word]:
    return [Word(G.p, [A(1)])] + [Word(G.p, [B(G.basis(j))]) for j in range(1, G.r + 1)]


def regularisation_gens(G: MggsGroup) -> list[Word]:
    G.require_nonconstant()
    gens = generator_words(G)
    if G.classification == SYMMETRIC:
        gens.append(Word(G.p, [C(1)]))
    return gens


def derived_gens(G: MggsGroup) -> list[Word]:
    """Commutators of generator pairs; their normal closure is ``G'``."""
    gens = generator_words(G)
    out = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            x, y = gens[i], gens[j]
            out.append(x.inverse() * y.inverse() * x * y)
    return out


# order-p elements --------------------------------------------------------------


@dataclass(frozen=True)
class Conjugator:
    """``h`` with ``a^h = a*g``, given by its first-level section words."""

    s: int
    sections: tuple[Word, ...]
    b_coords: tuple[fpalg.Vec, ...]

    def portrait(self, G: MggsGroup, depth: int) -> Portrait:
        if depth == 0:
            return identity(G.p, 0)
        return Portrait.from_sections((1, 0), [evaluate(w, G, depth - 1) for w in self.sections])


def order_p_conjugator(g: Word, G: MggsGroup, depth: int) -> Conjugator:
    """Conjugator of ``a`` onto ``a*g`` for ``g`` in ``Stab_G(1)`` with ``(a*g)^p = 1``.

    Write ``g_k`` for the sections of ``g' = a g a^-1`` (so ``g'_k = g|_(k+1)``
    and ``a*g = g'*a``).  Then ``h`` has sections
    ``a^s, a^s g'_0, a^s g'_0 g'_1, ...``; its B-coordinates are the partial
    sums of those of ``g'``, and ``s`` is the forced A-coordinate at 0 of
    those partial sums, which places ``h`` in the regularisation.
    """
    p = G.p
    one = Word(p, [A(1)])
    ag = one * g
    if not evaluate(ag**p, G, depth).is_identity():
        raise PreconditionError(f"(a*g)^p is not trivial at depth {depth}")
    gp = one * g * one.inverse()
    coords = b_coordinates(gp, G)
    partial = [(0,) * G.r]
    for i in range(p - 1):
        partial.append(fpalg.add(partial[-1], coords.n[i], p))
    s = forced_a_coords(partial, G)[0]
    secs = sections_of_word(gp, G)
    out = [Word(p, [A(s)])]
    for k in range(p - 1):
        out.append(out[-1] * secs[k])
    return Conjugator(s, tuple(out), tuple(partial))


def is_stabilizer_word(w: Word) -> bool:
    return sum(g.exp for g in w.syllables if g.kind == "a") % w.p == 0


def abelianized_sections(w: Word, G: MggsGroup) -> list[tuple[int, fpalg.Vec]]:
    return [abelianize(x, G) for x in sections_of_word(w, G)]
