"""Brute-force checks of the structural facts at finite depth.

Every check returns a ``CheckResult``; a failing result carries a witness
string that names the offending element so it can be replayed.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import fpalg
from .autgrp import compute_U, diagonal_normalizers, normalizer_conjugation_check
from .groups import (
    SYMMETRIC,
    MggsGroup,
    a_portrait,
    b_commutator,
    b_portrait,
    c_portrait,
    kappa_a_portrait,
)
from .errors import ResourceError
from .quotient import enumerate_quotient, layered
from .stabilizer import (
    b_coordinates,
    coordinate_word,
    derived_gens,
    forced_a_coords,
    generator_words,
    order_p_conjugator,
    regularisation_gens,
)
from .tree import Portrait, commutator, compose_arrays, kappa, offsets, place, size
from .words import A, B, C, Word, abelianize, evaluate, random_word, reduce, sections_of_word, syllable_length


@dataclass
class CheckResult:
    name: str
    params: dict
    passed: bool
    witness: Optional[str] = None
    elapsed: float = 0.0
    seed: Optional[int] = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)

    def __str__(self):
        verdict = "PASS" if self.passed else "FAIL"
        extra = f"  witness: {self.witness}" if self.witness else ""
        return f"{verdict} {self.name} {self.params} ({self.elapsed:.2f}s){extra}"


def _params(G: Optional[MggsGroup], **kw) -> dict:
    out = {"p": G.p, "E": [list(r) for r in G.E]} if G is not None else {}
    out.update(kw)
    return out


def _timed(name: str, params: dict, body: Callable[[dict], Optional[str]], seed=None) -> CheckResult:
    details: dict = {}
    t0 = time.perf_counter()
    witness = body(details)
    return CheckResult(name, params, witness is None, witness, time.perf_counter() - t0, seed, details)


# global equations --------------------------------------------------------------


def check_global_equations(G: MggsGroup, depth: int, mutate: bool = False, seed: int = 0,
                           samples: int = 2) -> CheckResult:
    """Coordinates of ``Stab_(G_reg)(1)`` at ``depth``, both directions.

    Forward: every stabilizer element of the enumerated ``G_reg`` quotient
    has sections abelianizing to ``(s_k, n_k)``, residues in ``G'``, and
    section words matching the portrait.  Converse: every choice of
    B-coordinates, with forced A-coordinates and random ``G'`` residues,
    gives an element of ``G_reg``.  ``mutate`` shifts the column index in
    the forced A-coordinate formula, which must be caught.
    """
    shift = 1 if mutate else 0
    name = "global_equations" + ("[mutated]" if mutate else "")

    def body(details):
        p = G.p
        rng = np.random.default_rng(seed)
        gens = regularisation_gens(G)
        Q = enumerate_quotient(G, gens, depth)
        Lreg = layered(G, gens, depth)
        Gd = layered(G, derived_gens(G), depth - 1, normal_by=generator_words(G))
        stab = Q.stabilizer(1)
        details.update(quotient_order=Q.order, stabilizer_order=len(stab))
        for g in stab:
            w = Q.word_of(g)
            co = b_coordinates(w, G, shift)
            secs = sections_of_word(w, G)
            for k in range(p):
                if abelianize(secs[k], G) != (co.s[k], co.n[k]):
                    return f"word {w}: section {k} abelianizes to {abelianize(secs[k], G)}, coordinates give {(co.s[k], co.n[k])}"
                if evaluate(secs[k], G, depth - 1) != g.section((k,)):
                    return f"word {w}: section word {k} disagrees with the portrait"
                if evaluate(co.L[k], G, depth - 1) not in Gd:
                    return f"word {w}: residue {co.L[k]} at {k} is not in G' at depth {depth - 1}"
        space = list(itertools.product(range(p), repeat=G.r))
        if p ** (p * G.r) <= 20_000:
            choices = itertools.product(space, repeat=p)
            details["converse"] = "exhaustive"
        else:
            choices = (tuple(space[i] for i in rng.integers(0, len(space), p)) for _ in range(2000))
            details["converse"] = "sampled 2000"
        # residues drawn from a fixed pool of commutators in G'
        pool = [commutator(evaluate(random_word(G, 3, rng), G, depth - 1),
                           evaluate(random_word(G, 3, rng), G, depth - 1)) for _ in range(64)]
        ncheck = 0
        for n in choices:
            n = tuple(tuple(x) for x in n)
            s = forced_a_coords(n, G, shift)
            cw = coordinate_word(n, G)
            co = b_coordinates(cw, G, shift)
            if co.n != n or co.s != s:
                return f"coordinate word for n={n} has coordinates {co.n}, {co.s}"
            heads = [evaluate(Word(p, [A(s[k]), B(n[k])]), G, depth - 1) for k in range(p)]
            for _ in range(samples):
                secs = [heads[k] * pool[rng.integers(len(pool))] for k in range(p)]
                h = Portrait.from_sections((1, 0), secs)
                if h not in Lreg:
                    return f"n={n}, s={s}: element with these coordinates is not in G_reg at depth {depth}"
                ncheck += 1
        details["converse_elements"] = ncheck
        return None

    return _timed(name, _params(G, depth=depth, mutate=mutate), body, seed)


# order-p elements ----------------------------------------------------------------


def order_p_samples(G: MggsGroup, trials: int, depth: int, rng: np.random.Generator) -> list[Word]:
    """Stabilizer words ``g`` with ``(a g)^p = 1`` at ``depth``.

    Half are ``[a, x]`` for random ``x`` (so ``a g = a^x``), the rest random
    stabilizer words kept when they happen to qualify.
    """
    p = G.p
    one = Word(p, [A(1)])
    out = [Word(p)]
    tries = 0
    while len(out) < trials:
        tries += 1
        if tries % 2:
            x = random_word(G, int(rng.integers(1, 7)), rng)
            out.append(one.inverse() * x.inverse() * one * x)
        else:
            g = random_word(G, int(rng.integers(1, 6)), rng, stabilizer=True)
            if evaluate((one * g) ** p, G, depth).is_identity():
                out.append(g)
    return out


def conjugator_search(G: MggsGroup, depth: int = 3) -> dict:
    """Search ``Stab_G(1)`` at ``depth`` for ``h`` with ``a^h = a^c``.

    Any such ``h`` agrees with ``kappa_1(x) c`` modulo ``Stab(depth)`` for some
    ``x`` in the depth-``(depth-1)`` quotient, so scanning those ``x`` is
    exhaustive.
    """
    p = G.p
    LG = layered(G, generator_words(G), depth)
    Q = enumerate_quotient(G, generator_words(G), depth - 1)
    a = a_portrait(1, p, depth)
    c = c_portrait(G, 1, depth)
    target = a.conj(c)
    g = a.inverse() * target
    comm = b_commutator(G, depth - 1)
    found = []
    for x in Q:
        h = Portrait.from_sections((1, 0), [x * comm] + [x] * (p - 1))
        if h in LG:
            found.append(h)
    return {
        "searched": Q.order,
        "found": len(found),
        "g_in_stab_G": g in LG,
        "c_in_G_reg": c in layered(G, regularisation_gens(G), depth),
        "c_in_G": c in LG,
        "witness": found[0].to_json() if found else None,
    }


def check_order_p_prop(G: MggsGroup, trials: int = 50, depth: int = 3, seed: int = 0,
                       counterexample: bool = True) -> CheckResult:
    def body(details):
        rng = np.random.default_rng(seed)
        a = a_portrait(1, G.p, depth)
        reg2 = layered(G, regularisation_gens(G), 2)
        samples = order_p_samples(G, trials, depth, rng)
        for g in samples:
            h = order_p_conjugator(g, G, depth).portrait(G, depth)
            if a.conj(h) != a * evaluate(g, G, depth):
                return f"g = {g}: a^h != a*g at depth {depth}"
            if h.truncate(2) not in reg2:
                return f"g = {g}: conjugator not in G_reg at depth 2"
        details["samples"] = len(samples)
        if counterexample and G.classification == SYMMETRIC:
            res = conjugator_search(G, 3)
            details["counterexample"] = res
            if res["found"] or not res["g_in_stab_G"] or not res["c_in_G_reg"]:
                return f"symmetric counterexample not confirmed: {res}"
        return None

    return _timed("order_p_prop", _params(G, depth=depth, trials=trials), body, seed)


# kappa closure -------------------------------------------------------------------


def kappa_correction(G: MggsGroup, j: int) -> int:
    """The forced A-coordinate of ``kappa_1(b^(s_j))``: the row sum of ``b_j``."""
    return sum(G.E[j - 1]) % G.p


def check_kappa_closure(G: MggsGroup, depth: int) -> CheckResult:
    def body(details):
        p = G.p
        Lreg = layered(G, regularisation_gens(G), depth)
        for j in range(1, G.r + 1):
            s = kappa_correction(G, j)
            x = evaluate(Word(p, [A(s), B(G.basis(j))]), G, depth - 1)
            if kappa(1, x, depth) not in Lreg:
                return f"kappa_1(a^{s} b^(s_{j})) not in G_reg at depth {depth}"
            bj = b_portrait(G, G.basis(j), depth)
            comm = commutator(b_portrait(G, G.basis(j), depth - 1), a_portrait(1, p, depth - 1))
            for n in range(1, depth):
                lhs = commutator(bj, kappa_a_portrait(n, 1, p, depth))
                if lhs != place(comm, (0,) * n, depth):
                    return f"[b^(s_{j}), kappa_{n}(a)] != placed [b^(s_{j}), a] at 0^{n}"
        if G.classification == SYMMETRIC and depth >= 3:
            b = b_portrait(G, G.basis(1), depth - 1)
            k1b = kappa(1, b, depth)
            k2a = kappa_a_portrait(2, 1, p, depth)
            k1c = kappa(1, c_portrait(G, 1, depth - 1), depth)
            if commutator(k1b, k2a) != k1c:
                return "[kappa_1(b), kappa_2(a)] != kappa_1(c)"
            if commutator(k2a, k1b) != k1c.inverse():
                return "[kappa_2(a), kappa_1(b)] != kappa_1(c)^-1"
            details["symmetric_identity"] = "checked"
        return None

    return _timed("kappa_closure", _params(G, depth=depth), body)


def uncorrected_kappa(G: MggsGroup, depth: int) -> dict:
    """Membership of ``kappa_1(b^(s_j))`` without the ``a^s`` correction."""
    Lreg = layered(G, regularisation_gens(G), depth)
    out = {}
    for j in range(1, G.r + 1):
        x = b_portrait(G, G.basis(j), depth - 1)
        out[j] = {"correction": kappa_correction(G, j), "member": kappa(1, x, depth) in Lreg}
    return out


def symmetric_obstruction(G: MggsGroup, depth: int = 3) -> dict:
    """Generators whose conjugate by ``kappa_1(a)`` leaves G at ``depth``."""
    p = G.p
    LG = layered(G, generator_words(G), depth)
    k = kappa_a_portrait(1, 1, p, depth)
    bad = [str(w) for w in generator_words(G) if evaluate(w, G, depth).conj(k) not in LG]
    return {"outside": bad, "kappa1_a_in_G": k in LG}


def regularisation_index(G: MggsGroup, depth: int = 3) -> int:
    reg = layered(G, regularisation_gens(G), depth)
    base = layered(G, generator_words(G), depth)
    return reg.order // base.order


# centralizer and normalizer of A ------------------------------------------------------

EXHAUSTIVE_CAP = 2_000_000


def _affine_batch(p: int, depth: int, kind: str, rng, count: int):
    n = size(p, depth)
    if kind == "translations":
        t = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
        return np.ones_like(t), t
    if kind == "diagonal":
        u = np.array(list(itertools.product(range(1, p), repeat=n)), dtype=np.int64)
        return u, np.zeros_like(u)
    if kind == "all":
        labels = [(u, t) for u in range(1, p) for t in range(p)]
        idx = np.array(list(itertools.product(range(len(labels)), repeat=n)), dtype=np.int64)
        lab = np.array(labels, dtype=np.int64)
        return lab[idx, 0], lab[idx, 1]
    u = rng.integers(1, p, (count, n))
    return u, rng.integers(0, p, (count, n))


def _shape_predicate(p: int, depth: int, u: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Labels constant along each first-level orbit of ``a`` below the root."""
    off = offsets(p, depth)
    ok = np.ones(u.shape[0], dtype=bool)
    for l in range(1, depth):
        lo, hi = off[l], off[l + 1]
        blk = (hi - lo) // p
        ub = u[:, lo:hi].reshape(-1, p, blk)
        tb = t[:, lo:hi].reshape(-1, p, blk)
        ok &= np.all(ub == ub[:, :1], axis=(1, 2)) & np.all(tb == tb[:, :1], axis=(1, 2))
    return ok


def _scan_centralizer(p: int, depth: int, u: np.ndarray, t: np.ndarray) -> Optional[int]:
    """Index of the first portrait violating either characterisation, else None."""
    n = size(p, depth)
    au = np.ones(n, dtype=np.int64)
    at = np.zeros(n, dtype=np.int64)
    shape = _shape_predicate(p, depth, u, t)
    ag = compose_arrays(p, depth, au, at + (np.arange(n) == 0), u, t)
    centralizes = np.ones(u.shape[0], dtype=bool)
    normalizes = np.zeros(u.shape[0], dtype=bool)
    for k in range(1, p):
        ak = (au, at + k * (np.arange(n) == 0))
        gak = compose_arrays(p, depth, u, t, *ak)
        eq = np.all(ag[0] == gak[0], axis=1) & np.all(ag[1] == gak[1], axis=1)
        if k == 1:
            centralizes = eq
        normalizes |= eq
    expect_c = shape & (u[:, 0] == 1)
    expect_n = shape
    bad = np.flatnonzero((centralizes != expect_c) | (normalizes != expect_n))
    return int(bad[0]) if bad.size else None


def check_centralizer_normalizer_A(depth: int, p: int = 3, seed: int = 0, samples: int = 20_000,
                                   chunk: int = 200_000) -> CheckResult:
    """``g`` centralizes ``<a>`` iff ``g = kappa_1(h) a^k``; normalizes iff the root label is any affine map.

    All affine-labelled portraits when there are at most ``EXHAUSTIVE_CAP``
    of them (p=3, depth <= 2); otherwise all translation-labelled and all
    diagonal-labelled portraits plus ``samples`` random affine ones.
    """
    def body(details):
        rng = np.random.default_rng(seed)
        n = size(p, depth)
        kinds = ["all"] if (p * (p - 1)) ** n <= EXHAUSTIVE_CAP else ["translations", "diagonal", "random"]
        if p**n > EXHAUSTIVE_CAP:
            raise ResourceError(f"{p}^{n} translation portraits exceed the scan cap {EXHAUSTIVE_CAP}")
        scanned = 0
        for kind in kinds:
            u, t = _affine_batch(p, depth, kind, rng, samples)
            for lo in range(0, u.shape[0], chunk):
                uu, tt = u[lo:lo + chunk], t[lo:lo + chunk]
                bad = _scan_centralizer(p, depth, uu, tt)
                if bad is not None:
                    g = Portrait(p, depth, uu[bad], tt[bad])
                    return f"{kind}: {g.to_json()}"
                scanned += uu.shape[0]
        details["scanned"] = scanned
        details["classes"] = kinds
        return None

    return _timed("centralizer_normalizer_A", {"p": p, "depth": depth}, body, seed)


# contraction ----------------------------------------------------------------------------


def check_contraction(G: MggsGroup, trials: int = 1000, seed: int = 0, max_len: int = 12) -> CheckResult:
    def body(details):
        p = G.p
        rng = np.random.default_rng(seed)
        strict = 0
        for _ in range(trials):
            w = random_word(G, int(rng.integers(1, max_len + 1)), rng, stabilizer=True)
            n = syllable_length(w)
            secs = sections_of_word(w, G)
            total = sum(syllable_length(s) for s in secs)
            if total > n + p - 1:
                return f"word {w}: section lengths sum to {total} > {n} + {p - 1}"
            if n > 1:
                best = min(syllable_length(secs[0] * secs[i].inverse()) for i in range(1, p))
                if best >= n:
                    return f"word {w}: no i != 0 with |g_0 g_i^-1| < {n}"
                strict += 1
        details["strict_checked"] = strict
        return None

    return _timed("contraction", _params(G, trials=trials), body, seed)


# abelianization, directed elements --------------------------------------------------------


def abelianization_rank(G: MggsGroup, depth: int = 2) -> int:
    gens = generator_words(G)
    Q = enumerate_quotient(G, gens, depth)
    images = [(lambda ab: (ab[0],) + ab[1])(abelianize(w, G)) for w in gens]
    vals = Q.fold(lambda v, gi: fpalg.add(v, images[gi], G.p), (0,) * (G.r + 1))
    return fpalg.rank(sorted(set(vals.values())), G.p)


def check_abelianization(G: MggsGroup, depth: int = 2) -> CheckResult:
    def body(details):
        rk = abelianization_rank(G, depth)
        details["rank"] = rk
        return None if rk == G.r + 1 else f"abelianization rank {rk} != r+1 = {G.r + 1}"

    return _timed("abelianization_rank", _params(G, depth=depth), body)


def directed_portrait(G: MggsGroup, m, depth: int) -> Portrait:
    """Fixes the spine ``0^l`` and carries ``a^(m_i)`` at each ``0^l i``."""
    g = Portrait.identity(G.p, depth)
    t = g.t.copy()
    off = offsets(G.p, depth)
    for l in range(depth - 1):
        t[off[l + 1] + 1:off[l + 1] + G.p] = m
    return Portrait(G.p, depth, g.u, t)


def check_directed_elements(G: MggsGroup, depth: int = 3) -> CheckResult:
    """Spine-directed elements with rooted sections lie in G only when they are ``b^n``."""
    def body(details):
        LG = layered(G, generator_words(G), depth)
        members = 0
        for m in itertools.product(range(G.p), repeat=G.p - 1):
            inside = directed_portrait(G, m, depth) in LG
            in_e = fpalg.in_row_space(m, G.E, G.p)
            if inside != in_e:
                return f"directed element with exponents {m}: in G {inside}, in E {in_e}"
            members += inside
        details["members"] = members
        return None

    return _timed("directed_elements", _params(G, depth=depth), body)


# diagonal normalizers ----------------------------------------------------------------------


def check_normalizers(G: MggsGroup, depth: int) -> CheckResult:
    def body(details):
        U = compute_U(G)
        pairs = diagonal_normalizers(G)
        portraits = set()
        for d0, w, seq in pairs:
            v = normalizer_conjugation_check(seq, G, depth)
            if not v.passed:
                return f"(d0={d0}, w={w}): {v.witness}"
            portraits.add(seq.portrait(2).key())
        details.update(pairs=len(pairs), distinct=len(portraits), U=len(U))
        if len(portraits) != len(pairs):
            return f"only {len(portraits)} distinct depth-2 portraits for {len(pairs)} pairs"
        return None

    return _timed("normalizers", _params(G, depth=depth), body)


CHECKS = {
    "global-equations": check_global_equations,
    "order-p": check_order_p_prop,
    "kappa-closure": check_kappa_closure,
    "centralizer": check_centralizer_normalizer_A,
    "contraction": check_contraction,
    "abelianization": check_abelianization,
    "directed": check_directed_elements,
    "normalizers": check_normalizers,
}
