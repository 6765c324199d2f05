"""The worked example groups and their expected Aut data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import fpalg
from .groups import MggsGroup, construct, full_space, gupta_sidki

EX3_B1 = (1, 2, 11, 3, 12, 10, 10, 12, 3, 11, 2, 1)


def example3() -> MggsGroup:
    return construct(13, [EX3_B1, fpalg.perm_apply(EX3_B1, 3, 13), fpalg.perm_apply(EX3_B1, 9, 13)])


def example2(p: int) -> MggsGroup:
    return construct(p, [list(range(1, p))])


@dataclass(frozen=True)
class Expected:
    name: str
    group: MggsGroup
    classification: str
    U: Optional[frozenset[int]] = None
    V: Optional[frozenset[int]] = None
    W: Optional[frozenset[int]] = None
    orders: Optional[tuple[int, int, int]] = None  # |U|, |V|, |W| when the sets are not pinned
    structure: Optional[str] = None


def _all(p: int) -> frozenset[int]:
    return frozenset(range(1, p))


def catalog() -> list[Expected]:
    out = [
        Expected("example1", construct(5, [[1, 2, 2, 1]]), "symmetric",
                 U=frozenset({1, 4}), W=frozenset({1}), structure="(G ⋊ C_5) ⋊ C_2"),
    ]
    for p in (5, 7):
        out.append(Expected(f"example2_p{p}", example2(p), "regular", U=_all(p), V=_all(p), W=_all(p),
                            structure=f"(G ⋊ ∏_ω C_{p}) ⋊ (C_{p - 1})²"))
    out.append(Expected("example3", example3(), "regular", V=frozenset({1, 5, 12, 8}), orders=(12, 4, 2)))
    out.append(Expected("example4_p3", gupta_sidki(3), "regular", U=frozenset({1, 2}), W=frozenset({1, 2}),
                        structure="(G ⋊ ∏_ω C_3) ⋊ C_2²"))
    for p in (5, 7):
        out.append(Expected(f"example4_p{p}", gupta_sidki(p), "regular", U=frozenset({1}), W=frozenset({1}),
                            structure=f"G ⋊ ∏_ω C_{p}"))
    for p in (3, 5):
        out.append(Expected(f"example5_p{p}", full_space(p), "regular", U=_all(p), W=frozenset({1}),
                            structure=f"(G ⋊ ∏_ω C_{p}) ⋊ C_{p - 1}"))
    return out


def compare(exp: Expected, report) -> list[str]:
    """Mismatches between an AutReport and the expected values."""
    bad = []
    if report.classification != exp.classification:
        bad.append(f"classification {report.classification} != {exp.classification}")
    for key in ("U", "V", "W"):
        want = getattr(exp, key)
        got = getattr(report, key)
        if want is not None and got != want:
            bad.append(f"{key} = {sorted(got)} != {sorted(want)}")
    if exp.orders is not None:
        got = (len(report.U), len(report.V), len(report.W))
        if got != exp.orders:
            bad.append(f"orders {got} != {exp.orders}")
    if exp.structure is not None and report.structure != exp.structure:
        bad.append(f"structure {report.structure!r} != {exp.structure!r}")
    return bad
