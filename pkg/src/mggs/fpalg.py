"""Exact linear algebra over the prime field F_p.

Vectors are tuples of residues, matrices are tuples of row tuples.  The
prime is always passed explicitly; nothing here caches state, so every
function is safe to call from several threads.

Index convention for the permutation action of a unit ``u``: positions are
numbered ``1 .. p-1`` and ``perm_apply(v, u)[i] = v[u*i mod p]``.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import DimensionError, DomainError

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]

MAX_PRIME = 1 << 15


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_prime(p: int) -> None:
    if not (isinstance(p, int) and 3 <= p < MAX_PRIME and is_prime(p)):
        raise DomainError(f"p must be an odd prime below {MAX_PRIME}, got {p!r}")


def vec(entries: Iterable[int], p: int) -> Vec:
    return tuple(int(x) % p for x in entries)


def mat(rows: Iterable[Iterable[int]], p: int) -> Mat:
    out = tuple(vec(r, p) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise DimensionError("rows have different lengths")
    return out


def inv(u: int, p: int) -> int:
    u %= p
    if u == 0:
        raise DomainError("0 is not a unit")
    return pow(u, -1, p)


def units(p: int) -> tuple[int, ...]:
    return tuple(range(1, p))


def add(v: Sequence[int], w: Sequence[int], p: int) -> Vec:
    if len(v) != len(w):
        raise DimensionError(f"length mismatch {len(v)} != {len(w)}")
    return tuple((x + y) % p for x, y in zip(v, w))


def scale(c: int, v: Sequence[int], p: int) -> Vec:
    return tuple((c * x) % p for x in v)


def dot(v: Sequence[int], w: Sequence[int], p: int) -> int:
    if len(v) != len(w):
        raise DimensionError(f"length mismatch {len(v)} != {len(w)}")
    return sum(x * y for x, y in zip(v, w)) % p


def vec_mat(n: Sequence[int], E: Mat, p: int) -> Vec:
    """Row vector times matrix: ``n . E``."""
    if len(n) != len(E):
        raise DimensionError(f"vector of length {len(n)} against {len(E)} rows")
    width = len(E[0]) if E else 0
    return tuple(sum(n[j] * E[j][i] for j in range(len(E))) % p for i in range(width))


def column(E: Mat, i: int, p: int) -> Vec:
    """Column ``e_i`` of E for ``i`` in ``0..p-1``, with ``e_0`` the zero column."""
    i %= p
    if i == 0:
        return (0,) * len(E)
    return tuple(row[i - 1] for row in E)


def perm_apply(v: Sequence[int], u: int, p: int) -> Vec:
    if len(v) != p - 1:
        raise DimensionError(f"expected length {p - 1}, got {len(v)}")
    u %= p
    if u == 0:
        raise DomainError("0 is not a unit")
    return tuple(v[(u * i) % p - 1] for i in range(1, p))


def perm_mat(E: Mat, u: int, p: int) -> Mat:
    return tuple(perm_apply(row, u, p) for row in E)


def rref(A: Sequence[Sequence[int]], p: int) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    rows = [list(int(x) % p for x in r) for r in A]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        f = pow(rows[r][c], -1, p)
        rows[r] = [(x * f) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                g = rows[i][c]
                rows[i] = [(x - g * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(A: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(A, p)[0])


def _same_shape(A: Mat, B: Mat) -> None:
    wa = {len(r) for r in A}
    wb = {len(r) for r in B}
    if len(wa) > 1 or len(wb) > 1 or (wa and wb and wa != wb):
        raise DimensionError("matrices have different column counts")


def row_space_equal(A: Mat, B: Mat, p: int) -> bool:
    _same_shape(A, B)
    return rref(A, p)[0] == rref(B, p)[0]


def in_row_space(x: Sequence[int], E: Mat, p: int) -> bool:
    return rank(tuple(E) + (tuple(x),), p) == rank(E, p)


def solve_row_space(x: Sequence[int], E: Mat, p: int) -> Optional[Vec]:
    """Coefficients ``m`` with ``m . E = x``, or None if ``x`` is not in the row space.

    The rows of E are assumed independent, so the solution is unique.
    """
    r = len(E)
    # augment the transpose: E^T m = x
    aug = [[E[j][i] for j in range(r)] + [int(x[i]) % p] for i in range(len(x))]
    red, piv = rref(aug, p)
    if r in piv:
        return None
    m = [0] * r
    for row, c in zip(red, piv):
        m[c] = row[r]
    return tuple(m)


def scalar_action(E: Mat, u: int, p: int) -> Optional[int]:
    """The common eigenvalue of ``perm_apply(., u)`` on every row of E, if any."""
    lam = None
    for row in E:
        w = perm_apply(row, u, p)
        k = next(i for i, x in enumerate(row) if x)
        cand = (w[k] * pow(row[k], -1, p)) % p
        if lam is None:
            lam = cand
        if cand != lam or scale(lam, row, p) != w:
            return None
    return lam


def unit_subgroup_generated(gens: Iterable[int], p: int) -> frozenset[int]:
    group = {1}
    frontier = [1]
    gens = [g % p for g in gens]
    for g in gens:
        if g == 0:
            raise DomainError("0 is not a unit")
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = (x * g) % p
            if y not in group:
                group.add(y)
                frontier.append(y)
    return frozenset(group)


def multiplicative_order(u: int, p: int) -> int:
    u %= p
    k, x = 1, u
    while x != 1:
        x = (x * u) % p
        k += 1
    return k
