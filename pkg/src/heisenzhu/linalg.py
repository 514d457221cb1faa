"""Exact linear algebra on sparse rational rows.

Rows are dictionaries ``{column_key: coefficient}``.  Pivot selection runs
modulo a large prime; the actual solve is exact over the rationals, and every
solution is checked by exact substitution before it is returned.  python-flint
does the dense work when it is installed; otherwise a pure-Python elimination
is used.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

try:  # pragma: no cover - exercised through both branches in tests
    import flint

    HAVE_FLINT = True
except ImportError:  # pragma: no cover
    flint = None
    HAVE_FLINT = False

PRIME = 2**61 - 1
_FALLBACK_PRIMES = (2**61 - 1, 2**59 - 55, 2**57 - 13)


def _modp(c, p: int) -> int:
    if isinstance(c, int):
        return c % p
    c = Fraction(c)
    return c.numerator * pow(c.denominator, -1, p) % p


def independent_subset(
    rows: Sequence[Mapping], cols: Sequence[Hashable], p: int = PRIME, use_flint: bool | None = None
) -> tuple[list[int], list[int]]:
    """Greedy maximal independent rows (in order) and matching pivot columns.

    Returns ``(row_indices, col_indices)`` of equal length ``r`` such that the
    ``r x r`` minor is invertible modulo ``p`` (hence over the rationals).
    """
    if use_flint is None:
        use_flint = HAVE_FLINT
    if not rows or not cols:
        return [], []
    idx = {c: i for i, c in enumerate(cols)}
    if use_flint:
        a = flint.nmod_mat(len(cols), len(rows), p)
        for j, r in enumerate(rows):
            for k, c in r.items():
                a[idx[k], j] = _modp(c, p)
        red, rank = a.rref()
        picked = _pivots(red, rank, len(rows))
        b = flint.nmod_mat(rank, len(cols), p)
        for i, j in enumerate(picked):
            for k, c in rows[j].items():
                b[i, idx[k]] = _modp(c, p)
        red_b, rank_b = b.rref()
        coords = _pivots(red_b, rank_b, len(cols))
        return picked, coords
    return _independent_python(rows, idx, p)


def _pivots(mat, rank: int, ncols: int) -> list[int]:
    out = []
    j = 0
    for i in range(rank):
        while j < ncols and mat[i, j] == 0:
            j += 1
        out.append(j)
        j += 1
    return out


def _independent_python(rows, idx, p):
    """Modular echelon keeping track of which rows were kept."""
    basis: dict[int, dict[int, int]] = {}  # pivot col -> normalised row
    picked: list[int] = []
    coords: list[int] = []
    for j, r in enumerate(rows):
        vec = {idx[k]: _modp(c, p) for k, c in r.items()}
        vec = {k: v for k, v in vec.items() if v}
        while vec:
            piv = min(vec)
            if piv in basis:
                f = vec[piv]
                for k, v in basis[piv].items():
                    nv = (vec.get(k, 0) - f * v) % p
                    if nv:
                        vec[k] = nv
                    else:
                        vec.pop(k, None)
            else:
                inv = pow(vec[piv], -1, p)
                basis[piv] = {k: v * inv % p for k, v in vec.items()}
                picked.append(j)
                coords.append(piv)
                break
    # pivot columns of a row echelon form of the picked rows give an invertible minor
    return picked, coords


def solve_exact(
    rows: Sequence[Mapping], coords: Sequence[Hashable], target: Mapping, use_flint: bool | None = None
) -> list[Fraction] | None:
    """Solve ``Σ_i c_i rows[i][k] = target[k]`` for ``k`` in ``coords`` (square system)."""
    if use_flint is None:
        use_flint = HAVE_FLINT
    r = len(rows)
    if r == 0:
        return []
    pos = {k: i for i, k in enumerate(coords)}
    if use_flint:
        a = flint.fmpq_mat(r, r)
        for j, row in enumerate(rows):
            for k, c in row.items():
                i = pos.get(k)
                if i is not None:
                    c = Fraction(c)
                    a[i, j] = flint.fmpq(c.numerator, c.denominator)
        b = flint.fmpq_mat(r, 1)
        for k, c in target.items():
            i = pos.get(k)
            if i is not None:
                c = Fraction(c)
                b[i, 0] = flint.fmpq(c.numerator, c.denominator)
        try:
            x = a.solve(b, algorithm="dixon" if r > 40 else None)
        except ZeroDivisionError:
            return None
        out = []
        for i in range(r):
            q = x[i, 0]
            out.append(Fraction(int(q.p), int(q.q)))
        return out
    return _solve_python(rows, pos, target)


def _solve_python(rows, pos, target):
    r = len(rows)
    # augmented matrix as list of dict rows, indexed by equation
    eqs = [dict() for _ in range(r)]
    for j, row in enumerate(rows):
        for k, c in row.items():
            i = pos.get(k)
            if i is not None:
                eqs[i][j] = Fraction(c)
    rhs = [Fraction(0)] * r
    for k, c in target.items():
        i = pos.get(k)
        if i is not None:
            rhs[i] = Fraction(c)
    col_of: list[int] = []
    for col in range(r):
        piv = next((i for i in range(col, r) if eqs[i].get(col)), None)
        if piv is None:
            return None
        eqs[col], eqs[piv] = eqs[piv], eqs[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        pv = eqs[col][col]
        for i in range(r):
            if i != col and eqs[i].get(col):
                f = eqs[i][col] / pv
                for k, v in eqs[col].items():
                    nv = eqs[i].get(k, 0) - f * v
                    if nv:
                        eqs[i][k] = nv
                    else:
                        eqs[i].pop(k, None)
                rhs[i] -= f * rhs[col]
        col_of.append(col)
    return [rhs[i] / eqs[i][i] for i in range(r)]


def combine(rows: Sequence[Mapping], coeffs: Sequence) -> dict:
    out: dict = {}
    for row, c in zip(rows, coeffs):
        if not c:
            continue
        for k, v in row.items():
            nv = out.get(k, 0) + c * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def rank_modp(rows: Sequence[Mapping], cols: Sequence[Hashable], p: int = PRIME) -> int:
    return len(independent_subset(rows, cols, p)[0])
