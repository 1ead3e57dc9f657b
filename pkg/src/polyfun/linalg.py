"""Exact linear algebra over Z/m via the Howell normal form.

Rows are lists of ints. Over a composite modulus an ordinary echelon form
does not decide span membership (zero divisors hide vectors), so every span
here is kept in Howell form: echelon, each pivot a divisor of m, entries above
a pivot reduced into [0, pivot), and closed under the annihilator rows
(m / pivot) * row. The reduced Howell form of a span is unique, which makes
span equality a plain comparison.
"""

from __future__ import annotations

from math import gcd, prod
from typing import Iterable, Sequence


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def unit_normalizer(a: int, m: int) -> int:
    """A unit u of Z/m with u*a = gcd(a, m) (mod m)."""
    g = gcd(a, m)
    mm = m // g
    if mm == 1:
        return 1
    u = pow((a // g) % mm, -1, mm)
    while gcd(u, m) != 1:
        u += mm
    return u % m


class HowellForm:
    """Reduced Howell form of a submodule of (Z/m)^ncols."""

    __slots__ = ("modulus", "ncols", "rows", "pivots")

    def __init__(self, modulus: int, ncols: int, rows: list[list[int]], pivots: list[int]):
        self.modulus = modulus
        self.ncols = ncols
        self.rows = rows
        self.pivots = pivots

    def __eq__(self, other):
        if not isinstance(other, HowellForm):
            return NotImplemented
        return (self.modulus, self.ncols, self.rows) == (other.modulus, other.ncols, other.rows)

    def __hash__(self):
        return hash((self.modulus, self.ncols, tuple(map(tuple, self.rows))))

    def __repr__(self):
        return f"HowellForm(m={self.modulus}, ncols={self.ncols}, rank={len(self.rows)})"

    def __len__(self):
        return len(self.rows)

    def size(self) -> int:
        """Number of vectors in the span."""
        m = self.modulus
        return prod(m // row[c] for row, c in zip(self.rows, self.pivots))

    def reduce(self, vec: Sequence[int]) -> list[int]:
        """Remainder of ``vec`` against the form; zero iff ``vec`` is in the span."""
        m = self.modulus
        v = [x % m for x in vec]
        for row, c in zip(self.rows, self.pivots):
            p = row[c]
            q = v[c] // p
            if q:
                for j in range(c, self.ncols):
                    if row[j]:
                        v[j] = (v[j] - q * row[j]) % m
        return v

    def contains(self, vec: Sequence[int]) -> bool:
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} != {self.ncols}")
        return not any(self.reduce(vec))

    def is_full(self) -> bool:
        return len(self.rows) == self.ncols and all(row[c] == 1 for row, c in zip(self.rows, self.pivots))

    def issubset(self, other: "HowellForm") -> bool:
        return all(other.contains(row) for row in self.rows)

    def elements(self):
        """Iterate over every vector of the span (small spans only)."""
        m = self.modulus
        orders = [m // row[c] for row, c in zip(self.rows, self.pivots)]

        def rec(i, acc):
            if i == len(self.rows):
                yield tuple(acc)
                return
            row = self.rows[i]
            for k in range(orders[i]):
                yield from rec(i + 1, [(a + k * b) % m for a, b in zip(acc, row)])

        yield from rec(0, [0] * self.ncols)


def howell_form(rows: Iterable[Sequence[int]], modulus: int, ncols: int) -> HowellForm:
    """Reduced Howell form of the span of ``rows`` in (Z/m)^ncols."""
    m = modulus
    work = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row length {len(r)} != {ncols}")
        r = [x % m for x in r]
        if any(r):
            work.append(r)

    out_rows: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        if not work:
            break
        pivot = None
        rest = []
        for row in work:
            if row[col] == 0:
                rest.append(row)
                continue
            if pivot is None:
                pivot = row
                continue
            a, b = pivot[col], row[col]
            g, s, t = egcd(a, b)
            u, v = -(b // g), a // g
            pivot, row = (
                [(s * x + t * y) % m for x, y in zip(pivot, row)],
                [(u * x + v * y) % m for x, y in zip(pivot, row)],
            )
            if any(row):
                rest.append(row)
        work = rest
        if pivot is None:
            continue
        unit = unit_normalizer(pivot[col], m)
        if unit != 1:
            pivot = [(unit * x) % m for x in pivot]
        p = pivot[col]
        if p != 1:
            ann = [((m // p) * x) % m for x in pivot]
            if any(ann):
                work.append(ann)
        out_rows.append(pivot)
        pivots.append(col)

    # reduce entries above each pivot into [0, pivot)
    for i, (row, c) in enumerate(zip(out_rows, pivots)):
        p = row[c]
        for j in range(i):
            upper = out_rows[j]
            q = upper[c] // p
            if q:
                for k in range(c, ncols):
                    if row[k]:
                        upper[k] = (upper[k] - q * row[k]) % m
    return HowellForm(m, ncols, out_rows, pivots)


def kernel(matrix: Sequence[Sequence[int]], modulus: int, ncols: int) -> HowellForm:
    """Howell form of {y : y @ matrix = 0 (mod m)}.

    ``matrix`` has one row per variable; ``ncols`` is its column count (needed
    when there are no columns to infer from).
    """
    nvars = len(matrix)
    aug = []
    for i, row in enumerate(matrix):
        tag = [0] * nvars
        tag[i] = 1
        aug.append(list(row) + tag)
    return _tail_span(howell_form(aug, modulus, ncols + nvars), ncols, nvars)


def constrained_kernel(
    matrix: Sequence[Sequence[int]],
    allowed: Sequence[Sequence[int]],
    modulus: int,
    ncols: int,
) -> HowellForm:
    """Howell form of {y : y @ matrix lies in the span of ``allowed``}."""
    nvars = len(matrix)
    aug = []
    for i, row in enumerate(matrix):
        tag = [0] * nvars
        tag[i] = 1
        aug.append(list(row) + tag)
    for row in allowed:
        aug.append(list(row) + [0] * nvars)
    return _tail_span(howell_form(aug, modulus, ncols + nvars), ncols, nvars)


def _tail_span(form: HowellForm, head: int, tail: int) -> HowellForm:
    # Howell property: rows vanishing on the head columns span every vector
    # of the module that vanishes there.
    rows = [row[head:] for row, c in zip(form.rows, form.pivots) if c >= head]
    return howell_form(rows, form.modulus, tail)


def intersection(a: HowellForm, b: HowellForm) -> HowellForm:
    if a.modulus != b.modulus or a.ncols != b.ncols:
        raise ValueError("incompatible modules")
    n = a.ncols
    rows = [list(r) + list(r) for r in a.rows] + [list(r) + [0] * n for r in b.rows]
    return _tail_span(howell_form(rows, a.modulus, 2 * n), n, n)


def image(matrix: Sequence[Sequence[int]], modulus: int, ncols: int) -> HowellForm:
    """Howell form of the row span of ``matrix``."""
    return howell_form(matrix, modulus, ncols)
