"""Square integer matrices as tuples of tuples (arbitrary precision)."""

from __future__ import annotations

from typing import Sequence

IntMatrix = tuple


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("expected a non-empty square matrix")
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(n))


def unit(n: int, a: int, b: int) -> IntMatrix:
    return tuple(tuple(1 if (i, j) == (a, b) else 0 for j in range(n)) for i in range(n))


def add(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c: int, a: IntMatrix) -> IntMatrix:
    return tuple(tuple(c * x for x in r) for r in a)


def mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a)


def is_zero(a: IntMatrix) -> bool:
    return not any(x for r in a for x in r)


def is_upper_triangular(a: IntMatrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(i))


def entries(a: IntMatrix):
    for r in a:
        yield from r
