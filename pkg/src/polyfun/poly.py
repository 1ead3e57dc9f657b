"""Polynomials in a central variable over a finite ring, and fractional
polynomials over integer matrix algebras.

The variable x commutes with every coefficient, so f = sum c_k x^k = sum x^k c_k,
but the two evaluations at s differ:

    right:  f_r(s) = sum c_k s^k
    left:   f_l(s) = sum s^k c_k
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from polyfun import intmat
from polyfun.ring import FiniteRing, RingElement


def _strip(coeffs: list) -> tuple:
    while coeffs and not any(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial over ``ring`` with coefficient coordinate tuples, lowest degree first.

    Trailing zero coefficients are stripped, so equal polynomials have equal
    coefficient sequences. The zero polynomial has no coefficients.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: FiniteRing, coeffs: Sequence):
        m = ring.modulus
        out = []
        for c in coeffs:
            if isinstance(c, RingElement):
                if c.ring is not ring and c.ring != ring:
                    raise ValueError("coefficient from a different ring")
                c = c.coords
            if len(c) != ring.rank:
                raise ValueError(f"coefficient must have {ring.rank} coordinates")
            out.append(tuple(int(x) % m for x in c))
        self.ring = ring
        self.coeffs = _strip(out)

    @classmethod
    def const(cls, c: RingElement) -> "Poly":
        return cls(c.ring, [c.coords])

    @classmethod
    def x(cls, ring: FiniteRing) -> "Poly":
        return cls(ring, [ring.zero.coords, ring.one_coords])

    @classmethod
    def zero(cls, ring: FiniteRing) -> "Poly":
        return cls(ring, [])

    @classmethod
    def linear(cls, s: RingElement) -> "Poly":
        """x - s"""
        return cls(s.ring, [(-s).coords, s.ring.one_coords])

    @classmethod
    def monomial(cls, c: RingElement, k: int) -> "Poly":
        return cls(c.ring, [c.ring.zero.coords] * k + [c.coords])

    @classmethod
    def from_flat(cls, ring: FiniteRing, flat: Sequence[int]) -> "Poly":
        r = ring.rank
        if len(flat) % r:
            raise ValueError("flat length is not a multiple of the rank")
        return cls(ring, [tuple(flat[i : i + r]) for i in range(0, len(flat), r)])

    @property
    def degree(self) -> int | None:
        """Highest index with nonzero coefficient; None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> RingElement:
        if 0 <= k < len(self.coeffs):
            return RingElement(self.ring, self.coeffs[k])
        return self.ring.zero

    def coefficients(self) -> list[RingElement]:
        return [RingElement(self.ring, c) for c in self.coeffs]

    def flatten(self, degree: int) -> list[int]:
        """Coefficient coordinates of c_0..c_degree, concatenated."""
        if len(self.coeffs) > degree + 1:
            raise ValueError(f"degree {self.degree} exceeds bound {degree}")
        out = []
        for c in self.coeffs:
            out.extend(c)
        out.extend([0] * ((degree + 1 - len(self.coeffs)) * self.ring.rank))
        return out

    def _check(self, other: "Poly"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise ValueError("polynomials over different rings")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ring == other.ring

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        z = (0,) * R.rank
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return Poly(R, [R.add_coords(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        m = self.ring.modulus
        return Poly(self.ring, [tuple(-x % m for x in c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        R = self.ring
        if isinstance(other, RingElement):
            if other.ring is not R and other.ring != R:
                raise ValueError("constant from a different ring")
            return Poly(R, [R.mul_coords(c, other.coords) for c in self.coeffs])
        if isinstance(other, int):
            m = R.modulus
            return Poly(R, [tuple(x * other % m for x in c) for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly(R, [])
        m = R.modulus
        out = [[0] * R.rank for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if not any(a):
                continue
            for j, b in enumerate(other.coeffs):
                if not any(b):
                    continue
                p = R.mul_coords(a, b)
                acc = out[i + j]
                for k, v in enumerate(p):
                    acc[k] += v
        return Poly(R, [tuple(v % m for v in c) for c in out])

    def __rmul__(self, other) -> "Poly":
        R = self.ring
        if isinstance(other, RingElement):
            if other.ring is not R and other.ring != R:
                raise ValueError("constant from a different ring")
            return Poly(R, [R.mul_coords(other.coords, c) for c in self.coeffs])
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def shift(self, k: int = 1) -> "Poly":
        """x^k * f"""
        if not self.coeffs:
            return self
        return Poly(self.ring, [(0,) * self.ring.rank] * k + list(self.coeffs))

    # -- evaluation -------------------------------------------------------------

    def _powers(self, s: RingElement) -> list[tuple]:
        if s.ring is not self.ring and s.ring != self.ring:
            raise ValueError("evaluation point from a different ring")
        R = self.ring
        powers = [R.one_coords]
        for _ in range(len(self.coeffs) - 1):
            powers.append(R.mul_coords(powers[-1], s.coords))
        return powers

    def eval_right(self, s: RingElement) -> RingElement:
        """sum c_k s^k"""
        R = self.ring
        acc = (0,) * R.rank
        for c, p in zip(self.coeffs, self._powers(s)):
            acc = R.add_coords(acc, R.mul_coords(c, p))
        return RingElement(R, acc)

    def eval_left(self, s: RingElement) -> RingElement:
        """sum s^k c_k"""
        R = self.ring
        acc = (0,) * R.rank
        for c, p in zip(self.coeffs, self._powers(s)):
            acc = R.add_coords(acc, R.mul_coords(p, c))
        return RingElement(R, acc)

    def evaluate(self, s: RingElement, side: str = "right") -> RingElement:
        if side == "right":
            return self.eval_right(s)
        if side == "left":
            return self.eval_left(s)
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")

    def divrem_linear_right(self, s: RingElement) -> tuple["Poly", RingElement]:
        """(q, rem) with f = q*(x - s) + rem; rem equals f_r(s)."""
        R = self.ring
        if s.ring is not R and s.ring != R:
            raise ValueError("divisor from a different ring")
        a = self.coeffs
        if not a:
            return Poly(R, []), R.zero
        n = len(a) - 1
        q = [None] * n
        carry = (0,) * R.rank
        # q_{k-1} = a_k + q_k s, running from the top coefficient down
        for k in range(n, 0, -1):
            carry = R.add_coords(a[k], R.mul_coords(carry, s.coords))
            q[k - 1] = carry
        rem = R.add_coords(a[0], R.mul_coords(carry, s.coords)) if n else a[0]
        return Poly(R, q), RingElement(R, rem)

    def divrem_linear_left(self, s: RingElement) -> tuple["Poly", RingElement]:
        """(q, rem) with f = (x - s)*q + rem; rem equals f_l(s)."""
        R = self.ring
        a = self.coeffs
        if not a:
            return Poly(R, []), R.zero
        n = len(a) - 1
        q = [None] * n
        carry = (0,) * R.rank
        for k in range(n, 0, -1):
            carry = R.add_coords(a[k], R.mul_coords(s.coords, carry))
            q[k - 1] = carry
        rem = R.add_coords(a[0], R.mul_coords(s.coords, carry)) if n else a[0]
        return Poly(R, q), RingElement(R, rem)

    def opposite(self, Rop: FiniteRing) -> "Poly":
        return Poly(Rop, self.coeffs)

    # -- text -----------------------------------------------------------------

    def render(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not any(c):
                continue
            coord = "[" + ",".join(str(v) for v in c) + "]"
            if k == 0:
                terms.append(coord)
            elif k == 1:
                terms.append(coord + "*x")
            else:
                terms.append(f"{coord}*x^{k}")
        return " + ".join(terms) if terms else "0"

    def pretty(self) -> str:
        """Label-based rendering, e.g. ``e11 + (e11+e12)*x^2``."""
        R = self.ring
        terms = []
        for k, c in enumerate(self.coeffs):
            if not any(c):
                continue
            el = R.format_element(RingElement(R, c))
            if k and "+" in el:
                el = f"({el})"
            terms.append(el if k == 0 else (f"{el}*x" if k == 1 else f"{el}*x^{k}"))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"Poly({self.render()})"


_TERM = re.compile(r"^\[([-\d,\s]*)\](?:\*x(?:\^(\d+))?)?$")


def parse_poly(ring: FiniteRing, text: str) -> Poly:
    """Inverse of :meth:`Poly.render`."""
    text = text.strip()
    if text == "0":
        return Poly(ring, [])
    acc: dict[int, list[int]] = {}
    for term in text.split(" + "):
        match = _TERM.match(term.strip())
        if not match:
            raise ValueError(f"cannot parse polynomial term {term!r}")
        coords = [int(v) for v in match.group(1).split(",") if v.strip()]
        if len(coords) != ring.rank:
            raise ValueError(f"term {term!r} needs {ring.rank} coordinates")
        if "*x" in term:
            k = int(match.group(2)) if match.group(2) else 1
        else:
            k = 0
        prev = acc.setdefault(k, [0] * ring.rank)
        acc[k] = [a + b for a, b in zip(prev, coords)]
    deg = max(acc)
    return Poly(ring, [acc.get(k, [0] * ring.rank) for k in range(deg + 1)])


def poly_arith(op: str, f: Poly, g: Poly) -> Poly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def middle_expansion_check(g: Poly, f: Poly, s: RingElement) -> bool:
    """Check (g f)_r(s) = sum_k b_k f_r(s) s^k for g = sum b_k x^k.

    Both sides are computed independently; this is an identity and should
    never return False.
    """
    lhs = (g * f).eval_right(s)
    fs = f.eval_right(s)
    R = g.ring
    rhs = R.zero
    power = R.one
    for b in g.coefficients():
        rhs = rhs + b * fs * power
        power = power * s
    return lhs == rhs


# -- fractional polynomials over integer matrix algebras ----------------------


@dataclass(frozen=True)
class FracPoly:
    """f / d with f a polynomial over integer n x n matrices and d >= 1.

    Normalized so that no prime divides d and every numerator entry at once.
    """

    numerator: tuple
    denominator: int = 1

    def __post_init__(self):
        d = int(self.denominator)
        if d == 0:
            raise ValueError("denominator must be nonzero")
        coeffs = [intmat.as_matrix(c) for c in self.numerator]
        if d < 0:
            d = -d
            coeffs = [intmat.scale(-1, c) for c in coeffs]
        while coeffs and intmat.is_zero(coeffs[-1]):
            coeffs.pop()
        g = d
        for c in coeffs:
            for x in intmat.entries(c):
                g = gcd(g, x)
                if g == 1:
                    break
        if g > 1:
            d //= g
            coeffs = [tuple(tuple(x // g for x in row) for row in c) for c in coeffs]
        object.__setattr__(self, "numerator", tuple(coeffs))
        object.__setattr__(self, "denominator", d)

    @classmethod
    def integral(cls, coeffs) -> "FracPoly":
        return cls(tuple(coeffs), 1)

    @property
    def degree(self) -> int | None:
        return len(self.numerator) - 1 if self.numerator else None

    def __mul__(self, other: "FracPoly") -> "FracPoly":
        a, b = self.numerator, other.numerator
        if not a or not b:
            return FracPoly((), 1)
        n = len(a[0])
        out = [intmat.zeros(n) for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = intmat.add(out[i + j], intmat.mul(x, y))
        return FracPoly(tuple(out), self.denominator * other.denominator)

    def eval_numerator(self, s, side: str = "right"):
        n = len(s)
        acc = intmat.zeros(n)
        power = intmat.identity(n)
        for c in self.numerator:
            term = intmat.mul(c, power) if side == "right" else intmat.mul(power, c)
            acc = intmat.add(acc, term)
            power = intmat.mul(power, s)
        return acc

    def evaluate(self, s, side: str = "right") -> tuple:
        """Exact value at s as a matrix of Fractions."""
        num = self.eval_numerator(s, side)
        d = self.denominator
        return tuple(tuple(Fraction(x, d) for x in row) for row in num)

    def is_integral_at(self, s, side: str = "right") -> bool:
        d = self.denominator
        return all(x % d == 0 for x in intmat.entries(self.eval_numerator(s, side)))

    def to_json(self) -> dict:
        return {
            "denominator": self.denominator,
            "numerator": [[list(row) for row in c] for c in self.numerator],
        }

    def render(self) -> str:
        if not self.numerator:
            return "0"
        terms = []
        for k, c in enumerate(self.numerator):
            if intmat.is_zero(c):
                continue
            mat = json.dumps([list(r) for r in c], separators=(",", ":"))
            terms.append(mat if k == 0 else (f"{mat}*x" if k == 1 else f"{mat}*x^{k}"))
        body = " + ".join(terms)
        return body if self.denominator == 1 else f"({body})/{self.denominator}"
