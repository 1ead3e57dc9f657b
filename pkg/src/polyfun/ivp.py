"""Integer-valued polynomials on finite subsets of M_n(Z) and T_n(Z).

A subset S of A is a ringset when the polynomials F in B[x] (B = A tensor Q)
with F(S) inside A are closed under multiplication. S is a ringset exactly
when, for every d != 0, the image of S in A/dA is a null-ideal set; a single
failing modulus yields an explicit pair F = f/d, G = g whose product leaves A
at some point of S. Scanning finitely many moduli can refute ringset-ness but
never confirm it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from polyfun import intmat
from polyfun.config import Caps, get_caps
from polyfun.errors import CapError, PolyfunError, VerificationError
from polyfun.nullmod import Classification, classify_null_ideal_set
from polyfun.poly import FracPoly, Poly
from polyfun.ring import (
    FiniteRing,
    SubsetSpec,
    element_from_matrix,
    element_to_matrix,
    make_matrix_ring,
    make_triangular_ring,
)

FAMILIES = ("full", "triangular")


@dataclass(frozen=True)
class AlgebraContext:
    """A = M_n(Z) (family "full") or T_n(Z) ("triangular"), B = A tensor Q."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be positive")

    def positions(self) -> list[tuple[int, int]]:
        n = self.n
        return [(a, b) for a in range(n) for b in range(n) if self.family == "full" or a <= b]

    def basis(self) -> list[tuple]:
        return [intmat.unit(self.n, a, b) for a, b in self.positions()]

    def check(self, matrix) -> tuple:
        mat = intmat.as_matrix(matrix)
        if len(mat) != self.n:
            raise ValueError(f"expected a {self.n}x{self.n} matrix")
        if self.family == "triangular" and not intmat.is_upper_triangular(mat):
            raise ValueError("matrix is not upper triangular")
        return mat

    def quotient(self, d: int, caps: Caps | None = None) -> FiniteRing:
        """A/dA."""
        if self.family == "full":
            return make_matrix_ring(self.n, d, caps)
        return make_triangular_ring(self.n, d, caps)

    def is_central(self, s) -> bool:
        return all(intmat.mul(s, t) == intmat.mul(t, s) for t in self.basis())


@dataclass(frozen=True)
class IntSubset:
    context: AlgebraContext
    matrices: tuple

    def __post_init__(self):
        seen = {}
        for mat in self.matrices:
            mat = self.context.check(mat)
            seen.setdefault(mat, mat)
        object.__setattr__(self, "matrices", tuple(seen))

    @classmethod
    def of(cls, family: str, n: int, matrices) -> "IntSubset":
        return cls(AlgebraContext(family, n), tuple(matrices))

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def to_json(self) -> dict:
        return {
            "family": self.context.family,
            "n": self.context.n,
            "matrices": [[list(r) for r in m] for m in self.matrices],
        }


def load_int_subset(document: str) -> IntSubset:
    """Parse ``{"family": "full", "n": 2, "matrices": [[[1,0],[0,0]], ...]}``."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise PolyfunError(f"subset document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "matrices" not in doc or "n" not in doc:
        raise PolyfunError("subset document needs fields 'family', 'n', 'matrices'")
    try:
        return IntSubset.of(doc.get("family", "full"), int(doc["n"]), doc["matrices"])
    except (TypeError, ValueError) as exc:
        raise PolyfunError(f"bad subset document: {exc}") from None


def frac_eval_check(F: FracPoly, S: IntSubset | Sequence, side: str = "right") -> bool:
    """True iff F maps every s in S into A."""
    return all(F.is_integral_at(s, side) for s in S)


def _product(F: FracPoly, G: FracPoly, side: str) -> FracPoly:
    # right side: f null mod d, f*g is not; left side mirrors to g*f
    return F * G if side == "right" else G * F


def _fraction_json(mat) -> list:
    return [[str(x) for x in row] for row in mat]


@dataclass(frozen=True)
class LiftResult:
    F: FracPoly
    G: FracPoly
    product: FracPoly
    s: tuple
    value: tuple  # matrix of Fractions

    def to_json(self) -> dict:
        return {
            "F": self.F.to_json(),
            "F_text": self.F.render(),
            "G": self.G.to_json(),
            "G_text": self.G.render(),
            "s": [list(r) for r in self.s],
            "value": _fraction_json(self.value),
        }


def counterexample_lift(f, g, d: int, s, S: IntSubset | Sequence | None = None, side: str = "right") -> LiftResult:
    """Build F = f/d, G = g and verify F, G integer-valued on S while FG leaves A at s.

    ``f`` and ``g`` are integer polynomials given as sequences of integer
    matrices. Raises VerificationError if any check fails, since that can
    only come from a bug upstream.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    s = intmat.as_matrix(s)
    points = list(S) if S is not None else [s]
    F = FracPoly(tuple(f), d)
    G = FracPoly.integral(tuple(g))
    if not frac_eval_check(F, points, side):
        raise VerificationError("lifted F is not integer-valued on S")
    if not frac_eval_check(G, points, side):
        raise VerificationError("lifted G is not integer-valued on S")
    FG = _product(F, G, side)
    if FG.is_integral_at(s, side):
        raise VerificationError("lifted product is integer-valued at the witness point")
    return LiftResult(F, G, FG, s, FG.evaluate(s, side))


@dataclass(frozen=True)
class ModResult:
    modulus: int
    classification: Classification
    preimages: dict = field(compare=False, default_factory=dict)  # reduced coords -> integer matrix


def check_ringset_mod(S: IntSubset, d: int, side: str = "right", caps: Caps | None = None) -> ModResult:
    """Classify the image S + dA in A/dA as a null-ideal set."""
    caps = caps or get_caps()
    if d < 2:
        raise ValueError("modulus must be >= 2")
    if d > caps.max_modulus:
        raise CapError(f"modulus {d} exceeds cap {caps.max_modulus}")
    Q = S.context.quotient(d, caps)
    preimages = {}
    els = []
    for mat in S:
        el = element_from_matrix(Q, [[x % d for x in row] for row in mat])
        preimages.setdefault(el.coords, mat)
        els.append(el)
    cls = classify_null_ideal_set(Q, SubsetSpec(Q, tuple(els)), side, caps=caps)
    return ModResult(d, cls, preimages)


def _lift_poly(f: Poly) -> list:
    return [intmat.as_matrix(element_to_matrix(c)) for c in f.coefficients()]


def lift_mod_result(S: IntSubset, result: ModResult, side: str = "right") -> LiftResult:
    w = result.classification.witness
    if w is None:
        raise ValueError("no witness to lift")
    f = _lift_poly(w.f)
    g = [intmat.as_matrix(element_to_matrix(w.r))]
    s = result.preimages[w.s.coords]
    return counterexample_lift(f, g, result.modulus, s, S, side)


def prime_powers(bound: int) -> list[int]:
    out = []
    for q in range(2, bound + 1):
        p = _smallest_prime_factor(q)
        k = q
        while k % p == 0:
            k //= p
        if k == 1:
            out.append(q)
    return out


def _smallest_prime_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


@dataclass(frozen=True)
class NotRingset:
    modulus: int
    lift: LiftResult
    classification: Classification = field(compare=False, default=None)

    is_ringset_candidate = False

    def to_json(self) -> dict:
        rec = {"verdict": "not-ringset", "modulus": self.modulus}
        rec.update(self.lift.to_json())
        return rec


@dataclass(frozen=True)
class NoObstruction:
    moduli: tuple

    is_ringset_candidate = True

    def to_json(self) -> dict:
        return {"verdict": "no-obstruction", "moduli": list(self.moduli)}


def ringset_scan(
    S: IntSubset,
    side: str = "right",
    moduli: Sequence[int] | None = None,
    caps: Caps | None = None,
):
    """Probe S for ringset failure modulo each modulus (ascending); smallest failure wins."""
    caps = caps or get_caps()
    if moduli is None:
        moduli = prime_powers(caps.default_modulus_bound)
    moduli = sorted(set(int(d) for d in moduli))
    if not moduli:
        raise ValueError("need at least one modulus")
    for d in moduli:
        res = check_ringset_mod(S, d, side, caps)
        if not res.classification.is_null_ideal_set:
            return NotRingset(d, lift_mod_result(S, res, side), res.classification)
    return NoObstruction(tuple(moduli))


@dataclass(frozen=True)
class Ringset:
    s: tuple

    def to_json(self) -> dict:
        return {"verdict": "ringset", "reason": "central", "s": [list(r) for r in self.s]}


@dataclass(frozen=True)
class SingletonNotRingset:
    s: tuple
    t: tuple
    modulus: int
    lift: LiftResult

    def to_json(self) -> dict:
        rec = {"verdict": "not-ringset", "modulus": self.modulus, "t": [list(r) for r in self.t]}
        rec.update(self.lift.to_json())
        return rec


def _smallest_prime_not_dividing(c: int) -> int:
    p = 2
    while True:
        if _smallest_prime_factor(p) == p and c % p:
            return p
        p += 1


def singleton_classify(s, context: AlgebraContext | None = None):
    """{s} is a ringset iff s is central; otherwise return the explicit failure.

    For non-central s, t is the first basis matrix not commuting with s and d
    the smallest prime not dividing the first nonzero entry of ts - st. Then
    F = (x - s)/d and G = t are integer-valued on {s}, while
    (FG)(s) = (ts - st)/d is not.
    """
    s = intmat.as_matrix(s)
    context = context or AlgebraContext("full", len(s))
    context.check(s)
    if context.is_central(s):
        return Ringset(s)
    n = context.n
    for t in context.basis():
        c = intmat.sub(intmat.mul(t, s), intmat.mul(s, t))
        if not intmat.is_zero(c):
            break
    entry = next(x for x in intmat.entries(c) if x)
    d = _smallest_prime_not_dividing(entry)
    f = [intmat.scale(-1, s), intmat.identity(n)]
    lift = counterexample_lift(f, [t], d, s, [s], "right")
    expected = tuple(tuple(Fraction(x, d) for x in row) for row in c)
    if lift.value != expected:
        raise VerificationError("singleton witness value differs from (ts - st)/d")
    return SingletonNotRingset(s, t, d, lift)
