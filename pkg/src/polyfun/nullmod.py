"""Truncated null-polynomial modules and null-ideal set classification.

For a finite subset S of a finite ring R, the powers of each s in S are
eventually periodic: s^(k+p) = s^k once k >= n0. With N0 the largest
preperiod and P the lcm of the periods, folding exponents k >= N0 onto
N0 + ((k - N0) mod P) never changes a value f(s) for s in S, and folding
commutes with multiplying by a constant on the evaluation side. So the
null polynomials of degree <= D* = N0 + P - 1 decide everything:

  N(S) is closed under right constants  <=>  its degree-D* part is.

Closure under multiplication by x is free because N^r(S) is always a left
ideal (and N^l(S) a right ideal), hence two-sidedness reduces to closure
under right (resp. left) multiplication by a module basis of R.

Left-side questions are answered on the opposite ring, where f_l becomes f_r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

import numpy as np

from polyfun.config import Caps, get_caps
from polyfun.errors import CapError, VerificationError
from polyfun.linalg import HowellForm, constrained_kernel, howell_form, intersection, kernel
from polyfun.poly import Poly
from polyfun.ring import (
    FiniteRing,
    IdealDesc,
    RingElement,
    SubsetSpec,
    power_cycle,
    zero_ideal,
)

SIDES = ("right", "left")


def _check_side(side: str):
    if side not in SIDES:
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")


@dataclass(frozen=True)
class PowerProfile:
    cycles: tuple  # (preperiod, period) per subset element, in subset order
    preperiod: int
    period: int

    @property
    def degree_bound(self) -> int:
        """D* = N0 + P - 1, the truncation degree that loses nothing."""
        return self.preperiod + self.period - 1


def power_profile(S: SubsetSpec | Sequence[RingElement], caps: Caps | None = None) -> PowerProfile:
    caps = caps or get_caps()
    els = S.elements if isinstance(S, SubsetSpec) else tuple(S)
    cycles = tuple(power_cycle(s) for s in els)
    n0 = max((c[0] for c in cycles), default=0)
    period = 1
    for _, p in cycles:
        period = lcm(period, p)
        if period > caps.max_period:
            raise CapError(f"period lcm {period} exceeds cap {caps.max_period}")
    return PowerProfile(cycles, n0, period)


def fold_exponent(k: int, profile: PowerProfile) -> int:
    n0, p = profile.preperiod, profile.period
    return k if k < n0 else n0 + (k - n0) % p


def collapse(f: Poly, profile: PowerProfile) -> Poly:
    """Fold exponents by the subset's power periodicity; values on the subset are unchanged."""
    R = f.ring
    bound = profile.preperiod + profile.period
    if len(f.coeffs) <= bound:
        return f
    out = [[0] * R.rank for _ in range(bound)]
    for k, c in enumerate(f.coeffs):
        acc = out[fold_exponent(k, profile)]
        for i, v in enumerate(c):
            acc[i] += v
    return Poly(R, out)


@dataclass(frozen=True)
class KernelModule:
    """{f : deg f <= degree, f_side(s) in I for all s in S} in canonical (Howell) form.

    Basis rows are flattened coefficient tuples c_0 | c_1 | ... | c_degree.
    """

    ring: FiniteRing
    subset: SubsetSpec
    ideal: IdealDesc | None
    side: str
    degree: int
    basis: HowellForm

    def contains(self, f: Poly) -> bool:
        return module_membership(self, f)

    def polys(self) -> list[Poly]:
        return [Poly.from_flat(self.ring, row) for row in self.basis.rows]

    def size(self) -> int:
        return self.basis.size()

    def target_contains(self, value: RingElement) -> bool:
        if self.ideal is None or self.ideal.is_zero():
            return value.is_zero()
        return self.ideal.contains(value)


def _eval_rows(W: FiniteRing, els: Sequence[RingElement], degree: int) -> list[list[int]]:
    """Row (k, i) holds the values of b_i x^k at every s, in ring W's product."""
    r = W.rank
    basis = [W._unit_vector(i) for i in range(r)]
    per_s = []
    for s in els:
        powers = [W.one_coords]
        for _ in range(degree):
            powers.append(W.mul_coords(powers[-1], s.coords))
        per_s.append(powers)
    rows = []
    for k in range(degree + 1):
        for i in range(r):
            row = []
            for powers in per_s:
                row.extend(W.mul_coords(basis[i], powers[k]))
            rows.append(row)
    return rows


def truncated_pol_module(
    R: FiniteRing,
    S: SubsetSpec,
    I: IdealDesc | None,
    d: int,
    side: str = "right",
    caps: Caps | None = None,
) -> KernelModule:
    """Degree-<=d part of {f in R[x] : f_side(s) in I for every s in S}; I=None means (0)."""
    _check_side(side)
    caps = caps or get_caps()
    if d < 0:
        raise ValueError("degree must be >= 0")
    if d > caps.max_degree:
        raise CapError(f"degree {d} exceeds cap {caps.max_degree}")
    m, r = R.modulus, R.rank
    nvars = (d + 1) * r
    W = R.opposite() if side == "left" else R
    els = [W.element(s.coords) for s in S.elements]
    if not els:
        full = howell_form([[1 if i == j else 0 for j in range(nvars)] for i in range(nvars)], m, nvars)
        return KernelModule(R, S, I, side, d, full)
    rows = _eval_rows(W, els, d)
    ncols = len(els) * r
    if I is None or I.is_zero():
        basis = kernel(rows, m, ncols)
    else:
        allowed = []
        for block in range(len(els)):
            for ib in I.basis.rows:
                row = [0] * ncols
                row[block * r : (block + 1) * r] = ib
                allowed.append(row)
        basis = constrained_kernel(rows, allowed, m, ncols)
    return KernelModule(R, S, I, side, d, basis)


def module_membership(K: KernelModule, f: Poly) -> bool:
    if f.degree is not None and f.degree > K.degree:
        raise ValueError(f"polynomial degree {f.degree} exceeds module degree bound {K.degree}")
    return K.basis.contains(f.flatten(K.degree))


@dataclass(frozen=True)
class Witness:
    """f in the module, constant r, point s with (f*r)_r(s) (or (r*f)_l(s)) outside I."""

    f: Poly
    r: RingElement
    s: RingElement
    value: RingElement

    def to_json(self) -> dict:
        R = self.f.ring
        return {
            "f": self.f.render(),
            "f_pretty": self.f.pretty(),
            "r": list(self.r.coords),
            "r_pretty": R.format_element(self.r),
            "s": list(self.s.coords),
            "s_pretty": R.format_element(self.s),
            "value": list(self.value.coords),
            "value_pretty": R.format_element(self.value),
        }


def multiply_constant(f: Poly, r: RingElement, side: str) -> Poly:
    """f*r for the right side, r*f for the left side."""
    return f * r if side == "right" else r * f


def verify_witness(K: KernelModule, w: Witness) -> bool:
    """Re-check a failure witness by direct evaluation."""
    side = K.side
    if any(not K.target_contains(w.f.evaluate(s, side)) for s in K.subset.elements):
        return False
    value = multiply_constant(w.f, w.r, side).evaluate(w.s, side)
    return value == w.value and not K.target_contains(value)


def closed_under_right_constants(K: KernelModule, gens: Sequence[RingElement]) -> tuple[bool, Witness | None]:
    """Closure of K under multiplication by each generator on its evaluation side.

    ``gens`` must span the ring of constants as a Z/m-module; bilinearity then
    makes the check complete. The first failure in basis-row-major,
    generator-minor order is returned as a witness.
    """
    side = K.side
    for f in K.polys():
        for b in gens:
            g = multiply_constant(f, b, side)
            if module_membership(K, g):
                continue
            for s in K.subset.elements:
                value = g.evaluate(s, side)
                if not K.target_contains(value):
                    w = Witness(f, b, s, value)
                    if not verify_witness(K, w):
                        raise VerificationError(f"witness failed re-verification: {w}")
                    return False, w
            raise VerificationError("module membership and direct evaluation disagree")
    return True, None


@dataclass(frozen=True)
class Classification:
    ring: FiniteRing
    subset: SubsetSpec
    side: str
    is_null_ideal_set: bool
    degree_bound: int
    degree: int
    witness: Witness | None = None
    kernel_size: int | None = None
    exact: bool = True
    modulus_context: int | None = field(default=None, compare=False)

    @property
    def verdict(self) -> str:
        return "null-ideal-set" if self.is_null_ideal_set else "not-null-ideal-set"

    def to_json(self) -> dict:
        R = self.ring
        rec = {
            "ring": R.ident,
            "subset": self.subset.coords(),
            "subset_pretty": [R.format_element(e) for e in self.subset.elements],
            "side": self.side,
            "verdict": self.verdict,
            "degree_bound": self.degree_bound,
        }
        if not self.exact:
            rec["truncated_degree"] = self.degree
        if self.witness is not None:
            rec["witness"] = self.witness.to_json()
        return rec


def classify_null_ideal_set(
    R: FiniteRing,
    S: SubsetSpec,
    side: str = "right",
    I: IdealDesc | None = None,
    caps: Caps | None = None,
    degree: int | None = None,
) -> Classification:
    """Decide whether N^side(S) (mod I) is a two-sided ideal of R[x].

    With ``degree`` left at None the truncation degree is D* and the verdict is
    exact. An explicit smaller degree only decides the truncated module.
    """
    _check_side(side)
    caps = caps or get_caps()
    profile = power_profile(S, caps)
    dstar = profile.degree_bound
    d = dstar if degree is None else degree
    K = truncated_pol_module(R, S, I, d, side, caps)
    closed, witness = closed_under_right_constants(K, R.basis_elements())
    return Classification(
        R, S, side, closed, dstar, d, witness, K.size(), exact=d >= dstar
    )


def null_kernel(R: FiniteRing, S: SubsetSpec, side: str = "right", degree: int | None = None, caps=None) -> KernelModule:
    caps = caps or get_caps()
    if degree is None:
        degree = power_profile(S, caps).degree_bound
    return truncated_pol_module(R, S, None, degree, side, caps)


def kernel_intersection(a: KernelModule, b: KernelModule) -> HowellForm:
    if a.degree != b.degree:
        raise ValueError("kernels truncated at different degrees")
    return intersection(a.basis, b.basis)


def count_poly_functions(R: FiniteRing, side: str = "right", caps: Caps | None = None) -> int:
    """Number of distinct functions R -> R induced by R[x] under side-evaluation."""
    caps = caps or get_caps()
    if R.order > caps.unit_enum_order:
        raise CapError(f"ring of order {R.order} exceeds enumeration cap {caps.unit_enum_order}")
    S = SubsetSpec(R, tuple(R.elements()))
    dstar = power_profile(S, caps).degree_bound
    K = truncated_pol_module(R, S, None, dstar, side, caps)
    total = R.modulus ** (R.rank * (dstar + 1))
    return total // K.size()


# -- brute-force oracle -----------------------------------------------------------


def _digit_rows(start: int, stop: int, nv: int, m: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, nv), dtype=np.int64)
    for j in range(nv):
        out[:, j] = idx % m
        idx //= m
    return out


def brute_force_classify(
    R: FiniteRing,
    S: SubsetSpec,
    side: str = "right",
    dmax: int = 2,
    caps: Caps | None = None,
    chunk: int = 1 << 15,
) -> Classification:
    """Enumerate every polynomial of degree <= dmax and test closure by evaluation.

    Independent of the Howell-form machinery; for cross-validation only. The
    verdict concerns degree <= dmax and is exact once dmax >= D*.
    """
    _check_side(side)
    caps = caps or get_caps()
    m, r = R.modulus, R.rank
    nv = r * (dmax + 1)
    total = m**nv
    if total > caps.brute_force_polys:
        raise CapError(f"{total} polynomials exceed brute-force cap {caps.brute_force_polys}")
    els = list(S.elements)
    profile = power_profile(S, caps)

    # value table of every monomial b_i x^k at every s, by direct evaluation
    monos = [Poly.monomial(b, k) for k in range(dmax + 1) for b in R.basis_elements()]
    if els:
        E = np.array(
            [[v for s in els for v in mono.evaluate(s, side).coords] for mono in monos],
            dtype=np.int64,
        )
    else:
        E = np.zeros((nv, 0), dtype=np.int64)
    # coefficientwise product of each monomial by each basis constant
    mult = []
    for b in R.basis_elements():
        mult.append(
            np.array([multiply_constant(mono, b, side).flatten(dmax) for mono in monos], dtype=np.int64)
        )

    def null_mask(digits):
        if E.shape[1] == 0:
            return np.ones(len(digits), dtype=bool)
        return ~((digits @ E) % m).any(axis=1)

    for start in range(0, total, chunk):
        digits = _digit_rows(start, min(total, start + chunk), nv, m)
        nulls = digits[null_mask(digits)]
        if len(nulls) == 0:
            continue
        for bi, Mb in enumerate(mult):
            prod_digits = (nulls @ Mb) % m
            ok = null_mask(prod_digits)
            if ok.all():
                continue
            pos = int(np.argmin(ok))
            f = Poly.from_flat(R, [int(v) for v in nulls[pos]])
            b = R.basis_elements()[bi]
            g = multiply_constant(f, b, side)
            for s in els:
                value = g.evaluate(s, side)
                if not value.is_zero():
                    return Classification(
                        R, S, side, False, profile.degree_bound, dmax, Witness(f, b, s, value),
                        exact=dmax >= profile.degree_bound,
                    )
            raise VerificationError("brute force table disagrees with direct evaluation")
    return Classification(R, S, side, True, profile.degree_bound, dmax, exact=dmax >= profile.degree_bound)


def all_subsets(R: FiniteRing):
    els = list(R.elements())
    for mask in range(1 << len(els)):
        yield SubsetSpec(R, tuple(e for i, e in enumerate(els) if mask >> i & 1))
