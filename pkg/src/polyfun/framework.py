"""pol(R, S, I): polynomials over R mapping a subset S of a subring T into an ideal I of T.

With R = T and I = (0) this is the null-polynomial module N(S). The theorem
checks below treat each closure theorem as a falsifiable assertion: when the
hypothesis holds and the conclusion fails, a TheoremViolation is raised.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from polyfun.config import Caps, get_caps
from polyfun.errors import TheoremViolation
from polyfun.nullmod import (
    KernelModule,
    Witness,
    closed_under_right_constants,
    power_profile,
    truncated_pol_module,
)
from polyfun.poly import Poly
from polyfun.ring import (
    FiniteRing,
    IdealDesc,
    SubringDesc,
    SubsetSpec,
    conjugation_closure,
    is_unit_generated_over_center,
    units,
    whole_ring,
    zero_ideal,
)


@dataclass(frozen=True)
class PolContext:
    ring: FiniteRing
    subring: SubringDesc
    ideal: IdealDesc
    subset: SubsetSpec
    side: str = "right"

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', got {self.side!r}")
        if self.subring.ring != self.ring or self.ideal.ring != self.ring or self.subset.ring != self.ring:
            raise ValueError("context parts live in different rings")
        if self.ideal.subring.basis != self.subring.basis:
            raise ValueError("ideal is not declared over the given subring")
        if not self.ideal.basis.issubset(self.subring.basis):
            raise ValueError("ideal is not contained in the subring")
        for s in self.subset:
            if not self.subring.contains(s):
                raise ValueError(f"subset element {s} is not in the subring")

    @classmethod
    def null(cls, R: FiniteRing, S: SubsetSpec, side: str = "right") -> "PolContext":
        """R = T, I = (0): the null-polynomial setting."""
        T = whole_ring(R)
        return cls(R, T, zero_ideal(T), S, side)

    def mirror(self) -> "PolContext":
        """Same data over the opposite ring with the side flipped."""
        Rop = self.ring.opposite()
        return PolContext(
            Rop,
            self.subring.opposite(Rop),
            self.ideal.opposite(Rop),
            self.subset.opposite(Rop),
            "left" if self.side == "right" else "right",
        )

    def degree_bound(self, caps: Caps | None = None) -> int:
        return power_profile(self.subset, caps).degree_bound


def pol_module(ctx: PolContext, d: int | None = None, caps: Caps | None = None) -> KernelModule:
    caps = caps or get_caps()
    if d is None:
        d = ctx.degree_bound(caps)
    return truncated_pol_module(ctx.ring, ctx.subset, ctx.ideal, d, ctx.side, caps)


def is_right_T_module(ctx: PolContext, d: int | None = None, caps: Caps | None = None) -> tuple[bool, Witness | None]:
    """Closure of pol under multiplication by T on the evaluation side (right for f_r)."""
    K = pol_module(ctx, d, caps)
    return closed_under_right_constants(K, ctx.subring.basis_elements())


@dataclass
class TheoremReport:
    theorem: str
    ring: str
    side: str
    hypothesis: bool
    conclusion: bool | None
    details: dict = field(default_factory=dict)
    witness: Witness | None = None
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        if not self.hypothesis:
            return "hypothesis-not-met"
        return "verified" if self.conclusion else "VIOLATED"

    def to_json(self) -> dict:
        rec = {
            "theorem": self.theorem,
            "ring": self.ring,
            "side": self.side,
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "status": self.status,
        }
        rec.update(self.details)
        if self.witness is not None:
            rec["witness"] = self.witness.to_json()
        rec["elapsed_ms"] = round(self.elapsed_ms, 3)
        return rec


def _closed_under_polys(K: KernelModule, C: Sequence[Poly]) -> tuple[bool, dict | None]:
    side = K.side
    for f in K.polys():
        for c in C:
            g = f * c if side == "right" else c * f
            for s in K.subset:
                value = g.evaluate(s, side)
                if not K.target_contains(value):
                    return False, {"f": f.render(), "c": c.render(), "s": list(s.coords), "value": list(value.coords)}
    return True, None


def images_criterion_check(
    ctx: PolContext, C: Sequence[Poly], d: int | None = None, caps: Caps | None = None
) -> TheoremReport:
    """If pol is closed under multiplication by every image c(s), it is closed under every c in C."""
    start = time.perf_counter()
    K = pol_module(ctx, d, caps)
    side = ctx.side
    images = {}
    for c in C:
        for s in ctx.subset:
            v = c.evaluate(s, side)
            images.setdefault(v.coords, v)
    hyp, hyp_witness = closed_under_right_constants(K, list(images.values()))
    concl, concl_witness = _closed_under_polys(K, C)
    report = TheoremReport(
        "images-criterion",
        ctx.ring.ident,
        side,
        hyp,
        concl,
        {"images": len(images), "polys": len(C), "degree": K.degree},
        None if hyp else hyp_witness,
        (time.perf_counter() - start) * 1000,
    )
    if hyp and not concl:
        report.details["violation"] = concl_witness
        raise TheoremViolation("images criterion violated", report)
    return report


def units_theorem_check(ctx: PolContext, d: int | None = None, caps: Caps | None = None) -> TheoremReport:
    """T unit-generated over its center and S unit-conjugation stable => pol is a T-module."""
    start = time.perf_counter()
    caps = caps or get_caps()
    generated, _ = is_unit_generated_over_center(ctx.subring, caps)
    pairs = units(ctx.subring, caps)
    closure = conjugation_closure(ctx.subset, pairs)
    stable = len(closure) == len(ctx.subset)
    hyp = generated and stable
    closed, witness = is_right_T_module(ctx, d, caps)
    report = TheoremReport(
        "units-over-center",
        ctx.ring.ident,
        ctx.side,
        hyp,
        closed,
        {"unit_generated": generated, "conjugation_stable": stable, "units": len(pairs)},
        witness,
        (time.perf_counter() - start) * 1000,
    )
    if hyp and not closed:
        raise TheoremViolation("units-over-center theorem violated", report)
    return report
