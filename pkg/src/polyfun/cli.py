"""Command-line front end.

Every command writes JSON-Lines records. Exit codes: 0 ok, 1 configuration
error, 2 cap exceeded, 3 internal verification failure or theorem violation,
4 research finding (a ring whose null polynomials fail to form an ideal).
"""

from __future__ import annotations

import functools
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from polyfun.config import Caps, get_caps
from polyfun.errors import CapError, PolyfunError, RingSpecError, VerificationError
from polyfun.framework import PolContext, images_criterion_check, units_theorem_check
from polyfun.ivp import load_int_subset, prime_powers, ringset_scan
from polyfun.nullmod import classify_null_ideal_set, count_poly_functions
from polyfun.poly import Poly
from polyfun.ring import (
    FiniteRing,
    SubsetSpec,
    builtin_ring,
    conjugation_orbits,
    is_unit_generated_over_center,
    load_ring_spec,
)

EXIT_OK, EXIT_CONFIG, EXIT_CAP, EXIT_VERIFY, EXIT_FINDING = 0, 1, 2, 3, 4


class Finding(Exception):
    """Raised to leave with the research-finding exit code after output is flushed."""


# -- ring and subset sources ------------------------------------------------------


@functools.lru_cache(maxsize=64)
def resolve_ring(source: str, caps: Caps | None = None) -> FiniteRing:
    """A builtin name (z4, m2z2, t2z3) or a path to a ring-spec file."""
    path = Path(source)
    if path.suffix == ".json" or path.is_file():
        try:
            text = path.read_text()
        except OSError as exc:
            raise RingSpecError(f"cannot read ring spec {source}: {exc}") from None
        R = load_ring_spec(text)
        if R.name is None:
            R = FiniteRing(R.modulus, R.basis_labels, R.mul_table, R.one_coords, name=path.stem)
        return R
    return builtin_ring(source, caps)


def parse_subset_arg(R: FiniteRing, text: str) -> SubsetSpec:
    """``[e11, e12+e22]``, a JSON list of label strings, or a JSON list of coordinate lists."""
    text = text.strip()
    try:
        items = json.loads(text)
    except json.JSONDecodeError:
        body = text.strip("[]").strip()
        items = [part.strip() for part in body.split(",") if part.strip()] if body else []
    if not isinstance(items, list):
        raise RingSpecError("subset must be a list")
    return SubsetSpec(R, tuple(R.parse_element(x) for x in items))


def orbit_unions(R: FiniteRing, caps: Caps) -> list[SubsetSpec]:
    orbits = conjugation_orbits(R, caps)
    if len(orbits) > 20:
        raise CapError(f"{len(orbits)} conjugation orbits; too many unions to enumerate")
    out = []
    for mask in range(1 << len(orbits)):
        els = tuple(e for i, orb in enumerate(orbits) if mask >> i & 1 for e in orb)
        out.append(SubsetSpec(R, els))
    return out


def enumerate_subsets(R: FiniteRing, caps: Caps) -> list[SubsetSpec]:
    if R.order > caps.all_subsets_order:
        raise CapError(f"ring of order {R.order} exceeds all-subsets bound {caps.all_subsets_order}")
    els = list(R.elements())
    return [
        SubsetSpec(R, tuple(e for i, e in enumerate(els) if mask >> i & 1)) for mask in range(1 << len(els))
    ]


# -- task execution ---------------------------------------------------------------


def _classify_task(args):
    source, coords, side, caps = args
    R = resolve_ring(source, caps)
    S = SubsetSpec(R, tuple(R.element(c) for c in coords))
    start = time.perf_counter()
    cls = classify_null_ideal_set(R, S, side, caps=caps)
    rec = {"type": "classification"}
    rec.update(cls.to_json())
    rec["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return rec


def _search_task(args):
    source, ring_id, caps = args
    start = time.perf_counter()
    try:
        R = resolve_ring(source, caps)
    except PolyfunError as exc:
        return {"type": "ring", "ring": ring_id, "status": "skipped", "error": str(exc)}
    S = SubsetSpec(R, tuple(R.elements()))
    rec = {"type": "ring", "ring": ring_id, "order": R.order, "status": "consistent", "sides": {}}
    for side in ("right", "left"):
        try:
            cls = classify_null_ideal_set(R, S, side, caps=caps)
        except CapError as exc:
            return {"type": "ring", "ring": ring_id, "status": "skipped", "error": str(exc)}
        rec["sides"][side] = {"verdict": cls.verdict, "degree_bound": cls.degree_bound}
        if not cls.is_null_ideal_set:
            # the witness was re-verified by direct evaluation inside the classifier
            rec["status"] = "finding"
            rec["sides"][side]["witness"] = cls.witness.to_json()
    rec["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return rec


def run_tasks(fn, tasks: list, jobs: int) -> list:
    """Map ``fn`` over ``tasks`` preserving task order regardless of scheduling."""
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(tasks) // (jobs * 8))
        return list(pool.map(fn, tasks, chunksize=chunk))


class RecordWriter:
    """Single owner of the output stream."""

    def __init__(self, path: str | None, append: bool = False):
        self.path = path
        if path is None or path == "-":
            self.fh = sys.stdout
            self.close_fh = False
        else:
            self.fh = open(path, "a" if append else "w")
            self.close_fh = True

    def write(self, rec: dict):
        self.fh.write(json.dumps(rec, separators=(",", ":")) + "\n")
        self.fh.flush()

    def close(self):
        if self.close_fh:
            self.fh.close()


def _caps_from(ctx: click.Context, degree_cap: int | None) -> Caps:
    caps = ctx.obj["caps"]
    if degree_cap is not None:
        if degree_cap <= 0:
            raise click.BadParameter("must be positive", param_hint="--degree-cap")
        caps = caps.replace(max_degree=degree_cap)
    return caps


# -- commands -------------------------------------------------------------------


@click.group()
@click.pass_context
def cli(ctx):
    """Polynomial functions on finite non-commutative rings."""
    ctx.ensure_object(dict)
    ctx.obj["caps"] = get_caps()


ring_option = click.option("--ring", "ring_source", required=True, help="Builtin name (z4, m2z2, t2z2) or ring-spec file.")
side_option = click.option("--side", type=click.Choice(["right", "left", "both"]), default="right", show_default=True)
jobs_option = click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes.")
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (default stdout).")
degree_option = click.option("--degree-cap", type=int, default=None, help="Override the maximal truncation degree.")


def _sides(side: str) -> list[str]:
    return ["right", "left"] if side == "both" else [side]


@cli.command()
@ring_option
@click.option("--subset", "subsets", multiple=True, help="Subset such as '[e11,e12]'; repeatable.")
@click.option("--all-subsets", is_flag=True, help="Every subset of the ring.")
@click.option("--orbit-unions", "use_orbits", is_flag=True, help="Every union of unit-conjugation orbits.")
@side_option
@degree_option
@jobs_option
@out_option
@click.pass_context
def classify(ctx, ring_source, subsets, all_subsets, use_orbits, side, degree_cap, jobs, out):
    """Classify subsets as null-ideal sets."""
    caps = _caps_from(ctx, degree_cap)
    R = resolve_ring(ring_source, caps)
    chosen = sum(bool(x) for x in (subsets, all_subsets, use_orbits))
    if chosen != 1:
        raise click.UsageError("give exactly one of --subset, --all-subsets, --orbit-unions")
    if subsets:
        specs = [parse_subset_arg(R, s) for s in subsets]
    elif all_subsets:
        specs = enumerate_subsets(R, caps)
    else:
        specs = orbit_unions(R, caps)
    tasks = [(ring_source, tuple(tuple(e.coords) for e in S), sd, caps) for S in specs for sd in _sides(side)]
    records = run_tasks(_classify_task, tasks, jobs)
    writer = RecordWriter(out)
    positive = 0
    for rec in records:
        positive += rec["verdict"] == "null-ideal-set"
        writer.write(rec)
    writer.write(
        {
            "type": "summary",
            "ring": R.ident,
            "records": len(records),
            "null_ideal_sets": positive,
            "not_null_ideal_sets": len(records) - positive,
        }
    )
    writer.close()


@cli.command("scan-ringset")
@click.option("--subset", "subset_doc", default=None, help='JSON: {"family": "full", "n": 2, "matrices": [...]}')
@click.option("--subset-file", type=click.Path(exists=True, dir_okay=False), default=None)
@side_option
@click.option("--modulus-bound", type=int, default=None, help="Scan all prime powers up to this bound.")
@click.option("--moduli", default=None, help="Explicit comma-separated moduli (composites allowed).")
@out_option
@click.pass_context
def scan_ringset(ctx, subset_doc, subset_file, side, modulus_bound, moduli, out):
    """Probe a finite subset of M_n(Z) or T_n(Z) for ringset failure."""
    caps = ctx.obj["caps"]
    if (subset_doc is None) == (subset_file is None):
        raise click.UsageError("give exactly one of --subset, --subset-file")
    S = load_int_subset(subset_doc if subset_doc is not None else Path(subset_file).read_text())
    if moduli:
        try:
            mods = [int(x) for x in moduli.split(",") if x.strip()]
        except ValueError:
            raise click.BadParameter("moduli must be integers", param_hint="--moduli") from None
        if any(d < 2 for d in mods):
            raise click.BadParameter("moduli must be >= 2", param_hint="--moduli")
    else:
        bound = modulus_bound if modulus_bound is not None else caps.default_modulus_bound
        if bound < 2:
            raise click.BadParameter("must be >= 2", param_hint="--modulus-bound")
        mods = prime_powers(bound)
    writer = RecordWriter(out)
    for sd in _sides(side):
        start = time.perf_counter()
        verdict = ringset_scan(S, sd, mods, caps)
        rec = {"type": "ringset", "side": sd, "subset": S.to_json()}
        rec.update(verdict.to_json())
        rec["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
        writer.write(rec)
    writer.close()


def builtin_corpus(max_order: int) -> list[str]:
    names = []
    for m in range(2, max_order + 1):
        names.append(f"z{m}")
    for n in range(2, 5):
        for m in range(2, max_order + 1):
            if m ** (n * (n + 1) // 2) <= max_order:
                names.append(f"t{n}z{m}")
            if m ** (n * n) <= max_order:
                names.append(f"m{n}z{m}")
    return names


def _drop_torn_tail(path: str):
    """Cut an interrupted final line so appended records start on a fresh line."""
    with open(path, "rb+") as fh:
        data = fh.read()
        if data and not data.endswith(b"\n"):
            fh.truncate(data.rfind(b"\n") + 1)


def _processed_ids(path: str | None) -> set[str]:
    if not path or path == "-" or not os.path.exists(path):
        return set()
    _drop_torn_tail(path)
    done = set()
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue
            if rec.get("type") == "ring":
                done.add(rec["ring"])
    return done


@cli.command()
@click.option("--corpus", type=click.Path(exists=True, file_okay=False), default=None, help="Directory of ring-spec *.json files.")
@click.option("--builtin-max-order", type=int, default=None, help="Use builtin rings of order <= N.")
@jobs_option
@out_option
@click.pass_context
def search(ctx, corpus, builtin_max_order, jobs, out):
    """Check whether N(R) is an ideal on both sides for every ring of a corpus."""
    caps = ctx.obj["caps"]
    if (corpus is None) == (builtin_max_order is None):
        raise click.UsageError("give exactly one of --corpus, --builtin-max-order")
    if corpus is not None:
        sources = [(str(p), p.stem) for p in sorted(Path(corpus).glob("*.json"))]
    else:
        sources = [(name, name) for name in builtin_corpus(builtin_max_order)]
    done = _processed_ids(out)
    tasks = [(src, rid, caps) for src, rid in sources if rid not in done]
    records = run_tasks(_search_task, tasks, jobs)
    writer = RecordWriter(out, append=True)
    findings = 0
    for rec in records:
        findings += rec["status"] == "finding"
        writer.write(rec)
    writer.close()
    counts = {"processed": len(records), "skipped_resume": len(sources) - len(tasks), "findings": findings}
    click.echo(json.dumps({"type": "search-summary", **counts}), err=True)
    if findings:
        raise Finding()


@cli.command("verify-theorems")
@ring_option
@click.option("--trials", type=int, default=200, show_default=True, help="Random images-criterion trials.")
@click.option("--seed", type=int, default=0, show_default=True)
@side_option
@degree_option
@out_option
@click.pass_context
def verify_theorems(ctx, ring_source, trials, seed, side, degree_cap, out):
    """Check the closure theorems on a ring; exit 3 on any violation."""
    caps = _caps_from(ctx, degree_cap)
    R = resolve_ring(ring_source, caps)
    writer = RecordWriter(out)
    generated, gen = is_unit_generated_over_center(R, caps)
    writer.write({"type": "unit-generation", "ring": R.ident, "unit_generated": generated, "generated_size": gen.size, "order": R.order})
    for sd in _sides(side):
        verified = 0
        for S in orbit_unions(R, caps):
            report = units_theorem_check(PolContext.null(R, S, sd), caps=caps)
            verified += report.hypothesis
        writer.write({"type": "theorem-summary", "theorem": "units-over-center", "ring": R.ident, "side": sd, "hypothesis_met": verified})
        rng = random.Random(seed)
        els = list(R.elements())
        met = 0
        for _ in range(trials):
            S = SubsetSpec(R, tuple(rng.sample(els, rng.randint(1, min(4, len(els))))))
            C = [_random_poly(R, rng, 3) for _ in range(rng.randint(1, 3))]
            report = images_criterion_check(PolContext.null(R, S, sd), C, caps=caps)
            met += report.hypothesis
        writer.write({"type": "theorem-summary", "theorem": "images-criterion", "ring": R.ident, "side": sd, "trials": trials, "hypothesis_met": met})
    writer.close()


def _random_poly(R: FiniteRing, rng: random.Random, max_degree: int) -> Poly:
    deg = rng.randint(0, max_degree)
    return Poly(R, [[rng.randrange(R.modulus) for _ in range(R.rank)] for _ in range(deg + 1)])


@cli.command("count-functions")
@ring_option
@side_option
@click.pass_context
def count_functions(ctx, ring_source, side):
    """Number of distinct polynomial functions R -> R."""
    caps = ctx.obj["caps"]
    R = resolve_ring(ring_source, caps)
    for sd in _sides(side):
        click.echo(json.dumps({"type": "count", "ring": R.ident, "side": sd, "functions": count_poly_functions(R, sd, caps)}))


@cli.command("export-ring")
@ring_option
@out_option
@click.pass_context
def export_ring(ctx, ring_source, out):
    """Write the canonical ring-spec document of a ring."""
    text = resolve_ring(ring_source, ctx.obj["caps"]).dumps()
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="polyfun", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_CONFIG
    except click.ClickException as exc:
        exc.show()
        return EXIT_CONFIG
    except Finding:
        return EXIT_FINDING
    except CapError as exc:
        click.echo(f"cap exceeded: {exc}", err=True)
        return EXIT_CAP
    except VerificationError as exc:
        click.echo(f"verification failure: {exc}", err=True)
        report = getattr(exc, "report", None)
        if report is not None:
            click.echo(json.dumps(report.to_json()), err=True)
        return EXIT_VERIFY
    except (PolyfunError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_CONFIG
    return EXIT_OK


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
