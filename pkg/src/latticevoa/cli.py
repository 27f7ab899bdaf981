"""Batch command-line front end.

Exit status: 0 when every check passes, 1 on a mathematical failure, 2 on
invalid input (with a JSON error object on stderr). Reports contain no
timings or floats, so a fixed seed gives byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

from . import axioms
from .characters import character_convolution_check, character_series, factor_dimension
from .lattice import EvenLattice, LatticeError, build_even_lattice
from .modules import LatticeModule, build_coset_module, dual_lattice_module, lattice_algebra
from .report import CheckReport, jsonable
from .representations import (
    InsufficientSample,
    NotDecomposableAtWindow,
    classify_irreducibles_tensor,
    decompose_completely,
)
from .tensor import TensorModule, check_residue_expansion, tensor_algebra
from .vertex import TruncationWindow

COMMANDS = ("check-axioms", "characters", "classify", "decompose", "tensor-check")


class UsageError(ValueError):
    """Invalid command-line input; maps to exit status 2."""


class LatticeFileError(UsageError):
    pass


@dataclass
class JobSpec:
    command: str
    lattices: list = field(default_factory=list)
    max_weight: Fraction = Fraction(4)
    sectors: str = "radius:1"
    out: str | None = None
    fmt: str = "json"
    seed: int = 0
    depth: int = 64
    coset: str | None = None
    triples: int = 8
    instances: int = 50

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.max_weight <= 0:
            raise UsageError("--max-weight must be positive")
        if self.depth <= 0:
            raise UsageError("--depth must be positive")


def parse_lattice_file(path: str) -> EvenLattice:
    """Read ``{"gram": [[...], ...]}`` and validate it as an even nondegenerate lattice."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise LatticeFileError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if text.splitlines() else ""
        raise LatticeFileError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}: {line.strip()!r}") from None
    if not isinstance(data, dict) or "gram" not in data:
        raise LatticeFileError(f"{path}: expected a JSON object with a \"gram\" key")
    gram = data["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise LatticeFileError(f"{path}: \"gram\" must be a list of rows")
    for i, row in enumerate(gram):
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise LatticeFileError(f"{path}: gram row {i + 1} has non-integer entry {x!r}")
    try:
        return build_even_lattice(gram)
    except LatticeError as exc:
        raise LatticeFileError(f"{path}: {type(exc).__name__}: {exc}") from None


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _parse_vector(text: str, rank: int) -> tuple:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != rank:
        raise UsageError(f"vector {text!r} needs {rank} coordinates")
    return tuple(_parse_fraction(p) for p in parts)


def window_for(ctx, spec: str, max_weight: Fraction) -> TruncationWindow:
    """``radius:N`` (L1-ball around coset representatives) or ``list:v1;v2`` with comma coordinates."""
    kind, _, body = spec.partition(":")
    if kind == "radius":
        try:
            radius = int(body)
        except ValueError:
            raise UsageError(f"bad sector radius {body!r}") from None
        if radius < 0:
            raise UsageError("sector radius must be nonnegative")
        return ctx.window(max_weight, radius)
    if kind == "list":
        if isinstance(ctx, TensorModule):
            raise UsageError("explicit sector lists are only supported for single-lattice commands")
        secs = frozenset(_parse_vector(v, ctx.rank) for v in body.split(";") if v.strip())
        if not secs:
            raise UsageError("empty sector list")
        return TruncationWindow(max_weight, secs)
    raise UsageError(f"--sectors must be radius:N or list:..., got {spec!r}")


def _module_for(L: EvenLattice, coset: str | None) -> LatticeModule:
    if coset is None:
        return lattice_algebra(L)
    if coset == "all":
        return dual_lattice_module(L)
    try:
        return build_coset_module(L, _parse_vector(coset, L.rank))
    except LatticeError as exc:
        raise UsageError(str(exc)) from None


def _need(job: JobSpec, lo: int, hi: int | None = None) -> None:
    n = len(job.lattices)
    if n < lo or (hi is not None and n > hi):
        want = f"{lo}" if hi == lo else f"{lo}..{hi or 'n'}"
        raise UsageError(f"{job.command} needs {want} --lattice arguments, got {n}")


# -- commands -----------------------------------------------------------
def run_check_axioms(job: JobSpec) -> dict:
    _need(job, 1)
    if len(job.lattices) == 1:
        ctx = _module_for(job.lattices[0], job.coset)
    else:
        if job.coset is not None:
            raise UsageError("--coset applies to a single lattice")
        ctx = tensor_algebra(job.lattices)
    alg = ctx.algebra
    win = window_for(ctx, job.sectors, job.max_weight)
    reports = [axioms.check_grading_axioms(ctx, win, job.seed)]
    c = None
    vir = CheckReport("virasoro")
    for m, n in ((1, -1), (2, -2), (3, -3), (2, -1), (0, 0)):
        r, cc = axioms.check_virasoro(ctx, m, n, win)
        vir.merge(r)
        if (m, n) == (2, -2):
            c = cc
    vir.details["central_charge"] = c
    reports.append(vir)
    triples = axioms.sample_triples(alg, ctx, win, min(job.max_weight, 3), job.triples, job.seed)
    jac = axioms.check_jacobi_box(ctx, triples)
    reports.append(jac)
    der = CheckReport("l_minus_one_derivative")
    for _, g in alg.generators():
        for m in (-2, 0, 1):
            der.merge(axioms.check_l_minus_one_derivative(ctx, g, m, win))
    reports.append(der)
    reports.append(axioms.check_vacuum_property(ctx, win))
    reports.append(axioms.check_creation_property(alg, alg.window(min(job.max_weight, 3), 1)))
    return {
        "command": job.command,
        "context": repr(ctx),
        "central_charge": c,
        "checks": [r.to_dict() for r in reports],
        "passed": all(r.passed for r in reports),
    }


def run_characters(job: JobSpec) -> tuple[dict, object]:
    _need(job, 1, 1)
    L = job.lattices[0]
    ctx = _module_for(L, job.coset)
    win = window_for(ctx, job.sectors, job.max_weight)
    series = character_series(ctx, win)
    oracle = CheckReport("partition_oracle")
    for s, wt in ctx.cells(win):
        oracle.record({"sector": s, "weight": wt}, series.entries.get((s, wt), 0), factor_dimension(ctx, s, wt))
    return {
        "command": job.command,
        "context": repr(ctx),
        "character": series.to_dict(),
        "totals_by_weight": series.total_by_weight(),
        "checks": [oracle.to_dict()],
        "passed": oracle.passed,
    }, series


def run_classify(job: JobSpec) -> dict:
    _need(job, 2, 2)
    radius = _radius(job)
    out = classify_irreducibles_tensor(job.lattices[0], job.lattices[1], job.max_weight, radius, job.depth)
    body = out.to_dict()
    body["command"] = job.command
    return body


def run_decompose(job: JobSpec) -> dict:
    _need(job, 1, 1)
    L = job.lattices[0]
    W = _module_for(L, job.coset or "all")
    win = window_for(W, job.sectors, job.max_weight)
    dec = decompose_completely(W, win, closure_depth=job.depth)
    body = dec.to_dict()
    body["command"] = job.command
    body["passed"] = dec.reconciliation.passed
    return body


def run_tensor_check(job: JobSpec) -> dict:
    _need(job, 2)
    T = tensor_algebra(job.lattices)
    reports = []
    charge = CheckReport("central_charge_additivity")
    parts = [axioms.central_charge(lattice_algebra(L)) for L in job.lattices]
    total = axioms.central_charge(T, T.window(min(job.max_weight, 3), 1))
    charge.record({"factors": [L.describe() for L in job.lattices]}, total, sum(parts))
    charge.details["central_charges"] = parts
    reports.append(charge)
    reports.append(check_residue_expansion(T, job.instances, job.seed))
    if len(job.lattices) == 2:
        W1, W2 = (lattice_algebra(L) for L in job.lattices)
        reports.append(character_convolution_check(W1, W2, window_for(T, job.sectors, job.max_weight)))
    return {
        "command": job.command,
        "context": repr(T),
        "central_charge": total,
        "checks": [r.to_dict() for r in reports],
        "passed": all(r.passed for r in reports),
    }


def _radius(job: JobSpec) -> int:
    kind, _, body = job.sectors.partition(":")
    if kind != "radius":
        raise UsageError(f"{job.command} only accepts --sectors radius:N")
    try:
        return int(body)
    except ValueError:
        raise UsageError(f"bad sector radius {body!r}") from None


# -- output -------------------------------------------------------------
def render(body: dict, fmt: str, series=None) -> str:
    if fmt == "json":
        return json.dumps(jsonable(body), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        if series is None:
            raise UsageError("--format csv is only available for the characters command")
        return series.to_csv()
    lines = [f"{body.get('command')}: {'PASS' if body.get('passed') else 'FAIL'}"]
    if "context" in body:
        lines.append(f"context: {body['context']}")
    if body.get("central_charge") is not None:
        lines.append(f"central charge: {jsonable(body['central_charge'])}")
    for chk in body.get("checks", []):
        r = chk if isinstance(chk, dict) else chk.to_dict()
        lines.append(f"  {r['name']}: {r['checked']} checked, {len(r['failures'])} failures")
    for cls in body.get("classes", []):
        lines.append(f"  class {jsonable(cls['cosets'])}: {cls['verdict']}")
    for s in body.get("summands", []):
        lines.append(f"  summand {jsonable(s['coset_rep'])}: min weight {s['min_weight']}, {s['verdict']}")
    if "character" in body:
        for cell in body["character"]["cells"]:
            lines.append(f"  [{cell['sector']}] weight {cell['weight']}: {cell['dimension']}")
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=folder)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latticevoa", description="Exact checks for lattice vertex algebras and their modules.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "check-axioms": "grading, Virasoro, Jacobi, derivative, vacuum and creation checks",
        "characters": "character table of V_L, a coset module (--coset) or V_{L dual} (--coset all)",
        "classify": "irreducible modules of V_{L1} (x) V_{L2} against the discriminant group",
        "decompose": "split a module (default V_{L dual}) into coset modules",
        "tensor-check": "central charge additivity, residue expansion and character convolution",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--lattice", action="append", default=[], metavar="PATH", help="JSON file with a gram key")
        p.add_argument("--max-weight", default="4", metavar="Q")
        p.add_argument("--sectors", default="radius:1", metavar="SPEC", help="radius:N or list:v1;v2 (comma coordinates)")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--depth", type=int, default=64, help="operator-sample closure depth")
        if name in ("check-axioms", "characters", "decompose"):
            p.add_argument("--coset", metavar="VEC", help="coset representative (comma coordinates) or 'all'")
        if name == "check-axioms":
            p.add_argument("--triples", type=int, default=8, help="sampled (u, v, w) for the Jacobi box")
        if name == "tensor-check":
            p.add_argument("--instances", type=int, default=50, help="sampled residue-expansion instances")
    return parser


def job_from_args(ns: argparse.Namespace) -> JobSpec:
    if ns.seed < 0:
        raise UsageError("--seed must be nonnegative")
    return JobSpec(
        command=ns.command,
        lattices=[parse_lattice_file(p) for p in ns.lattice],
        max_weight=_parse_fraction(ns.max_weight),
        sectors=ns.sectors,
        out=ns.out,
        fmt=ns.format,
        seed=ns.seed,
        depth=ns.depth,
        coset=getattr(ns, "coset", None),
        triples=getattr(ns, "triples", 8),
        instances=getattr(ns, "instances", 50),
    )


def run(job: JobSpec) -> tuple[int, str]:
    series = None
    if job.command == "check-axioms":
        body = run_check_axioms(job)
    elif job.command == "characters":
        body, series = run_characters(job)
    elif job.command == "classify":
        body = run_classify(job)
    elif job.command == "decompose":
        body = run_decompose(job)
    else:
        body = run_tensor_check(job)
    body["seed"] = job.seed
    body["max_weight"] = job.max_weight
    body["sectors"] = job.sectors
    return (0 if body.get("passed") else 1), render(body, job.fmt, series)


def _error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")


def main(argv: list[str] | None = None) -> int:
    try:
        job = job_from_args(build_parser().parse_args(argv))
        if job.fmt == "csv" and job.command != "characters":
            raise UsageError("--format csv is only available for the characters command")
        status, text = run(job)
    except UsageError as exc:
        _error(type(exc).__name__, str(exc))
        return 2
    except (InsufficientSample, NotDecomposableAtWindow) as exc:
        _error(type(exc).__name__, str(exc))
        return 1
    if job.out:
        write_atomic(job.out, text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
