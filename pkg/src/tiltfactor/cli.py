"""Command-line front end.

Exit codes: 0 success/pass, 1 verification failure, 2 usage or coverage error.
With ``--json`` every report is one JSON object per line on stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional, TextIO

from tiltfactor import kernels
from tiltfactor.charring import (
    CharacterError,
    WeylCombo,
    decompose_weyl,
    dimension,
    orbit_sum,
    tensor_all,
    weyl_character,
)
from tiltfactor.config import budget
from tiltfactor.modular import (
    OracleCoverageError,
    PrimeContext,
    minuscule_weights,
    p_expand,
    simple_character,
    tilting_character,
    tilting_route,
)
from tiltfactor.rootsys import (
    BudgetExceeded,
    RootSystemError,
    build_root_datum,
    minus_w0,
    weyl_dimension,
)
from tiltfactor.suites import SUITES, run_named_suite
from tiltfactor.theorems import (
    HypothesisError,
    check_corollary,
    check_lemma,
    check_proposition,
    combo_to_json,
    enumerate_factorizations,
    verify_supplied_factorization,
)

COMMANDS = ("describe", "char", "tensor", "minuscule", "expand", "verify", "factorize", "suite")
CLAIMS = ("lemma", "proposition", "corollary-a", "corollary-b", "supplied")


class UsageError(ValueError):
    pass


@dataclass
class JobSpec:
    command: str
    type_letter: Optional[str] = None
    rank: Optional[int] = None
    p: Optional[int] = None
    r: Optional[int] = None
    weights: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "JobSpec":
        data = dict(data)
        data["weights"] = [list(w) for w in data.get("weights", [])]
        return cls(**data)


def parse_weight(text: str) -> list[int]:
    parts = text.replace(" ", "").split(",")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise UsageError(f"malformed weight {text!r}: expected comma-separated integers like 2,2") from None


def parse_combo(text: str) -> list:
    """``"3,0;1,1:2"`` -> [[[3,0],1], [[1,1],2]]."""
    terms = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        coords, _, coeff = item.partition(":")
        try:
            c = int(coeff) if coeff else 1
        except ValueError:
            raise UsageError(f"malformed combo term {item!r}") from None
        terms.append([parse_weight(coords), c])
    if not terms:
        raise UsageError(f"empty Weyl combination {text!r}")
    return terms


def _datum(job: JobSpec):
    if job.type_letter is None or job.rank is None:
        raise UsageError("--type and --rank are required")
    return build_root_datum(job.type_letter.upper(), job.rank)


def _ctx(job: JobSpec):
    if job.p is None:
        raise UsageError("--p is required")
    try:
        return PrimeContext(_datum(job), job.p)
    except ValueError as exc:
        raise UsageError(f"--p: {exc}") from None


def _weight(job: JobSpec, datum, idx: int = 0, name: str = "--weight"):
    if len(job.weights) <= idx:
        raise UsageError(f"{name} is required")
    w = tuple(job.weights[idx])
    if len(w) != datum.rank:
        raise UsageError(f"{name} {','.join(map(str, w))} has {len(w)} coordinates, rank is {datum.rank}")
    return w


def _combo(datum, terms) -> WeylCombo:
    out = {}
    for coords, c in terms:
        if len(coords) != datum.rank or min(coords) < 0:
            raise UsageError(f"combo weight {coords} is not a dominant weight of {datum.name}")
        out[tuple(coords)] = out.get(tuple(coords), 0) + c
    return WeylCombo(datum, out)


def _char_json(c) -> dict:
    return {"entries": [[list(w), m] for w, m in c.items()], "dimension": dimension(c),
            "weyl": combo_to_json(decompose_weyl(c))}


def _describe(job):
    d = _datum(job)
    return 0, [{
        "type": d.type_letter, "rank": d.rank, "cartan": [list(r) for r in d.cartan],
        "num_positive_roots": d.num_positive_roots, "weyl_order": d.weyl_order,
        "coxeter_number": d.coxeter_number, "rho": list(d.rho),
        "highest_short_root": list(d.highest_short_root),
        "highest_short_coroot": list(d.highest_short_root_coroot),
    }]


def _char(job):
    kind = job.flags.get("kind", "weyl")
    if kind in ("weyl", "orbit"):
        d = _datum(job)
        w = _weight(job, d)
        c = weyl_character(d, w) if kind == "weyl" else orbit_sum(d, w)
        out = {"kind": kind, "weight": list(w), **_char_json(c)}
        if kind == "weyl":
            out["weyl_dimension"] = weyl_dimension(d, w)
            out["minus_w0"] = list(minus_w0(d, w))
        return 0, [out]
    ctx = _ctx(job)
    w = _weight(job, ctx.datum)
    if kind == "simple":
        c = simple_character(ctx, w)
        extra = {}
    elif kind == "tilting":
        c = tilting_character(ctx, w)
        extra = {"route": tilting_route(ctx, w), "donkin_assumed": ctx.donkin_assumed}
    else:
        raise UsageError(f"unknown --kind {kind!r}")
    return 0, [{"kind": kind, "p": ctx.p, "weight": list(w), **extra, **_char_json(c)}]


def _tensor(job):
    d = _datum(job)
    if len(job.weights) < 2:
        raise UsageError("tensor needs at least two --weight arguments")
    ws = [_weight(job, d, i) for i in range(len(job.weights))]
    c = tensor_all(weyl_character(d, w) for w in ws)
    return 0, [{"factors": [list(w) for w in ws], **_char_json(c)}]


def _minuscule(job):
    d = _datum(job)
    return 0, [{"type": d.type_letter, "rank": d.rank,
                "minuscule": [list(w) for w in minuscule_weights(d)],
                "dimensions": [weyl_dimension(d, w) for w in minuscule_weights(d)]}]


def _expand(job):
    ctx = _ctx(job)
    w = _weight(job, ctx.datum)
    return 0, [{"weight": list(w), "p": ctx.p, "digits_little_endian": [list(x) for x in p_expand(ctx, w)]}]


def _verify(job):
    claim = job.flags.get("claim")
    if claim not in CLAIMS:
        raise UsageError(f"unknown claim {claim!r}; choose from {', '.join(CLAIMS)}")
    ctx = _ctx(job)
    d = ctx.datum
    if claim == "supplied":
        target = job.flags.get("target")
        if target is None:
            raise UsageError("--target is required")
        combos = []
        for key in ("left", "right", "tilt"):
            if key not in job.flags:
                raise UsageError(f"--{key} is required")
            combos.append(_combo(d, job.flags[key]))
        rep = verify_supplied_factorization(ctx, tuple(target), *combos)
    else:
        lam = _weight(job, d)
        if claim == "lemma":
            rep = check_lemma(ctx, lam)
        else:
            r = job.r if job.r is not None else 1
            mu = tuple(job.flags.get("mu") or d.zero())
            if len(mu) != d.rank:
                raise UsageError(f"--mu has {len(mu)} coordinates, rank is {d.rank}")
            if claim == "proposition":
                rep = check_proposition(ctx, r, mu, lam)
            else:
                rep = check_corollary(ctx, r, mu, lam, claim[-1])
    return (0 if rep.passed else 1), [rep.to_json()]


def _factorize(job):
    ctx = _ctx(job)
    d = ctx.datum
    lam = _weight(job, d)
    mu = tuple(job.flags.get("mu") or d.zero())
    r = job.r if job.r is not None else 1
    certs = enumerate_factorizations(ctx, r, mu, lam, extended=bool(job.flags.get("extended")),
                                     check=not job.flags.get("no_check"))
    status = 1 if any(c.character_checked and not c.character_ok for c in certs) else 0
    return status, [dict(c.to_json(), donkin_assumed=ctx.donkin_assumed) for c in certs]


def run_suite(name: str, jobs: Optional[int] = None, out: Optional[TextIO] = None,
              as_json: bool = False) -> int:
    out = out or sys.stdout
    try:
        results = run_named_suite(name, jobs)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    npass = sum(r.passed for r in results)
    if as_json:
        for r in results:
            out.write(json.dumps({"suite": name, "case": r.name, "passed": r.passed,
                                  "details": r.details}, sort_keys=True) + "\n")
    else:
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}\n")
    summary = {"suite": name, "passed": npass, "total": len(results)}
    failed = [r for r in results if not r.passed]
    if failed:
        summary["first_failure"] = {"case": failed[0].name, "details": failed[0].details}
    if as_json:
        out.write(json.dumps(summary, sort_keys=True, default=str) + "\n")
    else:
        out.write(f"{name}: {npass}/{len(results)} passed\n")
        if failed:
            out.write(f"first failure: {failed[0].name}\n{json.dumps(failed[0].details, indent=2, default=str)}\n")
    return 0 if not failed else 1


_HANDLERS = {"describe": _describe, "char": _char, "tensor": _tensor, "minuscule": _minuscule,
             "expand": _expand, "verify": _verify, "factorize": _factorize}


def _human(obj: dict) -> str:
    if "claim" in obj:
        lines = [f"{obj['claim']}: {'PASS' if obj['passed'] else 'FAIL'}  inputs={obj['inputs']}"]
        for side in ("lhs", "rhs"):
            terms = obj["witnesses"].get(side) or []
            if terms:
                lines.append(f"  {side}: " + " + ".join(
                    (f"{c}*" if c != 1 else "") + f"chi({','.join(map(str, w))})" for w, c in terms))
        if "dimensions" in obj["witnesses"]:
            lines.append(f"  dimensions: {obj['witnesses']['dimensions']}")
        if obj["donkin_assumed"]:
            lines.append("  donkin_assumed: p < 2h-2, Donkin's conjecture assumed")
        for s in obj["skipped"]:
            lines.append(f"  skipped: {s}")
        for f in obj["failures"]:
            lines.append(f"  failure: {f}")
        lines.append(f"  note: {obj['note']}")
        return "\n".join(lines)
    if "num_positive_roots" in obj:
        return (f"{obj['type']}{obj['rank']}: N={obj['num_positive_roots']}, |W|={obj['weyl_order']}, "
                f"h={obj['coxeter_number']}, rho=({','.join(map(str, obj['rho']))})")
    return "\n".join(f"{k}: {v}" for k, v in obj.items())


def run(job: JobSpec, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Execute one job; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    as_json = bool(job.flags.get("json"))
    ctx_budget = job.flags.get("budget")
    try:
        with budget(tensor=ctx_budget):
            if job.command == "suite":
                return run_suite(job.flags.get("suite"), job.flags.get("jobs"), out, as_json)
            if job.command not in _HANDLERS:
                raise UsageError(f"unknown command {job.command!r}")
            status, objs = _HANDLERS[job.command](job)
    except (UsageError, RootSystemError, CharacterError, OracleCoverageError, HypothesisError,
            BudgetExceeded, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    for obj in objs:
        if as_json:
            out.write(json.dumps(obj, sort_keys=True, default=str) + "\n")
        else:
            out.write(_human(obj) + "\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="type_letter", help="root system type A-G")
    common.add_argument("--rank", type=int)
    common.add_argument("--p", type=int, help="the characteristic (prime)")
    common.add_argument("--r", type=int)
    common.add_argument("--weight", action="append", default=[],
                        help="fundamental coordinates, e.g. 2,2 (repeatable)")
    common.add_argument("--mu", help="weight mu for proposition/corollary/factorize")
    common.add_argument("--json", action="store_true", help="JSON lines on stdout")
    common.add_argument("--budget", type=int, help="tensor-product budget (weight-pair operations)")

    parser = argparse.ArgumentParser(prog="tiltfactor", description=__doc__.splitlines()[0])
    parser.add_argument("--backend-info", action="store_true", help="print the kernel backend and exit")
    sub = parser.add_subparsers(dest="command")
    sub.add_parser("describe", parents=[common], help="root datum summary")
    ch = sub.add_parser("char", parents=[common], help="compute a character")
    ch.add_argument("--kind", choices=["weyl", "orbit", "simple", "tilting"], default="weyl")
    sub.add_parser("tensor", parents=[common], help="decompose a product of Weyl characters")
    sub.add_parser("minuscule", parents=[common], help="list minuscule weights")
    sub.add_parser("expand", parents=[common], help="p-adic digits, little-endian")
    v = sub.add_parser("verify", parents=[common], help="verify a claim")
    v.add_argument("claim", choices=CLAIMS)
    v.add_argument("--target")
    v.add_argument("--left", help="Weyl combination, e.g. '2,0' or '3,0;1,1:2'")
    v.add_argument("--right")
    v.add_argument("--tilt")
    f = sub.add_parser("factorize", parents=[common], help="enumerate digit-swap factorizations")
    f.add_argument("--extended", action="store_true", help="also swap positions >= r")
    f.add_argument("--no-check", action="store_true", help="skip character checks")
    s = sub.add_parser("suite", help="run a named verification batch")
    s.add_argument("suite", help=", ".join(SUITES))
    s.add_argument("--jobs", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.add_argument("--budget", type=int)
    return parser


def job_from_args(ns: argparse.Namespace) -> JobSpec:
    flags = {"json": getattr(ns, "json", False), "budget": getattr(ns, "budget", None)}
    if ns.command == "suite":
        flags.update(suite=ns.suite, jobs=ns.jobs)
        return JobSpec("suite", flags=flags)
    if getattr(ns, "mu", None):
        flags["mu"] = parse_weight(ns.mu)
    if ns.command == "char":
        flags["kind"] = ns.kind
    if ns.command == "verify":
        flags["claim"] = ns.claim
        if ns.target:
            flags["target"] = parse_weight(ns.target)
        for key in ("left", "right", "tilt"):
            if getattr(ns, key):
                flags[key] = parse_combo(getattr(ns, key))
    if ns.command == "factorize":
        flags.update(extended=ns.extended, no_check=ns.no_check)
    return JobSpec(ns.command, ns.type_letter, ns.rank, ns.p, ns.r,
                   [parse_weight(w) for w in ns.weight], flags)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.backend_info:
        print(kernels.BACKEND)
        return 0
    if ns.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        job = job_from_args(ns)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
