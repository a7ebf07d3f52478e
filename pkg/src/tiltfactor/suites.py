"""Named verification batches run by ``tiltfactor suite NAME``."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

from tiltfactor.charring import WeylCombo, decompose_weyl, tensor_product, weyl_character
from tiltfactor.modular import (
    PrimeContext,
    a1_tilting_oracle,
    minuscule_weights,
    simple_character,
)
from tiltfactor.rootsys import build_root_datum, weyl_dimension
from tiltfactor.theorems import (
    check_lemma,
    check_proposition,
    corollary_decompositions,
    enumerate_factorizations,
    verify_supplied_factorization,
)


@dataclass
class CaseResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)


def _table1_rows() -> list[tuple[str, Callable[[], CaseResult]]]:
    def row(name, checks):
        def run():
            bad = []
            for (t, n, weights, expected) in checks:
                d = build_root_datum(t, n)
                got_min = minuscule_weights(d)
                if weights is None:
                    if got_min:
                        bad.append(f"{t}{n}: expected no minuscule weights, got {got_min}")
                    continue
                for i, dim in zip(weights, expected):
                    w = d.fundamental_weight(i)
                    if w not in got_min:
                        bad.append(f"{t}{n}: eps_{i} missing from minuscule list")
                    got = weyl_dimension(d, w)
                    if got != dim:
                        bad.append(f"{t}{n} eps_{i}: dimension {got} != {dim}")
                    if list(weyl_character(d, w).entries) != [w]:
                        bad.append(f"{t}{n} eps_{i}: weights do not form a single orbit")
                if weights is not None and len(got_min) != len(weights):
                    bad.append(f"{t}{n}: minuscule list {got_min} has wrong length")
            return CaseResult(name, not bad, {"failures": bad})
        return name, run

    return [
        row("A_n", [("A", n, list(range(1, n + 1)), [comb(n + 1, j) for j in range(1, n + 1)])
                    for n in range(1, 8)]),
        row("B_n", [("B", n, [n], [2 ** n]) for n in range(2, 5)]),
        row("C_n", [("C", n, [1], [2 * n]) for n in range(2, 5)]),
        row("D_n", [("D", n, [1, n - 1, n], [2 * n, 2 ** (n - 1), 2 ** (n - 1)]) for n in range(4, 7)]),
        row("E6", [("E", 6, [1, 6], [27, 27])]),
        row("E7", [("E", 7, [7], [56])]),
        row("E8", [("E", 8, None, None)]),
        row("F4", [("F", 4, None, None)]),
        row("G2", [("G", 2, None, None)]),
    ]


def _report_case(name, fn):
    def run():
        rep = fn()
        return CaseResult(name, rep.passed, rep.to_json())
    return name, run


def lemma_cases():
    small = [(t, n, p) for (t, n) in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2)] for p in (2, 3, 5)]
    small += [(t, n, 2) for (t, n) in [("A", 4), ("B", 3), ("C", 3), ("D", 4)]]
    large = [(t, n, p) for (t, n) in [("E", 6), ("E", 7)] for p in (2, 3, 5, 7)]
    out = []
    for t, n, p in small + large:
        d = build_root_datum(t, n)
        ctx = PrimeContext(d, p)
        for lam in minuscule_weights(d):
            out.append(_report_case(f"lemma {t}{n} p={p} lam={lam}",
                                    lambda ctx=ctx, lam=lam: check_lemma(ctx, lam)))
    return out


def proposition_cases(r: int = 2):
    out = []
    for t, n in [("A", 1), ("A", 2)]:
        d = build_root_datum(t, n)
        digits = [d.zero()] + minuscule_weights(d)
        for p in (2, 3):
            ctx = PrimeContext(d, p)
            for mu in (d.zero(), d.fundamental_weight(1)):
                for ds in itertools.product(digits, repeat=r):
                    lam = tuple(sum(p ** j * dj[i] for j, dj in enumerate(ds)) for i in range(n))
                    out.append(_report_case(
                        f"proposition {t}{n} p={p} r={r} mu={mu} lam={lam}",
                        lambda ctx=ctx, mu=mu, lam=lam: check_proposition(ctx, r, mu, lam)))
    return out


def sl2_case(m: int, p: int = 2) -> CaseResult:
    """Find a corollary decomposition of m and a certificate matching the A1 oracle."""
    ctx = PrimeContext(build_root_datum("A", 1), p)
    oracle = decompose_weyl(a1_tilting_oracle(ctx, m))
    for r, mu, lam in corollary_decompositions(ctx, (m,)):
        for cert in enumerate_factorizations(ctx, r, mu, lam, check=False):
            prod = tensor_product(simple_character(ctx, cert.left_weight), simple_character(ctx, cert.right_weight))
            if decompose_weyl(prod) == oracle:
                return CaseResult(f"sl2 p={p} m={m}", True, {
                    "decomposition": {"r": r, "mu": list(mu), "lam": list(lam)},
                    "factorization": [list(cert.left_weight), list(cert.right_weight)],
                    "tilting": str(oracle)})
    return CaseResult(f"sl2 p={p} m={m}", False, {"tilting": str(oracle)})


def supplied_a2_case() -> CaseResult:
    d = build_root_datum("A", 2)
    ctx = PrimeContext(d, 3)
    rep = verify_supplied_factorization(
        ctx, (3, 0), WeylCombo(d, {(2, 0): 1}), WeylCombo(d, {(1, 0): 1}),
        WeylCombo(d, {(3, 0): 1, (1, 1): 1}))
    return CaseResult("supplied A2 p=3 T(3,0) = L(2,0) x L(1,0)", rep.passed, rep.to_json())


SUITES: dict[str, Callable[[], list]] = {
    "table1": _table1_rows,
    "lemma-all": lemma_cases,
    "proposition-small": proposition_cases,
    "sl2-p2-complete": lambda: [(f"sl2 p=2 m={m}", lambda m=m: sl2_case(m)) for m in range(65)],
    "remark3": lambda: [("remark3", supplied_a2_case)],
}


def run_cases(cases, jobs: Optional[int] = None) -> list[CaseResult]:
    """Run cases, results in input order regardless of completion order."""
    fns = [fn for _, fn in cases]
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda f: f(), fns))
    return [f() for f in fns]


def run_named_suite(name: str, jobs: Optional[int] = None) -> list[CaseResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return run_cases(SUITES[name](), jobs)
