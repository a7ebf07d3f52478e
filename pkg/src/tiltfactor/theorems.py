"""Character-level verification of the tilting factorization results.

Every report is about characters only: a pass means the stated character
identities and sanity checks hold.  Indecomposability of modules is never
certified, and reports with p < 2h - 2 carry ``donkin_assumed``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from tiltfactor.charring import (
    Character,
    WeylCombo,
    decompose_weyl,
    dimension,
    frobenius_twist,
    realize,
    tensor_product,
    weyl_character,
)
from tiltfactor.modular import (
    OracleCoverageError,
    PrimeContext,
    is_minuscule,
    is_r_minuscule,
    minuscule_weights,
    p_contract,
    p_expand,
    simple_character,
    steinberg_weight,
    tilting_character,
    tilting_combo,
)
from tiltfactor.rootsys import (
    BudgetExceeded,
    Singular,
    Weight,
    orbit,
    pair,
    require_dominant,
    signed_dot_reflect,
    weyl_dimension,
)

NOTE = "character-level check; module indecomposability is not certified"


class HypothesisError(ValueError):
    """Inputs do not satisfy the hypotheses of the claim being checked."""


class NotCertifiable(HypothesisError):
    """A hypothesis could not be certified with the available oracles."""


def combo_to_json(combo: Optional[WeylCombo]) -> list:
    if combo is None:
        return []
    return [[list(w), c] for w, c in combo.items()]


@dataclass
class VerificationReport:
    claim: str
    inputs: dict
    donkin_assumed: bool
    witnesses: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        wit = {}
        for k, v in self.witnesses.items():
            wit[k] = combo_to_json(v) if isinstance(v, WeylCombo) else v
        wit.setdefault("lhs", [])
        wit.setdefault("rhs", [])
        return {
            "claim": self.claim,
            "inputs": self.inputs,
            "passed": self.passed,
            "donkin_assumed": self.donkin_assumed,
            "witnesses": wit,
            "skipped": list(self.skipped),
            "failures": list(self.failures),
            "note": NOTE,
        }


def _inputs(ctx: PrimeContext, **kw) -> dict:
    out = {"type": ctx.datum.type_letter, "rank": ctx.datum.rank, "p": ctx.p}
    for k, v in kw.items():
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


def _weyl_cache():
    return lru_cache(maxsize=None)(weyl_character)


def _add(*weights: Sequence[int]) -> Weight:
    return tuple(sum(c) for c in zip(*weights))


def _scale(k: int, w: Sequence[int]) -> Weight:
    return tuple(k * c for c in w)


def _compare_tilting(report: VerificationReport, lhs: WeylCombo, rhs: WeylCombo, target: Weight) -> None:
    report.witnesses["lhs"] = lhs
    report.witnesses["rhs"] = rhs
    if lhs != rhs:
        report.failures.append(f"character identity: lhs {lhs} != rhs {rhs}")
    top = rhs.top()
    if top is None or top[0] != target or top[1] != 1:
        report.failures.append(f"top term of rhs is {top}, expected chi{target} with coefficient 1")
    neg = [w for w, c in lhs.terms.items() if c < 0]
    if neg:
        report.failures.append(f"negative Weyl coefficients at {neg}")


# -- Lemma ---------------------------------------------------------------------

def check_lemma(ctx: PrimeContext, weight) -> VerificationReport:
    """St x L(lam) against T((p-1)rho + lam) for minuscule lam."""
    datum = ctx.datum
    lam = require_dominant(datum, weight)
    if not minuscule_weights(datum):
        raise HypothesisError(f"{datum.name} has no minuscule weights")
    if not is_minuscule(datum, lam):
        raise HypothesisError(f"{lam} is not minuscule for {datum.name}")
    p = ctx.p
    st = steinberg_weight(ctx, 1)
    target = _add(st, lam)
    report = VerificationReport("lemma", _inputs(ctx, r=1, mu=datum.zero(), lam=lam), ctx.donkin_assumed)

    # (i) pairing with the highest short coroot
    a0 = pair(datum, datum.highest_short_root_coroot, lam)
    report.witnesses["alpha0_pairing"] = a0
    if a0 > p:
        report.failures.append(f"(alpha0^vee, lam) = {a0} > p = {p}")

    # (ii) Brauer expansion chi((p-1)rho) * s(lam)
    terms: dict[Weight, int] = defaultdict(int)
    nondominant, walls = [], []
    orb = orbit(datum, lam)
    for nu in orb:
        w = _add(st, nu)
        r = signed_dot_reflect(datum, w)
        if r is Singular:
            walls.append(w)
            continue
        sign, d = r
        if d != w:
            nondominant.append(w)
        terms[d] += sign
    rhs = WeylCombo(datum, terms)
    report.witnesses["rhs"] = rhs
    report.witnesses["brauer_terms"] = len(orb)
    if walls:
        report.failures.append(f"Brauer terms on walls: {walls}")
    if nondominant:
        report.failures.append(f"Brauer terms not dominant: {nondominant}")
    if rhs.terms.get(target) != 1 or rhs.top()[0] != target:
        report.failures.append(f"top Brauer term is {rhs.top()}, expected chi{target} with coefficient 1")
    if not rhs.is_nonnegative():
        report.failures.append(f"Brauer expansion has negative coefficients: {rhs}")

    # (iii) full character identity by convolution
    dim_l = weyl_dimension(datum, lam)
    dim_st = p ** datum.num_positive_roots
    try:
        weyl = _weyl_cache()
        from tiltfactor.config import limits
        cost = dim_st * dim_l
        if cost > limits().tensor:
            raise BudgetExceeded(f"St x L(lam) costs {cost} weight pairs", cost)
        lhs = decompose_weyl(tensor_product(weyl(datum, st), weyl(datum, lam)), weyl=weyl)
        report.witnesses["lhs"] = lhs
        if lhs != rhs:
            report.failures.append(f"character identity: St x L{lam} = {lhs}, Brauer expansion = {rhs}")
    except BudgetExceeded as exc:
        report.skipped.append("character_identity")
        report.witnesses["skip_reason"] = str(exc)

    # (iv) dimension identity, no convolution
    lhs_dim = dim_st * dim_l
    rhs_dim = sum(c * weyl_dimension(datum, w) for w, c in rhs.terms.items())
    report.witnesses["dimensions"] = {"lhs": lhs_dim, "rhs": rhs_dim}
    if lhs_dim != rhs_dim:
        report.failures.append(f"dimension identity: p^N dim L = {lhs_dim} != {rhs_dim}")
    return report


# -- Proposition and Corollary -------------------------------------------------

def _require_r_minuscule(ctx: PrimeContext, r: int, lam: Weight) -> list[Weight]:
    if r < 0:
        raise HypothesisError(f"r must be >= 0, got {r}")
    ok, digits = is_r_minuscule(ctx, r, lam)
    if not ok:
        raise HypothesisError(f"{lam} is not {r}-minuscule for p={ctx.p} (digits {digits})")
    return digits


def check_proposition(ctx: PrimeContext, r: int, mu, lam) -> VerificationReport:
    """T(mu)^[r] x St_r x L(lam) against T(p^r mu + (p^r-1)rho + lam)."""
    datum = ctx.datum
    mu = require_dominant(datum, mu, "mu")
    lam = require_dominant(datum, lam, "lam")
    _require_r_minuscule(ctx, r, lam)
    q = ctx.p ** r
    target = _add(_scale(q, mu), steinberg_weight(ctx, r), lam)
    report = VerificationReport("proposition", _inputs(ctx, r=r, mu=mu, lam=lam), ctx.donkin_assumed)
    report.inputs["target"] = list(target)
    weyl = _weyl_cache()

    t_mu = tilting_character(ctx, mu)
    factors = [simple_character(ctx, lam), frobenius_twist(t_mu, q), weyl(datum, steinberg_weight(ctx, r))]
    lhs_char = factors[0]
    for f in factors[1:]:
        lhs_char = tensor_product(lhs_char, f)
    lhs = decompose_weyl(lhs_char, weyl=weyl)
    rhs = tilting_combo(ctx, target)
    _compare_tilting(report, lhs, rhs, target)
    report.witnesses["dimensions"] = {"lhs": dimension(lhs_char), "rhs": dimension(realize(rhs, weyl))}
    return report


def certify_simple_tilting(ctx: PrimeContext, mu) -> bool:
    """Whether ch T(mu) = ch L(mu); raises NotCertifiable without oracle coverage."""
    try:
        return tilting_character(ctx, mu) == simple_character(ctx, mu)
    except OracleCoverageError as exc:
        raise NotCertifiable(f"cannot certify T{tuple(mu)} simple: {exc}") from exc


def check_corollary(ctx: PrimeContext, r: int, mu, lam, variant: str) -> VerificationReport:
    """Corollary (a) or (b) at character level."""
    datum = ctx.datum
    mu = require_dominant(datum, mu, "mu")
    lam = require_dominant(datum, lam, "lam")
    if variant not in ("a", "b"):
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")
    _require_r_minuscule(ctx, r, lam)
    q = ctx.p ** r
    st_r = steinberg_weight(ctx, r)
    target = _add(_scale(q, mu), st_r, lam)
    report = VerificationReport(f"corollary_{variant}", _inputs(ctx, r=r, mu=mu, lam=lam), ctx.donkin_assumed)
    report.inputs["target"] = list(target)
    weyl = _weyl_cache()

    if variant == "a":
        left = tilting_character(ctx, _add(_scale(q, mu), st_r))
        right = simple_character(ctx, lam)
    else:
        if not certify_simple_tilting(ctx, mu):
            raise HypothesisError(f"T{mu} is not simple (ch T != ch L); corollary (b) does not apply")
        left = weyl(datum, st_r)
        right = simple_character(ctx, _add(_scale(q, mu), lam))
    lhs_char = tensor_product(left, right)
    lhs = decompose_weyl(lhs_char, weyl=weyl)
    rhs = tilting_combo(ctx, target)
    _compare_tilting(report, lhs, rhs, target)
    report.witnesses["dimensions"] = {"lhs": dimension(lhs_char), "rhs": dimension(realize(rhs, weyl))}
    return report


def corollary_decompositions(ctx: PrimeContext, weight) -> list[tuple[int, Weight, Weight]]:
    """All (r, mu, lam) with weight = p^r mu + (p^r-1)rho + lam meeting the (b) hypotheses.

    r = 0 is included (St_0 trivial, lam = 0, T(weight) itself simple).
    """
    datum = ctx.datum
    hw = require_dominant(datum, weight)
    out = []
    r = 0
    while ctx.p ** r - 1 <= min(hw):
        q = ctx.p ** r
        rest = [c - (q - 1) for c in hw]
        lam = tuple(c % q for c in rest)
        mu = tuple(c // q for c in rest)
        if is_r_minuscule(ctx, r, lam)[0]:
            try:
                if certify_simple_tilting(ctx, mu):
                    out.append((r, mu, lam))
            except NotCertifiable:
                pass
        r += 1
    return out


# -- Factorizations by digit swaps ---------------------------------------------

@dataclass(frozen=True)
class FactorizationCertificate:
    target_highest_weight: Weight
    left_digits: tuple
    right_digits: tuple
    left_weight: Weight
    right_weight: Weight
    swap_set: frozenset
    character_checked: bool
    character_ok: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "target": list(self.target_highest_weight),
            "left_weight": list(self.left_weight),
            "right_weight": list(self.right_weight),
            "left_digits": [list(d) for d in self.left_digits],
            "right_digits": [list(d) for d in self.right_digits],
            "swap_set": sorted(self.swap_set),
            "character_checked": self.character_checked,
            "character_ok": self.character_ok,
        }


def swap_pairs(ctx: PrimeContext, left_digits, right_digits, positions) -> list[tuple]:
    """Distinct unordered pairs (lam', mu') from swapping digits at subsets of ``positions``.

    Each entry is ``(left_digits, right_digits, swap_set)``, oriented so the
    left weight is the lexicographically smaller one; the first swap set (by
    size, then lexicographic) producing a pair is kept.
    """
    n = max(len(left_digits), len(right_digits))
    zero = ctx.datum.zero()
    a0 = list(left_digits) + [zero] * (n - len(left_digits))
    b0 = list(right_digits) + [zero] * (n - len(right_digits))
    seen = set()
    out = []
    positions = sorted(positions)
    for k in range(len(positions) + 1):
        for subset in combinations(positions, k):
            a, b = list(a0), list(b0)
            for j in subset:
                a[j], b[j] = b[j], a[j]
            lw, rw = p_contract(ctx, a), p_contract(ctx, b)
            if lw > rw:
                lw, rw, a, b = rw, lw, b, a
            if (lw, rw) in seen:
                continue
            seen.add((lw, rw))
            out.append((tuple(a), tuple(b), frozenset(subset)))
    return out


def enumerate_factorizations(ctx: PrimeContext, r: int, mu, lam, *, extended: bool = False,
                             check: bool = True) -> list[FactorizationCertificate]:
    """Factorizations T(p^r mu + (p^r-1)rho + lam) = L(lam') x L(mu') by digit swaps.

    Swaps range over positions 0..r-1; ``extended`` also swaps the positions
    carrying the digits of mu.
    """
    datum = ctx.datum
    mu = require_dominant(datum, mu, "mu")
    lam = require_dominant(datum, lam, "lam")
    lam_digits = _require_r_minuscule(ctx, r, lam)
    if not certify_simple_tilting(ctx, mu):
        raise HypothesisError(f"T{mu} is not simple; no factorization of this form")
    q = ctx.p ** r
    target = _add(_scale(q, mu), steinberg_weight(ctx, r), lam)
    st_digit = steinberg_weight(ctx, 1)
    mu_digits = p_expand(ctx, mu) if any(mu) else []
    left = [st_digit] * r
    right = list(lam_digits) + mu_digits
    positions = range(len(right)) if extended else range(r)

    rhs = None
    weyl = _weyl_cache()
    certs = []
    for a, b, subset in swap_pairs(ctx, left, right, positions):
        lw, rw = p_contract(ctx, a), p_contract(ctx, b)
        checked, ok = False, None
        if check:
            try:
                if rhs is None:
                    rhs = tilting_combo(ctx, target)
                prod = tensor_product(simple_character(ctx, lw), simple_character(ctx, rw))
                ok = decompose_weyl(prod, weyl=weyl) == rhs
                checked = True
            except BudgetExceeded:
                pass
        certs.append(FactorizationCertificate(target, a, b, lw, rw, subset, checked, ok))
    return certs


# -- Supplied data ---------------------------------------------------------------

def verify_supplied_factorization(ctx: PrimeContext, target, left_combo: WeylCombo,
                                  right_combo: WeylCombo, tilt_combo: WeylCombo) -> VerificationReport:
    """Check realize(left) x realize(right) = realize(tilt) for externally supplied characters."""
    datum = ctx.datum
    target = require_dominant(datum, target, "target")
    for name, c in (("left", left_combo), ("right", right_combo), ("tilt", tilt_combo)):
        if c.datum != datum:
            raise HypothesisError(f"{name} combo is for {c.datum.name}, expected {datum.name}")
    if not tilt_combo.is_nonnegative():
        raise HypothesisError(f"tilt combo has negative coefficients: {tilt_combo}")
    top = tilt_combo.top()
    if top is None or top != (target, 1):
        raise HypothesisError(f"tilt combo top term is {top}, expected chi{target} with coefficient 1")
    report = VerificationReport(
        "supplied_factorization",
        _inputs(ctx, target=target, left=combo_to_json(left_combo), right=combo_to_json(right_combo),
                tilt=combo_to_json(tilt_combo)),
        ctx.donkin_assumed)
    weyl = _weyl_cache()
    prod = tensor_product(realize(left_combo, weyl), realize(right_combo, weyl))
    lhs = decompose_weyl(prod, weyl=weyl)
    report.witnesses["lhs"] = lhs
    report.witnesses["rhs"] = tilt_combo
    report.witnesses["dimensions"] = {"lhs": dimension(prod), "rhs": dimension(realize(tilt_combo, weyl))}
    if prod != realize(tilt_combo, weyl):
        report.failures.append(f"character identity: {lhs} != {tilt_combo}")
    return report
