"""Characteristic-p layer: digits, minuscule weights, simple and tilting characters.

Simple characters are only available where they are forced: digits that are
zero, minuscule or the Steinberg weight (p-1)rho, plus every restricted
digit in type A1.  Tilting characters are available for highest weights of
the form p^r mu + (p^r - 1) rho + lam with lam r-minuscule and mu covered
recursively, plus every weight in type A1 through the rank-one recursion.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from tiltfactor.charring import (
    Character,
    WeylCombo,
    combo_times_character,
    decompose_weyl,
    frobenius_twist,
    realize,
    tensor_all,
    tensor_product,
    weyl_character,
)
from tiltfactor.rootsys import RootDatum, RootSystemError, Weight, build_root_datum, require_dominant

# Table of minuscule fundamental weights, Bourbaki indices (1-based).
_MINUSCULE_INDICES = {
    "B": lambda n: [n],
    "C": lambda n: [1],
    "D": lambda n: [1, n - 1, n],
    "E": lambda n: {6: [1, 6], 7: [7], 8: []}[n],
    "F": lambda n: [],
    "G": lambda n: [],
    "A": lambda n: list(range(1, n + 1)),
}


class OracleCoverageError(ValueError):
    """The requested character lies outside what the oracles can produce."""


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeContext:
    datum: RootDatum
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be a prime, got {self.p!r}")

    @property
    def two_h_minus_2(self) -> int:
        return 2 * self.datum.coxeter_number - 2

    @property
    def donkin_assumed(self) -> bool:
        return self.p < self.two_h_minus_2


def is_restricted(ctx: PrimeContext, r: int, weight) -> bool:
    """Membership in X_r(T): every coordinate below p**r."""
    lam = require_dominant(ctx.datum, weight)
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return all(c < ctx.p ** r for c in lam)


def p_expand(ctx: PrimeContext, weight) -> list[Weight]:
    """Little-endian base-p digits; the zero weight has the single digit 0."""
    lam = list(require_dominant(ctx.datum, weight))
    p = ctx.p
    digits = []
    while True:
        digits.append(tuple(c % p for c in lam))
        lam = [c // p for c in lam]
        if not any(lam):
            return digits


def p_contract(ctx: PrimeContext, digits: Sequence[Sequence[int]]) -> Weight:
    n = ctx.datum.rank
    out = [0] * n
    for j, d in enumerate(digits):
        for i in range(n):
            out[i] += d[i] * ctx.p ** j
    return tuple(out)


def minuscule_weights(datum: RootDatum) -> list[Weight]:
    """Nonzero minuscule weights; the zero weight is always minuscule as well."""
    return [datum.fundamental_weight(i) for i in _MINUSCULE_INDICES[datum.type_letter](datum.rank)]


def is_minuscule(datum: RootDatum, weight) -> bool:
    w = tuple(weight)
    return not any(w) or w in minuscule_weights(datum)


def is_r_minuscule(ctx: PrimeContext, r: int, weight) -> tuple[bool, list[Weight]]:
    """Whether weight = sum_{j<r} p^j lam^j with each lam^j minuscule or zero.

    The witness is the digit list, padded with zero digits to length r on
    success.
    """
    lam = require_dominant(ctx.datum, weight)
    zero = ctx.datum.zero()
    if not any(lam):
        return True, [zero] * r
    digits = p_expand(ctx, lam)
    ok = len(digits) <= r and all(is_minuscule(ctx.datum, d) for d in digits)
    if ok:
        digits = digits + [zero] * (r - len(digits))
    return ok, digits


def steinberg_weight(ctx: PrimeContext, r: int) -> Weight:
    """(p^r - 1) rho.  r = 0 gives the zero weight (trivial St_0)."""
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    return tuple((ctx.p ** r - 1) * c for c in ctx.datum.rho)


def _digit_is_covered(ctx: PrimeContext, digit: Weight) -> bool:
    if ctx.datum.type_letter == "A" and ctx.datum.rank == 1:
        return True
    return is_minuscule(ctx.datum, digit) or digit == steinberg_weight(ctx, 1)


def simple_character(ctx: PrimeContext, weight) -> Character:
    """ch L(weight) by Steinberg's tensor product theorem over oracle digits."""
    datum = ctx.datum
    lam = require_dominant(datum, weight)
    factors = []
    for j, digit in enumerate(p_expand(ctx, lam)):
        if not _digit_is_covered(ctx, digit):
            raise OracleCoverageError(
                f"L{lam}: digit {j} = {digit} is neither zero, minuscule, nor (p-1)rho; "
                f"general simple characters are not available")
        if any(digit):
            factors.append(frobenius_twist(weyl_character(datum, digit), ctx.p ** j))
    if not factors:
        return Character.trivial(datum)
    return tensor_all(factors)


# -- tilting characters --------------------------------------------------------

@dataclass(frozen=True)
class TiltingForm:
    """Normal form p^r mu + (p^r - 1) rho + lam of a covered highest weight.

    ``r == 0`` marks a base case (zero or minuscule weight, T = Delta).
    """
    r: int
    mu: Weight
    lam: Weight
    lam_digits: tuple[Weight, ...]
    mu_form: Optional["TiltingForm"]


def tilting_form(ctx: PrimeContext, weight) -> Optional[TiltingForm]:
    """Greedy normal form, largest r first; None when no decomposition exists."""
    datum = ctx.datum
    hw = require_dominant(datum, weight)
    return _tilting_form(ctx, hw)


def _tilting_form(ctx: PrimeContext, hw: Weight) -> Optional[TiltingForm]:
    datum = ctx.datum
    zero = datum.zero()
    if is_minuscule(datum, hw):
        return TiltingForm(0, zero, hw, (hw,), None)
    p = ctx.p
    r = 0
    while p ** (r + 1) - 1 <= min(hw):
        r += 1
    for rr in range(r, 0, -1):
        q = p ** rr
        rest = [c - (q - 1) for c in hw]
        lam = tuple(c % q for c in rest)
        mu = tuple(c // q for c in rest)
        ok, digits = is_r_minuscule(ctx, rr, lam)
        if not ok:
            continue
        if not any(mu):
            return TiltingForm(rr, mu, lam, tuple(digits), None)
        sub = _tilting_form(ctx, mu)
        if sub is not None:
            return TiltingForm(rr, mu, lam, tuple(digits), sub)
    return None


def _form_combo(ctx: PrimeContext, form: TiltingForm) -> WeylCombo:
    """ch T as a Weyl combination, from the Lemma base case and twisted factors."""
    datum = ctx.datum
    if form.r == 0:
        return WeylCombo(datum, {form.lam: 1})
    p = ctx.p
    st = steinberg_weight(ctx, 1)
    # T((p-1)rho + lam^0) via Donkin's formula: chi((p-1)rho) * s(lam^0)
    combo = WeylCombo(datum, {st: 1})
    combo = combo_times_character(combo, Character(datum, {form.lam_digits[0]: 1}))
    # T((p^r-1)rho + lam) = T((p-1)rho + lam^0) x T((p^{r-1}-1)rho + lam')^[1]
    for j in range(1, form.r):
        layer = realize(combo_times_character(WeylCombo(datum, {st: 1}),
                                              Character(datum, {form.lam_digits[j]: 1})))
        combo = combo_times_character(combo, frobenius_twist(layer, p ** j))
    if form.mu_form is not None:
        mu_char = realize(_form_combo(ctx, form.mu_form))
        combo = combo_times_character(combo, frobenius_twist(mu_char, p ** form.r))
    return combo


def tilting_combo(ctx: PrimeContext, weight, allow_a1_oracle: bool = True) -> WeylCombo:
    """ch T(weight) as a Weyl combination."""
    datum = ctx.datum
    hw = require_dominant(datum, weight)
    form = _tilting_form(ctx, hw)
    if form is not None:
        return _form_combo(ctx, form)
    if allow_a1_oracle and datum.type_letter == "A" and datum.rank == 1:
        return decompose_weyl(a1_tilting_oracle(ctx, hw[0]))
    raise OracleCoverageError(
        f"T{hw} for {datum.name}, p={ctx.p}: no decomposition p^r mu + (p^r-1)rho + lam "
        f"with lam r-minuscule and mu covered")


def tilting_character(ctx: PrimeContext, weight, allow_a1_oracle: bool = True) -> Character:
    """ch T(weight).  Reports read ``ctx.donkin_assumed`` for the p < 2h-2 caveat."""
    return realize(tilting_combo(ctx, weight, allow_a1_oracle))


def tilting_route(ctx: PrimeContext, weight) -> str:
    """'proposition' when the normal form applies, 'a1-oracle' or 'uncovered' otherwise."""
    hw = require_dominant(ctx.datum, weight)
    if _tilting_form(ctx, hw) is not None:
        return "proposition"
    if ctx.datum.type_letter == "A" and ctx.datum.rank == 1:
        return "a1-oracle"
    return "uncovered"


def a1_tilting_oracle(ctx: PrimeContext | int, m: int) -> Character:
    """ch T(m) for SL2 by the rank-one recursion (independent of the normal form).

    ``ctx`` may also be a bare prime, meaning type A1.
    """
    if isinstance(ctx, int):
        ctx = PrimeContext(build_root_datum("A", 1), ctx)
    datum = ctx.datum
    if (datum.type_letter, datum.rank) != ("A", 1):
        raise RootSystemError(f"a1_tilting_oracle needs type A1, got {datum.name}")
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"m must be a nonnegative integer, got {m!r}")
    return Character(datum, _a1_oracle_entries(ctx.p, m))


def _chi_a1(m: int) -> dict[tuple[int], int]:
    return {(k,): 1 for k in range(m % 2, m + 1, 2)}


def _add(acc: dict, entries: dict) -> dict:
    out = dict(acc)
    for k, v in entries.items():
        out[k] = out.get(k, 0) + v
    return out


@lru_cache(maxsize=None)
def _a1_oracle_cached(p: int, m: int) -> tuple:
    if m <= p - 1:
        ent = _chi_a1(m)
    elif m <= 2 * p - 2:
        ent = _chi_a1(m)
        if m != p - 1:
            ent = _add(ent, _chi_a1(2 * p - 2 - m))
    else:
        tau = p - 1 + (m - (p - 1)) % p
        mprime = (m - tau) // p
        # rank one: convolve weight strings directly
        left = _expand_a1(dict(_a1_oracle_cached(p, tau)))
        right = {(k * p,): v for (k,), v in _expand_a1(dict(_a1_oracle_cached(p, mprime))).items()}
        prod: dict = {}
        for (a,), x in left.items():
            for (b,), y in right.items():
                s = a + b
                if s >= 0:
                    prod[(s,)] = prod.get((s,), 0) + x * y
        ent = prod
    return tuple(sorted(ent.items()))


def _expand_a1(entries: dict) -> dict:
    out = {}
    for (k,), v in entries.items():
        out[(k,)] = v
        if k:
            out[(-k,)] = v
    return out


def _a1_oracle_entries(p: int, m: int) -> dict:
    return dict(_a1_oracle_cached(p, m))
