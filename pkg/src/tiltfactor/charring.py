"""Formal characters stored on dominant weights.

A :class:`Character` keeps one multiplicity per dominant weight; the
weight-multiplicity function on all of X(T) is its W-invariant extension.
A :class:`WeylCombo` is an integer combination of Weyl characters chi(lam)
and may carry negative coefficients.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional

from tiltfactor import kernels
from tiltfactor.config import limits
from tiltfactor.rootsys import (
    BudgetExceeded,
    RootDatum,
    RootSystemError,
    Singular,
    Weight,
    dominant_representative,
    orbit,
    require_dominant,
    signed_dot_reflect,
)


class CharacterError(ValueError):
    pass


def _clean(entries: Mapping[Weight, int]) -> dict[Weight, int]:
    return {tuple(k): int(v) for k, v in entries.items() if v}


def canonical_order(datum: RootDatum, weights: Iterable[Weight]) -> list[Weight]:
    """Descending (height, coordinates); refines the dominance order."""
    return sorted(weights, key=lambda w: (datum.height(w), w), reverse=True)


@dataclass(frozen=True)
class Character:
    datum: RootDatum
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = _clean(self.entries)
        for w, m in clean.items():
            if len(w) != self.datum.rank or min(w) < 0:
                raise CharacterError(f"character key {w} is not a dominant weight of {self.datum.name}")
            if m < 0:
                raise CharacterError(f"negative multiplicity {m} at {w}")
        object.__setattr__(self, "entries", clean)

    @classmethod
    def trivial(cls, datum: RootDatum) -> "Character":
        return cls(datum, {datum.zero(): 1})

    def mult(self, weight) -> int:
        """Multiplicity of an arbitrary (not necessarily dominant) weight."""
        return self.entries.get(dominant_representative(self.datum, weight), 0)

    def items(self):
        return [(w, self.entries[w]) for w in canonical_order(self.datum, self.entries)]

    def __mul__(self, other: "Character") -> "Character":
        return tensor_product(self, other)


@dataclass(frozen=True)
class WeylCombo:
    datum: RootDatum
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = _clean(self.terms)
        for w in clean:
            if len(w) != self.datum.rank or min(w) < 0:
                raise CharacterError(f"combo key {w} is not a dominant weight of {self.datum.name}")
        object.__setattr__(self, "terms", clean)

    def items(self):
        return [(w, self.terms[w]) for w in canonical_order(self.datum, self.terms)]

    def top(self) -> Optional[tuple[Weight, int]]:
        its = self.items()
        return its[0] if its else None

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def __add__(self, other: "WeylCombo") -> "WeylCombo":
        _same_datum(self.datum, other.datum)
        out = defaultdict(int, self.terms)
        for w, c in other.terms.items():
            out[w] += c
        return WeylCombo(self.datum, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            arg = ",".join(map(str, w))
            parts.append(f"chi({arg})" if c == 1 else f"{c}*chi({arg})")
        return " + ".join(parts).replace("+ -", "- ")


def _same_datum(a: RootDatum, b: RootDatum) -> None:
    if a != b:
        raise CharacterError(f"root datum mismatch: {a.name} vs {b.name}")


def _dominant_weights_below(datum: RootDatum, lam: Weight, cap: int) -> set[Weight]:
    # dominant weights <= lam are connected to lam by steps of positive roots
    found = {lam}
    stack = [lam]
    roots = [datum.root_fundamental(k) for k in range(datum.num_positive_roots)]
    while stack:
        mu = stack.pop()
        for a in roots:
            nu = tuple(x - y for x, y in zip(mu, a))
            if min(nu) >= 0 and nu not in found:
                found.add(nu)
                stack.append(nu)
                if len(found) > cap:
                    raise BudgetExceeded(
                        f"weyl_character({lam}) in {datum.name}: more than {cap} dominant weights", len(found))
    return found


def weyl_character(datum: RootDatum, weight) -> Character:
    """Character of the Weyl module of highest weight ``weight`` (Freudenthal)."""
    lam = require_dominant(datum, weight)
    dom = _dominant_weights_below(datum, lam, limits().orbit)
    order = canonical_order(datum, dom)
    n = datum.rank
    roots = [datum.root_fundamental(k) for k in range(datum.num_positive_roots)]
    form = datum.form
    # g_a = form . a, so (x, a) = x . g_a in scaled units
    gvecs = [tuple(sum(form[i][j] * a[j] for j in range(n)) for i in range(n)) for a in roots]
    lr = tuple(c + 1 for c in lam)
    top_norm = datum.inner(lr, lr)

    mult: dict[Weight, int] = {lam: 1}
    for mu in order[1:]:
        mr = tuple(c + 1 for c in mu)
        denom = top_norm - datum.inner(mr, mr)
        total = 0
        for a, g in zip(roots, gvecs):
            nu = list(mu)
            while True:
                for i in range(n):
                    nu[i] += a[i]
                d = dominant_representative(datum, nu)
                m = mult.get(d)
                if m is None:
                    if d in dom:
                        raise AssertionError(f"Freudenthal order violated at {d}")
                    break
                if m:
                    total += m * sum(nu[i] * g[i] for i in range(n))
        total *= 2
        if total % denom:
            raise AssertionError(f"non-integral Freudenthal multiplicity at {mu}")
        mult[mu] = total // denom
    return Character(datum, mult)


def orbit_sum(datum: RootDatum, weight) -> Character:
    """The orbit-indicator character s(lam)."""
    lam = require_dominant(datum, weight)
    return Character(datum, {lam: 1})


def dimension(c: Character) -> int:
    return sum(m * c.datum.orbit_size(w) for w, m in c.entries.items())


def full_support(c: Character) -> list[tuple[Weight, int]]:
    """Every weight with nonzero multiplicity, orbits expanded."""
    out = []
    for w, m in c.items():
        for v in orbit(c.datum, w):
            out.append((v, m))
    return out


def tensor_product(c1: Character, c2: Character, backend: Optional[str] = None) -> Character:
    """Pointwise convolution of weight multiplicities."""
    _same_datum(c1.datum, c2.datum)
    d1, d2 = dimension(c1), dimension(c2)
    cost = d1 * d2
    cap = limits().tensor
    if cost > cap:
        raise BudgetExceeded(
            f"tensor product of dimensions {d1} x {d2}: estimated {cost} weight pairs, above budget {cap}", cost)
    small, big = (c1, c2) if d1 <= d2 else (c2, c1)
    out = kernels.convolve_dominant(c1.datum.rank, full_support(small), full_support(big), backend=backend)
    return Character(c1.datum, out)


def tensor_all(chars: Iterable[Character]) -> Character:
    chars = list(chars)
    if not chars:
        raise CharacterError("empty tensor product")
    acc = chars[0]
    for c in chars[1:]:
        acc = tensor_product(acc, c)
    return acc


def brauer_product(combo: WeylCombo, weight) -> WeylCombo:
    """chi(lam) * s(mu) = sum over nu in W.mu of chi(lam + nu), normalized."""
    datum = combo.datum
    mu = require_dominant(datum, weight)
    out: dict[Weight, int] = defaultdict(int)
    orb = orbit(datum, mu)
    for lam, coeff in combo.terms.items():
        for nu in orb:
            r = signed_dot_reflect(datum, tuple(x + y for x, y in zip(lam, nu)))
            if r is Singular:
                continue
            sign, w = r
            out[w] += sign * coeff
    return WeylCombo(datum, out)


def combo_times_character(combo: WeylCombo, c: Character) -> WeylCombo:
    """Brauer's formula against an arbitrary character, orbit by orbit."""
    _same_datum(combo.datum, c.datum)
    acc: dict[Weight, int] = defaultdict(int)
    for mu, m in c.entries.items():
        for w, k in brauer_product(combo, mu).terms.items():
            acc[w] += m * k
    return WeylCombo(combo.datum, acc)


WeylFn = Callable[[RootDatum, Weight], Character]


def decompose_weyl(c: Character, weyl: Optional[WeylFn] = None) -> WeylCombo:
    """Unitriangular elimination against Weyl characters."""
    weyl = weyl or weyl_character
    datum = c.datum
    remaining: dict[Weight, int] = dict(c.entries)
    terms: dict[Weight, int] = {}
    while remaining:
        top = canonical_order(datum, remaining)[0]
        coeff = remaining[top]
        terms[top] = coeff
        for w, m in weyl(datum, top).entries.items():
            v = remaining.get(w, 0) - coeff * m
            if v:
                remaining[w] = v
            else:
                remaining.pop(w, None)
    return WeylCombo(datum, terms)


def realize(combo: WeylCombo, weyl: Optional[WeylFn] = None) -> Character:
    """Sum of coeff * chi(lam); only nonnegative combos describe characters."""
    weyl = weyl or weyl_character
    if not combo.is_nonnegative():
        raise CharacterError(f"cannot realize a virtual combination with negative coefficients: {combo}")
    acc: dict[Weight, int] = defaultdict(int)
    for lam, coeff in combo.terms.items():
        for w, m in weyl(combo.datum, lam).entries.items():
            acc[w] += coeff * m
    return Character(combo.datum, acc)


def frobenius_twist(c: Character, q: int) -> Character:
    """Scale every weight by ``q`` (q = p**r for the r-th twist)."""
    if not isinstance(q, int) or q < 1:
        raise CharacterError(f"twist scale must be a positive integer, got {q!r}")
    return Character(c.datum, {tuple(q * x for x in w): m for w, m in c.entries.items()})


def combo_dimension(combo: WeylCombo) -> int:
    from tiltfactor.rootsys import weyl_dimension
    return sum(k * weyl_dimension(combo.datum, w) for w, k in combo.terms.items())


__all__ = [
    "Character", "WeylCombo", "CharacterError", "RootSystemError", "BudgetExceeded",
    "weyl_character", "orbit_sum", "tensor_product", "tensor_all", "brauer_product",
    "combo_times_character", "decompose_weyl", "realize", "frobenius_twist",
    "dimension", "full_support", "canonical_order", "combo_dimension",
]
