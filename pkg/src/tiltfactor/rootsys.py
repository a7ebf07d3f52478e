"""Indecomposable root data of types A-G and Weyl group combinatorics.

Weights are plain tuples of integers in the fundamental-weight basis, so
``(alpha_i^vee, lam) == lam[i]``.  Simple roots use Bourbaki numbering.
The Cartan matrix follows ``cartan[i][j] = <alpha_i^vee, alpha_j>``, hence
the fundamental coordinates of ``alpha_j`` form column ``j``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Optional, Sequence, Tuple, Union

from tiltfactor.config import limits

Weight = Tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


class RootSystemError(ValueError):
    """Invalid root-system input (bad type, rank, index or non-dominant weight)."""


class BudgetExceeded(RuntimeError):
    """A computation would exceed the configured size budget."""

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


class _SingularType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Singular"

    def __bool__(self) -> bool:
        return False


#: Returned by :func:`signed_dot_reflect` when ``nu + rho`` lies on a wall.
Singular = _SingularType()


def cartan_matrix(type_letter: str, rank: int) -> list[list[int]]:
    """Return the Bourbaki-numbered Cartan matrix of an indecomposable type."""
    t = type_letter.upper() if isinstance(type_letter, str) else type_letter
    if t in _MIN_RANK:
        if not isinstance(rank, int) or rank < _MIN_RANK[t]:
            raise RootSystemError(
                f"type {t} requires rank >= {_MIN_RANK[t]}, got {rank!r}")
    elif t in _EXCEPTIONAL_RANKS:
        if rank not in _EXCEPTIONAL_RANKS[t]:
            allowed = ", ".join(str(r) for r in _EXCEPTIONAL_RANKS[t])
            raise RootSystemError(f"type {t} requires rank in {{{allowed}}}, got {rank!r}")
    else:
        raise RootSystemError(f"unknown root system type {type_letter!r}; expected one of A-G")

    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if t in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if t == "B":
            link(n - 2, n - 1, -1, -2)
        elif t == "C":
            link(n - 2, n - 1, -2, -1)
    elif t == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif t == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif t == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif t == "G":
        link(0, 1, -3, -1)
    return a


def _weyl_order_formula(t: str, n: int) -> int:
    if t == "A":
        return factorial(n + 1)
    if t in "BC":
        return 2 ** n * factorial(n)
    if t == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(t, n)]


def _symmetrizer(a: Sequence[Sequence[int]]) -> list[int]:
    """Positive integers d with d_i a_ij = d_j a_ji, short roots having d = 1."""
    n = len(a)
    d: list[Optional[Fraction]] = [None] * n
    d[0] = Fraction(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j != i and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                queue.append(j)
    smallest = min(d)
    scaled = [x / smallest for x in d]
    assert all(x.denominator == 1 for x in scaled)
    return [int(x) for x in scaled]


def _positive_roots(a: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, via root strings."""
    n = len(a)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # q = how far the alpha_i string extends downward from beta
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                pairing = sum(a[i][j] * beta[j] for j in range(n))
                if q - pairing >= 1:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


def _exponent_order(root_heights: Sequence[int]) -> int:
    """|W| from the heights of the positive roots.

    The partition dual to the height distribution gives the exponents, and
    |W| is the product of (exponent + 1).  Valid for reducible systems too.
    """
    if not root_heights:
        return 1
    top = max(root_heights)
    counts = [sum(1 for h in root_heights if h == k) for k in range(1, top + 1)]
    # counts[k-1] = number of exponents >= k
    exps = []
    for k in range(1, top + 1):
        above = counts[k] if k < top else 0
        exps.extend([k] * (counts[k - 1] - above))
    return prod(m + 1 for m in exps)


@dataclass(frozen=True, eq=False)
class RootDatum:
    type_letter: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    positive_coroots: tuple[tuple[int, ...], ...]
    rho: Weight
    coxeter_number: int
    highest_short_root: tuple[int, ...]
    highest_short_root_coroot: tuple[int, ...]
    weyl_order: int
    symmetrizer: tuple[int, ...]
    # integer Gram matrix of fundamental weights, scaled by `form_scale`
    form: tuple[tuple[int, ...], ...] = field(repr=False)
    form_scale: int = field(repr=False)
    _root_fund: tuple[tuple[int, ...], ...] = field(repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootDatum):
            return NotImplemented
        return (self.type_letter, self.rank) == (other.type_letter, other.rank)

    def __hash__(self) -> int:
        return hash((self.type_letter, self.rank))

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def root_fundamental(self, k: int) -> Weight:
        """Fundamental coordinates of the ``k``-th positive root."""
        return self._root_fund[k]

    def simple_root(self, i: int) -> Weight:
        return tuple(self.cartan[j][i] for j in range(self.rank))

    def fundamental_weight(self, i: int) -> Weight:
        """epsilon_i with 1-based Bourbaki index ``i``."""
        if not 1 <= i <= self.rank:
            raise RootSystemError(f"fundamental weight index {i} outside 1..{self.rank}")
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def zero(self) -> Weight:
        return (0,) * self.rank

    def inner(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Scaled W-invariant form: ``form_scale * (x, y)``."""
        g = self.form
        n = self.rank
        return sum(x[i] * g[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j])

    def height(self, weight: Sequence[int]) -> Fraction:
        """Sum of simple-root coordinates (rational for non-root-lattice weights)."""
        return Fraction(sum(c * w for c, w in zip(self._height_row, weight)), self._det)

    @property
    def _det(self) -> int:
        return _cartan_inverse(self.cartan)[1]

    @property
    def _height_row(self) -> tuple[int, ...]:
        adj, _ = _cartan_inverse(self.cartan)
        return tuple(sum(adj[i][j] for i in range(self.rank)) for j in range(self.rank))

    def stabilizer_order(self, weight: Sequence[int]) -> int:
        """Order of the parabolic subgroup generated by s_i with weight[i] == 0."""
        return _parabolic_order(self.cartan, tuple(i for i, c in enumerate(weight) if c == 0))

    def orbit_size(self, weight: Sequence[int]) -> int:
        """|W . weight| for a dominant weight, by the stabilizer formula."""
        return self.weyl_order // self.stabilizer_order(weight)


def _cartan_inverse(cartan) -> tuple[tuple[tuple[int, ...], ...], int]:
    return _cartan_inverse_cached(tuple(tuple(r) for r in cartan))


@lru_cache(maxsize=None)
def _cartan_inverse_cached(cartan):
    """(adjugate-like integer matrix M, denominator D) with A^{-1} = M / D."""
    n = len(cartan)
    m = [[Fraction(cartan[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    inv = [row[n:] for row in m]
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    return tuple(tuple(int(x * den) for x in row) for row in inv), den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def _parabolic_order(cartan, subset: tuple[int, ...]) -> int:
    if not subset:
        return 1
    sub = [[cartan[i][j] for j in subset] for i in subset]
    return _exponent_order([sum(r) for r in _positive_roots(sub)])


@lru_cache(maxsize=None)
def build_root_datum(type_letter: str, rank: int) -> RootDatum:
    """Construct the root datum of the indecomposable type ``type_letter``/``rank``."""
    a = cartan_matrix(type_letter, rank)
    t = type_letter.upper()
    n = rank
    d = _symmetrizer(a)
    pos = _positive_roots(a)

    coroots = []
    lengths = []
    for beta in pos:
        # (beta, beta)/2 in units where (alpha_i, alpha_i)/2 = d_i
        norm = Fraction(sum(beta[i] * beta[j] * d[i] * a[i][j] for i in range(n) for j in range(n)), 2)
        lengths.append(norm)
        cv = [Fraction(beta[j] * d[j]) / norm for j in range(n)]
        assert all(c.denominator == 1 for c in cv)
        coroots.append(tuple(int(c) for c in cv))

    root_fund = tuple(tuple(sum(a[i][j] * beta[j] for j in range(n)) for i in range(n)) for beta in pos)

    shortest = min(lengths)
    short_idx = [k for k, ln in enumerate(lengths) if ln == shortest]
    hs = max(short_idx, key=lambda k: (sum(pos[k]), pos[k]))
    highest = pos[-1]
    assert all(sum(highest) >= sum(b) for b in pos)

    # (eps_i, eps_k) = (A^{-1})_{ki} d_k
    adj, den = _cartan_inverse(a)
    gram = [[Fraction(adj[k][i] * d[k], den) for k in range(n)] for i in range(n)]
    scale = 1
    for row in gram:
        for x in row:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
    form = tuple(tuple(int(x * scale) for x in row) for row in gram)

    datum = RootDatum(
        type_letter=t,
        rank=n,
        cartan=tuple(tuple(r) for r in a),
        positive_roots=tuple(pos),
        positive_coroots=tuple(coroots),
        rho=(1,) * n,
        coxeter_number=sum(highest) + 1,
        highest_short_root=pos[hs],
        highest_short_root_coroot=coroots[hs],
        weyl_order=_weyl_order_formula(t, n),
        symmetrizer=tuple(d),
        form=form,
        form_scale=scale,
        _root_fund=root_fund,
    )
    return datum


def _check_weight(datum: RootDatum, weight: Sequence[int]) -> Weight:
    w = tuple(int(c) for c in weight)
    if len(w) != datum.rank:
        raise RootSystemError(f"weight {tuple(weight)} has length {len(w)}, expected rank {datum.rank}")
    return w


def is_dominant(weight: Sequence[int]) -> bool:
    return all(c >= 0 for c in weight)


def require_dominant(datum: RootDatum, weight: Sequence[int], what: str = "weight") -> Weight:
    w = _check_weight(datum, weight)
    if not is_dominant(w):
        raise RootSystemError(f"{what} {w} is not dominant")
    return w


def pair(datum: RootDatum, coroot: Sequence[int], weight: Sequence[int]) -> int:
    """(coroot, weight) for a coroot given in simple-coroot coordinates."""
    return sum(c * w for c, w in zip(coroot, weight))


def simple_reflection(datum: RootDatum, i: int, weight: Sequence[int]) -> Weight:
    """s_i(weight) with 1-based index ``i``."""
    if not 1 <= i <= datum.rank:
        raise RootSystemError(f"reflection index {i} outside 1..{datum.rank}")
    w = _check_weight(datum, weight)
    k = w[i - 1]
    if k == 0:
        return w
    col = i - 1
    return tuple(w[j] - k * datum.cartan[j][col] for j in range(datum.rank))


def _reflect0(cartan, w: list[int], i: int) -> None:
    k = w[i]
    for j in range(len(w)):
        w[j] -= k * cartan[j][i]


def dominant_representative(datum: RootDatum, weight: Sequence[int]) -> Weight:
    """The dominant weight in the W-orbit of ``weight`` (greedy ascent)."""
    w = list(_check_weight(datum, weight))
    cartan = datum.cartan
    while True:
        for i, c in enumerate(w):
            if c < 0:
                _reflect0(cartan, w, i)
                break
        else:
            return tuple(w)


def _dominant_with_sign(cartan, w: list[int]) -> int:
    sign = 1
    while True:
        for i, c in enumerate(w):
            if c < 0:
                _reflect0(cartan, w, i)
                sign = -sign
                break
        else:
            return sign


def signed_dot_reflect(datum: RootDatum, weight: Sequence[int]) -> Union[_SingularType, tuple[int, Weight]]:
    """Normalize chi(nu) for arbitrary nu through the rho-shifted action.

    Returns ``Singular`` when nu + rho lies on a wall, else ``(det w, w.nu)``
    with ``w(nu + rho)`` dominant.
    """
    nu = _check_weight(datum, weight)
    w = [c + 1 for c in nu]
    sign = _dominant_with_sign(datum.cartan, w)
    if any(c == 0 for c in w):
        return Singular
    return sign, tuple(c - 1 for c in w)


def orbit(datum: RootDatum, weight: Sequence[int], budget: Optional[int] = None) -> list[Weight]:
    """All elements of the W-orbit of a dominant weight, breadth-first from it."""
    lam = require_dominant(datum, weight)
    size = datum.orbit_size(lam)
    cap = limits().orbit if budget is None else budget
    if size > cap:
        raise BudgetExceeded(
            f"orbit of {lam} in {datum.name} has {size} elements, above budget {cap}", size)
    seen = {lam}
    out = [lam]
    queue = deque([lam])
    cartan = datum.cartan
    n = datum.rank
    while queue:
        w = queue.popleft()
        for i in range(n):
            k = w[i]
            if k > 0:
                # descending reflections alone reach the whole orbit
                nw = tuple(w[j] - k * cartan[j][i] for j in range(n))
                if nw not in seen:
                    seen.add(nw)
                    out.append(nw)
                    queue.append(nw)
    assert len(out) == size
    return out


def weyl_dimension(datum: RootDatum, weight: Sequence[int]) -> int:
    """Weyl's dimension formula, exact."""
    lam = require_dominant(datum, weight)
    num = 1
    den = 1
    for cv in datum.positive_coroots:
        r = sum(cv)
        num *= r + pair(datum, cv, lam)
        den *= r
    assert num % den == 0
    return num // den


def minus_w0(datum: RootDatum, weight: Sequence[int]) -> Weight:
    """-w0(weight) for dominant ``weight``."""
    lam = require_dominant(datum, weight)
    return dominant_representative(datum, tuple(-c for c in lam))


def dominates(datum: RootDatum, upper: Sequence[int], lower: Sequence[int]) -> bool:
    """True when ``upper - lower`` is a nonnegative integer combination of simple roots."""
    diff = [u - l for u, l in zip(upper, lower)]
    adj, den = _cartan_inverse(datum.cartan)
    for i in range(datum.rank):
        s = sum(adj[i][j] * diff[j] for j in range(datum.rank))
        if s < 0 or s % den:
            return False
    return True
