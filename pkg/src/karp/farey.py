"""Farey fractions, Farey pairs, arc labels and the star operation.

Everything here is exact: fractions are :class:`fractions.Fraction` and
Python integers never overflow, so no special big-integer handling is
required.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache


def mod_index(k: int, n: int) -> int:
    """One-indexed modulus: wrap ``k`` into ``{1, ..., n}``.

    ``mod_index(n, n) == n``, ``mod_index(n + 1, n) == 1`` and negative
    ``k`` wraps the mathematical way (``mod_index(0, 3) == 3``).
    """
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    return 1 + (k - 1) % n


def farey_sequence(n: int) -> list[Fraction]:
    """Ascending Farey fractions of order ``n`` in ``[0, 1)``.

    Uses the classic next-term recurrence: if ``a/b < c/d`` are
    consecutive, the successor of ``c/d`` is ``(kc - a)/(kd - b)`` with
    ``k = (n + b) // d``.
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    seq = [Fraction(0, 1)]
    if n == 1:
        return seq
    a, b, c, d = 0, 1, 1, n
    while c < d:
        seq.append(Fraction(c, d))
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return seq


@lru_cache(maxsize=64)
def _farey_closed(n: int) -> tuple[Fraction, ...]:
    """Farey fractions of order ``n`` on the closed interval [0, 1]."""
    return tuple(farey_sequence(n)) + (Fraction(1, 1),)


def is_farey_pair(a: Fraction, b: Fraction, n: int) -> bool:
    """True iff ``a < b`` are adjacent in the Farey sequence of order ``n``.

    Adjacency is the unimodularity condition ``q*r - p*s == 1`` for
    ``a = p/q``, ``b = r/s`` together with ``q + s > n``.  The value
    ``1/1`` is admitted as a right endpoint (closed upper end of the
    sequence); everything else must lie in ``[0, 1)``.
    """
    if n < 1:
        raise ValueError("order must be a positive integer")
    a, b = Fraction(a), Fraction(b)
    p, q = a.numerator, a.denominator
    r, s = b.numerator, b.denominator
    if not (0 <= a < b <= 1):
        return False
    if q > n or s > n:
        return False
    if q + s <= n:
        return False
    return q * r - p * s == 1


class ArcType(Enum):
    TYPE_0 = "0"
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True, order=True)
class ArcId:
    """Unordered denominator pair {q, s} identifying one boundary arc.

    Normalised so that ``q < s``.  Requires ``s <= n``, ``gcd(q, s) == 1``
    and ``q + s > n``.
    """

    n: int
    q: int
    s: int

    def __post_init__(self):
        q, s = sorted((self.q, self.s))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "s", s)
        if not (1 <= q < s <= self.n):
            raise ValueError(f"need 1 <= q < s <= n, got q={q} s={s} n={self.n}")
        if math.gcd(q, s) != 1:
            raise ValueError(f"denominators must be coprime: q={q} s={s}")
        if q + s <= self.n:
            raise ValueError(f"need q + s > n: q={q} s={s} n={self.n}")

    def __str__(self):
        return f"K_{self.n}({self.q},{self.s})"


@dataclass(frozen=True)
class FareyPair:
    """Adjacent Farey fractions ``left < right`` of a given order."""

    left: Fraction
    right: Fraction
    order: int

    def __post_init__(self):
        p, q = self.left.numerator, self.left.denominator
        r, s = self.right.numerator, self.right.denominator
        if not (0 <= self.left < self.right <= 1):
            raise ValueError(f"need 0 <= left < right <= 1: {self.left}, {self.right}")
        if q > self.order or s > self.order:
            raise ValueError("denominators exceed the order")
        if q + s <= self.order:
            raise ValueError("denominator sum must exceed the order")
        if q * r - p * s != 1:
            raise ValueError(f"not unimodular: {self.left}, {self.right}")


def farey_pairs_for(arc: ArcId) -> tuple[FareyPair, FareyPair]:
    """The two Farey pairs with denominator set ``{q, s}``.

    Returns ``(primary, conjugate)`` where primary is ``(p/q, r/s)`` and
    conjugate is ``((s-r)/s, (q-p)/q)``.  ``r`` is the inverse of ``q``
    modulo ``s`` and ``p = (q*r - 1) / s``.
    """
    q, s, n = arc.q, arc.s, arc.n
    r = pow(q, -1, s)
    p = (q * r - 1) // s
    primary = FareyPair(Fraction(p, q), Fraction(r, s), n)
    conjugate = FareyPair(Fraction(s - r, s), Fraction(q - p, q), n)
    return primary, conjugate


@dataclass(frozen=True)
class ArcParams:
    """Derived quantities of one arc."""

    arc: ArcId
    p: int
    r: int
    d: int
    delta: int
    d1: int
    s1: int
    arc_type: ArcType
    excess: int  # z for type II, y for type III, 0 otherwise

    @property
    def n(self) -> int:
        return self.arc.n

    @property
    def q(self) -> int:
        return self.arc.q

    @property
    def s(self) -> int:
        return self.arc.s


def arc_params(arc: ArcId) -> ArcParams:
    """Compute (p, r, d, delta, d1, s1) and classify the arc.

    ``d = floor(n/q)``, ``delta = gcd(d, s)``, ``s = s1*delta``,
    ``d = d1*delta``.  Types:

    * ``0``   -- q = 1, s = n (then d = n)
    * ``I``   -- s = n and d = 1
    * ``II``  -- n = q*d with d > 1; excess z = q*d - s in {1,...,q-1}
    * ``III`` -- s = n, d > 1, n != q*d; excess y = n - q*d in {1,...,q-1}

    Anything else has a reduced polynomial of degree below n and is
    reported as unsupported.
    """
    n, q, s = arc.n, arc.q, arc.s
    primary, _ = farey_pairs_for(arc)
    p, r = primary.left.numerator, primary.right.numerator
    d = n // q
    delta = math.gcd(d, s)
    d1 = d // delta
    s1 = s // delta
    if q == 1 and s == n:
        kind, excess = ArcType.TYPE_0, 0
    elif s == n and d == 1:
        kind, excess = ArcType.TYPE_I, 0
    elif n == q * d and d > 1 and s < n:
        kind, excess = ArcType.TYPE_II, q * d - s
    elif s == n and d > 1:
        kind, excess = ArcType.TYPE_III, n - q * d
    else:
        kind, excess = ArcType.UNSUPPORTED, 0
    return ArcParams(arc, p, r, d, delta, d1, s1, kind, excess)


@dataclass(frozen=True)
class StarResult:
    """Outcome of a defined star operation."""

    source: ArcId
    target: ArcId
    c: int
    a: int  # common integer part of the powered endpoint angles


def star(source: ArcId, c: int) -> StarResult | None:
    """Apply the c-th power to the endpoints of an arc.

    The powered endpoint fractions must share their integer parts
    pairwise and their fractional parts must form the two Farey pairs of
    some arc of the same order.  Returns ``None`` when that fails.
    """
    if c < 1:
        raise ValueError("power must be a positive integer")
    primary, conjugate = farey_pairs_for(source)
    x1, x2 = primary.left * c, primary.right * c
    y1, y2 = conjugate.left * c, conjugate.right * c
    a1, a2 = math.floor(x1), math.floor(x2)
    b1, b2 = math.floor(y1), math.floor(y2)
    if a1 != a2 or b1 != b2:
        return None
    f1, f2 = x1 - a1, x2 - a2
    g1, g2 = y1 - b1, y2 - b2
    try:
        target = ArcId(source.n, f1.denominator, f2.denominator)
    except ValueError:
        return None
    tp, tc = farey_pairs_for(target)
    want = {(tp.left, tp.right), (tc.left, tc.right)}
    if {(f1, f2), (g1, g2)} != want:
        return None
    return StarResult(source, target, c, a1)


@dataclass(frozen=True)
class EndpointMap:
    """How the endpoints of a powered arc land on the target arc.

    ``case`` is ``"divides_qhat"`` or ``"divides_shat"`` according to
    which source denominator the power divides.  In the first case the
    angle of a source point maps by ``theta -> (theta + 2*pi*a) / c``
    onto the primary interval of the target; in the second the conjugate
    angle maps the same way.
    """

    source: ArcId
    target: ArcId
    c: int
    a: int
    case: str


def endpoint_map(source: ArcId, c: int) -> EndpointMap:
    """Classify a defined star operation and verify its endpoint algebra."""
    res = star(source, c)
    if res is None:
        raise ValueError(f"star is not defined for {source} with c={c}")
    qhat, shat = source.q, source.s
    sp = arc_params(source)
    tp = arc_params(res.target)
    q, s, a = res.target.q, res.target.s, res.a
    if qhat % c == 0:
        case = "divides_qhat"
        ok = (
            shat == s
            and qhat == c * q
            and sp.p == tp.p + a * q
            and c * sp.r == tp.r + a * s
        )
    elif shat % c == 0:
        case = "divides_shat"
        ok = (
            qhat == s
            and shat == c * q
            and sp.p * c == s - tp.r + a * s
            and sp.r == q - tp.p + a * q
        )
    else:
        raise ValueError(
            f"star defined but c={c} divides neither denominator of {source}"
        )
    if not ok:
        raise ValueError(f"endpoint relations failed for {source} with c={c}")
    return EndpointMap(source, res.target, c, a, case)


def arcs_of_order(n: int) -> list[ArcId]:
    """All arcs of order ``n``, sorted."""
    fracs = _farey_closed(n)
    out = set()
    for left, right in zip(fracs, fracs[1:]):
        q, s = sorted((left.denominator, right.denominator))
        out.add(ArcId(n, q, s))
    return sorted(out)


def locate_turn(n: int, x: Fraction) -> tuple[ArcId, Fraction, Fraction]:
    """Arc containing the angle ``2*pi*x`` and its bounding fractions."""
    if not 0 <= x <= 1:
        raise ValueError("turn must lie in [0, 1]")
    fracs = _farey_closed(n)
    import bisect

    i = bisect.bisect_right(fracs, x)
    if i == len(fracs):
        i -= 1
    left, right = fracs[i - 1], fracs[i]
    q, s = sorted((left.denominator, right.denominator))
    return ArcId(n, q, s), left, right
