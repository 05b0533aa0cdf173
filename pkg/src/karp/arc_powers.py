"""When is one boundary arc the c-th power of another?

``power_sources(target)`` enumerates the pairs (source, c) with
``target = source**c`` pointwise; ``power_targets(source)`` is the dual
direction.  ``verify_power_numeric`` checks a claimed relation by
sampling the source arc and comparing powered points against the
boundary radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .boundary import rho_at, sample_arc
from .farey import ArcId


def _source_pairs(target: ArcId) -> list[tuple[ArcId, int]]:
    """Exact enumeration of (source, c) for one target arc.

    For target parameters (q, s, d = floor(n/q)):

    * for every divisor c >= 2 of d with gcd(c, s) = 1 and c*q < s the
      source is the arc {c*q, s};
    * if gcd(d, s) = 1 and d >= 2 the source is the arc {s, q*d} with
      c = d.

    The two items can coincide; duplicates are removed.
    """
    n, q, s = target.n, target.q, target.s
    d = n // q
    pairs = []
    for c in range(2, d + 1):
        if d % c == 0 and math.gcd(c, s) == 1 and c * q < s:
            pairs.append((ArcId(n, c * q, s), c))
    if d >= 2 and math.gcd(d, s) == 1:
        pair = (ArcId(n, s, q * d), d)
        if pair not in pairs:
            pairs.append(pair)
    return sorted(pairs, key=lambda t: (t[0], t[1]))


@dataclass(frozen=True)
class PowerRelation:
    """``target = source**c`` as sets of boundary points.  c >= 2.

    The arithmetic conditions of the power theorem are checked at
    construction.
    """

    target: ArcId
    source: ArcId
    c: int

    def __post_init__(self):
        if self.c < 2:
            raise ValueError("power must be at least 2")
        if self.target.n != self.source.n:
            raise ValueError("arcs must share the order")
        if (self.source, self.c) not in _source_pairs(self.target):
            raise ValueError(f"{self.target} is not {self.source}**{self.c}")


def power_sources(target: ArcId) -> list[PowerRelation]:
    """All relations with the given target arc."""
    return [PowerRelation(target, src, c) for src, c in _source_pairs(target)]


def power_targets(source: ArcId) -> list[PowerRelation]:
    """All relations with the given source arc.

    With source parameters (qh, sh, dh = floor(n/qh)):

    * for every divisor c >= 2 of qh with n - qh*dh < qh/c the target is
      the arc {qh/c, sh};
    * for every divisor c >= 2 of sh with n - qh < sh/c the target is
      the arc {sh/c, qh}.
    """
    n, qh, sh = source.n, source.q, source.s
    dh = n // qh
    out = []
    for c in range(2, max(qh, sh) + 1):
        tgt = None
        if qh % c == 0 and (n - qh * dh) * c < qh:
            tgt = (qh // c, sh)
        elif sh % c == 0 and (n - qh) * c < sh:
            tgt = (sh // c, qh)
        if tgt is None:
            continue
        try:
            target = ArcId(n, *tgt)
        except ValueError:
            continue  # the powered endpoints do not bound an arc of order n
        out.append(PowerRelation(target, source, c))
    return sorted(out, key=lambda r: (r.target, r.c))


def power_deviation(source: ArcId, c: int, samples: int = 25) -> float:
    """Max distance between powered source points and the boundary.

    Samples the source arc, raises each point to the c-th power and
    compares its modulus with the boundary radius at its argument.  Zero
    (to rounding) iff the powered arc lies on the boundary.  Works for
    any (source, c), so it can also expose a *false* claimed relation.
    """
    if c < 1:
        raise ValueError("power must be a positive integer")
    n = source.n
    worst = 0.0
    for pt in sample_arc(source, samples):
        powered = pt.rho**c
        if pt.theta_pi is not None:
            theta = (pt.theta_pi * c) % 2  # still an exact multiple of pi
        else:
            theta = math.fmod(pt.theta * c, 2.0 * math.pi)
        ref = rho_at(n, theta)
        worst = max(worst, abs(ref.rho - powered))
    return worst


def verify_power_numeric(rel: PowerRelation, samples: int = 25) -> float:
    """Numeric witness for a validated power relation."""
    return power_deviation(rel.source, rel.c, samples)
