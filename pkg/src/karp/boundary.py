"""The spectral-radius boundary: implicit equation, solver, polynomials.

Angles may be passed either as plain floats (radians) or as
:class:`fractions.Fraction` values meaning exact multiples of pi, e.g.
``Fraction(29, 42)`` stands for ``29*pi/42``.  Exact input is what makes
endpoint detection reliable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .farey import ArcId, ArcParams, ArcType, arc_params, farey_pairs_for, locate_turn

#: bisection stops when the bracket is this narrow
_WIDTH_TOL = 1e-15
#: float angles this close (in turns) to a Farey fraction count as endpoints
_ENDPOINT_TOL = 1e-13


class ConvergenceError(RuntimeError):
    """The bracketing / bisection stage failed to isolate a root."""


ThetaLike = "float | Fraction"


def _theta_to_turn(theta) -> tuple[float, Fraction | None]:
    """Normalise an angle to (float radians, exact turn or None)."""
    if isinstance(theta, Fraction):
        return float(theta) * math.pi, theta / 2
    return float(theta), None


@dataclass(frozen=True)
class BoundaryPoint:
    """One point rho * exp(i*theta) on the boundary, with its parameters."""

    theta: float
    mu: float
    rho: float
    alpha: float
    arc: ArcId
    theta_pi: Fraction | None = None  # exact theta/pi when known

    @property
    def value(self) -> complex:
        return self.rho * cmath.exp(1j * self.theta)


def _intervals(params: ArcParams) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Primary and conjugate angular intervals of the arc, in turns."""
    q, s, p, r = params.q, params.s, params.p, params.r
    return (Fraction(p, q), Fraction(r, s), Fraction(s - r, s), Fraction(q - p, q))


def _oriented_theta(params: ArcParams, theta) -> tuple[float, Fraction | None, bool]:
    """Map ``theta`` into the primary interval of the arc.

    Returns (radians, exact turn or None, was_conjugate).  The conjugate
    half of the arc satisfies the same equation after the substitution
    ``theta -> 2*pi - theta``.
    """
    tf, turn = _theta_to_turn(theta)
    x = turn if turn is not None else tf / (2.0 * math.pi)
    lo1, hi1, lo2, hi2 = _intervals(params)
    slack = 0 if turn is not None else 1e-12
    if lo1 - slack <= x <= hi1 + slack:
        return tf, turn, False
    if lo2 - slack <= x <= hi2 + slack:
        return 2.0 * math.pi - tf, (1 - turn) if turn is not None else None, True
    raise ValueError(
        f"theta/2pi = {float(x):.6f} is outside both angular intervals of {params.arc}"
    )


def _residual(params: ArcParams, th: float, mu: float) -> float:
    """Implicit boundary equation at an angle already in the primary interval."""
    q, r, d, d1, s1 = params.q, params.r, params.d, params.d1, params.s1
    ratio = s1 / d1
    shift = 2.0 * math.pi * r / d
    return (
        mu**s1 * math.sin(q * th)
        - mu ** (q * d1) * math.sin(ratio * th - shift)
        - math.sin((q - ratio) * th + shift)
    )


def implicit_residual(arc: ArcId, theta, mu: float) -> float:
    """Residual of the implicit equation at (theta, mu).

    ``theta`` may fall in either angular interval of the arc; the
    conjugate interval is folded back via ``theta -> 2*pi - theta``.
    """
    params = arc_params(arc)
    th, _, _ = _oriented_theta(params, theta)
    return _residual(params, th, mu)


def _solve_mu(params: ArcParams, th: float) -> float:
    """Unique root of the implicit equation in (0, 1] at a fixed angle."""

    def f(mu: float) -> float:
        return _residual(params, th, mu)

    lo, hi = None, None
    for grid in (128, 4096):
        xs = [1e-12] + [i / grid for i in range(1, grid + 1)]
        fs = [f(x) for x in xs]
        for x0, x1, f0, f1 in zip(xs, xs[1:], fs, fs[1:]):
            if f0 == 0.0:
                return x0
            if f0 * f1 < 0.0:
                lo, hi, flo = x0, x1, f0
                break
        if lo is not None:
            break
    else:
        raise ConvergenceError(
            f"no sign change found on (0, 1] for {params.arc} at theta={th!r}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo <= _WIDTH_TOL:
            break
    return 0.5 * (lo + hi)


def _endpoint_point(arc: ArcId, theta, frac: Fraction) -> BoundaryPoint:
    """Boundary point at a Farey endpoint: on the unit circle, no solve.

    alpha is 0 at the q-denominator endpoints (the polynomial collapses
    to ``(t**q - 1)**d``) and 1 at the s-denominator endpoints.
    """
    tf, turn = _theta_to_turn(theta)
    alpha = 0.0 if frac.denominator in (arc.q, 1) else 1.0
    return BoundaryPoint(tf, 1.0, 1.0, alpha, arc, theta_pi=2 * frac)


def _point_on_arc(arc: ArcId, theta) -> BoundaryPoint:
    """Solve the implicit equation on a known arc."""
    params = arc_params(arc)
    tf, turn = _theta_to_turn(theta)
    x = turn if turn is not None else tf / (2.0 * math.pi)
    for frac in _intervals(params):
        if (turn is not None and turn == frac) or (
            turn is None and abs(float(x) - float(frac)) < _ENDPOINT_TOL
        ):
            return _endpoint_point(arc, theta, frac)
    th, _, _ = _oriented_theta(params, theta)
    mu = _solve_mu(params, th)
    rho = mu**params.d1
    q, r, d, d1, s1 = params.q, params.r, params.d, params.d1, params.s1
    ratio = s1 / d1
    shift = 2.0 * math.pi * r / d
    denom = math.sin((q - ratio) * th + shift)
    alpha = mu**s1 * math.sin(q * th) / denom
    alpha = min(1.0, max(0.0, alpha))
    return BoundaryPoint(tf, mu, rho, alpha, arc, theta_pi=turn * 2 if turn is not None else None)


def rho_at(n: int, theta) -> BoundaryPoint:
    """Boundary radius at angle ``theta`` for order ``n``.

    Locates the arc containing the angle, then solves the implicit
    equation by bracketing and bisection.  Farey endpoints short-circuit
    to rho = 1.
    """
    tf, turn = _theta_to_turn(theta)
    if turn is not None:
        x = turn % 1
    else:
        xf = (tf / (2.0 * math.pi)) % 1.0
        near = Fraction(xf).limit_denominator(n)
        x = near if abs(float(near) - xf) < _ENDPOINT_TOL else Fraction(xf)
    arc, left, right = locate_turn(n, x)
    if turn is None:
        # float input sitting essentially on a Farey fraction is an endpoint
        xf = (tf / (2.0 * math.pi)) % 1.0
        for frac in (left, right):
            if abs(xf - float(frac)) < _ENDPOINT_TOL:
                return _endpoint_point(arc, theta, frac)
    return _point_on_arc(arc, theta)


def verify_phi(point: BoundaryPoint) -> float:
    """|phi_alpha(rho * e^{i theta})| for the parametric polynomial.

    ``phi_alpha(t) = (t**q - beta)**d - alpha**d * t**(q*d - s)`` with
    ``beta = 1 - alpha``; the exponent may be negative, in which case the
    expression is a rational function (fine away from t = 0).
    """
    params = arc_params(point.arc)
    q, s, d = params.q, params.s, params.d
    t = point.value
    alpha = point.alpha
    beta = 1.0 - alpha
    return abs((t**q - beta) ** d - alpha**d * t ** (q * d - s))


@dataclass(frozen=True)
class ItoPolynomial:
    """Exact polynomial with Fraction coefficients, lowest power first."""

    arc: ArcId
    alpha: Fraction
    kind: str  # "full" or "reduced"
    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and k > 0) else str(mag)
            if k == 0:
                part = body
            elif k == 1:
                part = f"{body}t" if body else "t"
            else:
                part = f"{body}t^{k}" if body else f"t^{k}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, part))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, part in terms[1:]:
            out += f" {sign} {part}"
        return out


def ito_polynomial(arc: ArcId, alpha: Fraction, kind: str = "reduced") -> ItoPolynomial:
    """The parametric polynomial of an arc at parameter alpha, exactly.

    Full form: ``t**s * (t**q - (1 - alpha))**d - alpha**d * t**(q*d)``.
    Reduced form removes the roots at zero; for supported arc types its
    degree is exactly n.  ``alpha`` must be a Fraction in [0, 1].
    """
    if kind not in ("full", "reduced"):
        raise ValueError(f"unknown kind {kind!r}")
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    params = arc_params(arc)
    q, s, d = params.q, params.s, params.d
    beta = 1 - alpha
    coeffs = [Fraction(0)] * (s + q * d + 1)
    for k in range(d + 1):
        coeffs[s + q * k] += comb(d, k) * (-beta) ** (d - k)
    coeffs[q * d] -= alpha**d
    if kind == "full":
        return ItoPolynomial(arc, alpha, kind, tuple(coeffs))
    if params.arc_type is ArcType.UNSUPPORTED:
        raise ValueError(
            f"{arc} has a reduced polynomial of degree below n; not supported"
        )
    first = next(i for i, c in enumerate(coeffs) if c != 0)
    return ItoPolynomial(arc, alpha, kind, tuple(coeffs[first:]))


def endpoint_slope(arc: ArcId, end: str) -> float:
    """One-sided derivative of rho with respect to theta at an endpoint.

    ``end`` is ``"q"`` for the endpoint at angle 2*pi*p/q and ``"s"``
    for the one at 2*pi*r/s.
    """
    params = arc_params(arc)
    if end == "q":
        w = 2.0 * math.pi / (params.q * params.d)
        return (math.cos(w) - 1.0) / math.sin(w)
    if end == "s":
        w = 2.0 * math.pi / params.s
        return (1.0 - math.cos(w)) / math.sin(w)
    raise ValueError("end must be 'q' or 's'")


def sample_arc(arc: ArcId, count: int) -> list[BoundaryPoint]:
    """``count`` boundary points with angles uniform over the primary
    interval of the arc; the two endpoints are taken exactly."""
    if count < 2:
        raise ValueError("need at least two samples")
    params = arc_params(arc)
    lo = Fraction(2 * params.p, params.q)  # theta / pi
    hi = Fraction(2 * params.r, params.s)
    pts = []
    for i in range(count):
        if i == 0:
            pts.append(_point_on_arc(arc, lo))
        elif i == count - 1:
            pts.append(_point_on_arc(arc, hi))
        else:
            theta = math.pi * (float(lo) + (float(hi) - float(lo)) * i / (count - 1))
            pts.append(_point_on_arc(arc, theta))
    return pts
