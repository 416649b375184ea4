"""Geometry of the wedge contour.

Everything in this module is exact whenever the wedge angle is supplied as
a rational multiple of pi: classification into limit-point/limit-circle,
the Stokes line/wedge layout, the numerical-range cones attached to each
half line, and the angle windows under which the coupled operator has
non-empty resolvent set.  Floating-point input falls back to a 1e-12
tolerance; the distinguished angle set has measure zero, so float equality
alone would be meaningless.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import ValidationError

_TWO_PI = 2.0 * math.pi
_FLOAT_ANGLE_TOL = 1e-12


def _norm_radians(x: float) -> float:
    """Normalize to (-pi, pi]."""
    y = math.fmod(x, _TWO_PI)
    if y <= -math.pi:
        y += _TWO_PI
    elif y > math.pi:
        y -= _TWO_PI
    return 0.0 if y == 0.0 else y


def _norm_pi_units(t: Fraction) -> Fraction:
    """Normalize a multiple of pi (given in units of pi) to (-1, 1]."""
    t = t % 2
    if t > 1:
        t -= 2
    return t


_PHI_RE = re.compile(
    r"^\s*(?P<num>[+-]?\d+)\s*(?:/\s*(?P<den>\d+))?\s*\*?\s*pi\s*$",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class Angle:
    """An angle carried both as float radians and, when available, as an
    exact rational multiple of pi.

    ``approx`` is always normalized to (-pi, pi].  When ``exact`` is
    present it is normalized to (-1, 1] (units of pi) and ``approx`` is
    its float image.
    """

    approx: float
    exact: Optional[Fraction] = None

    def __post_init__(self):
        if self.exact is not None:
            t = _norm_pi_units(self.exact)
            object.__setattr__(self, "exact", t)
            object.__setattr__(self, "approx", float(t) * math.pi)
        else:
            object.__setattr__(self, "approx", _norm_radians(self.approx))

    @classmethod
    def from_fraction(cls, pi_units) -> "Angle":
        t = Fraction(pi_units)
        return cls(approx=float(t) * math.pi, exact=t)

    @classmethod
    def from_radians(cls, radians: float) -> "Angle":
        return cls(approx=float(radians), exact=None)

    @classmethod
    def parse(cls, text: str) -> "Angle":
        """Parse CLI angle syntax: 'p/q pi', 'p pi', or float radians."""
        m = _PHI_RE.match(text)
        if m:
            num = int(m.group("num"))
            den = int(m.group("den")) if m.group("den") else 1
            if den == 0:
                raise ValidationError(f"zero denominator in angle {text!r}")
            return cls.from_fraction(Fraction(num, den))
        try:
            return cls.from_radians(float(text))
        except ValueError:
            raise ValidationError(f"cannot parse angle {text!r}") from None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def to_json(self) -> dict:
        return {
            "pi_num": self.exact.numerator if self.exact is not None else None,
            "pi_den": self.exact.denominator if self.exact is not None else None,
            "radians": self.approx,
        }

    def __sub__(self, other: "Angle") -> "Angle":
        if self.exact is not None and other.exact is not None:
            return Angle.from_fraction(self.exact - other.exact)
        return Angle.from_radians(self.approx - other.approx)


class Side(Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Side.PLUS else -1


@dataclass(frozen=True)
class WedgeProblem:
    """The pair (N, phi): potential exponent offset and wedge half-angle.

    N = 0 is admitted as the deformed harmonic oscillator even though the
    original setting assumes N > 0; nothing downstream needs N > 0.
    """

    N: int
    phi: Angle

    def __post_init__(self):
        if self.N < 0 or self.N != int(self.N):
            raise ValidationError(f"N must be a nonnegative integer, got {self.N}")
        if not (-math.pi / 2 < self.phi.approx < math.pi / 2):
            raise ValidationError(
                f"phi must lie in (-pi/2, pi/2), got {self.phi.approx}"
            )


class Case(Enum):
    LIMIT_POINT_I = "limit-point-I"
    LIMIT_CIRCLE = "limit-circle"


@dataclass(frozen=True)
class Classification:
    case: Case
    matched_k: Optional[int] = None

    @property
    def is_limit_point(self) -> bool:
        return self.case is Case.LIMIT_POINT_I


def _line_fraction(N: int, k: int) -> Fraction:
    """Angle of the k-th distinguished ray, in units of pi, normalized."""
    return _norm_pi_units(Fraction(-(N + 2), 2 * N + 8) + Fraction(2 * k, N + 4))


def stokes_line_angles(N: int) -> list[Angle]:
    """The N+4 distinguished ray angles, k = 0..N+3, exact."""
    return [Angle.from_fraction(_line_fraction(N, k)) for k in range(N + 4)]


def classify_contour(problem: WedgeProblem) -> Classification:
    """Limit-point/limit-circle dichotomy of the two half-line expressions.

    Limit circle exactly on the distinguished angle set
    phi = -(N+2)pi/(2N+8) + 2k pi/(N+4); exact rational comparison when the
    angle carries an exact part, 1e-12 tolerance otherwise.
    """
    N = problem.N
    phi = problem.phi
    if phi.exact is not None:
        # phi = -(N+2)/(2N+8) + 2k/(N+4) (mod 2), solved for integer k
        k_value = (phi.exact + Fraction(N + 2, 2 * N + 8)) * Fraction(N + 4, 2)
        if k_value.denominator == 1:
            return Classification(Case.LIMIT_CIRCLE, matched_k=int(k_value) % (N + 4))
        return Classification(Case.LIMIT_POINT_I)
    best_k, best_d = None, math.inf
    for k in range(N + 4):
        d = abs(_norm_radians(phi.approx - float(_line_fraction(N, k)) * math.pi))
        if d < best_d:
            best_k, best_d = k, d
    if best_d < _FLOAT_ANGLE_TOL:
        return Classification(Case.LIMIT_CIRCLE, matched_k=best_k)
    return Classification(Case.LIMIT_POINT_I)


@dataclass(frozen=True)
class RayLocation:
    """Where a ray sits in the Stokes layout: on line k, or inside sector k."""

    kind: str  # "line" | "sector"
    index: int


@dataclass(frozen=True)
class StokesGeometry:
    """The N+4 boundary rays and the N+4 open sectors between them.

    ``sectors[k]`` is the pair of counterclockwise bounds (lines k-1 and k,
    cyclically), matching the sector indexing in which sector k is bounded
    above by line k.
    """

    N: int
    lines: list[Angle]
    sectors: list[tuple[Angle, Angle]]
    positive_ray: Optional[RayLocation] = None
    negative_ray: Optional[RayLocation] = None

    def locate(self, angle: Angle) -> RayLocation:
        """Classify a ray by angle; landing on a boundary ray counts as
        'line', never as sector membership."""
        N = self.N
        spacing = Fraction(2, N + 4)
        if angle.exact is not None:
            j = (angle.exact - _line_fraction(N, 0)) / spacing
            if j.denominator == 1:
                return RayLocation("line", int(j) % (N + 4))
            m = math.floor(j)
            return RayLocation("sector", (m + 1) % (N + 4))
        spacing_f = float(spacing) * math.pi
        theta0 = float(_line_fraction(N, 0)) * math.pi
        j = (angle.approx - theta0) / spacing_f
        j_near = round(j)
        if abs(j - j_near) * spacing_f < _FLOAT_ANGLE_TOL:
            return RayLocation("line", int(j_near) % (N + 4))
        m = math.floor(j)
        return RayLocation("sector", (m + 1) % (N + 4))


def stokes_geometry(N: int, phi: Optional[Angle] = None) -> StokesGeometry:
    """Ray/sector layout for a given N; optionally reports which sector or
    ray contains the contour's two half lines (arg = phi and arg = pi - phi).
    """
    if N < 0:
        raise ValidationError(f"N must be nonnegative, got {N}")
    lines = stokes_line_angles(N)
    sectors = [(lines[(k - 1) % (N + 4)], lines[k]) for k in range(N + 4)]
    geom = StokesGeometry(N=N, lines=lines, sectors=sectors)
    if phi is None:
        return geom
    pos = geom.locate(phi)
    if phi.exact is not None:
        neg_angle = Angle.from_fraction(1 - phi.exact)
    else:
        neg_angle = Angle.from_radians(math.pi - phi.approx)
    neg = geom.locate(neg_angle)
    return StokesGeometry(
        N=N, lines=lines, sectors=sectors, positive_ray=pos, negative_ray=neg
    )


@dataclass(frozen=True)
class ConeSector:
    """Closed convex cone spanned by two rays from the origin.

    ``opening`` is the angular distance between the ray directions, always
    in [0, pi].  Membership means representability as a nonnegative
    combination of the two directions; at opening pi the cone degenerates
    to the full line through them.
    """

    ray_a: Angle
    ray_b: Angle
    opening: float = field(init=False)

    def __post_init__(self):
        d = abs(_norm_radians(self.ray_b.approx - self.ray_a.approx))
        object.__setattr__(self, "opening", d)

    @property
    def opening_exact(self) -> Optional[Fraction]:
        """Opening in units of pi, exact when both rays are exact."""
        if self.ray_a.exact is None or self.ray_b.exact is None:
            return None
        return abs(_norm_pi_units(self.ray_b.exact - self.ray_a.exact))

    def distance(self, z: complex) -> float:
        """Euclidean distance from z to the cone (0 when inside)."""
        a = cmath.exp(1j * self.ray_a.approx)
        b = cmath.exp(1j * self.ray_b.approx)
        if self.opening >= math.pi - 1e-14:
            # degenerate: convex hull of two opposite rays is the line
            return abs((z * cmath.exp(-1j * self.ray_a.approx)).imag)
        det = (a.real * b.imag - a.imag * b.real)
        if abs(det) > 1e-15:
            s = (z.real * b.imag - z.imag * b.real) / det
            t = (a.real * z.imag - a.imag * z.real) / det
            if s >= 0.0 and t >= 0.0:
                return 0.0
        return min(_ray_distance(z, a), _ray_distance(z, b))

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        """Membership in the cone dilated by tol."""
        return self.distance(z) <= tol


def _ray_distance(z: complex, u: complex) -> float:
    p = (z * u.conjugate()).real
    if p >= 0.0:
        return abs(z - p * u)
    return abs(z)


def q_sector(problem: WedgeProblem, side: Side) -> ConeSector:
    """Numerical-range cone of the half-line expression.

    One boundary ray carries the second-derivative coefficient direction
    (angle -2*phi for the right half line), the other the potential range
    direction; the minus-side cone is the reflection of the plus-side cone
    across the real axis.
    """
    N = problem.N
    sgn = side.sign
    if problem.phi.exact is not None:
        t = problem.phi.exact
        ray_a = Angle.from_fraction(-sgn * 2 * t)
        ray_b = Angle.from_fraction(sgn * (1 + Fraction(N + 2, 2) + (N + 2) * t))
    else:
        p = problem.phi.approx
        ray_a = Angle.from_radians(-sgn * 2.0 * p)
        ray_b = Angle.from_radians(sgn * (math.pi + (N + 2) * math.pi / 2 + (N + 2) * p))
    return ConeSector(ray_a=ray_a, ray_b=ray_b)


def main_theorem_window(problem: WedgeProblem) -> bool:
    """Whether (N, phi) sits inside the angle windows under which the
    coupled full-axis operator is proved to have non-empty resolvent set.

    For phi > 0 the windows are (2k pi/(N+2) - pi/2, (2k+1) pi/(N+2) - pi/2)
    over integers k >= 0; for phi < 0 they are mirrored with k <= 0.
    phi = 0 is rejected: the statement assumes a genuinely tilted contour.
    """
    N = problem.N
    phi = problem.phi
    if phi.approx == 0.0 and (phi.exact is None or phi.exact == 0):
        raise ValidationError("main-theorem window is defined only for phi != 0")

    if phi.exact is not None:
        t = phi.exact  # units of pi, in (-1/2, 1/2)
        if t > 0:
            k = 0
            while True:
                lo = Fraction(2 * k, N + 2) - Fraction(1, 2)
                hi = Fraction(2 * k + 1, N + 2) - Fraction(1, 2)
                if lo >= Fraction(1, 2):
                    return False
                if lo < t < hi:
                    return True
                k += 1
        k = 0
        while True:
            lo = Fraction(2 * k - 1, N + 2) - Fraction(1, 2)
            hi = Fraction(2 * k, N + 2) - Fraction(1, 2)
            if hi <= -Fraction(1, 2):
                return False
            if lo < t < hi:
                return True
            k -= 1

    p = phi.approx
    if p > 0:
        k = 0
        while True:
            lo = 2 * k * math.pi / (N + 2) - math.pi / 2
            hi = (2 * k + 1) * math.pi / (N + 2) - math.pi / 2
            if lo >= math.pi / 2:
                return False
            if lo < p < hi:
                return True
            k += 1
    k = 0
    while True:
        lo = (2 * k - 1) * math.pi / (N + 2) - math.pi / 2
        hi = 2 * k * math.pi / (N + 2) - math.pi / 2
        if hi <= -math.pi / 2:
            return False
        if lo < p < hi:
            return True
        k -= 1
