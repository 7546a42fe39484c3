"""Momentum-direction geometry: aggregate axis, per-particle frames, angles.

Every multi-particle configuration defines a preferred direction

    k = sum_i p_i / |p_i|,

the sum of the unit momentum directions.  Three frame families hang off
this axis:

* helicity frame of particle i: z along p_i, y along k x p_i;
* aggregate frame of particle i: z along k, y along k x p_i;
* canonical frame: z along k with one common x/y pair shared by all
  particles (its orientation about k is a free choice).

The same y axis convention (y ~ k x p) is used for every particle count,
including pairs.  For a pair one could equivalently put y along p x k for
one of the particles; that variant is not used here, it only flips the
sign convention of the relative azimuth.

Unit-direction sums obey an exact transverse closure: the components of
the p_i transverse to k sum to zero, which makes each particle's
canonical azimuth recoverable from all the others (see
:func:`dependent_phi`).

All functions treat the particle list as unordered data; permuting the
input order never changes a result for the same particle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CollinearDegenerate,
    DegenerateAxis,
    IndeterminatePhi,
    ValidationError,
    ZeroMomentum,
)
from .exact import ANGLE_SNAP_TOL, TWO_PI, TurnAngle

# Default tolerances: GEOM_TOL guards degenerate directions and residual
# checks, NORM_TOL guards normalization of computed unit vectors.
GEOM_TOL = 1e-9
NORM_TOL = 1e-12


@dataclass(frozen=True)
class Vec3:
    """A Cartesian 3-vector of floats."""

    x: float
    y: float
    z: float

    @classmethod
    def from_seq(cls, seq: Sequence[float]) -> "Vec3":
        if len(seq) != 3:
            raise ValidationError(f"a 3-vector needs 3 components, got {len(seq)}")
        return cls(float(seq[0]), float(seq[1]), float(seq[2]))

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, scalar: float) -> "Vec3":
        return Vec3(self.x * scalar, self.y * scalar, self.z * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    @property
    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def normalized(self, tol: float = NORM_TOL) -> "Vec3":
        n = self.norm
        if n < tol:
            raise ZeroMomentum(f"cannot normalize near-zero vector {self}")
        return Vec3(self.x / n, self.y / n, self.z / n)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


X_AXIS = Vec3(1.0, 0.0, 0.0)
Y_AXIS = Vec3(0.0, 1.0, 0.0)
Z_AXIS = Vec3(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Frame:
    """A right-handed orthonormal triad (x = y cross z within GEOM_TOL)."""

    z_axis: Vec3
    y_axis: Vec3
    x_axis: Vec3

    def __post_init__(self) -> None:
        for a, b in ((self.x_axis, self.y_axis), (self.y_axis, self.z_axis), (self.z_axis, self.x_axis)):
            if abs(a.dot(b)) > GEOM_TOL:
                raise ValidationError(f"frame axes not orthogonal: {a} . {b}")
        for axis in (self.x_axis, self.y_axis, self.z_axis):
            if abs(axis.norm - 1.0) > GEOM_TOL:
                raise ValidationError(f"frame axis not normalized: {axis}")
        handed = self.y_axis.cross(self.z_axis)
        if (handed - self.x_axis).norm > GEOM_TOL:
            raise ValidationError("frame is not right-handed (x != y cross z)")

    def orthonormality_residual(self) -> float:
        """Largest deviation from exact orthonormality/right-handedness."""
        residuals = [
            abs(self.x_axis.dot(self.y_axis)),
            abs(self.y_axis.dot(self.z_axis)),
            abs(self.z_axis.dot(self.x_axis)),
            abs(self.x_axis.norm - 1.0),
            abs(self.y_axis.norm - 1.0),
            abs(self.z_axis.norm - 1.0),
            (self.y_axis.cross(self.z_axis) - self.x_axis).norm,
        ]
        return max(residuals)


@dataclass(frozen=True)
class CanonicalAngles:
    """Polar angle (radians) and azimuth (turn angle) in a given frame."""

    theta: float
    phi: TurnAngle


def unit_directions(momenta: Sequence[Vec3], tol: float = NORM_TOL) -> list[Vec3]:
    """Normalize each momentum; zero momenta are hard errors."""
    units = []
    for p in momenta:
        if p.norm < tol:
            raise ZeroMomentum(f"momentum {p} has (numerically) zero magnitude")
        units.append(p.normalized(tol))
    return units


def aggregate_axis(momenta: Sequence[Vec3], tol: float = GEOM_TOL) -> Vec3:
    """Sum of unit momentum directions, the common reference axis k.

    Parameters
    ----------
    momenta : sequence of Vec3
        Particle momenta (any magnitudes, directions are what matter).
    tol : float
        Degeneracy guard: |k| below this raises :class:`DegenerateAxis`.

    Returns
    -------
    Vec3
        The unnormalized axis k.  Use ``.normalized()`` for the unit axis.
    """
    if not momenta:
        raise ValidationError("aggregate axis needs at least one momentum")
    units = unit_directions(momenta)
    k = Vec3(
        sum(u.x for u in units),
        sum(u.y for u in units),
        sum(u.z for u in units),
    )
    if k.norm < tol:
        raise DegenerateAxis(
            f"unit directions sum to |k|={k.norm:.3e} < {tol}; no common axis exists"
        )
    return k


def _y_from_cross(k: Vec3, p_hat: Vec3, tol: float) -> Vec3:
    cross = k.normalized().cross(p_hat)
    if cross.norm < tol:
        raise CollinearDegenerate(
            f"momentum direction {p_hat} is collinear with axis {k}; frame undefined"
        )
    return cross.normalized()


def helicity_frame(p: Vec3, k: Vec3, tol: float = GEOM_TOL) -> Frame:
    """Frame with z along the particle's own momentum.

    z = p/|p|, y = (k x p)/|k x p|, x = y cross z.
    """
    z = p.normalized()
    y = _y_from_cross(k, z, tol)
    return Frame(z_axis=z, y_axis=y, x_axis=y.cross(z))


def aggregate_frame(p: Vec3, k: Vec3, tol: float = GEOM_TOL) -> Frame:
    """Frame with z along the common axis k but y still particle-specific.

    z = k/|k|, y = (k x p)/|k x p|, x = y cross z.  The x axis is then the
    unit transverse part of p, so the particle sits at azimuth zero in its
    own aggregate frame.
    """
    z = k.normalized()
    y = _y_from_cross(k, p.normalized(), tol)
    return Frame(z_axis=z, y_axis=y, x_axis=y.cross(z))


def canonical_frame(k: Vec3, rotation_turns: float = 0.0, tol: float = GEOM_TOL) -> Frame:
    """One common frame with z along k, shared by every particle.

    The orientation of x/y about k is a free convention.  The default
    picks the world x axis projected onto the plane normal to k (falling
    back to the world y axis when k is nearly along x); ``rotation_turns``
    then rotates the frame about z by that many turns.  Azimuths measured
    in the rotated frame shrink by the same amount.
    """
    z = k.normalized()
    ref = X_AXIS if z.cross(X_AXIS).norm > tol else Y_AXIS
    x = (ref - z * ref.dot(z)).normalized()
    y = z.cross(x)
    if rotation_turns:
        ang = rotation_turns * TWO_PI
        cos_a, sin_a = math.cos(ang), math.sin(ang)
        x, y = (x * cos_a + y * sin_a), (y * cos_a - x * sin_a)
    return Frame(z_axis=z, y_axis=y, x_axis=x)


def canonical_angles(p: Vec3, frame: Frame, snap_tol: float = ANGLE_SNAP_TOL) -> CanonicalAngles:
    """Polar/azimuthal angles of a momentum direction in a frame.

    Parameters
    ----------
    p : Vec3
        Momentum (any magnitude).
    frame : Frame
        Reference frame; theta is measured from its z axis, phi from its
        x axis toward its y axis, reduced into [0, 2 pi).
    snap_tol : float
        Tolerance for snapping phi to an exact rational number of turns.

    Returns
    -------
    CanonicalAngles
        theta in [0, pi], phi as a :class:`TurnAngle` in [0, 1) turns.
    """
    u = p.normalized()
    cos_theta = max(-1.0, min(1.0, u.dot(frame.z_axis)))
    theta = math.acos(cos_theta)
    x_comp = u.dot(frame.x_axis)
    y_comp = u.dot(frame.y_axis)
    if math.hypot(x_comp, y_comp) < GEOM_TOL:
        raise CollinearDegenerate(
            f"direction {u} is along the frame z axis; azimuth undefined"
        )
    phi = math.atan2(y_comp, x_comp) % TWO_PI
    return CanonicalAngles(theta=theta, phi=TurnAngle.from_radians(phi, snap_tol).mod_turn())


def direction_from_angles(theta: float, phi: TurnAngle, frame: Frame | None = None) -> Vec3:
    """Unit direction at (theta, phi); in world coordinates when frame is None."""
    sin_t = math.sin(theta)
    local = Vec3(sin_t * math.cos(phi.radians), sin_t * math.sin(phi.radians), math.cos(theta))
    if frame is None:
        return local
    return frame.x_axis * local.x + frame.y_axis * local.y + frame.z_axis * local.z


def check_transverse_sum(momenta: Sequence[Vec3], k: Vec3) -> float:
    """Residual |sum_i (p_hat_i - (p_hat_i . k_hat) k_hat)|.

    Exactly zero (up to roundoff) whenever k is the aggregate axis of the
    same momenta, because the transverse parts of unit directions cancel
    in their own sum.
    """
    k_hat = k.normalized()
    total = Vec3(0.0, 0.0, 0.0)
    for u in unit_directions(momenta):
        total = total + (u - k_hat * u.dot(k_hat))
    return total.norm


def dependent_phi(
    index: int,
    angles: Sequence[CanonicalAngles],
    tol: float = GEOM_TOL,
    snap_tol: float = ANGLE_SNAP_TOL,
) -> TurnAngle:
    """Azimuth of one particle reconstructed from all the others.

    Transverse closure makes particle ``index`` recoil against the rest:

        sin(theta_i) (cos phi_i, sin phi_i)
            = - sum_{j != i} sin(theta_j) (cos phi_j, sin phi_j)

    so phi_i = atan2(-sum sin theta_j sin phi_j, -sum sin theta_j cos phi_j).

    Raises
    ------
    IndeterminatePhi
        When both recoil components are below ``tol`` (the others carry no
        net transverse momentum, e.g. they all sit on the axis).
    """
    if not 0 <= index < len(angles):
        raise ValidationError(f"index {index} out of range for {len(angles)} particles")
    sin_sum = 0.0
    cos_sum = 0.0
    for j, ang in enumerate(angles):
        if j == index:
            continue
        sin_t = math.sin(ang.theta)
        sin_sum += sin_t * math.sin(ang.phi.radians)
        cos_sum += sin_t * math.cos(ang.phi.radians)
    if abs(sin_sum) < tol and abs(cos_sum) < tol:
        raise IndeterminatePhi(
            f"other particles carry no transverse recoil; phi of particle {index} undefined"
        )
    phi = math.atan2(-sin_sum, -cos_sum) % TWO_PI
    return TurnAngle.from_radians(phi, snap_tol).mod_turn()


def subset_axis(momenta: Sequence[Vec3], subset: Sequence[int], tol: float = GEOM_TOL) -> Vec3:
    """Aggregate axis of a subset of the particles (by index).

    The transverse closure and frame constructions all apply within the
    subset with this axis in place of k.  For a two-particle subset the
    two members sit at azimuths separated by exactly pi about it.
    """
    if not subset:
        raise ValidationError("subset must not be empty")
    seen = set()
    for i in subset:
        if not 0 <= i < len(momenta):
            raise ValidationError(f"subset index {i} out of range")
        if i in seen:
            raise ValidationError(f"subset index {i} repeated")
        seen.add(i)
    return aggregate_axis([momenta[i] for i in subset], tol)
