"""Star-shaped polygon engine certifying asymptotic stability by forward images.

The seed triangle with corners (0,0), (1,0), (0,1) is grown by repeated
images under the planar piecewise-linear map; the origin is asymptotically
stable exactly when some accumulated region maps into itself and a further
iterate clears the open segment from (1,0) to (0,1).  Positive homogeneity
keeps every region in play star-shaped about the origin, so regions are
stored as a radial boundary chain r(phi) over an angular support inside
[0, pi], and set union / containment / separation all reduce to comparing
one-dimensional radial functions.

A chain is a sequence of boundary points at non-decreasing angles; two
consecutive points may share an angle, encoding a radial jump edge (these
appear as soon as regions with different supports are united).  The filled
region is {r u(phi) : 0 <= r <= r(phi)} plus the origin, where r(phi) is the
upper envelope of the chain segments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DegenerateImageError, RegimeError
from .maps import NormalForm2D, PWLMap
from .sphere import HALF_PI, PeriodicOrbit, periodic_orbits_G

EPS_GEOM = 1e-9
ANGLE_TOL = 1e-12

# A candidate positive Birkhoff sum this small is treated as zero when the
# periodic-orbit scan looks for instability witnesses.
LAMBDA_POS_TOL = 1e-9


def _cross(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


@dataclass(frozen=True)
class StarPolygon:
    """Star-shaped region about the origin, as a radial boundary chain.

    ``angles`` are non-decreasing in [0, pi]; ``radii`` are positive.  The
    polygon's vertex loop is the origin followed by the chain points, so the
    origin always lies on the boundary (the regions this package iterates
    never surround it).
    """

    angles: np.ndarray
    radii: np.ndarray

    def __post_init__(self) -> None:
        ang = np.asarray(self.angles, dtype=float).copy()
        rad = np.asarray(self.radii, dtype=float).copy()
        if ang.ndim != 1 or ang.shape != rad.shape or ang.size == 0:
            raise ValueError("angles and radii must be matching nonempty 1-D arrays")
        if np.any(np.diff(ang) < -ANGLE_TOL):
            raise ValueError("chain angles must be non-decreasing")
        if np.any(ang < -1e-9) or np.any(ang > math.pi + 1e-9):
            raise ValueError("chain angles must lie in [0, pi]")
        if np.any(rad <= 0.0) or not np.all(np.isfinite(rad)):
            raise ValueError("chain radii must be positive and finite")
        np.clip(ang, 0.0, math.pi, out=ang)
        np.maximum.accumulate(ang, out=ang)  # absorb sub-tolerance inversions
        object.__setattr__(self, "angles", ang)
        object.__setattr__(self, "radii", rad)

    # -- construction -----------------------------------------------------

    @classmethod
    def unit_triangle(cls) -> "StarPolygon":
        """The seed triangle (0,0), (1,0), (0,1)."""
        return cls(np.array([0.0, HALF_PI]), np.array([1.0, 1.0]))

    @classmethod
    def from_vertices(cls, points, drop_tol: float = EPS_GEOM) -> "StarPolygon":
        """Build a chain from a polygon vertex loop (either orientation).

        Near-origin vertices are dropped (the origin anchor is implicit).
        The remaining cyclic sequence must visit angles monotonically after
        some rotation, otherwise the polygon is not star-shaped about the
        origin and a ValueError is raised.
        """
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must be an (n, 2) array-like")
        r = np.hypot(pts[:, 0], pts[:, 1])
        pts = pts[r > drop_tol]
        if len(pts) == 0:
            raise ValueError("all vertices are at the origin")
        ang = np.arctan2(pts[:, 1], pts[:, 0])
        ang[np.abs(ang) <= ANGLE_TOL] = 0.0
        if np.any(ang < 0.0):
            raise ValueError("vertices must lie in the closed upper half-plane")
        rad = np.hypot(pts[:, 0], pts[:, 1])

        def monotone(a: np.ndarray) -> bool:
            return bool(np.all(np.diff(a) >= -ANGLE_TOL))

        for a_seq, r_seq in ((ang, rad), (ang[::-1], rad[::-1])):
            starts = np.nonzero(a_seq <= a_seq.min() + ANGLE_TOL)[0]
            for s in starts:
                a_rot = np.roll(a_seq, -s)
                if monotone(a_rot):
                    return cls(a_rot, np.roll(r_seq, -s))
        raise ValueError("vertex loop is not star-shaped about the origin")

    # -- basic geometry ----------------------------------------------------

    @property
    def points(self) -> np.ndarray:
        """Chain points in cartesian coordinates, shape (k, 2)."""
        return np.column_stack(
            (self.radii * np.cos(self.angles), self.radii * np.sin(self.angles))
        )

    @property
    def vertices(self) -> np.ndarray:
        """Full polygon vertex loop: origin anchor followed by the chain."""
        return np.vstack(([0.0, 0.0], self.points))

    @property
    def support(self) -> tuple[float, float]:
        return float(self.angles[0]), float(self.angles[-1])

    def area(self) -> float:
        p = self.points
        return 0.5 * float(
            np.abs(np.sum(p[:-1, 0] * p[1:, 1] - p[1:, 0] * p[:-1, 1]))
        )

    def scaled(self, factor: float) -> "StarPolygon":
        if factor <= 0.0:
            raise ValueError("factor must be positive")
        return StarPolygon(self.angles.copy(), self.radii * factor)

    # -- radial evaluation ---------------------------------------------------

    def _seg_value(self, j: int, phi: float) -> float:
        """Radius of chain segment j -> j+1 along the ray at angle phi.

        Returns -inf when the segment does not cover phi.  A zero-width
        (radial jump) segment covers only its own angle and contributes the
        larger endpoint radius there.
        """
        a0 = float(self.angles[j])
        a1 = float(self.angles[j + 1])
        if phi < a0 - ANGLE_TOL or phi > a1 + ANGLE_TOL:
            return -math.inf
        r0 = float(self.radii[j])
        r1 = float(self.radii[j + 1])
        if a1 - a0 <= ANGLE_TOL:
            return max(r0, r1)
        ax, ay = r0 * math.cos(a0), r0 * math.sin(a0)
        bx, by = r1 * math.cos(a1), r1 * math.sin(a1)
        ux, uy = math.cos(phi), math.sin(phi)
        den = _cross(ux, uy, bx - ax, by - ay)
        if abs(den) < 1e-300:
            return max(r0, r1)
        return _cross(ax, ay, bx, by) / den

    def _covering_segment(self, lo: float, hi: float) -> int | None:
        """Index of the chain segment spanning the open interval (lo, hi).

        Well-defined only when no chain angle lies strictly inside; callers
        guarantee that by merging all chain angles into their interval grid.
        """
        k = self.angles.size
        if k < 2:
            return None
        mid = 0.5 * (lo + hi)
        if mid < self.angles[0] - ANGLE_TOL or mid > self.angles[-1] + ANGLE_TOL:
            return None
        j = int(np.searchsorted(self.angles, mid, side="right")) - 1
        j = min(max(j, 0), k - 2)
        if self.angles[j + 1] - self.angles[j] <= ANGLE_TOL:
            return None  # mid sits on a radial jump: nothing spans the interval
        return j

    def radius_at(self, phi):
        """Radial extent of the closed region along the ray at angle phi.

        At a jump angle this is the larger of the two one-sided limits; far
        from the support it is 0.  Accepts scalars or arrays.
        """
        scalar = np.isscalar(phi)
        p = np.atleast_1d(np.asarray(phi, dtype=float))
        k = self.angles.size
        out = np.zeros_like(p)
        inside = (p >= self.angles[0] - ANGLE_TOL) & (p <= self.angles[-1] + ANGLE_TOL)
        if k == 1:
            out[inside] = float(self.radii[0])
            return float(out[0]) if scalar else out
        idx = np.nonzero(inside)[0]
        for i in idx:
            ph = float(p[i])
            # Every segment whose padded window can contain ph: a contiguous
            # index range (a query one ulp off a jump angle must still see
            # both sides of the jump).
            j_lo = int(np.searchsorted(self.angles, ph - ANGLE_TOL, "left")) - 1
            j_hi = int(np.searchsorted(self.angles, ph + ANGLE_TOL, "right")) - 1
            v = 0.0
            for j in range(max(j_lo, 0), min(j_hi, k - 2) + 1):
                v = max(v, self._seg_value(j, ph))
            out[i] = v
        return float(out[0]) if scalar else out


# The accumulated union of star polygons is itself star-shaped, so a single
# chain represents it; the alias keeps call sites self-describing.
StarRegion = StarPolygon


def _merge_angles(*arrays: np.ndarray) -> list[float]:
    vals = np.sort(np.concatenate(arrays))
    out: list[float] = []
    for v in vals:
        if not out or v - out[-1] > ANGLE_TOL:
            out.append(float(v))
    return out


def _line_intersection(p1, p2, q1, q2):
    d1x, d1y = p2[0] - p1[0], p2[1] - p1[1]
    d2x, d2y = q2[0] - q1[0], q2[1] - q1[1]
    den = _cross(d1x, d1y, d2x, d2y)
    if abs(den) < 1e-300:
        return None
    t = _cross(q1[0] - p1[0], q1[1] - p1[1], d2x, d2y) / den
    return (p1[0] + t * d1x, p1[1] + t * d1y)


def _prune_chain(angles: list[float], radii: list[float]) -> tuple[list[float], list[float]]:
    """Drop duplicate points and collinear interior points (within 1e-12)."""
    # exact-duplicate collapse
    a_out: list[float] = []
    r_out: list[float] = []
    for a, r in zip(angles, radii):
        if a_out and a - a_out[-1] <= ANGLE_TOL and abs(r - r_out[-1]) <= 1e-11 * max(1.0, r):
            r_out[-1] = max(r_out[-1], r)
            continue
        a_out.append(a)
        r_out.append(r)
    # collinear interior points: distance to the chord below 1e-12 * scale
    changed = True
    while changed and len(a_out) > 2:
        changed = False
        keep = [True] * len(a_out)
        pts = [(r * math.cos(a), r * math.sin(a)) for a, r in zip(a_out, r_out)]
        scale = max(max(r_out), 1.0)
        i = 1
        while i < len(a_out) - 1:
            p0, p1, p2 = pts[i - 1], pts[i], pts[i + 1]
            if (
                a_out[i] - a_out[i - 1] > ANGLE_TOL
                and a_out[i + 1] - a_out[i] > ANGLE_TOL
            ):
                chord = math.hypot(p2[0] - p0[0], p2[1] - p0[1])
                dev = abs(
                    _cross(p1[0] - p0[0], p1[1] - p0[1], p2[0] - p0[0], p2[1] - p0[1])
                )
                if chord > 0 and dev / chord <= 1e-12 * scale:
                    keep[i] = False
                    changed = True
                    i += 2
                    continue
            i += 1
        if changed:
            a_out = [a for a, k in zip(a_out, keep) if k]
            r_out = [r for r, k in zip(r_out, keep) if k]
    return a_out, r_out


class _Walk:
    """Shared sweep over the merged angle grid of two radial chains."""

    def __init__(self, a: StarPolygon, b: StarPolygon, lo: float, hi: float):
        self.a = a
        self.b = b
        grid = [
            x
            for x in _merge_angles(a.angles, b.angles, np.array([lo, hi]))
            if lo - ANGLE_TOL <= x <= hi + ANGLE_TOL
        ]
        if not grid or grid[0] > lo + ANGLE_TOL:
            grid.insert(0, lo)
        if grid[-1] < hi - ANGLE_TOL:
            grid.append(hi)
        self.grid = grid

    def intervals(self):
        """Yield (lo, hi, seg_a, seg_b, ra_lo, ra_hi, rb_lo, rb_hi) per cell."""
        for lo, hi in zip(self.grid[:-1], self.grid[1:]):
            if hi - lo <= ANGLE_TOL:
                continue
            ja = self.a._covering_segment(lo, hi)
            jb = self.b._covering_segment(lo, hi)
            ra0 = self.a._seg_value(ja, lo) if ja is not None else 0.0
            ra1 = self.a._seg_value(ja, hi) if ja is not None else 0.0
            rb0 = self.b._seg_value(jb, lo) if jb is not None else 0.0
            rb1 = self.b._seg_value(jb, hi) if jb is not None else 0.0
            yield lo, hi, ja, jb, max(ra0, 0.0), max(ra1, 0.0), max(rb0, 0.0), max(rb1, 0.0)


def union_star(a: StarPolygon, b: StarPolygon) -> StarPolygon:
    """Union of two star regions, as the upper envelope of their radial chains.

    The merged angle grid contains every chain angle of both inputs, so
    inside each grid cell both boundaries are single straight segments; the
    envelope can then only switch between them at one interior crossing,
    which is inserted exactly.  Supports must overlap or touch (a union with
    a gap of empty angles would not be star-shaped with one chain).
    """
    a0, a1 = a.support
    b0, b1 = b.support
    if max(a0, b0) > min(a1, b1) + 10 * ANGLE_TOL:
        raise ValueError("angular supports are disjoint; union is not a star chain")
    lo, hi = min(a0, b0), max(a1, b1)

    out_a: list[float] = []
    out_r: list[float] = []

    def emit(phi: float, r: float) -> None:
        if r <= 1e-15:
            return
        if out_a and phi - out_a[-1] <= ANGLE_TOL:
            if abs(r - out_r[-1]) <= 1e-11 * max(1.0, r, out_r[-1]):
                out_r[-1] = max(out_r[-1], r)
                return
            if len(out_a) >= 2 and out_a[-1] - out_a[-2] <= ANGLE_TOL:
                out_r[-1] = r  # already a jump pair here; move its outer end
                return
        out_a.append(max(phi, out_a[-1]) if out_a else phi)
        out_r.append(r)

    walk = _Walk(a, b, lo, hi)
    for c_lo, c_hi, ja, jb, ra0, ra1, rb0, rb1 in walk.intervals():
        emit(c_lo, max(ra0, rb0))
        d0, d1 = ra0 - rb0, ra1 - rb1
        if d0 * d1 < 0.0 and ja is not None and jb is not None:
            pa = a.points
            pb = b.points
            q = _line_intersection(pa[ja], pa[ja + 1], pb[jb], pb[jb + 1])
            if q is not None:
                phi_x = math.atan2(q[1], q[0])
                if c_lo + ANGLE_TOL < phi_x < c_hi - ANGLE_TOL:
                    emit(phi_x, math.hypot(q[0], q[1]))
        emit(c_hi, max(ra1, rb1))

    ang, rad = _prune_chain(out_a, out_r)
    return StarPolygon(np.array(ang), np.array(rad))


def containment_protrusion(
    region: StarPolygon, poly: StarPolygon, window: tuple[float, float] | None = None
) -> float:
    """Worst radial excess of ``poly`` over ``region``.

    Non-positive means poly is contained (within tolerance); the value is the
    maximum of r_poly - r_region over all candidate angles: every chain angle
    of either input plus both one-sided limits at every grid cell boundary.
    Between consecutive candidates both boundaries are straight segments, and
    two distinct lines cross at most once, so the difference cannot become
    positive strictly inside a cell while being non-positive at both ends.
    ``window`` restricts the comparison to an angular band (used for the
    separating-segment test).  Returns -inf when there is nothing to compare.
    """
    p0, p1 = poly.support
    lo, hi = p0, p1
    if window is not None:
        lo, hi = max(lo, window[0]), min(hi, window[1])
        if hi < lo - ANGLE_TOL:
            return -math.inf
    if hi < lo:
        lo = hi = 0.5 * (lo + hi)

    best = -math.inf
    walk = _Walk(poly, region, lo, hi)
    # Exact radial extents at the grid angles (covers radial-jump edges and
    # the degenerate single-ray polygon).
    grid = np.array(walk.grid)
    rp = np.atleast_1d(poly.radius_at(grid))
    rr = np.atleast_1d(region.radius_at(grid))
    best = max(best, float(np.max(rp - rr)))
    for _, _, _, _, ra0, ra1, rb0, rb1 in walk.intervals():
        best = max(best, ra0 - rb0, ra1 - rb1)
    return best


def region_contains(
    region: StarPolygon, poly: StarPolygon, tol: float = EPS_GEOM
) -> bool:
    """Whether the star region contains the polygon, up to radial slack tol."""
    return containment_protrusion(region, poly) <= tol


_GAMMA = StarPolygon(np.array([0.0, HALF_PI]), np.array([1.0, 1.0]))


def separated_from_gamma(poly: StarPolygon, clearance: float = EPS_GEOM) -> bool:
    """Whether the region stays radially clear of the segment (1,0)-(0,1).

    The segment is the outer edge of the seed triangle, spanning angles
    [0, pi/2].  A star region touches it exactly when its radial function
    reaches the segment's radial function somewhere on that band, so
    separation is max(r_poly - r_segment) <= -clearance over the band
    (vacuously true when the supports do not meet).
    """
    excess = containment_protrusion(_GAMMA, poly, window=(0.0, HALF_PI))
    return excess <= -clearance


def _resolve_matrices(m: NormalForm2D | PWLMap) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(m, NormalForm2D):
        return m.matrix("left"), m.matrix("right")
    if isinstance(m, PWLMap):
        if m.dim != 2:
            raise ValueError("polygon images are implemented for planar maps only")
        if abs(m.normal[1]) > 1e-12 or m.normal[0] <= 0.0:
            raise ValueError("polygon images require the switching line x = 0")
        return m.A_left, m.A_right
    raise TypeError("expected NormalForm2D or PWLMap")


def _slice_chain(poly: StarPolygon, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    """Chain of the sub-region with angles in [lo, hi], interpolating the cuts."""
    mask = (poly.angles >= lo - ANGLE_TOL) & (poly.angles <= hi + ANGLE_TOL)
    ang = list(poly.angles[mask])
    rad = list(poly.radii[mask])
    if not ang or ang[0] > lo + ANGLE_TOL:
        ang.insert(0, lo)
        rad.insert(0, poly.radius_at(lo))
    if ang[-1] < hi - ANGLE_TOL:
        ang.append(hi)
        rad.append(poly.radius_at(hi))
    return np.array(ang), np.array(rad)


def _transform_chain(
    angles: np.ndarray, radii: np.ndarray, a: np.ndarray
) -> StarPolygon:
    """Image of a star sub-chain under one invertible matrix.

    The image of the sector spanned by the chain is again a sector of width
    below pi, so image angles are monotone in the chain order (reversed when
    the matrix flips orientation).
    """
    pts = np.column_stack((radii * np.cos(angles), radii * np.sin(angles))) @ a.T
    r = np.hypot(pts[:, 0], pts[:, 1])
    src_area = 0.5 * abs(
        float(np.sum(radii[:-1] * radii[1:] * np.sin(np.diff(angles))))
    )
    if np.any(r <= 1e-12):
        if src_area > EPS_GEOM:
            raise DegenerateImageError("matrix collapsed a polygon piece onto the origin")
        r = np.maximum(r, 1e-300)
    ang = np.arctan2(pts[:, 1], pts[:, 0])
    ang[np.abs(ang) <= ANGLE_TOL] = 0.0
    if np.any(ang < 0.0) or np.any(ang > math.pi + ANGLE_TOL):
        raise ValueError(
            "piece image leaves the upper half-plane; map outside the supported regime"
        )
    if ang.size >= 2 and ang[-1] < ang[0]:
        ang = ang[::-1]
        r = r[::-1]
    out = StarPolygon(ang, r)
    if src_area > EPS_GEOM and out.area() < EPS_GEOM:
        raise DegenerateImageError("near-singular matrix: image area collapsed")
    return out


def image_polygon(m: NormalForm2D | PWLMap, poly: StarPolygon) -> StarPolygon:
    """Set image of a star region under the piecewise map.

    The region is cut along the switching ray at angle pi/2; the x >= 0 piece
    is mapped by the right matrix, the x <= 0 piece by the left one (they
    agree on the cut by continuity), and the two image stars are united.
    The image of a star region equals the image of its boundary chain filled
    radially, again by homogeneity.
    """
    a_left, a_right = _resolve_matrices(m)
    lo, hi = poly.support
    pieces: list[StarPolygon] = []
    if lo < HALF_PI - ANGLE_TOL:
        ang, rad = _slice_chain(poly, lo, min(hi, HALF_PI))
        if ang[-1] - ang[0] > ANGLE_TOL or len(ang) > 1:
            pieces.append(_transform_chain(ang, rad, a_right))
    if hi > HALF_PI + ANGLE_TOL:
        ang, rad = _slice_chain(poly, max(lo, HALF_PI), hi)
        if ang[-1] - ang[0] > ANGLE_TOL or len(ang) > 1:
            pieces.append(_transform_chain(ang, rad, a_left))
    if not pieces:
        # Degenerate input: a single ray (possibly exactly the switching ray).
        pts = poly.points @ (a_right if lo >= HALF_PI - ANGLE_TOL else a_left).T
        return StarPolygon.from_vertices(pts)
    if len(pieces) == 1:
        return pieces[0]
    return union_star(pieces[0], pieces[1])


class CertificateStatus(Enum):
    STABLE = "Stable"
    NOT_DECIDED = "NotDecided"
    INSTABILITY_WITNESS = "InstabilityWitness"


@dataclass(frozen=True)
class Ga92Verdict:
    """Outcome of the forward-image stability certificate.

    ``m`` is the first generation whose accumulated region maps into itself,
    ``k`` the first extra iterate that clears the unit segment; residuals
    list the worst radial protrusion of the image at each generation tried.
    An instability witness is a periodic ray orbit whose average log-stretch
    is positive, which rules out Lyapunov stability outright.
    """

    status: CertificateStatus
    m: int | None
    k: int | None
    m_max: int
    k_max: int
    witness: PeriodicOrbit | None
    containment_residuals: tuple[float, ...]
    omega_final: StarRegion | None
    note: str = ""


def _check_certificate_regime(params: NormalForm2D) -> None:
    if not (params.delta_L > 0.0 and params.delta_R < 0.0):
        raise RegimeError("certificate requires delta_L > 0 and delta_R < 0")
    if not params.tau_L < params.left_spiral_bound:
        raise RegimeError(
            "certificate requires tau_L < 2*sqrt(delta_L) (rotating left half)"
        )


def stability_iteration(
    params: NormalForm2D,
    seed: StarPolygon,
    m_max: int = 30,
    k_max: int | None = None,
) -> Ga92Verdict:
    """Run the containment/separation iteration from an arbitrary seed region.

    Exposed separately because the outcome is homogeneous: scaling the seed
    leaves the decision unchanged (only m and k may shift).  The public
    entry point ``ga92`` seeds with the unit triangle.
    """
    _check_certificate_regime(params)
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    if k_max is None:
        k_max = 2 * m_max
    if k_max < 1:
        raise ValueError("k_max must be at least 1")

    witnesses = [
        o for o in periodic_orbits_G(params, p_max=6) if o.lambda_value > LAMBDA_POS_TOL
    ]
    if witnesses:
        worst = max(witnesses, key=lambda o: o.lambda_value)
        return Ga92Verdict(
            CertificateStatus.INSTABILITY_WITNESS,
            None,
            None,
            m_max,
            k_max,
            worst,
            (),
            None,
            note="periodic ray orbit with positive average log-stretch",
        )

    delta = seed
    omega = seed
    residuals: list[float] = []
    for m in range(1, m_max + 1):
        delta = image_polygon(params, delta)
        omega = union_star(omega, delta)
        image_omega = image_polygon(params, omega)
        prot = containment_protrusion(omega, image_omega)
        residuals.append(prot)
        if prot <= EPS_GEOM:
            # Certify only with a margin well below the containment slack;
            # protrusions between the two thresholds sit too close to the
            # stability boundary to trust at this precision.
            if prot > EPS_GEOM / 10.0:
                return Ga92Verdict(
                    CertificateStatus.NOT_DECIDED,
                    m,
                    None,
                    m_max,
                    k_max,
                    None,
                    tuple(residuals),
                    omega,
                    note="containment holds only marginally; parameters sit near the boundary",
                )
            current = image_omega
            for k in range(1, k_max + 1):
                if k > 1:
                    current = image_polygon(params, current)
                if separated_from_gamma(current):
                    return Ga92Verdict(
                        CertificateStatus.STABLE,
                        m,
                        k,
                        m_max,
                        k_max,
                        None,
                        tuple(residuals),
                        omega,
                    )
            return Ga92Verdict(
                CertificateStatus.NOT_DECIDED,
                m,
                None,
                m_max,
                k_max,
                None,
                tuple(residuals),
                omega,
                note="trapped region found but no iterate cleared the unit segment",
            )
    return Ga92Verdict(
        CertificateStatus.NOT_DECIDED,
        None,
        None,
        m_max,
        k_max,
        None,
        tuple(residuals),
        omega,
        note="no generation mapped into the accumulated region within the budget",
    )


def ga92(params: NormalForm2D, m_max: int = 30, k_max: int | None = None) -> Ga92Verdict:
    """Decide asymptotic stability of the origin by forward polygon images.

    Requires delta_L > 0 > delta_R and tau_L < 2*sqrt(delta_L).  First scans
    periodic ray orbits (period <= 6) for an instability witness; otherwise
    iterates the seed triangle, accumulating the union and testing at each
    generation whether the union maps into itself and, once it does, whether
    some further iterate clears the segment from (1,0) to (0,1).  Both checks
    passing certifies asymptotic stability; budgets exhausted means NotDecided.
    """
    return stability_iteration(params, StarPolygon.unit_triangle(), m_max, k_max)


def delta_sequence(params: NormalForm2D | PWLMap, n: int) -> list[StarPolygon]:
    """[seed, image, image^2, ..., image^n] of the unit triangle."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = [StarPolygon.unit_triangle()]
    for _ in range(n):
        out.append(image_polygon(params, out[-1]))
    return out


def write_polygon_csv(polys: list[StarPolygon], path) -> None:
    """Dump polygon vertex loops as CSV rows (generation, vertex_index, x, y)."""
    with open(path, "w", newline="\n") as fh:
        fh.write("generation,vertex_index,x,y\n")
        for g, poly in enumerate(polys):
            for i, (x, y) in enumerate(poly.vertices):
                fh.write(f"{g},{i},{float(x)!r},{float(y)!r}\n")
