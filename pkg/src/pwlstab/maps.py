"""Piecewise-linear continuous maps with a single switching hyperplane.

A map g(x) = A_left x for b.x <= 0 and A_right x for b.x >= 0 is continuous
exactly when the two matrices agree on the hyperplane b.x = 0, i.e. when
A_left - A_right = c b^T for some column c.  Everything in this package
builds on that continuity structure and on positive homogeneity
g(alpha x) = alpha g(x) for alpha >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

import numpy as np

CONTINUITY_TOL = 1e-12

# Orbit classification defaults: relative radius thresholds and step budget.
CONV_RADIUS = 1e-9
DIV_RADIUS = 1e9
ORBIT_BUDGET = 10_000


@dataclass(frozen=True)
class PWLMap:
    """Continuous piecewise-linear map of R^d with switching plane normal.x = 0.

    Points with normal.x <= 0 are mapped by ``A_left``, points with
    normal.x >= 0 by ``A_right``.  The constructor rejects matrix pairs whose
    difference is not (numerically) rank one with row space spanned by
    ``normal``, since such pairs define a discontinuous map.
    """

    A_left: np.ndarray
    A_right: np.ndarray
    normal: np.ndarray

    def __post_init__(self) -> None:
        al = np.asarray(self.A_left, dtype=float)
        ar = np.asarray(self.A_right, dtype=float)
        b = np.asarray(self.normal, dtype=float)
        if al.ndim != 2 or al.shape[0] != al.shape[1]:
            raise ValueError("A_left must be a square matrix")
        if ar.shape != al.shape:
            raise ValueError("A_left and A_right must have the same shape")
        d = al.shape[0]
        if b.shape != (d,):
            raise ValueError("normal must be a vector of matching dimension")
        bn = float(b @ b)
        if bn == 0.0:
            raise ValueError("normal must be nonzero")
        # Continuity: the difference must vanish on the plane b.x = 0, i.e.
        # M = c b^T.  The best rank-one candidate is c = M b / (b.b); anything
        # left over is a genuine discontinuity.
        m = al - ar
        resid = m - np.outer(m @ b / bn, b)
        scale = max(1.0, float(np.abs(al).max()), float(np.abs(ar).max()))
        if float(np.abs(resid).max()) > CONTINUITY_TOL * scale:
            raise ValueError(
                "matrices disagree on the switching plane; map would be discontinuous"
            )
        object.__setattr__(self, "A_left", al)
        object.__setattr__(self, "A_right", ar)
        object.__setattr__(self, "normal", b)

    @property
    def dim(self) -> int:
        return self.A_left.shape[0]


@dataclass(frozen=True)
class NormalForm2D:
    """Parameter quadruple (tau_L, delta_L, tau_R, delta_R) of the planar form.

    Each side acts by the companion matrix [[tau, 1], [-delta, 0]] and the
    switching line is x = 0.  Construction is allowed for any parameters;
    the individual analyses check their own regime requirements
    (``delta_L > 0 > delta_R`` for the sphere decomposition work).
    """

    tau_L: float
    delta_L: float
    tau_R: float
    delta_R: float

    def matrix(self, side: str) -> np.ndarray:
        if side == "left":
            return np.array([[self.tau_L, 1.0], [-self.delta_L, 0.0]])
        if side == "right":
            return np.array([[self.tau_R, 1.0], [-self.delta_R, 0.0]])
        raise ValueError("side must be 'left' or 'right'")

    def pwl(self) -> PWLMap:
        return PWLMap(self.matrix("left"), self.matrix("right"), np.array([1.0, 0.0]))

    @property
    def in_sign_regime(self) -> bool:
        """delta_L > 0 > delta_R: the regime of the angular-decomposition analyses."""
        return self.delta_L > 0.0 and self.delta_R < 0.0

    @property
    def left_spiral_bound(self) -> float:
        """tau_L threshold 2*sqrt(delta_L) separating rotation from invariant rays."""
        return 2.0 * math.sqrt(self.delta_L) if self.delta_L > 0 else math.inf


def make_normal_form(
    tau_L: float, delta_L: float, tau_R: float, delta_R: float
) -> PWLMap:
    """Build the planar normal form map from its trace/determinant quadruple."""
    return NormalForm2D(tau_L, delta_L, tau_R, delta_R).pwl()


def eval_pwl(m: PWLMap, x: np.ndarray) -> np.ndarray:
    """Apply the map once.  On the switching plane both branches agree."""
    x = np.asarray(x, dtype=float)
    a = m.A_left if float(m.normal @ x) <= 0.0 else m.A_right
    return a @ x


StepFunction = Union[PWLMap, Callable[[np.ndarray], np.ndarray]]


class OrbitStatus(Enum):
    CONVERGED = "ConvergedToOrigin"
    DIVERGED = "Diverged"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class OrbitVerdict:
    """Outcome of iterating a single point.

    ``log_norm_slope`` is the least-squares slope of ln|x_n| against n over
    the whole recorded trajectory, a crude per-step growth rate.  It is 0.0
    when fewer than two finite norms were seen.
    """

    status: OrbitStatus
    steps: int
    final_norm: float
    log_norm_slope: float


def orbit(
    step: StepFunction,
    x0: np.ndarray,
    budget: int = ORBIT_BUDGET,
    conv_radius: float = CONV_RADIUS,
    div_radius: float = DIV_RADIUS,
) -> OrbitVerdict:
    """Iterate ``step`` from x0 and classify convergence to the origin.

    Thresholds are relative to |x0|: converged once |x_n| < conv_radius*|x0|,
    diverged once |x_n| > div_radius*|x0| or the iterate stops being finite.
    ``step`` may be a PWLMap or any callable x -> x'.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    fn = (lambda y: eval_pwl(step, y)) if isinstance(step, PWLMap) else step
    x = np.asarray(x0, dtype=float)
    norm0 = float(np.linalg.norm(x))
    if norm0 == 0.0:
        return OrbitVerdict(OrbitStatus.CONVERGED, 0, 0.0, 0.0)

    lo = conv_radius * norm0
    hi = div_radius * norm0
    lognorms = [math.log(norm0)]
    status = OrbitStatus.UNDECIDED
    steps = 0
    norm = norm0
    for _ in range(budget):
        x = np.asarray(fn(x), dtype=float)
        steps += 1
        norm = float(np.linalg.norm(x))
        if not math.isfinite(norm):
            status = OrbitStatus.DIVERGED
            break
        if norm > 0.0:
            lognorms.append(math.log(norm))
        if norm < lo:
            status = OrbitStatus.CONVERGED
            break
        if norm > hi:
            status = OrbitStatus.DIVERGED
            break

    slope = 0.0
    if len(lognorms) >= 2:
        slope = float(np.polyfit(np.arange(len(lognorms)), np.array(lognorms), 1)[0])
    return OrbitVerdict(status, steps, norm, slope)


@dataclass(frozen=True)
class EigenPair2:
    """Eigenvalue/eigenvector of a 2x2 companion matrix [[tau,1],[-delta,0]].

    ``vector`` is (1, value - tau) normalized; for a complex pair it is the
    complex eigenvector and ``angle`` is None.  For real pairs ``angle`` is
    the direction of the eigenvector folded into [0, pi).  ``degenerate``
    flags a repeated root (tau^2 = 4 delta), where the matrix has a single
    eigendirection and both returned pairs coincide.
    """

    value: complex
    vector: np.ndarray
    angle: float | None
    degenerate: bool

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0


def _direction_angle(slope: float) -> float:
    """Angle in [0, pi) of the direction (1, slope)."""
    a = math.atan(slope)
    return a if a >= 0.0 else a + math.pi


def eig2(a: np.ndarray) -> tuple[EigenPair2, EigenPair2]:
    """Closed-form eigendecomposition of a 2x2 companion matrix.

    Returns the pair ordered (plus-branch, minus-branch) by the sign in
    tau/2 +- sqrt(tau^2/4 - delta).  Raises ValueError when the matrix is
    not in companion form, since the closed form below hard-codes it.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (2, 2):
        raise ValueError("eig2 expects a 2x2 matrix")
    if abs(a[0, 1] - 1.0) > 1e-12 or abs(a[1, 1]) > 1e-12:
        raise ValueError("eig2 expects companion form [[tau, 1], [-delta, 0]]")
    tau = float(a[0, 0])
    delta = float(-a[1, 0])

    disc = tau * tau / 4.0 - delta
    if disc < 0.0:
        root = math.sqrt(-disc)
        lam_p = complex(tau / 2.0, root)
        lam_m = complex(tau / 2.0, -root)
        vec_p = np.array([1.0, lam_p - tau], dtype=complex)
        vec_m = np.array([1.0, lam_m - tau], dtype=complex)
        vec_p = vec_p / np.linalg.norm(vec_p)
        vec_m = vec_m / np.linalg.norm(vec_m)
        return (
            EigenPair2(lam_p, vec_p, None, False),
            EigenPair2(lam_m, vec_m, None, False),
        )

    root = math.sqrt(disc)
    degenerate = root == 0.0
    out = []
    for lam in (tau / 2.0 + root, tau / 2.0 - root):
        v = np.array([1.0, lam - tau])
        v = v / np.linalg.norm(v)
        out.append(EigenPair2(complex(lam, 0.0), v, _direction_angle(lam - tau), degenerate))
    return out[0], out[1]


def perturbed_map(
    m: PWLMap, c: float, gamma: float, direction: np.ndarray | None = None
) -> Callable[[np.ndarray], np.ndarray]:
    """Return x -> g(x) + c |x|^(1+gamma) u, a higher-than-linear-order bump.

    gamma > 0 is required so the added term is o(|x|) near the origin; the
    linear part then still decides local stability.  ``direction`` defaults
    to the first coordinate axis.
    """
    if gamma <= 0.0:
        raise ValueError("gamma must be positive; the term must vanish faster than |x|")
    u = np.zeros(m.dim)
    u[0] = 1.0
    if direction is not None:
        u = np.asarray(direction, dtype=float)
        if u.shape != (m.dim,):
            raise ValueError("direction must match the map dimension")

    def step(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        return eval_pwl(m, x) + (c * r ** (1.0 + gamma)) * u

    return step
