"""Numerical analysis of the level curves Im(e^{-i theta} f(z)) = 0.

Angles are taken mod pi, with coset representatives in [0, pi).  For a
square-free monic f of degree n and a nonsingular angle theta, the curve meets
a large circle S_r in 2n points near the asymptote directions (k pi + theta)/n.
Boundary points are labeled by asymptote index, which realizes both the
counterclockwise-from-the-positive-real-axis rule and its theta = 0 exception
(start at the point on the positive-real asymptote).  Components are traced by
integrating z' = +/- e^{i theta} conj(f'(z)) / |f'(z)|, along which
Im(e^{-i theta} f) stays zero and Re(e^{-i theta} f) moves monotonically.

Residuals recorded here are scale-normalized: |Im(e^{-i theta} f(z))| divided
by (1 + |z|)^n, the same normalization the root finder uses; absolute
tolerances are meaningless against the r^n growth of a monic polynomial.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .combinatorics import Basketball, Matching, interleave, validate_basketball
from .errors import (
    BracketLost,
    DegeneratePolynomial,
    ExitMismatch,
    InvalidInput,
    NearSingular,
    NecklaceDegenerate,
    NotABasketball,
    RadiusSearchFailed,
    SingularTheta,
    StepLimit,
)
from .necklace import Necklace, validate_necklace
from .polynomials import MonicPolynomial, polynomial_roots

TWO_PI = 2.0 * math.pi


def reduce_angle(theta: float) -> float:
    """Coset representative of theta in [0, pi)."""
    t = math.fmod(theta, math.pi)
    if t < 0:
        t += math.pi
    return 0.0 if t == math.pi else t


def angle_distance_mod_pi(a: float, b: float) -> float:
    d = abs(reduce_angle(a) - reduce_angle(b))
    return min(d, math.pi - d)


def _circ_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class SingularAngleSet:
    """Critical points of f with the angles arg f(alpha) mod pi at which the
    level curve through alpha is singular; degenerate marks a vanishing
    critical value (a repeated root of f)."""

    critical_points: tuple[complex, ...]
    angles: tuple[float, ...]
    degenerate: bool

    def min_distance(self, theta: float) -> float:
        if not self.angles:
            return math.inf
        return min(angle_distance_mod_pi(theta, a) for a in self.angles)


def singular_angles(f: MonicPolynomial, value_tol: float = 1e-9) -> SingularAngleSet:
    """Angles (mod pi) at which the level curve of f is singular: at most n-1
    of them, one per critical point with nonvanishing critical value."""
    if f.degree == 1:
        return SingularAngleSet((), (), False)
    crits = polynomial_roots(f.monic_derivative())
    angles = []
    degenerate = False
    for alpha in crits:
        value = f(alpha)
        if abs(value) <= value_tol * (1.0 + abs(alpha)) ** f.degree:
            degenerate = True
        else:
            angles.append(reduce_angle(cmath.phase(value)))
    return SingularAngleSet(tuple(crits), tuple(sorted(angles)), degenerate)


@dataclass(frozen=True)
class TraceConfig:
    radius: float
    ode_tol: float = 1e-9
    newton_tol: float = 1e-10
    min_fprime: float = 1e-8
    max_steps: int = 1_000_000
    singular_angle_margin: float = 1e-3

    def __post_init__(self) -> None:
        for name in ("radius", "ode_tol", "newton_tol", "min_fprime",
                     "max_steps", "singular_angle_margin"):
            if getattr(self, name) <= 0:
                raise InvalidInput(f"{name} must be positive")

    def to_json_dict(self) -> dict:
        return {
            "radius": self.radius,
            "ode_tol": self.ode_tol,
            "newton_tol": self.newton_tol,
            "min_fprime": self.min_fprime,
            "max_steps": self.max_steps,
            "singular_angle_margin": self.singular_angle_margin,
        }


_DEFAULTS = TraceConfig(radius=1.0)


@dataclass(frozen=True)
class BoundaryPoint:
    label: int
    angle: float
    point: complex


@dataclass(frozen=True)
class ComponentTrace:
    entry: int
    exit: int
    steps: int
    max_residual: float


@dataclass(frozen=True)
class AnalysisCertificate:
    """Evidence trail for one extracted matching: the certified radius, the 2n
    labeled boundary points, and per-component trace statistics."""

    theta: float
    radius: float
    boundary: tuple[BoundaryPoint, ...]
    traces: tuple[ComponentTrace, ...]
    config: TraceConfig

    def to_json_dict(self) -> dict:
        return {
            "theta": repr(self.theta),
            "radius": self.radius,
            "boundary_points": [
                {
                    "label": b.label,
                    "angle": b.angle,
                    "point": [b.point.real, b.point.imag],
                }
                for b in self.boundary
            ],
            "traces": [
                {
                    "entry": t.entry,
                    "exit": t.exit,
                    "steps": t.steps,
                    "max_residual": t.max_residual,
                }
                for t in self.traces
            ],
            "tolerances": self.config.to_json_dict(),
        }


def _circle_crossings(f: MonicPolynomial, theta: float, r: float):
    """Refined zeros of lambda(phi) = Im(e^{-i theta} f(r e^{i phi})) together
    with the slope |d lambda / d phi| at each; None when the sampled sign
    pattern is unusable (wrong count or an exact-zero sample)."""
    n = f.degree
    nsamples = max(64 * n, 256)
    # Offset grid: avoids landing exactly on symmetric zeros.
    phis = (np.arange(nsamples) + 0.318) * (TWO_PI / nsamples)
    rot = cmath.exp(-1j * theta)
    lam = (rot * f(r * np.exp(1j * phis))).imag
    if np.any(lam == 0.0):
        return None
    signs = np.sign(lam)
    flips = np.nonzero(signs != np.roll(signs, -1))[0]
    if len(flips) != 2 * n:
        return None

    def lam_scalar(phi: float) -> float:
        return (rot * f(r * cmath.exp(1j * phi))).imag

    def dlam_scalar(phi: float) -> float:
        z = r * cmath.exp(1j * phi)
        return (rot * 1j * z * f.eval_derivative(z)).imag

    crossings = []
    for k in flips:
        lo = phis[k]
        hi = phis[(k + 1) % nsamples] if k + 1 < nsamples else phis[0] + TWO_PI
        flo = lam[k]
        # Bisection to a tight bracket, then Newton polish.
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm = lam_scalar(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        phi = 0.5 * (lo + hi)
        for _ in range(4):
            d = dlam_scalar(phi)
            if d == 0.0:
                break
            step = lam_scalar(phi) / d
            if abs(step) > TWO_PI / nsamples:
                break
            phi -= step
        crossings.append((phi % TWO_PI, abs(dlam_scalar(phi))))
    return crossings


def _assign_labels(crossings, n: int, theta: float):
    """Map each crossing to its nearest asymptote (k pi + theta)/n; None unless
    the assignment is within pi/(4n) and bijective."""
    tol = math.pi / (4 * n)
    assigned: dict[int, tuple[float, float]] = {}
    for phi, slope in crossings:
        k = round((phi * n - theta) / math.pi) % (2 * n)
        target = (k * math.pi + theta) / n % TWO_PI
        if _circ_distance(phi, target) > tol or k in assigned:
            return None
        assigned[k] = (phi, slope)
    if len(assigned) != 2 * n:
        return None
    return assigned


def _certify_radius(f: MonicPolynomial, theta: float, r: float):
    """2n transversal crossings, each within pi/(4n) of a distinct asymptote."""
    n = f.degree
    crossings = _circle_crossings(f, theta, r)
    if crossings is None:
        return None
    assigned = _assign_labels(crossings, n, theta)
    if assigned is None:
        return None
    # Transversality: the dominant term gives slopes near n * r^n; demand a
    # generous fraction of that so tangencies force another doubling.
    slope_floor = 0.05 * n * r**n
    if any(slope < slope_floor for _, slope in assigned.values()):
        return None
    return assigned


def safe_radius(
    f: MonicPolynomial,
    theta: float,
    base: TraceConfig | None = None,
    min_radius: float | None = None,
    singular: SingularAngleSet | None = None,
) -> TraceConfig:
    """Certified trace radius: start at four times the Cauchy root bound and
    double until the circle meets the curve transversally in exactly 2n points
    near its asymptotes."""
    theta = reduce_angle(theta)
    cfg = base if base is not None else _DEFAULTS
    if singular is None:
        singular = singular_angles(f)
    if singular.degenerate:
        raise DegeneratePolynomial(
            "polynomial has a repeated root; every level curve is singular"
        )
    if singular.min_distance(theta) < cfg.singular_angle_margin:
        raise SingularTheta(
            f"theta={theta!r} is within {cfg.singular_angle_margin} of a singular angle"
        )
    r = 4.0 * f.cauchy_bound
    if min_radius is not None:
        r = max(r, min_radius)
    for _ in range(21):
        if _certify_radius(f, theta, r) is not None:
            return replace(cfg, radius=r)
        r *= 2.0
    raise RadiusSearchFailed(
        f"no certified radius within 20 doublings (theta={theta!r})"
    )


def boundary_points(
    f: MonicPolynomial, theta: float, cfg: TraceConfig
) -> tuple[BoundaryPoint, ...]:
    """The 2n labeled intersections of the curve with the circle of cfg.radius,
    labeled counterclockwise by asymptote index starting from the positive real
    axis (for theta = 0 this starts at the positive-real asymptote's point)."""
    theta = reduce_angle(theta)
    n = f.degree
    assigned = _certify_radius(f, theta, cfg.radius)
    if assigned is None:
        raise BracketLost(
            f"boundary certification failed at radius {cfg.radius}; re-certify"
        )
    return tuple(
        BoundaryPoint(k, assigned[k][0], cfg.radius * cmath.exp(1j * assigned[k][0]))
        for k in sorted(assigned)
    )


def trace_component(
    f: MonicPolynomial,
    theta: float,
    start: BoundaryPoint,
    cfg: TraceConfig,
    boundary: tuple[BoundaryPoint, ...],
) -> ComponentTrace:
    """Follow the curve component entering at `start` until it exits the disk;
    returns the exit label with trace statistics.

    Each accepted step is an RK4 move along the unit tangent followed by a
    Newton projection back onto the level set; Re(e^{-i theta} f) must move
    monotonically, and |f'| must stay above cfg.min_fprime.
    """
    theta = reduce_angle(theta)
    n = f.degree
    r = cfg.radius
    rot = cmath.exp(-1j * theta)
    pull = 1j * cmath.exp(1j * theta)  # direction of grad Im(e^{-i theta} f)
    dc = f.derivative_coeffs()
    d2c = tuple(k * dc[k] for k in range(1, len(dc)))
    mags = tuple(abs(a) for a in f.coeffs) + (1.0,)
    eps_floor = 8.0 * n * 2.220446049250313e-16

    def second_derivative(z: complex) -> complex:
        acc = 0j
        for a in reversed(d2c):
            acc = acc * z + a
        return acc

    def value_scale(z: complex) -> float:
        # Tolerances compare against (1+|z|)^n, floored at the roundoff level
        # of the polynomial evaluation itself (which dominates at small |z|
        # when coefficients are huge).
        az = abs(z)
        acc = 0.0
        for m in reversed(mags):
            acc = acc * az + m
        return max((1.0 + az) ** n, eps_floor * acc / cfg.newton_tol)

    def residual(z: complex) -> float:
        return abs((rot * f(z)).imag) / value_scale(z)

    def tangent(z: complex) -> complex:
        d = f.eval_derivative(z)
        ad = abs(d)
        if ad < cfg.min_fprime:
            raise NearSingular(f"|f'({z!r})| = {ad:.3e} below min_fprime")
        return cmath.exp(1j * theta) * d.conjugate() / ad

    def project(z: complex, budget: int = 8) -> complex | None:
        for _ in range(budget):
            val = (rot * f(z)).imag
            if abs(val) <= cfg.newton_tol * value_scale(z):
                return z
            d = f.eval_derivative(z)
            ad2 = abs(d) ** 2
            if ad2 == 0.0:
                return None
            z = z - val * pull * d.conjugate() / ad2
        val = (rot * f(z)).imag
        if abs(val) <= cfg.newton_tol * value_scale(z):
            return z
        return None

    z = start.point
    t0 = tangent(z)
    inward = (z.conjugate() * t0).real / abs(z)
    if abs(inward) < 1e-8:
        raise BracketLost(f"tangential entry at label {start.label}")
    sigma = 1.0 if inward < 0 else -1.0

    def field(z: complex) -> complex:
        return sigma * tangent(z)

    h = r / 256.0
    h_max = r / 16.0
    steps = 0
    max_residual = 0.0
    u_prev = (rot * f(z)).real
    armed = False
    exit_tol = math.pi / (8 * n)

    while steps < cfg.max_steps:
        # Step floor is local: positions far inside a huge certified disk
        # still admit small steps around small-|z| features.
        h_min = 1e-13 * max(abs(z), 1e-100)
        if h < h_min:
            raise StepLimit(f"step size underflow at step {steps}")
        # Feature-size cap: near a critical point two branches pass within
        # O(|f'|/|f''|) of each other, and larger steps can jump branches.
        d2 = abs(second_derivative(z))
        if d2 > 0.0:
            cap = 0.2 * abs(f.eval_derivative(z)) / d2
            if cap < h_min:
                raise StepLimit(f"feature size underflow at step {steps}")
            h_step = min(h, cap)
        else:
            h_step = h
        k1 = field(z)
        k2 = field(z + 0.5 * h_step * k1)
        k3 = field(z + 0.5 * h_step * k2)
        k4 = field(z + h_step * k3)
        z_pred = z + (h_step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        z_new = project(z_pred)
        if z_new is None or abs(z_new - z_pred) > 0.1 * h_step:
            h = 0.5 * h_step
            continue
        correction = abs(z_new - z_pred)
        steps += 1
        z = z_new
        max_residual = max(max_residual, residual(z))
        u_now = (rot * f(z)).real
        scale = value_scale(z)
        if sigma * (u_now - u_prev) < -1e-6 * scale:
            raise StepLimit(
                f"Re(e^(-i theta) f) reversed along the trace at step {steps}"
            )
        u_prev = u_now
        if correction < 0.01 * h_step:
            h = min(1.6 * h, h_max)
        if not armed:
            if abs(z) <= r * (1.0 - 1e-4) or _circ_distance(
                cmath.phase(z) % TWO_PI, start.angle
            ) > math.pi / (4 * n):
                armed = True
            elif abs(z) > 1.01 * r:
                raise ExitMismatch(
                    f"trace from label {start.label} left the disk without entering"
                )
        if armed and abs(z) >= r:
            break
    else:
        raise StepLimit(f"exceeded max_steps={cfg.max_steps}")

    phi_exit = cmath.phase(z) % TWO_PI
    best = min(boundary, key=lambda b: _circ_distance(phi_exit, b.angle))
    if _circ_distance(phi_exit, best.angle) > exit_tol:
        raise ExitMismatch(
            f"exit angle {phi_exit:.6f} matches no labeled point within {exit_tol:.6f}"
        )
    if best.label == start.label:
        raise ExitMismatch(f"trace from label {start.label} exited where it entered")
    return ComponentTrace(start.label, best.label, steps, max_residual)


def matching_of(
    f: MonicPolynomial,
    theta: float,
    base: TraceConfig | None = None,
    min_radius: float | None = None,
) -> tuple[Matching, AnalysisCertificate]:
    """Trace every component of the curve at angle theta and return the induced
    noncrossing matching on the boundary labels, with its certificate."""
    theta = reduce_angle(theta)
    singular = singular_angles(f)
    cfg = safe_radius(f, theta, base=base, min_radius=min_radius, singular=singular)
    boundary = boundary_points(f, theta, cfg)
    traces: list[ComponentTrace] = []
    matched: dict[int, int] = {}
    for bp in boundary:
        if bp.label in matched:
            continue
        trace = trace_component(f, theta, bp, cfg, boundary)
        if trace.exit in matched:
            raise ExitMismatch(
                f"label {trace.exit} reached by two distinct traces"
            )
        matched[bp.label] = trace.exit
        matched[trace.exit] = bp.label
        traces.append(trace)
    matching = Matching(tuple((t.entry, t.exit) for t in traces))
    if not matching.is_noncrossing():
        raise ExitMismatch("traced matching is not noncrossing; exits misidentified")
    certificate = AnalysisCertificate(
        theta, cfg.radius, boundary, tuple(traces), cfg
    )
    return matching, certificate


def basketball_of(
    f: MonicPolynomial,
    alpha: float,
    beta: float,
    base: TraceConfig | None = None,
) -> tuple[Basketball, tuple[AnalysisCertificate, AnalysisCertificate]]:
    """Interleave the matchings at angles alpha < beta onto [0, 4n-1]; the
    alpha-curve takes the even labels.  Validation failure of the result is a
    numerical defect, surfaced as NotABasketball."""
    alpha = reduce_angle(alpha)
    beta = reduce_angle(beta)
    if not alpha < beta:
        raise InvalidInput(f"angles must satisfy alpha < beta, got {alpha}, {beta}")
    m_alpha, cert_alpha = matching_of(f, alpha, base=base)
    m_beta, cert_beta = matching_of(f, beta, base=base)
    try:
        basketball = validate_basketball(interleave(m_alpha, m_beta))
    except InvalidInput as exc:
        raise NotABasketball(
            f"extracted bimatching failed validation: {exc}"
        ) from exc
    return basketball, (cert_alpha, cert_beta)


def necklace_of(
    f: MonicPolynomial, base: TraceConfig | None = None
) -> Necklace:
    """Matchings over the smooth arcs between consecutive singular angles,
    rooted at the arc containing theta = 0 (or just past the smallest singular
    angle when 0 itself is singular)."""
    if f.degree < 2:
        raise InvalidInput("necklace extraction needs degree >= 2")
    cfg = base if base is not None else _DEFAULTS
    singular = singular_angles(f)
    if singular.degenerate:
        raise NecklaceDegenerate("polynomial has a repeated root")
    angles = sorted(singular.angles)
    n = f.degree
    if len(angles) != n - 1:
        raise NecklaceDegenerate(
            f"expected {n - 1} singular angles, found {len(angles)}"
        )
    gaps = [angles[i + 1] - angles[i] for i in range(len(angles) - 1)]
    gaps.append(angles[0] + math.pi - angles[-1])
    if min(gaps) <= 2 * cfg.singular_angle_margin:
        raise NecklaceDegenerate(
            f"singular angles separated by {min(gaps):.3e} <= twice the margin"
        )

    zero_singular = min(
        angle_distance_mod_pi(a, 0.0) for a in angles
    ) <= cfg.singular_angle_margin

    # Arcs as unreduced intervals; the wrap arc spans the 0/pi boundary.
    middles = [(angles[i], angles[i + 1]) for i in range(len(angles) - 1)]
    wrap = (angles[-1], angles[0] + math.pi)
    ordered = middles + [wrap] if zero_singular else [wrap] + middles

    def arc_value(lo: float, hi: float) -> Matching:
        # Matching in the labels of the arc's low side (theta < pi); sampling
        # past the wrap sees every label shifted up by one.
        u = 0.5 * (lo + hi)
        sampled, _ = matching_of(f, reduce_angle(u), base=base)
        return sampled.shift(-1) if u >= math.pi else sampled

    matchings = [arc_value(lo, hi) for lo, hi in ordered]
    if not zero_singular:
        matchings[0] = matchings[0].shift(1)
    return validate_necklace(tuple(matchings))
