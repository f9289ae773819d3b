"""Constructive realization of basketballs by polynomials.

Any basketball of order n is B(f, alpha, beta) for some monic f of degree n.
The construction peels off an ear (after rotating, and possibly half-rotating,
it into the normalized position at labels {4n-2, 4n-1, 0, 1}), realizes the
stripped order-(n-1) basketball recursively, re-inserts the ear as a large
real root, and undoes the symmetry bookkeeping with frame rotations
f_eta(z) = e^{i n eta} f(e^{-i eta} z).

Every root insertion is verified by the forward tracer rather than by any
a-priori bound: the radius doubles until M((z-R)f, theta) equals the
hat-extension of M(f, theta) for every checked angle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .combinatorics import (
    Basketball,
    Matching,
    SymmetryOp,
    apply_symmetry,
    ears,
    hat,
    interleave,
    split,
    validate_basketball,
)
from .curves import (
    basketball_of,
    matching_of,
    reduce_angle,
    safe_radius,
    singular_angles,
)
from .errors import (
    HarmonicaError,
    InsertionFailed,
    InvalidInput,
    MissingOuterPair,
    SingularTheta,
    VerificationFailed,
)
from .polynomials import MonicPolynomial


def rotate_frame(f: MonicPolynomial, eta: float) -> MonicPolynomial:
    """The monic polynomial e^{i n eta} f(e^{-i eta} z); its curve at angle
    n*eta + theta is the rotation by eta of the curve of f at theta."""
    n = f.degree
    return MonicPolynomial(
        tuple(a * cmath.exp(1j * (n - k) * eta) for k, a in enumerate(f.coeffs))
    )


def unhat(matching: Matching) -> Matching:
    """Inverse of hat: drop the outer pair {0, 2n+1} and shift down by one."""
    top = matching.ground_size - 1
    if not matching.has_pair(0, top):
        raise MissingOuterPair(f"matching has no pair {{0, {top}}}")
    pairs = tuple(
        (a - 1, b - 1) for a, b in matching.pairs if (a, b) != (0, top)
    )
    return Matching(pairs)


def insert_root(
    f: MonicPolynomial,
    theta_check: Sequence[float],
    start_factor: float = 16.0,
    max_doublings: int = 8,
) -> tuple[MonicPolynomial, float]:
    """g_R(z) = (z - R) f(z) with R real positive, doubled from start_factor
    times the certified radius of f until the forward tracer confirms
    M(g_R, theta) = hat(M(f, theta)) for every theta in theta_check."""
    thetas = [reduce_angle(t) for t in theta_check]
    singular = singular_angles(f)
    for t in thetas:
        if t == 0.0:
            raise SingularTheta("insertion requires theta in (0, pi)")
    targets = {}
    base_radius = 0.0
    for t in thetas:
        cfg = safe_radius(f, t, singular=singular)
        base_radius = max(base_radius, cfg.radius)
        targets[t] = hat(matching_of(f, t)[0])
    radius = start_factor * base_radius
    for _ in range(max_doublings + 1):
        g = f.multiply_linear(radius)
        try:
            if all(matching_of(g, t)[0] == targets[t] for t in thetas):
                return g, radius
        except HarmonicaError:
            pass
        radius *= 2.0
    raise InsertionFailed(
        f"no insertion radius within {max_doublings} doublings of "
        f"{start_factor} x certified radius"
    )


@dataclass(frozen=True)
class RealizationResult:
    polynomial: MonicPolynomial
    inserted_radii: tuple[float, ...]
    rotation_log: tuple[float, ...]
    verification: Basketball

    def to_json_dict(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json_dict(),
            "inserted_radii": list(self.inserted_radii),
            "rotation_log": list(self.rotation_log),
            "verification": self.verification.to_json_dict(),
        }


def _ear_normalization(basketball: Basketball) -> tuple[int, int, int]:
    """(rotations r, half_rotations h, ear start) moving some ear onto labels
    {4n-2, 4n-1, 0, 1}; r is minimized, ties broken by smallest ear start."""
    period = 4 * basketball.order
    best = None
    for quartet in ears(basketball):
        idx = sorted(quartet[0] + quartet[1])
        gaps = [idx[i + 1] - idx[i] for i in range(3)]
        start = idx[0]
        for i in range(3):
            if gaps[i] != 1:
                start = idx[i + 1]
                break
        if start % 2 == 0:
            r = (start + 2) // 2 % (period // 2)
            h = 0
        else:
            r = (start + 1) // 2 % (period // 2)
            h = 1
        key = (r, start)
        if best is None or key < best[0]:
            best = (key, (r, h, start))
    assert best is not None, "every basketball of order >= 2 has an ear"
    return best[1]


def _realize_at(
    basketball: Basketball,
    alpha: float,
    beta: float,
    radii: list[float],
    rotations: list[float],
) -> MonicPolynomial:
    n = basketball.order
    if n == 1:
        return MonicPolynomial((0j,))
    r, h, _ = _ear_normalization(basketball)
    normalized = apply_symmetry(basketball, SymmetryOp.ROTATION, r)
    if h:
        normalized = apply_symmetry(normalized, SymmetryOp.HALF_ROTATION, 1)
    even_half, odd_half = split(normalized.bimatching)
    stripped = validate_basketball(
        interleave(unhat(even_half), unhat(odd_half))
    )
    if h:
        gamma = 0.5 * (beta - alpha)
        sub_alpha, sub_beta = beta - alpha - gamma, math.pi - gamma
    else:
        sub_alpha, sub_beta = alpha, beta
    inner = _realize_at(stripped, sub_alpha, sub_beta, radii, rotations)
    g, radius = insert_root(inner, (sub_alpha, sub_beta))
    radii.append(radius)
    eta = r * math.pi / n
    if h:
        eta += (alpha + gamma) / n
    if eta:
        g = rotate_frame(g, eta)
    rotations.append(eta)
    return g


def realize(basketball: Basketball, alpha: float, beta: float) -> RealizationResult:
    """Monic polynomial whose basketball at (alpha, beta) is the given one,
    verified by forward analysis before returning."""
    alpha = reduce_angle(alpha)
    beta = reduce_angle(beta)
    if not alpha < beta:
        raise InvalidInput(f"need alpha < beta in [0, pi), got {alpha}, {beta}")
    radii: list[float] = []
    rotations: list[float] = []
    if alpha == 0.0:
        # Work at rotated angles with alpha != 0, then rotate the frame back.
        n = basketball.order
        eta = (math.pi - beta) / (2 * n)
        f = _realize_at(basketball, n * eta, n * eta + beta, radii, rotations)
        f = rotate_frame(f, -eta)
        rotations.append(-eta)
    else:
        f = _realize_at(basketball, alpha, beta, radii, rotations)
    forward, _ = basketball_of(f, alpha, beta)
    if forward != basketball:
        raise VerificationFailed(
            "forward analysis of the constructed polynomial disagrees with the target"
        )
    return RealizationResult(f, tuple(radii), tuple(rotations), forward)
