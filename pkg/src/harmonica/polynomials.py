"""Monic complex polynomials and a simultaneous-iteration root finder.

Coefficients are stored ascending, a_0 .. a_{n-1}, with the leading 1
implicit.  Root residuals are normalized by (1 + |z|)^n so tolerances stay
meaningful for the huge-coefficient products built during realization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NoConvergence

_default_seed = 0


def set_default_seed(seed: int) -> None:
    """Seed for the root finder's perturbation restarts (deterministic by default)."""
    global _default_seed
    _default_seed = int(seed)


@dataclass(frozen=True)
class MonicPolynomial:
    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise InvalidInput("degree must be >= 1")
        object.__setattr__(self, "coeffs", tuple(complex(a) for a in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def __call__(self, z):
        acc = z * 0 + 1.0
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def derivative_coeffs(self) -> tuple[complex, ...]:
        """Full ascending coefficients of f', leading coefficient n included."""
        n = self.degree
        return tuple(k * self.coeffs[k] for k in range(1, n)) + (complex(n),)

    def eval_derivative(self, z):
        acc = z * 0
        for a in reversed(self.derivative_coeffs()):
            acc = acc * z + a
        return acc

    def monic_derivative(self) -> "MonicPolynomial":
        n = self.degree
        if n < 2:
            raise InvalidInput("derivative of a degree-1 polynomial is constant")
        return MonicPolynomial(tuple(k * self.coeffs[k] / n for k in range(1, n)))

    def multiply_linear(self, root: complex) -> "MonicPolynomial":
        """(z - root) * f, monic of degree n+1."""
        full = list(self.coeffs) + [1.0 + 0j]
        out = [-root * full[0]]
        for k in range(1, len(full)):
            out.append(full[k - 1] - root * full[k])
        return MonicPolynomial(tuple(out))

    @property
    def cauchy_bound(self) -> float:
        """1 + max |a_k|, an upper bound for every root modulus."""
        return 1.0 + max(abs(a) for a in self.coeffs)

    @property
    def root_bound(self) -> float:
        """min(Cauchy, Fujiwara) root bound; Fujiwara is far tighter for the
        lopsided products that root insertion builds."""
        n = self.degree
        fuji = 0.0
        for k in range(1, n + 1):
            a = self.coeffs[n - k]
            mag = abs(a) / 2 if k == n else abs(a)
            if mag:
                fuji = max(fuji, mag ** (1.0 / k))
        return min(self.cauchy_bound, 2.0 * fuji) if fuji else 1.0

    def to_json_dict(self) -> dict:
        return {"coeffs": [[a.real, a.imag] for a in self.coeffs]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "MonicPolynomial":
        return cls(tuple(complex(re, im) for re, im in data["coeffs"]))


def _horner(full_ascending: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for a in full_ascending[::-1]:
        acc = acc * z + a
    return acc


def _initial_guesses(coeffs: tuple[complex, ...]) -> np.ndarray:
    """Starting points on circles whose radii come from the upper convex hull
    of (k, log|a_k|).  This keeps simultaneous iteration effective when root
    moduli span many orders of magnitude."""
    n = len(coeffs)
    full = coeffs + (1.0 + 0j,)
    pts = [(k, math.log(abs(full[k]))) for k in range(n + 1) if full[k] != 0]
    hull: list[tuple[int, float]] = []
    for k, y in pts:
        while len(hull) >= 2:
            (k1, y1), (k2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (k - k1) <= (y - y1) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append((k, y))
    radii = np.empty(n)
    pos = 0
    for (k1, y1), (k2, y2) in zip(hull, hull[1:]):
        r = math.exp((y1 - y2) / (k2 - k1))
        radii[pos : pos + (k2 - k1)] = r
        pos += k2 - k1
    angles = 2.0 * np.pi * (np.arange(n) + 0.376) / n
    return radii * np.exp(1j * angles)


def polynomial_roots(
    p: MonicPolynomial,
    tol: float = 1e-12,
    max_iter: int = 500,
    restarts: int = 5,
    seed: int | None = None,
) -> tuple[complex, ...]:
    """All roots of p by Aberth-Ehrlich simultaneous iteration.

    Converged when every normalized residual |p(z)| / (1+|z|)^n is below tol.
    Stagnant sweeps restart from randomly perturbed estimates; raises
    NoConvergence once the restart budget is exhausted.
    """
    # Zero roots are exact: strip them before iterating.
    coeffs = p.coeffs
    zeros_at_origin = 0
    while coeffs and coeffs[0] == 0:
        zeros_at_origin += 1
        coeffs = coeffs[1:]
    if not coeffs:
        return (0j,) * zeros_at_origin
    prefix = (0j,) * zeros_at_origin

    n = len(coeffs)
    if n == 1:
        return tuple(
            sorted(prefix + (-coeffs[0],), key=lambda w: (w.real, w.imag))
        )
    full = np.array(coeffs + (1.0 + 0j,), dtype=complex)
    dfull = full[1:] * np.arange(1, n + 1)
    rng = np.random.default_rng(_default_seed if seed is None else seed)

    guesses = _initial_guesses(coeffs)
    z = guesses.copy()
    mags = np.abs(full)
    eps_floor = 8.0 * n * np.finfo(float).eps

    def converged(zz: np.ndarray, pv: np.ndarray) -> bool:
        # Normalized residual tolerance, with a backward-error floor: accept a
        # root once |p(z)| sits at the roundoff level of its own evaluation.
        tight = np.abs(pv) <= tol * (1.0 + np.abs(zz)) ** n
        floor = np.abs(pv) <= eps_floor * _horner(mags, np.abs(zz))
        return bool(np.all(tight | floor))

    for attempt in range(restarts + 1):
        for _ in range(max_iter):
            pv = _horner(full, z)
            if converged(z, pv):
                return tuple(
                    sorted(prefix + tuple(z.tolist()), key=lambda w: (w.real, w.imag))
                )
            dv = _horner(dfull, z)
            dv = np.where(dv == 0, 1e-300, dv)
            w = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            denom = 1.0 - w * s
            denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
            delta = w / denom
            z = z - delta
            if not np.all(np.isfinite(z)):
                break
            if np.max(np.abs(delta)) < 1e-16 * (1.0 + np.max(np.abs(z))):
                break
        pv = _horner(full, z)
        if np.all(np.isfinite(z)) and converged(z, pv):
            return tuple(
                sorted(prefix + tuple(z.tolist()), key=lambda w: (w.real, w.imag))
            )
        # Stagnation: perturb and retry.
        scale = 1e-3 * (attempt + 1)
        jitter = 1.0 + scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        base = np.where(np.isfinite(z), z, guesses)
        z = base * jitter
    raise NoConvergence(
        f"root finder failed after {restarts} perturbation restarts (degree {n})"
    )
