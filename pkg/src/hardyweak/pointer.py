"""Finite-strength Gaussian arrival-time pointer for post-selected photons.

The pointer wavefunction is f(t) = (2 pi sigma^2)^(-1/4) exp(-t^2/(4 sigma^2)),
so |f|^2 is a normal density of standard deviation sigma and two pointers
displaced by delta overlap by exp(-delta^2 / (8 sigma^2)).  A measured
photon shifts its pointer by gamma when it is H and by epsilon when it is
V; post-selection leaves a small coherent mixture of shifted Gaussians
whose moments interpolate between the strong regime and the weak values.

Two independent routes to every moment are kept side by side: closed-form
pairwise-overlap algebra, and trapezoidal integration on a dense grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .states import StateVector, StructureError
from .weakvalues import arrival_time_operator, weak_value

DEFAULT_N_POINTS = 4096
DEFAULT_PADDING = 8.0
MIN_N_POINTS = 64
MIN_PADDING = 6.0


class GridError(ValueError):
    """The sampling grid cannot support the requested pointer."""


class EmptyPostSelectionError(ValueError):
    """No amplitude survived post-selection; moments are undefined."""


@dataclass(frozen=True)
class PointerSpec:
    """Delays, pointer width, and the sampling grid used per time axis."""

    gamma: float
    epsilon: float
    sigma: float
    t_min: float
    t_max: float
    n_points: int

    def __post_init__(self) -> None:
        if self.sigma <= 0.0:
            raise GridError("sigma must be positive")
        if self.n_points < MIN_N_POINTS:
            raise GridError(f"need at least {MIN_N_POINTS} grid points")
        lo = min(self.gamma, self.epsilon) - MIN_PADDING * self.sigma
        hi = max(self.gamma, self.epsilon) + MIN_PADDING * self.sigma
        if self.t_min > lo or self.t_max < hi:
            raise GridError(
                f"grid [{self.t_min}, {self.t_max}] narrower than required "
                f"[{lo}, {hi}]"
            )

    @classmethod
    def default(
        cls,
        gamma: float = 0.0,
        epsilon: float = 1.0,
        sigma: float = 8.0,
        n_points: int = DEFAULT_N_POINTS,
    ) -> PointerSpec:
        lo = min(gamma, epsilon) - DEFAULT_PADDING * sigma
        hi = max(gamma, epsilon) + DEFAULT_PADDING * sigma
        return cls(gamma, epsilon, sigma, lo, hi, n_points)

    @property
    def weakness_ratio(self) -> float:
        return abs(self.epsilon - self.gamma) / self.sigma

    def grid(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n_points)

    def delay(self, level: str) -> float:
        if level == "H":
            return self.gamma
        if level == "V":
            return self.epsilon
        raise StructureError(f"no pointer delay for level {level!r}")

    def refined(self, factor: int = 2) -> PointerSpec:
        return PointerSpec(
            self.gamma, self.epsilon, self.sigma,
            self.t_min, self.t_max, self.n_points * factor,
        )


def gaussian_amplitude(t: np.ndarray, center: float, sigma: float) -> np.ndarray:
    norm = (2.0 * math.pi * sigma * sigma) ** (-0.25)
    return norm * np.exp(-((t - center) ** 2) / (4.0 * sigma * sigma))


def gaussian_overlap(delta: float, sigma: float) -> float:
    """<f | f shifted by delta> = exp(-delta^2 / (8 sigma^2))."""
    if sigma <= 0.0:
        raise GridError("sigma must be positive")
    return math.exp(-(delta * delta) / (8.0 * sigma * sigma))


@dataclass(frozen=True)
class PointerProfile:
    """Sampled post-selected pointer amplitude on one or two time axes.

    ``terms`` keeps the underlying mixture (per-axis delays with a complex
    coefficient each): it is what the closed-form route consumes.
    ``success_probability`` is the closed-form squared norm; the grid
    integral of |amplitude|^2 must reproduce it to 1e-9 on a sane grid.
    """

    spec: PointerSpec
    measured: tuple[str, ...]
    terms: tuple[tuple[tuple[float, ...], complex], ...]
    amplitude: np.ndarray
    success_probability: float


@dataclass(frozen=True)
class PointerMoments:
    mean: tuple[float, ...]
    variance: tuple[float, ...]
    success_probability: float


@dataclass(frozen=True)
class SweepRow:
    sigma: float
    weakness_ratio: float
    mean: tuple[float, ...]
    deviation: tuple[float, ...]


def pointer_terms(
    pre: StateVector,
    post: StateVector,
    measured: Sequence[str],
    spec: PointerSpec,
) -> tuple[tuple[tuple[float, ...], complex], ...]:
    """Collapse unmeasured photons: coefficient per measured-delay tuple."""
    if pre.structure != post.structure:
        raise StructureError("pre- and post-selection must share a structure")
    if not (pre.normalized and post.normalized):
        raise ValueError("pre- and post-selection must be normalized")
    names = pre.structure.names
    if not measured or any(m not in names for m in measured):
        raise StructureError(f"measured photons must be among {names}")
    for sub in pre.structure.subsystems:
        if set(sub.levels) != {"H", "V"}:
            raise StructureError("pointer profiles need H/V photons throughout")
    collected: dict[tuple[str, ...], complex] = {}
    for label in pre.structure.product_labels():
        cross = post.amplitude(label).conjugate() * pre.amplitude(label)
        if cross == 0j:
            continue
        key = tuple(label.level(m) for m in measured)
        collected[key] = collected.get(key, 0j) + cross
    return tuple(
        (tuple(spec.delay(level) for level in key), coeff)
        for key, coeff in sorted(collected.items())
    )


def _closed_form_norm(terms, spec: PointerSpec) -> float:
    acc = 0.0
    for delays_i, ci in terms:
        for delays_j, cj in terms:
            cross = (ci.conjugate() * cj).real
            if cross == 0.0:
                continue
            factor = 1.0
            for di, dj in zip(delays_i, delays_j):
                factor *= gaussian_overlap(di - dj, spec.sigma)
            acc += cross * factor
    return acc


def analytic_moments(
    terms: Sequence[tuple[tuple[float, ...], complex]], spec: PointerSpec
) -> PointerMoments:
    """Closed-form moments of the Gaussian mixture, no grid involved.

    Uses int f_a f_b = u, int t f_a f_b = u m, int t^2 f_a f_b =
    u (sigma^2 + m^2) with m the midpoint of the two centers and u their
    overlap.
    """
    if not terms:
        raise EmptyPostSelectionError("no surviving pointer amplitude")
    n_axes = len(terms[0][0])
    norm = _closed_form_norm(terms, spec)
    if norm <= 1e-12:
        raise EmptyPostSelectionError("post-selected pointer norm vanishes")
    first = [0.0] * n_axes
    second = [0.0] * n_axes
    for delays_i, ci in terms:
        for delays_j, cj in terms:
            cross = (ci.conjugate() * cj).real
            if cross == 0.0:
                continue
            overlaps = [
                gaussian_overlap(di - dj, spec.sigma)
                for di, dj in zip(delays_i, delays_j)
            ]
            mids = [(di + dj) / 2.0 for di, dj in zip(delays_i, delays_j)]
            base = math.prod(overlaps)
            for ax in range(n_axes):
                first[ax] += cross * base * mids[ax]
                second[ax] += cross * base * (
                    spec.sigma**2 + mids[ax] ** 2
                )
    mean = tuple(f / norm for f in first)
    variance = tuple(s / norm - m * m for s, m in zip(second, mean))
    return PointerMoments(mean, variance, norm)


def build_pointer_profile(
    pre: StateVector,
    post: StateVector,
    measured: Sequence[str],
    spec: PointerSpec,
) -> PointerProfile:
    """Sample the post-selected pointer amplitude on the spec's grid."""
    terms = pointer_terms(pre, post, measured, spec)
    t = spec.grid()
    if len(measured) == 1:
        amplitude = np.zeros(spec.n_points, dtype=complex)
        for (delay,), coeff in terms:
            amplitude += coeff * gaussian_amplitude(t, delay, spec.sigma)
    elif len(measured) == 2:
        amplitude = np.zeros((spec.n_points, spec.n_points), dtype=complex)
        for (d_first, d_second), coeff in terms:
            amplitude += coeff * np.outer(
                gaussian_amplitude(t, d_first, spec.sigma),
                gaussian_amplitude(t, d_second, spec.sigma),
            )
    else:
        raise StructureError("profiles support one or two measured photons")
    return PointerProfile(
        spec=spec,
        measured=tuple(measured),
        terms=terms,
        amplitude=amplitude,
        success_probability=_closed_form_norm(terms, spec),
    )


def pointer_moments(profile: PointerProfile) -> PointerMoments:
    """Trapezoidal mean and variance per axis, normalized on the grid."""
    t = profile.spec.grid()
    density = np.abs(profile.amplitude) ** 2
    if density.ndim == 1:
        marginals = [density]
        norm = float(np.trapezoid(density, t))
    else:
        marginals = [
            np.trapezoid(density, t, axis=1),
            np.trapezoid(density, t, axis=0),
        ]
        norm = float(np.trapezoid(marginals[0], t))
    if norm <= 1e-12:
        raise EmptyPostSelectionError("post-selected pointer norm vanishes on grid")
    means = []
    variances = []
    for marginal in marginals:
        m1 = float(np.trapezoid(t * marginal, t)) / norm
        m2 = float(np.trapezoid(t * t * marginal, t)) / norm
        means.append(m1)
        variances.append(m2 - m1 * m1)
    return PointerMoments(tuple(means), tuple(variances), norm)


def weak_limit_sweep(
    pre: StateVector,
    post: StateVector,
    measured: Sequence[str],
    gamma: float,
    epsilon: float,
    sigmas: Sequence[float],
    n_points: int = DEFAULT_N_POINTS,
) -> list[SweepRow]:
    """Pointer means against the weak-value prediction across widths.

    ``sigmas`` must be positive and ascending so the rows read as an
    approach to the weak limit.
    """
    if not sigmas:
        raise GridError("sweep needs at least one sigma")
    if any(s <= 0 for s in sigmas):
        raise GridError("sweep sigmas must be positive")
    if any(b <= a for a, b in zip(sigmas, sigmas[1:])):
        raise GridError("sweep sigmas must be strictly ascending")
    op = arrival_time_operator(pre.structure, measured, gamma, epsilon)
    prediction = weak_value(op, pre, post).value
    rows = []
    for sigma in sigmas:
        spec = PointerSpec.default(gamma, epsilon, sigma, n_points)
        profile = build_pointer_profile(pre, post, measured, spec)
        moments = pointer_moments(profile)
        deviation = tuple(
            abs(m - p.real) for m, p in zip(moments.mean, prediction)
        )
        rows.append(SweepRow(sigma, spec.weakness_ratio, moments.mean, deviation))
    return rows
