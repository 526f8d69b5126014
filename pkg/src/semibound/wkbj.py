"""Generalized WKBJ machinery for arbitrary admissible kinetic laws.

The action A(E) = integral of t^-1(E_B - V(x)) between the turning points is
strictly increasing in E; bound-state energies solve A(E_n) = pi*hbar*(n+1/2).
Inside the well the semiclassical wavefunction is

    psi(x) = D * sin(Phi(x)/hbar + pi/4) / sqrt(T'(T^-1(E - V(x)))),

with Phi(x) the partial action integral from x to the right turning point and
the Langer phase pi/4 fixed by the small-momentum reduction to an effective
Schroedinger problem near the turning points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .classical import Provenance, SampledDensity, default_grid, speed_field
from .errors import DegenerateAlpha, EnergyCeilingExceeded
from .kinetics import BoundStateProblem, Smoothness
from .potentials import TurningPoints, binding_energy, turning_points
from .quadrature import well_integral

#: Langer connection phase at a linear turning point
LANGER_PHASE = np.pi / 4.0
#: fraction of d within which a grid sample counts as sitting on a turning point
TP_EXCLUSION = 1e-9
#: samples per side for the cumulative phase spline
PHASE_SAMPLES = 2049


@dataclass(frozen=True)
class WkbjState:
    """One quantized level: energy, turning points and diagnostics."""

    n: int
    energy: float
    turning_points: TurningPoints
    alpha: float
    action_residual: float

    @property
    def alpha_large_n(self) -> float:
        """Large-n estimate 1/(pi*n) of the semiclassical parameter (diagnostic)."""
        return float("inf") if self.n == 0 else 1.0 / (np.pi * self.n)


def _reduced_inverse(problem: BoundStateProblem) -> Callable:
    """t^-1(E_B - V(x)) as a function of x, equal to T^-1(E - V(x))."""
    law, V = problem.kinetic, problem.potential.eval

    def g(x, E):
        y = np.maximum(np.asarray(E - V(x), dtype=float), law.rest_energy)
        return np.asarray(law.inverse(y), dtype=float)

    return g


def action_integral(problem: BoundStateProblem, E: float,
                    tps: Optional[TurningPoints] = None) -> float:
    """A(E) = integral of T^-1(E - V(x)) over the classical region."""
    tps = tps or turning_points(problem, E)
    g = _reduced_inverse(problem)
    smooth = problem.kinetic.smoothness is Smoothness.SMOOTH
    return well_integral(
        lambda x: g(x, E), tps.a, tps.b,
        splits=(problem.potential.minimum_location,),
        sqrt_left=smooth, sqrt_right=smooth)


def semiclassical_alpha(problem: BoundStateProblem, state: "WkbjState",
                        e_star: Union[float, str] = "auto") -> float:
    """alpha = hbar / (t^-1(E*) * d); auto picks E* = E_B - min V."""
    e_b = binding_energy(problem, state.energy)
    return _alpha(problem, state.turning_points, e_b, e_star)


def _alpha(problem: BoundStateProblem, tps: TurningPoints, e_b: float,
           e_star: Union[float, str] = "auto") -> float:
    if e_star == "auto":
        e_star = e_b - problem.potential.minimum_value
    if not e_star > 0:
        raise DegenerateAlpha(f"E* = {e_star} not positive")
    law = problem.kinetic
    p_star = float(law.inverse(e_star + law.rest_energy))
    if p_star == 0.0:
        raise DegenerateAlpha(f"t^-1(E*) = 0 at E* = {e_star}")
    return problem.hbar / (p_star * tps.d)


def quantize(problem: BoundStateProblem, n: int,
             energy_ceiling: Optional[float] = None) -> WkbjState:
    """Solve A(E_n) = pi*hbar*(n + 1/2) by bracketing + Brent.

    A(E) is strictly increasing for confining wells, so the root is unique.
    The bracket grows geometrically; exceeding `energy_ceiling` (default
    1e12 above the well bottom) signals a non-confining configuration.
    """
    if n < 0:
        raise ValueError(f"quantum number must be >= 0, got {n}")
    target = np.pi * problem.hbar * (n + 0.5)
    law, pot = problem.kinetic, problem.potential
    e_lo = pot.minimum_value + law.rest_energy
    if energy_ceiling is None:
        energy_ceiling = e_lo + 1e12 * max(1.0, abs(e_lo))

    from .errors import SemiboundError

    gap = max(1.0, abs(e_lo))
    e_hi = e_lo + gap
    while True:
        try:
            if action_integral(problem, e_hi) >= target:
                break
        except SemiboundError as exc:
            # no turning points at the probe energy: the well cannot confine
            raise EnergyCeilingExceeded(
                f"no classical region at probe energy {e_hi}: {exc}") from exc
        gap *= 2.0
        e_hi = e_lo + gap
        if e_hi > energy_ceiling:
            raise EnergyCeilingExceeded(
                f"A(E) below pi*hbar*(n+1/2) = {target} up to E = {e_hi}")

    energy = brentq(
        lambda E: action_integral(problem, E) - target,
        e_lo + 1e-12 * max(1.0, abs(e_lo)), e_hi,
        xtol=1e-15 * max(1.0, abs(e_hi)), rtol=1e-13)
    tps = turning_points(problem, energy)
    residual = abs(action_integral(problem, energy, tps) - target)
    alpha = _alpha(problem, tps, binding_energy(problem, energy))
    return WkbjState(n=n, energy=float(energy), turning_points=tps,
                     alpha=alpha, action_residual=float(residual))


def _phase_spline(problem: BoundStateProblem, E: float, tps: TurningPoints) -> Callable:
    """Phi(x) = integral from x to b of T^-1(E - V(y)) dy, cubically interpolated.

    For smooth laws the integrand vanishes like sqrt at the turning points, so
    each half-well is accumulated in the substituted variable u = sqrt(|x - TP|)
    where it is smooth; the two antiderivatives are stitched at the potential
    minimum. Non-smooth laws are accumulated directly in x on each side of the
    minimum (their integrand is regular at the turning points).
    """
    g = _reduced_inverse(problem)
    a, b = tps.a, tps.b
    x0 = min(max(problem.potential.minimum_location, a + 1e-12 * tps.d), b - 1e-12 * tps.d)
    smooth = problem.kinetic.smoothness is Smoothness.SMOOTH

    if smooth:
        u_r = np.sqrt(b - x0)
        ur = np.linspace(0.0, u_r, PHASE_SAMPLES)
        h_r = CubicSpline(ur, 2.0 * ur * g(b - ur * ur, E)).antiderivative()
        u_l = np.sqrt(x0 - a)
        ul = np.linspace(0.0, u_l, PHASE_SAMPLES)
        h_l = CubicSpline(ul, 2.0 * ul * g(a + ul * ul, E)).antiderivative()
        phi_mid = float(h_r(u_r))
        left_total = float(h_l(u_l))

        def phi(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            out = np.empty_like(x)
            right = x >= x0
            out[right] = h_r(np.sqrt(np.maximum(b - x[right], 0.0)))
            out[~right] = phi_mid + left_total - h_l(np.sqrt(np.maximum(x[~right] - a, 0.0)))
            return out

        return phi

    xr = np.linspace(x0, b, PHASE_SAMPLES)
    G_r = CubicSpline(xr, g(xr, E)).antiderivative()
    xl = np.linspace(a, x0, PHASE_SAMPLES)
    G_l = CubicSpline(xl, g(xl, E)).antiderivative()
    phi_mid = float(G_r(b) - G_r(x0))
    left_total = float(G_l(x0) - G_l(a))

    def phi(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty_like(x)
        right = x >= x0
        out[right] = float(G_r(b)) - G_r(np.clip(x[right], x0, b))
        out[~right] = phi_mid + left_total - (G_l(np.clip(x[~right], a, x0)) - float(G_l(a)))
        return out

    return phi


def wavefunction_values(problem: BoundStateProblem, state: WkbjState,
                        grid: np.ndarray) -> np.ndarray:
    """Normalized WKBJ wavefunction sampled on `grid` (0 outside the well)."""
    tps = state.turning_points
    E = state.energy
    phi = _phase_spline(problem, E, tps)
    speed = speed_field(problem, E)
    hbar = problem.hbar

    def raw_psi(x):
        with np.errstate(divide="ignore"):
            return np.sin(phi(x) / hbar + LANGER_PHASE) / np.sqrt(speed(x))

    smooth = problem.kinetic.smoothness is Smoothness.SMOOTH
    norm = well_integral(
        lambda x: raw_psi(x) ** 2, tps.a, tps.b,
        splits=(problem.potential.minimum_location,),
        sqrt_left=smooth, sqrt_right=smooth)
    D = 1.0 / np.sqrt(norm)

    grid = np.asarray(grid, dtype=float)
    psi = np.zeros_like(grid)
    inside = (grid >= tps.a) & (grid <= tps.b)
    psi[inside] = D * raw_psi(grid[inside])
    if smooth:
        on_tp = inside & ((np.abs(grid - tps.a) < TP_EXCLUSION * tps.d)
                          | (np.abs(grid - tps.b) < TP_EXCLUSION * tps.d))
        psi[on_tp] = np.inf
    return psi


def wkbj_wavefunction(problem: BoundStateProblem, state: WkbjState,
                      grid: Optional[np.ndarray] = None) -> SampledDensity:
    """rho_WKBJ = psi^2, normalized to 1 on (a, b); +inf sentinel at the TPs."""
    tps = state.turning_points
    if grid is None:
        grid = default_grid(tps)
    psi = wavefunction_values(problem, state, grid)
    return SampledDensity(
        grid=np.asarray(grid, dtype=float),
        values=psi * psi,
        support=tps,
        provenance=Provenance.WKBJ,
        normalization_domain=(tps.a, tps.b),
        n=state.n,
    )


def wkbj_averaged_density(problem: BoundStateProblem, state: WkbjState,
                          grid: Optional[np.ndarray] = None) -> SampledDensity:
    """sin^2 replaced by its mean 1/2: rho = const / T'(T^-1(E - V(x))) on (a, b).

    After the mandated renormalization the constant is 1 over the integral of
    1/|v|, which makes the curve identical to the classical distribution at
    the same energy.
    """
    tps = state.turning_points
    if grid is None:
        grid = default_grid(tps)
    grid = np.asarray(grid, dtype=float)
    speed = speed_field(problem, state.energy)
    smooth = problem.kinetic.smoothness is Smoothness.SMOOTH
    norm = well_integral(
        lambda x: 1.0 / speed(x), tps.a, tps.b,
        splits=(problem.potential.minimum_location,),
        sqrt_left=smooth, sqrt_right=smooth)

    values = np.zeros_like(grid)
    inside = (grid >= tps.a) & (grid <= tps.b)
    with np.errstate(divide="ignore"):
        values[inside] = (1.0 / norm) / speed(grid[inside])
    return SampledDensity(
        grid=grid,
        values=values,
        support=tps,
        provenance=Provenance.WKBJ_AVERAGED,
        normalization_domain=(tps.a, tps.b),
        n=state.n,
    )
