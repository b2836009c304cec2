"""Cutoff-regularized divergent integrals: vacuum mass density and mass shift.

Everything here is SI. Each regularized integral has a closed-form
antiderivative and, where stated, an independent quadrature route; the two
must agree to 1e-10 relative (disagreement beyond 1e-8 is a hard failure,
the module's standing oracle).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .quadrature import QuadratureSpec, integrate_adaptive
from .units import AtomicParams, PhysicalConstants, constants


@dataclass(frozen=True)
class DispersionModel:
    """High-frequency susceptibility model eps_r(omega) - 1.

    dispersionless: constant eps_r > 1.
    free_electron:  eps_r(omega) = 1 - n_e e^2 / (eps0 m_e omega^2), the
    plasma form valid above the plasma frequency.
    """

    kind: str
    eps_r: float | None = None   # dispersionless only
    n_e: float | None = None     # free_electron only, electrons per m^3
    description: str = ""

    def __post_init__(self) -> None:
        if self.kind == "dispersionless":
            if self.eps_r is None or self.eps_r <= 1.0:
                raise ValueError("dispersionless model requires eps_r > 1")
        elif self.kind == "free_electron":
            if self.n_e is None or self.n_e <= 0.0:
                raise ValueError("free_electron model requires n_e > 0")
        else:
            raise ValueError(f"unknown dispersion kind {self.kind!r}")

    @classmethod
    def dispersionless(cls, eps_r: float) -> "DispersionModel":
        return cls(kind="dispersionless", eps_r=eps_r,
                   description=f"constant eps_r = {eps_r}")

    @classmethod
    def free_electron(cls, n_e: float) -> "DispersionModel":
        return cls(kind="free_electron", n_e=n_e,
                   description=f"plasma dispersion, n_e = {n_e} m^-3")

    def plasma_frequency(self, const: PhysicalConstants) -> float:
        """omega_p = sqrt(n_e e^2 / (eps0 m_e)) [rad/s]; free_electron only."""
        if self.kind != "free_electron":
            raise ValueError("plasma frequency defined for free_electron only")
        return math.sqrt(
            self.n_e * const.elementary_charge_e**2
            / (const.vacuum_permittivity_eps0 * const.electron_mass)
        )

    def susceptibility(self, omega: float, const: PhysicalConstants) -> float:
        """eps_r(omega) - 1."""
        if self.kind == "dispersionless":
            return self.eps_r - 1.0
        return -self.n_e * const.elementary_charge_e**2 / (
            const.vacuum_permittivity_eps0 * const.electron_mass * omega**2
        )


@dataclass(frozen=True)
class CutoffScheme:
    """UV cutoff, either a frequency or a minimum length l_min.

    The length form maps exactly to omega_max = pi c0 / l_min.
    """

    kind: str
    omega_max_value: float | None = None  # rad/s
    l_min: float | None = None            # m

    def __post_init__(self) -> None:
        if self.kind == "frequency":
            if self.omega_max_value is None or self.omega_max_value <= 0:
                raise ValueError("frequency cutoff must be positive")
        elif self.kind == "length":
            if self.l_min is None or self.l_min <= 0:
                raise ValueError("length cutoff must be positive")
        else:
            raise ValueError(f"unknown cutoff kind {self.kind!r}")

    @classmethod
    def frequency(cls, omega_max: float) -> "CutoffScheme":
        return cls(kind="frequency", omega_max_value=omega_max)

    @classmethod
    def length(cls, l_min: float) -> "CutoffScheme":
        return cls(kind="length", l_min=l_min)

    def omega_max(self, const: PhysicalConstants | None = None) -> float:
        if self.kind == "frequency":
            return self.omega_max_value
        c0 = (const or constants()).light_speed_c0
        return math.pi * c0 / self.l_min


class PlasmaCutoffWarning(UserWarning):
    """Cutoff below the plasma frequency: the eps_r - 1 model is invalid there."""


def casimir_mass_density(model: DispersionModel, cutoff: CutoffScheme,
                         const: PhysicalConstants | None = None) -> float:
    """Regularized vacuum inertial-mass density [kg/m^3].

    (2/3) (hbar / (pi^3 c0^5)) int_0^omega_max (eps_r(omega) - 1) omega^3
    d omega, by the closed-form antiderivative of each model:
    dispersionless integrands give omega_max^4/4 scaling, the free-electron
    model omega_max^2/2 with a negative sign (eps_r < 1 above the plasma
    frequency). The prefactor is taken as given and not re-derived.
    """
    const = const or constants()
    omega_max = cutoff.omega_max(const)
    front = (2.0 / 3.0) * const.hbar / (math.pi**3 * const.light_speed_c0**5)
    if model.kind == "dispersionless":
        return front * (model.eps_r - 1.0) * omega_max**4 / 4.0
    omega_p = model.plasma_frequency(const)
    if omega_max < omega_p:
        warnings.warn(
            f"cutoff {omega_max:.3e} rad/s is below the plasma frequency "
            f"{omega_p:.3e} rad/s; the free-electron eps_r - 1 is not a "
            "valid model there",
            PlasmaCutoffWarning,
            stacklevel=2,
        )
    chi_weight = -model.n_e * const.elementary_charge_e**2 / (
        const.vacuum_permittivity_eps0 * const.electron_mass
    )
    return front * chi_weight * omega_max**2 / 2.0


class MassShiftMismatch(RuntimeError):
    """Closed-form and quadrature mass shifts disagree beyond 1e-8."""


_DELTA_MASS_SPEC = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-12,
                                  max_subdivisions=4000)


def delta_mass(mass: float, lambda_cut: float, route: str = "closed_form",
               const: PhysicalConstants | None = None) -> float:
    """Nonrelativistic electromagnetic self-mass at wavenumber cutoff [kg].

    (4/(3 pi)) alpha hbar^2 int_0^Lambda k dk / (hbar^2 k^2 / 2m + hbar c0 k),
    whose antiderivative gives (8 alpha m / (3 pi)) ln(1 + hbar Lambda /
    (2 m c0)): logarithmically divergent. Both routes are always computed
    and must agree to 1e-10 relative.
    """
    if mass <= 0:
        raise ValueError("mass must be positive")
    if lambda_cut < 0:
        raise ValueError("cutoff must be >= 0")
    if route not in ("closed_form", "quadrature"):
        raise ValueError(f"unknown route {route!r}")
    const = const or constants()
    alpha = const.fine_structure_alpha
    hbar = const.hbar
    c0 = const.light_speed_c0

    u_max = hbar * lambda_cut / (mass * c0)   # dimensionless cutoff
    closed = (8.0 * alpha * mass / (3.0 * math.pi)) * math.log1p(u_max / 2.0)
    if lambda_cut == 0.0:
        return 0.0

    # Quadrature in u = hbar k / (m c0): the integrand reduces to
    # (2m/hbar^2) / (2 + u) du, restoring the same prefactor.
    def f(u: np.ndarray) -> np.ndarray:
        return 1.0 / (2.0 + u)

    breaks = []
    b = u_max
    while b > 1e-6:
        b /= 2.0
        breaks.append(b)
    res = integrate_adaptive(f, 0.0, u_max, _DELTA_MASS_SPEC, breakpoints=breaks)
    quad = (8.0 * alpha * mass / (3.0 * math.pi)) * res.value
    rel = abs(quad - closed) / abs(closed)
    if rel > 1e-8:
        raise MassShiftMismatch(
            f"delta_mass(m={mass!r}, Lambda={lambda_cut!r}): closed={closed!r} "
            f"quadrature={quad!r} (relative {rel:.3e})"
        )
    return closed if route == "closed_form" else quad


def reduced_mass_shift(params: AtomicParams, delta_m1: float,
                       delta_m2: float) -> float:
    """First-order shift of 1/mu when the masses absorb delta_m1, delta_m2.

    Returns -delta_m1/m1^2 - delta_m2/m2^2, in inverse units of the masses
    carried by params. Matches 1/mu(m1 + dm1, m2 + dm2) - 1/mu(m1, m2) to
    first order in dm_i/m_i.
    """
    if not (abs(delta_m1) < params.m1 and abs(delta_m2) < params.m2):
        raise ValueError("mass shifts must be small compared to the masses")
    return -delta_m1 / params.m1**2 - delta_m2 / params.m2**2


def divergence_exponent(model_or_fn: DispersionModel | Callable[[float], float],
                        omega_grid: Sequence[float],
                        const: PhysicalConstants | None = None) -> float:
    """Power of the cutoff in a regularized value: slope of log|v| vs log w.

    Accepts a dispersion model (swept through casimir_mass_density) or any
    callable mapping a cutoff to a value. Needs at least 4 geometrically
    spaced cutoffs; |values| must be monotone in the cutoff, otherwise a
    power law is not present and the fit refuses.
    """
    grid = [float(w) for w in omega_grid]
    if len(grid) < 4:
        raise ValueError("need at least 4 cutoff points")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("cutoff grid must be strictly ascending")
    ratios = [b / a for a, b in zip(grid, grid[1:])]
    if max(ratios) / min(ratios) > 1.5:
        raise ValueError("cutoff grid must be (approximately) geometric")

    if isinstance(model_or_fn, DispersionModel):
        model = model_or_fn
        fn = lambda w: casimir_mass_density(model, CutoffScheme.frequency(w), const)
    else:
        fn = model_or_fn
    values = [abs(fn(w)) for w in grid]
    if any(v == 0.0 for v in values):
        raise ValueError("zero value in the sweep; cannot fit a power law")
    diffs = np.diff(values)
    if not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise ValueError("|values| are not monotone over the cutoff grid")
    slope, _ = np.polyfit(np.log(grid), np.log(values), 1)
    return float(slope)
