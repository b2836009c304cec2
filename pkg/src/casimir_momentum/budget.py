"""Itemized pseudo-momentum budget for a hydrogen atom in crossed fields.

Assembles the conserved-momentum decomposition: classical field-induced
(Abraham) momentum, its quantum-vacuum (Casimir) correction, the
binding-energy correction to the kinetic momentum with its Darwin and p^4
parts itemized, and order-of-magnitude bounds that are reported but never
added into totals. All vectors are SI (kg m/s); inputs are SI field vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .units import HARTREE_ENERGY, AtomicParams, PhysicalConstants, constants

# Adopted dimensionless vacuum-coupling coefficients: discrete Rydberg sums
# plus plane-wave continuum parts (0.21 + 0.01 and 0.0796 + 0.018).
ADOPTED_KAPPA1 = 0.22
ADOPTED_KAPPA2 = 0.0976

# Exact static polarizability of ground-state hydrogen in the volume
# convention (P = eps0 alpha(0) E): alpha(0) = 18 pi a0^3.
POLARIZABILITY_VOLUME_AU = 18.0 * math.pi

# Relative relativistic correction to the static polarizability, in units
# of alpha^2 (Bartlett-Power coefficient).
RELATIVISTIC_POLARIZABILITY_COEFF = Fraction(-28, 27)

# Itemized binding-energy mass coefficients: the Darwin (vacuum
# longitudinal) part and the p^4 part, summing exactly to 1.
DARWIN_MASS_COEFF = Fraction(8, 3)
P4_MASS_COEFF = Fraction(-5, 3)

HYDROGEN_BINDING_ENERGY_J = -0.5 * HARTREE_ENERGY  # ground-state binding energy

POLARIZABILITY_CHOICES = ("exact", "computed_discrete",
                          "relativistic_corrected")


def _vec(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class FieldConfiguration:
    """External fields and the atom's pseudo-momentum, SI units."""

    E0: np.ndarray  # V/m
    B0: np.ndarray  # T
    Q0: np.ndarray  # kg m/s

    def __post_init__(self) -> None:
        object.__setattr__(self, "E0", _vec(self.E0))
        object.__setattr__(self, "B0", _vec(self.B0))
        object.__setattr__(self, "Q0", _vec(self.Q0))


@dataclass(frozen=True)
class MomentumBudget:
    """Itemized momentum contributions; bounds are never part of totals."""

    abraham: np.ndarray                 # kg m/s
    casimir_correction: np.ndarray      # kg m/s
    kinetic: np.ndarray                 # Q0, kg m/s
    kinetic_mass_factor: float          # E_bind / (M c0^2), dimensionless
    kinetic_correction: np.ndarray      # kinetic_mass_factor * Q0
    relativistic_terms: Mapping[str, Fraction]
    transverse_bound: float             # magnitude estimate, kg m/s
    relativistic_field_bound: float     # order alpha^2 (m_e/M) |abraham|
    polarizability_vacuum_item: float   # zero: no alpha^2 vacuum part exists
    kappa1: float
    kappa2: float
    alpha0_si: float                    # polarizability volume, m^3
    polarizability_choice: str
    provenance: Mapping[str, str] = field(default_factory=dict)

    @property
    def casimir_relative_shift(self) -> float:
        """casimir_correction / |abraham|: the pure number (-k1 + k2) a^2."""
        norm = float(np.linalg.norm(self.abraham))
        if norm == 0.0:
            return 0.0
        sign = math.copysign(1.0, float(self.casimir_correction @ self.abraham))
        return sign * float(np.linalg.norm(self.casimir_correction)) / norm

    def total(self) -> np.ndarray:
        """Sum of the itemized contributions, bounds excluded."""
        return (self.abraham + self.casimir_correction + self.kinetic
                + self.kinetic_correction)


def abraham_momentum(fields: FieldConfiguration, alpha0_si: float,
                     const: PhysicalConstants | None = None) -> np.ndarray:
    """Classical field-induced momentum eps0 alpha(0) B0 x E0 [kg m/s].

    alpha0_si is the polarizability volume in m^3 (P = eps0 alpha0 E).
    """
    if alpha0_si <= 0:
        raise ValueError("polarizability must be positive")
    const = const or constants()
    return const.vacuum_permittivity_eps0 * alpha0_si * np.cross(fields.B0, fields.E0)


def casimir_correction(kappa1: float, kappa2: float, abraham: np.ndarray,
                       const: PhysicalConstants | None = None) -> np.ndarray:
    """Quantum-vacuum correction (-kappa1 + kappa2) alpha^2 * abraham."""
    const = const or constants()
    return (-kappa1 + kappa2) * const.fine_structure_alpha**2 * np.asarray(abraham, float)


def effective_mass_factor(binding_energy: float, total_mass: float,
                          const: PhysicalConstants | None = None) -> float:
    """Relative inertial-mass shift E_bind / (M c0^2) from the binding energy.

    binding_energy in J (negative for a bound state), total_mass in kg. The
    budget itemizes this factor into the Darwin part (8/3) and the p^4 part
    (-5/3), which sum to 1 exactly.
    """
    if binding_energy > 0:
        raise ValueError("binding energy must be <= 0 for a bound state")
    if total_mass <= 0:
        raise ValueError("total mass must be positive")
    const = const or constants()
    return binding_energy / (total_mass * const.light_speed_c0**2)


def transverse_bound(fields: FieldConfiguration, binding_energy: float,
                     total_mass: float,
                     const: PhysicalConstants | None = None,
                     abraham: np.ndarray | None = None) -> float:
    """Order-of-magnitude bound on the transverse-photon momentum [kg m/s].

    alpha |E_bind/(M c0^2)| |Q0| + alpha^3 |P_A|; an estimate only, one power
    of alpha below the longitudinal terms, and never added into totals.
    """
    const = const or constants()
    alpha = const.fine_structure_alpha
    factor = abs(effective_mass_factor(binding_energy, total_mass, const))
    if abraham is None:
        abraham = abraham_momentum(fields, POLARIZABILITY_VOLUME_AU
                                   * const.bohr_radius_a0**3, const)
    q_part = alpha * factor * float(np.linalg.norm(fields.Q0))
    field_part = alpha**3 * float(np.linalg.norm(abraham))
    return q_part + field_part


_PROVENANCE = {
    "abraham": "eps0 * alpha(0) * B0 x E0; alpha(0) = 18 pi a0^3 exact for "
               "ground-state hydrogen",
    "casimir_correction": "(-kappa1 + kappa2) alpha^2 * abraham; kappa1 from "
                          "the (2/27) sum I1 I3/dE^2 plus its continuum part, "
                          "kappa2 from the (1/27) sum I2 I3/dE plus its "
                          "continuum part",
    "kinetic_correction": "binding-energy mass shift E_bind/(M c0^2) applied "
                          "to Q0; itemized as Darwin +8/3 and p^4 -5/3, net 1",
    "transverse_bound": "alpha |E_bind/(M c0^2)| |Q0| + alpha^3 |P_A|; "
                        "order-of-magnitude estimate, excluded from totals",
    "relativistic_field_bound": "field-dependent relativistic term carries "
                                "no computed coefficient; bounded by "
                                "alpha^2 (m_e/M) |P_A| and excluded from totals",
    "polarizability_vacuum_item": "no vacuum contribution of order alpha^2 "
                                  "exists to the static polarizability; the "
                                  "first correction is order alpha^2 m_e/M, "
                                  "so this item is identically zero",
    "relativistic_polarizability": "relative polarizability correction "
                                   "-28/27 alpha^2 (two-electromagnetic-"
                                   "moment relativistic calculation)",
}


def assemble_budget(
    fields: FieldConfiguration,
    atom: AtomicParams | None = None,
    kappa1: float = ADOPTED_KAPPA1,
    kappa2: float = ADOPTED_KAPPA2,
    polarizability_choice: str = "exact",
    binding_energy: float = HYDROGEN_BINDING_ENERGY_J,
    discrete_polarizability_au: float | None = None,
    const: PhysicalConstants | None = None,
) -> MomentumBudget:
    """Full itemized budget for one field configuration.

    polarizability_choice selects alpha(0): the exact value 18 pi a0^3
    (default), the computed discrete sum (bound states only, supplied in
    atomic units or recomputed on demand), or the exact value with the
    relativistic factor (1 - (28/27) alpha^2).
    """
    const = const or constants()
    atom = atom or AtomicParams.hydrogen()
    if polarizability_choice not in POLARIZABILITY_CHOICES:
        raise ValueError(
            f"unknown polarizability choice {polarizability_choice!r}; "
            f"expected one of {POLARIZABILITY_CHOICES}"
        )
    alpha = const.fine_structure_alpha
    a0_cubed = const.bohr_radius_a0**3

    if polarizability_choice == "exact":
        alpha0_si = POLARIZABILITY_VOLUME_AU * a0_cubed
    elif polarizability_choice == "relativistic_corrected":
        alpha0_si = (POLARIZABILITY_VOLUME_AU * a0_cubed
                     * (1.0 + float(RELATIVISTIC_POLARIZABILITY_COEFF) * alpha**2))
    else:
        if discrete_polarizability_au is None:
            from .sums import polarizability_discrete
            discrete_polarizability_au = polarizability_discrete().value
        alpha0_si = 4.0 * math.pi * discrete_polarizability_au * a0_cubed

    total_mass_kg = atom.total_mass * const.electron_mass
    p_a = abraham_momentum(fields, alpha0_si, const)
    dp_vac = casimir_correction(kappa1, kappa2, p_a, const)
    factor = effective_mass_factor(binding_energy, total_mass_kg, const)
    rel_terms = {
        "darwin_coefficient": DARWIN_MASS_COEFF,
        "p4_coefficient": P4_MASS_COEFF,
        "net": DARWIN_MASS_COEFF + P4_MASS_COEFF,
        "bartlett_power_alpha2_coeff": RELATIVISTIC_POLARIZABILITY_COEFF,
    }
    t_bound = transverse_bound(fields, binding_energy, total_mass_kg, const,
                               abraham=p_a)
    field_bound = alpha**2 * (const.electron_mass / total_mass_kg) \
        * float(np.linalg.norm(p_a))
    return MomentumBudget(
        abraham=p_a,
        casimir_correction=dp_vac,
        kinetic=fields.Q0.copy(),
        kinetic_mass_factor=factor,
        kinetic_correction=factor * fields.Q0,
        relativistic_terms=rel_terms,
        transverse_bound=t_bound,
        relativistic_field_bound=field_bound,
        polarizability_vacuum_item=0.0,
        kappa1=kappa1,
        kappa2=kappa2,
        alpha0_si=alpha0_si,
        polarizability_choice=polarizability_choice,
        provenance=dict(_PROVENANCE),
    )
