"""Laboratory-frame parameters and their dimensionless model equivalents.

Fields are in tesla, separations in meters. Model quantities (Larmor,
Rabi and coupling frequencies) are expressed in units of a reference
angular frequency ``omega0``, 2*pi MHz by default, so that simulation
time is dimensionless.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

GAMMA_PROTON = 2.675e8  # rad/(T*s); the 13C moment is treated as a proton moment
HBAR = 1.0546e-34       # J*s
MU0_OVER_4PI = 1e-7     # T*m/A
OMEGA0_DEFAULT = 2.0 * math.pi * 1.0e6  # rad/s
SEPARATION_UNIT = 1.0e-10  # m; site spacing is a = xi * 1e-10 m


class Alignment(enum.Enum):
    """Orientation of the chain axis relative to the longitudinal field."""

    X_AXIS = "x"
    Z_AXIS = "z"


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory quantities from which the dimensionless model derives.

    Attributes
    ----------
    gamma : float
        Gyromagnetic ratio, rad/(T*s).
    b0 : float
        Longitudinal field at site 1, tesla.
    b_rf : float
        Transverse rf amplitude, tesla.
    xi : float
        Separation factor; site spacing a = xi * 1e-10 m.
    f : float
        Relative Larmor offset between adjacent sites.
    alignment : Alignment
        Chain axis relative to the longitudinal field.
    omega0 : float
        Reference angular frequency, rad/s.
    """

    gamma: float = GAMMA_PROTON
    b0: float = 0.5
    b_rf: float = 0.00608
    xi: float = 3.0
    f: float = 0.05
    alignment: Alignment = Alignment.X_AXIS
    omega0: float = OMEGA0_DEFAULT

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.xi <= 0:
            raise ValueError(f"xi must be positive, got {self.xi}")
        if self.b0 < 0:
            raise ValueError(f"b0 must be non-negative, got {self.b0}")
        if self.b_rf < 0:
            raise ValueError(f"b_rf must be non-negative, got {self.b_rf}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if not isinstance(self.alignment, Alignment):
            raise ValueError(f"alignment must be an Alignment, got {self.alignment!r}")

    @property
    def separation(self) -> float:
        """Site spacing a in meters."""
        return self.xi * SEPARATION_UNIT


def coupling_constant(p: PhysicalParams) -> float:
    """Nearest-neighbor Ising coupling, in units of omega0.

    The dipole-dipole energy between two like moments a distance a apart
    gives an angular frequency mu0/(4 pi) * gamma^2 * hbar / a^3. For a
    chain aligned along the x axis (moments transverse to the chain) the
    coupling is +J; alignment along z (moments parallel to the chain)
    doubles the magnitude and flips the sign, giving -2J.
    """
    a = p.separation
    j_rad_per_s = MU0_OVER_4PI * p.gamma**2 * HBAR / a**3
    j_w0 = j_rad_per_s / p.omega0
    if p.alignment is Alignment.Z_AXIS:
        return -2.0 * j_w0
    return j_w0


def larmor_frequency(b_field: float, p: PhysicalParams) -> float:
    """Precession frequency gamma*B in units of omega0 for a field in tesla."""
    if b_field < 0:
        raise ValueError(f"field must be non-negative, got {b_field}")
    return p.gamma * b_field / p.omega0


def rabi_frequency(b_rf: float, p: PhysicalParams) -> float:
    """Drive strength gamma*b of a transverse rf field, in units of omega0."""
    if b_rf < 0:
        raise ValueError(f"rf amplitude must be non-negative, got {b_rf}")
    return p.gamma * b_rf / p.omega0


def rf_amplitude(rabi: float, p: PhysicalParams) -> float:
    """Inverse of :func:`rabi_frequency`: rf field in tesla for a given drive strength."""
    if rabi < 0:
        raise ValueError(f"rabi must be non-negative, got {rabi}")
    return rabi * p.omega0 / p.gamma


def field_gradient(p: PhysicalParams) -> float:
    """Longitudinal-field gradient in T/m implied by the Larmor offset.

    Adjacent sites differ in Larmor frequency by delta_omega = f*gamma*b0
    over a spacing a, so the gradient is delta_omega/(gamma*a) = f*b0/a.
    """
    return p.f * p.b0 / p.separation


GRADIENT_NOTE = (
    "gradient_si = f*b0/a from the Larmor-offset definition; the value "
    "0.83e6 T/m often quoted for xi=3, f=0.05, b0=0.5 T is inconsistent "
    "with that definition by a factor of 100 and is not reproduced here."
)


@dataclass(frozen=True)
class DesignReport:
    """Aggregated design parameters for an n-qubit chain.

    SI-unit fields carry the ``_si`` suffix, dimensionless (omega0-unit)
    fields the ``_w0`` suffix.
    """

    n_qubits: int
    alignment: str
    separation_si: float
    j_w0: float
    b0_si: float
    gradient_si: float
    b_rf_si: float
    omega_rabi_w0: float
    omega_sites_w0: tuple[float, ...]
    comment: str = GRADIENT_NOTE
    cnot_convention: str | None = None

    def to_dict(self) -> dict:
        d = {
            "n_qubits": self.n_qubits,
            "alignment": self.alignment,
            "separation_si": self.separation_si,
            "j_w0": self.j_w0,
            "b0_si": self.b0_si,
            "gradient_si": self.gradient_si,
            "b_rf_si": self.b_rf_si,
            "omega_rabi_w0": self.omega_rabi_w0,
            "omega_sites_w0": list(self.omega_sites_w0),
            "comment": self.comment,
        }
        if self.cnot_convention is not None:
            d["cnot_convention"] = self.cnot_convention
        return d

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def larmor_ladder(p: PhysicalParams, n_qubits: int) -> tuple[float, ...]:
    """Per-site Larmor frequencies omega_j = omega_1*(1+f)^(j-1), units omega0.

    A constant relative offset f between neighbors; for two sites this is
    just omega_2 = omega_1*(1+f).
    """
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    w1 = larmor_frequency(p.b0, p)
    return tuple(w1 * (1.0 + p.f) ** j for j in range(n_qubits))


def design_report(p: PhysicalParams, n_qubits: int) -> DesignReport:
    """Collect the derived design parameters for an n-qubit chain."""
    return DesignReport(
        n_qubits=n_qubits,
        alignment=p.alignment.value,
        separation_si=p.separation,
        j_w0=coupling_constant(p),
        b0_si=p.b0,
        gradient_si=field_gradient(p),
        b_rf_si=p.b_rf,
        omega_rabi_w0=rabi_frequency(p.b_rf, p),
        omega_sites_w0=larmor_ladder(p, n_qubits),
    )
