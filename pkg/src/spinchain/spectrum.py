"""Computational basis, diagonal energy spectrum, and drive coupling structure.

Basis states are labelled by bit strings with site 1 as the least
significant bit, so state index k has site-j occupation (k >> (j-1)) & 1.
A bit value of 0 is spin up (energy -omega_j/2 in the Zeeman term), so the
all-zeros state is the ground state whenever the couplings are small
against the Larmor frequencies.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import physics

SPECTRUM_CAP = 20  # largest chain for which the full 2^n spectrum is enumerated
DEGENERACY_TOL = 1e-9  # absolute tolerance (units omega0) for degeneracy checks


@dataclass(frozen=True)
class ChainSpec:
    """Dimensionless n-spin model: Larmor ladder and Ising couplings.

    ``omega`` holds the per-site Larmor frequencies, ``j1`` the
    nearest-neighbor and ``j2`` the next-nearest coupling, all in units
    of omega0.
    """

    n: int
    omega: tuple[float, ...]
    j1: float = 0.0
    j2: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "omega", tuple(float(w) for w in self.omega))
        if len(self.omega) != self.n:
            raise ValueError(f"expected {self.n} Larmor frequencies, got {len(self.omega)}")
        if any(w <= 0 for w in self.omega):
            raise ValueError("Larmor frequencies must be strictly positive")
        if not self.coupling_hierarchy_ok():
            warnings.warn(
                "coupling hierarchy |j2| < |j1| << min(omega) does not hold; "
                "spectral non-degeneracy is not guaranteed",
                UserWarning,
                stacklevel=2,
            )

    def coupling_hierarchy_ok(self) -> bool:
        """True when |j2| < |j1| << min(omega) (or the chain is uncoupled)."""
        if self.j1 == 0.0:
            return self.j2 == 0.0
        return abs(self.j2) < abs(self.j1) and 10.0 * abs(self.j1) <= min(self.omega)

    @property
    def dim(self) -> int:
        return 1 << self.n


def chain_from_physics(
    p: physics.PhysicalParams, n: int, j2: float | None = None
) -> ChainSpec:
    """Build the dimensionless chain for given laboratory parameters.

    ``j2`` defaults to j1/8 for chains of three or more sites (the same
    dipolar law at doubled spacing) and to 0 otherwise.
    """
    j1 = physics.coupling_constant(p)
    if j2 is None:
        j2 = j1 / 8.0 if n >= 3 else 0.0
    return ChainSpec(n=n, omega=physics.larmor_ladder(p, n), j1=j1, j2=j2)


@dataclass(frozen=True)
class BasisState:
    """One computational basis state of an n-site chain."""

    index: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.index < (1 << self.n):
            raise ValueError(f"index {self.index} out of range for n={self.n}")

    @classmethod
    def from_label(cls, label: str) -> "BasisState":
        """Parse a bit-string label; the rightmost character is site 1."""
        if not label or any(c not in "01" for c in label):
            raise ValueError(f"label must be a non-empty bit string, got {label!r}")
        return cls(index=int(label, 2), n=len(label))

    @property
    def label(self) -> str:
        return format(self.index, f"0{self.n}b")

    def bit(self, site: int) -> int:
        """Occupation of 1-based ``site`` (site 1 is the least significant bit)."""
        if not 1 <= site <= self.n:
            raise ValueError(f"site {site} out of range 1..{self.n}")
        return (self.index >> (site - 1)) & 1

    def flipped(self, site: int) -> "BasisState":
        """The state with ``site`` flipped."""
        if not 1 <= site <= self.n:
            raise ValueError(f"site {site} out of range 1..{self.n}")
        return BasisState(self.index ^ (1 << (site - 1)), self.n)

    def __str__(self) -> str:
        return f"|{self.label}>"


def as_state(state: "BasisState | str", n: int | None = None) -> BasisState:
    """Coerce a label string or BasisState, optionally checking the size."""
    s = BasisState.from_label(state) if isinstance(state, str) else state
    if n is not None and s.n != n:
        raise ValueError(f"state {s} has {s.n} sites, expected {n}")
    return s


def energy(state: BasisState | str, chain: ChainSpec) -> float:
    """Diagonal energy of a basis state, in units of hbar*omega0.

    E = 1/2 * [ -sum_j (-1)^(b_j) omega_j
                + (j1/2) sum_k (-1)^(b_k + b_{k+1})
                + (j2/2) sum_l (-1)^(b_l + b_{l+2}) ]
    with b_j the bit of site j.
    """
    s = as_state(state, chain.n)
    signs = [1.0 - 2.0 * s.bit(j) for j in range(1, chain.n + 1)]  # (-1)^bit
    zeeman = -sum(sg * w for sg, w in zip(signs, chain.omega))
    ising1 = 0.5 * chain.j1 * sum(signs[k] * signs[k + 1] for k in range(chain.n - 1))
    ising2 = 0.5 * chain.j2 * sum(signs[l] * signs[l + 2] for l in range(chain.n - 2))
    return 0.5 * (zeeman + ising1 + ising2)


@dataclass(frozen=True)
class EnergySpectrum:
    """All 2^n diagonal energies, indexed by basis label."""

    chain: ChainSpec
    energies: np.ndarray = field(repr=False)

    def label(self, index: int) -> str:
        return format(index, f"0{self.chain.n}b")

    def ground_state(self) -> BasisState:
        return BasisState(int(np.argmin(self.energies)), self.chain.n)

    def top_state(self) -> BasisState:
        return BasisState(int(np.argmax(self.energies)), self.chain.n)

    def is_injective(self, tol: float = DEGENERACY_TOL) -> bool:
        e = np.sort(self.energies)
        return bool(np.all(np.diff(e) > tol))


def basis_signs(n: int) -> np.ndarray:
    """(2^n, n) array of (-1)^bit for every state and site."""
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n)) & 1
    return 1.0 - 2.0 * bits


def full_spectrum(chain: ChainSpec, cap: int = SPECTRUM_CAP) -> EnergySpectrum:
    """Enumerate the whole spectrum; refuses chains beyond ``cap`` sites."""
    if chain.n > cap:
        raise ValueError(f"chain of {chain.n} sites exceeds the spectrum cap {cap}")
    signs = basis_signs(chain.n)
    omega = np.asarray(chain.omega)
    e = -signs @ omega
    if chain.n >= 2:
        e = e + 0.5 * chain.j1 * np.sum(signs[:, :-1] * signs[:, 1:], axis=1)
    if chain.n >= 3:
        e = e + 0.5 * chain.j2 * np.sum(signs[:, :-2] * signs[:, 2:], axis=1)
    energies = 0.5 * e
    if chain.coupling_hierarchy_ok():
        assert int(np.argmin(energies)) == 0, "ground state is not |0...0>"
        assert int(np.argmax(energies)) == chain.dim - 1, "top state is not |1...1>"
    return EnergySpectrum(chain=chain, energies=energies)


def transition_frequency(
    a: BasisState | str, b: BasisState | str, chain: ChainSpec
) -> float:
    """|E_a - E_b| in units of omega0; errors on identical states."""
    sa, sb = as_state(a, chain.n), as_state(b, chain.n)
    if sa.index == sb.index:
        raise ValueError(f"transition between identical states {sa}")
    return abs(energy(sa, chain) - energy(sb, chain))


class DriveCoupling(NamedTuple):
    neighbor: BasisState
    kind: str  # "raising" or "lowering"


def drive_couplings(state: BasisState | str, chain: ChainSpec) -> list[DriveCoupling]:
    """Single-flip neighbors reached by the transverse drive.

    The rotating rf field couples a state only to its n Hamming-distance-1
    neighbors, with amplitude -(rabi/2)*exp(+i theta) when the flipped bit
    goes 1 -> 0 (spin raised into the neighbor) and -(rabi/2)*exp(-i theta)
    when it goes 0 -> 1, theta being the accumulated drive phase.
    """
    s = as_state(state, chain.n)
    out = []
    for site in range(1, chain.n + 1):
        kind = "raising" if s.bit(site) == 1 else "lowering"
        out.append(DriveCoupling(neighbor=s.flipped(site), kind=kind))
    return out
