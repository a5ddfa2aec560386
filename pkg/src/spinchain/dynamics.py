"""Driven time evolution of the chain amplitudes.

The production engine integrates the interaction-picture amplitudes: with
a_s = C_s * exp(+i*E_s*tau), the diagonal part of the Hamiltonian drops
out and each basis state couples only to its n single-flip neighbors,

    i da[s]/dtau = -(rabi/2) * sum_j a[s^bit_j]
                       * exp(i*(E_s - E_{s^bit_j})*tau) * exp(+/- i*theta),

with theta = omega*tau + phase and the upper sign when the flip raises the
spin of the neighbor into s (bit 1 -> 0). Amplitude transfer between two
states is therefore resonant when the drive frequency matches their energy
gap. Two independent cross-checks are provided: a lab-frame integration of
the full Schrodinger equation and a hand-coded two-qubit system.

Time is dimensionless (physical duration tau/omega0) and all frequencies
are in units of omega0.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .spectrum import BasisState, ChainSpec, as_state, full_spectrum

NORM_TOL = 1e-9         # unitarity tolerance on state-vector norms
PHASE_PER_STEP = 0.05   # rad; fixed-step size policy max(omega)*h <= 0.05
MAX_STEPS = 200_000_000  # guard against step-size underflow


@dataclass(frozen=True)
class PulseSpec:
    """One rf pulse: drive frequency and Rabi frequency in units of omega0,
    dimensionless duration tau, phase in radians."""

    omega: float
    rabi: float
    tau: float
    phase: float = 0.0

    def __post_init__(self) -> None:
        if self.rabi < 0:
            raise ValueError(f"rabi must be non-negative, got {self.rabi}")
        if self.tau < 0:
            raise ValueError(f"tau must be non-negative, got {self.tau}")

    def to_dict(self) -> dict:
        return {
            "omega": self.omega,
            "rabi": self.rabi,
            "tau": self.tau,
            "phase": self.phase,
        }


@dataclass(frozen=True, eq=False)
class StateVector:
    """Interaction-picture amplitudes over the computational basis.

    ``ref_time`` is the dimensionless time at which the amplitudes relate
    to the lab frame by a_s = C_s * exp(+i*E_s*ref_time).
    """

    amplitudes: np.ndarray
    ref_time: float = 0.0

    def __post_init__(self) -> None:
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1 or amps.size < 2 or amps.size & (amps.size - 1):
            raise ValueError(f"amplitude vector length {amps.size} is not 2^n")
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise ValueError(f"state vector norm {self.norm()} is not 1 within {NORM_TOL}")

    @classmethod
    def basis(cls, state: BasisState | str, n: int | None = None, ref_time: float = 0.0) -> "StateVector":
        s = as_state(state, n)
        amps = np.zeros(1 << s.n, dtype=np.complex128)
        amps[s.index] = 1.0
        return cls(amps, ref_time)

    @property
    def n(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def populations(self) -> np.ndarray:
        return self.amplitudes.real**2 + self.amplitudes.imag**2

    def population(self, state: BasisState | str) -> float:
        s = as_state(state, self.n)
        return float(abs(self.amplitudes[s.index]) ** 2)

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(other.amplitudes, self.amplitudes))


@dataclass
class TraceRecord:
    """Populations sampled on a uniform time grid for a subset of states."""

    times: np.ndarray
    populations: np.ndarray  # shape (len(times), len(labels))
    labels: tuple[str, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.populations.shape != (len(self.times), len(self.labels)):
            raise ValueError("trace shape mismatch")

    def final_population(self, label: str) -> float:
        return float(self.populations[-1, self.labels.index(label)])

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("tau," + ",".join(f"p_{lab}" for lab in self.labels) + "\n")
            for t, row in zip(self.times, self.populations):
                fh.write(",".join(repr(float(v)) for v in (t, *row)) + "\n")


def default_step(chain: ChainSpec, lab_frame: bool = False) -> float:
    """Fixed step size keeping the fastest phase under PHASE_PER_STEP per step.

    In the interaction picture the fastest scale is the largest Larmor
    frequency; the lab frame adds the bare energies themselves.
    """
    fastest = max(chain.omega)
    if lab_frame:
        energies = full_spectrum(chain).energies
        fastest = max(fastest, float(np.max(np.abs(energies))))
    return PHASE_PER_STEP / fastest


def _plan_steps(tau: float, h: float, sampling: int | None) -> tuple[int, int]:
    """(nsteps, trace_every) with nsteps a multiple of trace_every when sampling."""
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    nsteps = max(1, math.ceil(tau / h))
    if nsteps > MAX_STEPS:
        raise ValueError(f"step {h} underflows: {nsteps} steps needed for tau={tau}")
    if not sampling:
        return nsteps, 0
    m = min(sampling, nsteps)
    trace_every = math.ceil(nsteps / m)
    return trace_every * m, trace_every


def _phase_tables(energies: np.ndarray, n: int, pulse: PulseSpec, lab_frame: bool):
    """Neighbor indices and phase-rate tables for the kernel RHS."""
    dim = energies.size
    idx = np.arange(dim, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n)) & 1
    sgn = 1.0 - 2.0 * bits  # +1 where the state's bit is 0 (raising into it)
    nbr = (idx[:, None] ^ (1 << np.arange(n))).astype(np.int32)
    if lab_frame:
        rate = sgn * pulse.omega
    else:
        rate = (energies[:, None] - energies[nbr]) + sgn * pulse.omega
    phi0 = sgn * pulse.phase
    return (
        np.ascontiguousarray(nbr),
        np.ascontiguousarray(rate, dtype=np.float64),
        np.ascontiguousarray(phi0, dtype=np.float64),
    )


def _check_degeneracy(chain: ChainSpec, energies: np.ndarray) -> None:
    e = np.sort(energies)
    if np.any(np.diff(e) <= 1e-9):
        warnings.warn(
            "degenerate spectrum: drive resonances are ambiguous for this chain",
            UserWarning,
            stacklevel=3,
        )


def _run_kernel(amps, nbr, rate, phi0, rabi, diag, tau0, tau, nsteps, trace_every, backend):
    impl = backend if backend is not None else kernels.get_backend()
    nrec = nsteps // trace_every if trace_every else 0
    pops = np.empty((nrec, amps.size), dtype=np.float64)
    h = tau / nsteps
    impl.rk4_propagate(amps, nbr, rate, phi0, rabi, diag, tau0, h, nsteps, trace_every, pops)
    return pops, h


def evolve(
    chain: ChainSpec,
    pulse: PulseSpec,
    psi0: StateVector,
    sampling: int | None = None,
    step: float | None = None,
    backend=None,
) -> tuple[StateVector, TraceRecord | None]:
    """Integrate the interaction-picture amplitudes over one pulse.

    Returns the final state (norm-checked) and, when ``sampling`` is given,
    a uniform trace of all basis populations with sampling+1 rows including
    the initial one.
    """
    if psi0.n != chain.n:
        raise ValueError(f"state has {psi0.n} sites, chain has {chain.n}")
    if abs(psi0.norm() - 1.0) > NORM_TOL:
        raise ValueError("initial state is not normalized")
    energies = full_spectrum(chain).energies
    _check_degeneracy(chain, energies)

    tau0 = psi0.ref_time
    labels = tuple(format(k, f"0{chain.n}b") for k in range(chain.dim))
    if pulse.tau == 0.0:
        trace = None
        if sampling:
            pops = psi0.populations()[None, :]
            trace = TraceRecord(np.array([tau0]), pops, labels)
        return StateVector(psi0.amplitudes.copy(), tau0), trace

    h0 = step if step is not None else default_step(chain)
    nsteps, trace_every = _plan_steps(pulse.tau, h0, sampling)
    nbr, rate, phi0 = _phase_tables(energies, chain.n, pulse, lab_frame=False)
    amps = psi0.amplitudes.copy()
    pops, h = _run_kernel(amps, nbr, rate, phi0, pulse.rabi, None, tau0, pulse.tau, nsteps, trace_every, backend)

    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > NORM_TOL:
        raise RuntimeError(f"norm drifted to {norm}; reduce the step size")
    final = StateVector(amps, tau0 + pulse.tau)

    trace = None
    if sampling:
        m = pops.shape[0]
        times = tau0 + h * trace_every * np.arange(m + 1)
        rows = np.vstack([psi0.populations()[None, :], pops])
        trace = TraceRecord(times, rows, labels)
    return final, trace


def evolve_schrodinger(
    chain: ChainSpec,
    pulse: PulseSpec,
    psi0: StateVector,
    step: float | None = None,
    backend=None,
) -> StateVector:
    """Lab-frame integration of the full Schrodinger equation (cross-check).

    The diagonal energies stay in the equations, so the default step is
    finer here; the result is mapped back to interaction-picture
    amplitudes for direct comparison with :func:`evolve`.
    """
    if psi0.n != chain.n:
        raise ValueError(f"state has {psi0.n} sites, chain has {chain.n}")
    energies = full_spectrum(chain).energies
    tau0 = psi0.ref_time
    if pulse.tau == 0.0:
        return StateVector(psi0.amplitudes.copy(), tau0)

    h0 = step if step is not None else default_step(chain, lab_frame=True)
    nsteps, _ = _plan_steps(pulse.tau, h0, None)
    nbr, rate, phi0 = _phase_tables(energies, chain.n, pulse, lab_frame=True)
    # lab-frame coefficients at the start of the pulse
    amps = psi0.amplitudes * np.exp(-1j * energies * tau0)
    _run_kernel(amps, nbr, rate, phi0, pulse.rabi, energies, tau0, pulse.tau, nsteps, 0, backend)

    tau1 = tau0 + pulse.tau
    amps *= np.exp(1j * energies * tau1)
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > NORM_TOL:
        raise RuntimeError(f"norm drifted to {norm}; reduce the step size")
    return StateVector(amps, tau1)


def evolve_two_qubit_explicit(
    omega1: float,
    omega2: float,
    j1: float,
    drive_omega: float,
    phase: float,
    rabi: float,
    a0: Sequence[complex],
    tau: float,
    tau0: float = 0.0,
    step: float | None = None,
) -> np.ndarray:
    """Hand-coded two-qubit system (states |00>, |01>, |10>, |11>).

    Written out term by term, independently of the general flip-neighbor
    machinery, as a trusted small-scale oracle. Amplitude transfer between
    two states is resonant when the drive frequency equals their energy
    gap; in particular |10> <-> |11> resonates at omega1 + j1/2.
    """
    a = [complex(v) for v in a0]
    if len(a) != 4:
        raise ValueError("a0 must have four amplitudes")
    if abs(math.fsum(abs(v) ** 2 for v in a) - 1.0) > NORM_TOL:
        raise ValueError("initial amplitudes are not normalized")

    e1 = 0.5 * (-(omega1 + omega2) + j1 / 2.0)
    e2 = 0.5 * ((omega1 - omega2) - j1 / 2.0)
    e3 = 0.5 * ((omega2 - omega1) - j1 / 2.0)
    e4 = 0.5 * ((omega1 + omega2) + j1 / 2.0)

    half = -0.5 * rabi

    def deriv(t: float, v: list[complex]) -> list[complex]:
        th = drive_omega * t + phase
        # i*da1 = -(rabi/2) * (a2*exp(i((E1-E2)t + th)) + a3*exp(i((E1-E3)t + th)))
        d1 = half * (v[1] * cmath.exp(1j * ((e1 - e2) * t + th))
                     + v[2] * cmath.exp(1j * ((e1 - e3) * t + th)))
        # i*da2 = -(rabi/2) * (a1*exp(i((E2-E1)t - th)) + a4*exp(i((E2-E4)t + th)))
        d2 = half * (v[0] * cmath.exp(1j * ((e2 - e1) * t - th))
                     + v[3] * cmath.exp(1j * ((e2 - e4) * t + th)))
        # i*da3 = -(rabi/2) * (a1*exp(i((E3-E1)t - th)) + a4*exp(i((E3-E4)t + th)))
        d3 = half * (v[0] * cmath.exp(1j * ((e3 - e1) * t - th))
                     + v[3] * cmath.exp(1j * ((e3 - e4) * t + th)))
        # i*da4 = -(rabi/2) * (a2*exp(i((E4-E2)t - th)) + a3*exp(i((E4-E3)t - th)))
        d4 = half * (v[1] * cmath.exp(1j * ((e4 - e2) * t - th))
                     + v[2] * cmath.exp(1j * ((e4 - e3) * t - th)))
        return [-1j * d1, -1j * d2, -1j * d3, -1j * d4]

    if tau == 0.0:
        return np.array(a, dtype=np.complex128)
    h0 = step if step is not None else PHASE_PER_STEP / max(omega1, omega2)
    nsteps, _ = _plan_steps(tau, h0, None)
    h = tau / nsteps
    for k in range(nsteps):
        t = tau0 + k * h
        k1 = deriv(t, a)
        k2 = deriv(t + 0.5 * h, [ai + 0.5 * h * ki for ai, ki in zip(a, k1)])
        k3 = deriv(t + 0.5 * h, [ai + 0.5 * h * ki for ai, ki in zip(a, k2)])
        k4 = deriv(t + h, [ai + h * ki for ai, ki in zip(a, k3)])
        a = [ai + (h / 6.0) * (x1 + 2.0 * (x2 + x3) + x4)
             for ai, x1, x2, x3, x4 in zip(a, k1, k2, k3, k4)]
    return np.array(a, dtype=np.complex128)


def apply_pulse_sequence(
    chain: ChainSpec,
    pulses: Iterable[PulseSpec],
    psi0: StateVector,
    step: float | None = None,
    backend=None,
) -> StateVector:
    """Left-fold of :func:`evolve`; the reference time advances by each tau."""
    state = psi0
    for pulse in pulses:
        state, _ = evolve(chain, pulse, state, step=step, backend=backend)
    return state
