"""Pure-numpy RK4 kernel; import-compatible fallback for the compiled one."""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def rk4_propagate(amps, nbr, rate, phi0, rabi, diag, tau0, h, nsteps, trace_every, pops_out):
    """Advance ``amps`` in place by ``nsteps`` RK4 steps of size ``h`` from ``tau0``.

    The right-hand side is

        da[s]/dtau = i*(rabi/2) * sum_j amps[nbr[s, j]]
                         * exp(i*(rate[s, j]*tau + phi0[s, j]))
                     - i*diag[s]*amps[s]      (only when diag is not None)

    When ``trace_every`` > 0, |amps|^2 is written into ``pops_out[m]`` after
    every trace_every-th step; pops_out must have nsteps // trace_every rows.
    """
    coef = 0.5j * rabi
    has_diag = diag is not None
    m = 0

    def rhs(t, a):
        d = coef * np.sum(a[nbr] * np.exp(1j * (rate * t + phi0)), axis=1)
        if has_diag:
            d = d - 1j * (diag * a)
        return d

    half = 0.5 * h
    for step in range(nsteps):
        t = tau0 + step * h
        k1 = rhs(t, amps)
        k2 = rhs(t + half, amps + half * k1)
        k3 = rhs(t + half, amps + half * k2)
        k4 = rhs(t + h, amps + h * k3)
        amps += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        if trace_every > 0 and (step + 1) % trace_every == 0:
            pops_out[m] = amps.real**2 + amps.imag**2
            m += 1
