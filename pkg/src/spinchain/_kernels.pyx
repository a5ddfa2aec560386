# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled RK4 kernel for the flip-neighbor amplitude system."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

BACKEND_NAME = "compiled"


cdef inline void _rhs(Py_ssize_t dim, Py_ssize_t n,
                      const double complex* a, double t,
                      const int* nbr, const double* rate, const double* phi0,
                      double rabi, const double* diag,
                      double complex* out) noexcept nogil:
    cdef Py_ssize_t s, j, base
    cdef double x
    cdef double complex acc
    cdef double complex icoef = 0.5 * rabi * 1j
    for s in range(dim):
        acc = 0
        base = s * n
        for j in range(n):
            x = rate[base + j] * t + phi0[base + j]
            acc = acc + a[nbr[base + j]] * (cos(x) + 1j * sin(x))
        out[s] = icoef * acc
        if diag != NULL:
            out[s] = out[s] - 1j * diag[s] * a[s]


def rk4_propagate(double complex[::1] amps,
                  int[:, ::1] nbr,
                  double[:, ::1] rate,
                  double[:, ::1] phi0,
                  double rabi,
                  diag,
                  double tau0,
                  double h,
                  Py_ssize_t nsteps,
                  Py_ssize_t trace_every,
                  double[:, ::1] pops_out):
    """Same contract as the pure-python backend; see _kernels_py.rk4_propagate."""
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t n = nbr.shape[1]

    cdef double[::1] diag_view
    cdef const double* diag_p = NULL
    if diag is not None:
        diag_view = diag
        diag_p = &diag_view[0]

    work = np.empty((5, dim), dtype=np.complex128)
    cdef double complex[:, ::1] w = work
    cdef double complex* a = &amps[0]
    cdef double complex* k1 = &w[0, 0]
    cdef double complex* k2 = &w[1, 0]
    cdef double complex* k3 = &w[2, 0]
    cdef double complex* k4 = &w[3, 0]
    cdef double complex* tmp = &w[4, 0]
    cdef const int* nbr_p = &nbr[0, 0]
    cdef const double* rate_p = &rate[0, 0]
    cdef const double* phi0_p = &phi0[0, 0]

    cdef Py_ssize_t step, s, m = 0
    cdef double t, half = 0.5 * h, sixth = h / 6.0

    with nogil:
        for step in range(nsteps):
            t = tau0 + step * h
            _rhs(dim, n, a, t, nbr_p, rate_p, phi0_p, rabi, diag_p, k1)
            for s in range(dim):
                tmp[s] = a[s] + half * k1[s]
            _rhs(dim, n, tmp, t + half, nbr_p, rate_p, phi0_p, rabi, diag_p, k2)
            for s in range(dim):
                tmp[s] = a[s] + half * k2[s]
            _rhs(dim, n, tmp, t + half, nbr_p, rate_p, phi0_p, rabi, diag_p, k3)
            for s in range(dim):
                tmp[s] = a[s] + h * k3[s]
            _rhs(dim, n, tmp, t + h, nbr_p, rate_p, phi0_p, rabi, diag_p, k4)
            for s in range(dim):
                a[s] = a[s] + sixth * (k1[s] + 2.0 * (k2[s] + k3[s]) + k4[s])
            if trace_every > 0 and (step + 1) % trace_every == 0:
                for s in range(dim):
                    pops_out[m, s] = a[s].real * a[s].real + a[s].imag * a[s].imag
                m += 1
