"""XX chain in the one-excitation sector.

The chain Hamiltonian restricted to states with a single flipped spin is the
Jacobi matrix with diagonal ``fields`` (b_0..b_N) and off-diagonal
``couplings`` (J_1..J_N). Nothing here ever builds the 2^(N+1) space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dual_hahn import RecurrenceData
from .errors import ConvergenceError, DegenerateSpectrumError, DomainError, NonPositiveCouplingError
from .orthopoly import characteristic_derivative

DEFLATION_TOL = 1e-14
MAX_SWEEPS = 50


@dataclass(frozen=True)
class SpinChain:
    couplings: tuple  # J_1..J_N
    fields: tuple     # b_0..b_N

    def __post_init__(self):
        object.__setattr__(self, "couplings", tuple(float(v) for v in self.couplings))
        object.__setattr__(self, "fields", tuple(float(v) for v in self.fields))
        if len(self.couplings) != len(self.fields) - 1:
            raise DomainError("need exactly one coupling per neighbouring pair of sites")
        if any(not j > 0 for j in self.couplings):
            raise NonPositiveCouplingError("all couplings must be strictly positive")

    @property
    def N(self) -> int:
        return len(self.fields) - 1

    def matrix(self) -> np.ndarray:
        J = np.diag(np.asarray(self.fields))
        off = np.asarray(self.couplings)
        J += np.diag(off, 1) + np.diag(off, -1)
        return J


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and the orthogonal eigenvector matrix.

    Column ``s`` of ``vectors`` is the unit eigenvector for ``values[s]``,
    signed so that its first component is positive.
    """

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class FidelityTrace:
    times: np.ndarray
    amplitudes: np.ndarray

    @property
    def fidelity(self) -> np.ndarray:
        return np.abs(self.amplitudes)


def build_jacobi(r: RecurrenceData) -> SpinChain:
    """Chain with J_n = sqrt(u_n) and b_l copied from the recurrence."""
    for n in range(1, r.N + 1):
        if not r.u[n] > 0:
            raise NonPositiveCouplingError(f"u_{n} = {r.u[n]} is not positive")
    return SpinChain([math.sqrt(r.u[n]) for n in range(1, r.N + 1)], r.b)


def is_mirror_symmetric(c: SpinChain, tol: float = 1e-12) -> bool:
    J, b, N = c.couplings, c.fields, c.N
    jmax = max(J, default=0.0)
    bscale = 1.0 + max(abs(v) for v in b)
    for n in range(1, N + 1):
        if abs(J[N - n] - J[n - 1]) > tol * jmax:
            return False
    return all(abs(b[N - n] - b[n]) <= tol * bscale for n in range(N + 1))


def tridiagonal_eigensystem(diag, off, tol: float = DEFLATION_TOL, max_sweeps: int = MAX_SWEEPS):
    """Implicit-shift QL on a symmetric tridiagonal matrix.

    Returns (values, vectors) unsorted. ``off[i]`` couples rows i and i+1.
    An off-diagonal entry is deflated once it drops below ``tol * ||T||_inf``.
    """
    d = np.array(diag, dtype=float)
    n = d.size
    e = np.zeros(n)
    e[: n - 1] = off
    z = np.eye(n)
    if n == 1:
        return d, z
    absd, abse = np.abs(d), np.abs(e)
    row_sums = absd + abse
    row_sums[1:] += abse[:-1]
    thresh = tol * float(row_sums.max())

    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1 and abs(e[m]) > thresh:
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise ConvergenceError(f"eigenvalue {l} not converged after {max_sweeps} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                bb = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * bb
                p = s * r
                d[i + 1] = g + p
                g = c * r - bb
                zi1 = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * zi1
                z[:, i] = c * z[:, i] - s * zi1
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, z


def eigensystem(c: SpinChain, tol: float = DEFLATION_TOL, max_sweeps: int = MAX_SWEEPS) -> SpectralDecomposition:
    vals, vecs = tridiagonal_eigensystem(c.fields, c.couplings, tol, max_sweeps)
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    signs = np.where(vecs[0] < 0, -1.0, 1.0)
    vecs = vecs * signs
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralDecomposition(vals, vecs)


def spectral_weights(c: SpinChain, dec: SpectralDecomposition | None = None) -> np.ndarray:
    """Normalized 1/|P'_{N+1}(x_s)| over the ascending spectrum."""
    dec = dec or eigensystem(c)
    x = [float(v) for v in dec.values]
    for k in range(len(x) - 1):
        if not x[k] < x[k + 1]:
            raise DegenerateSpectrumError(f"eigenvalues {k} and {k + 1} coincide")
    # log-sum keeps the products finite for long chains
    logs = np.array([-sum(math.log(abs(x[s] - x[t])) for t in range(len(x)) if t != s)
                     for s in range(len(x))])
    w = np.exp(logs - logs.max())
    return w / w.sum()


def characteristic_weights(spectrum) -> list:
    """Unnormalized 1/|P'_{N+1}(x_s)|; exact for Fraction input."""
    return [1 / abs(characteristic_derivative(spectrum, s)) for s in range(len(spectrum))]


def first_component_weights(dec: SpectralDecomposition) -> np.ndarray:
    """Spectral measure of site 0: w_s = V_{0,s}^2."""
    return dec.vectors[0] ** 2


def propagator(dec: SpectralDecomposition, t: float) -> np.ndarray:
    """exp(i t J) from the spectral decomposition."""
    V = dec.vectors
    return (V * np.exp(1j * t * dec.values)) @ V.T


def transfer_amplitude(c: SpinChain, t: float, dec: SpectralDecomposition | None = None) -> complex:
    """A(t) = (e_N| exp(i t J) |e_0) = sum_s exp(i t x_s) V_{N,s} V_{0,s}."""
    dec = dec or eigensystem(c)
    V = dec.vectors
    return complex(np.sum(np.exp(1j * t * dec.values) * V[-1] * V[0]))


def transfer_amplitudes(dec: SpectralDecomposition, times) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    V = dec.vectors
    return np.exp(1j * np.outer(times, dec.values)) @ (V[-1] * V[0])
