"""Perfect state transfer: exact certification, design, and the odd/even link.

Certification never looks at floating eigenvalues. The spacing condition
x_{s+1} - x_s = (pi/T) M_s with odd M_s is decided on the exact rational
Bannai-Ito grid; the numerical amplitude at T is only recorded as a
cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .dual_hahn import (
    ChainParameters,
    RecurrenceData,
    bi_grid,
    recurrence_coefficients,
    require_positivity,
)
from .errors import (
    DegenerateSpectrumError,
    DomainError,
    HahnPSTError,
    InvalidDesignError,
    SpacingViolationError,
)
from .orthopoly import christoffel_transform
from .spinchain import (
    DEFLATION_TOL,
    FidelityTrace,
    SpectralDecomposition,
    SpinChain,
    build_jacobi,
    eigensystem,
    propagator,
    transfer_amplitudes,
)

MIRROR_VIOLATION = "mirror-violation"
SPACING_VIOLATION = "spacing-violation"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PSTCertificate:
    """Outcome of certifying one chain.

    ``T_over_pi`` is the minimal transfer time divided by pi; any odd
    multiple of it is also a transfer time. ``amplitude`` and ``phase`` are
    |A(T)| and arg A(T) measured numerically.
    """

    passed: bool
    T_over_pi: Fraction | None
    M: tuple = ()
    mirror: bool = False
    phase: float | None = None
    amplitude: float | None = None
    failure_reason: str | None = None
    detail: str | None = None

    @property
    def T(self) -> float | None:
        return None if self.T_over_pi is None else float(self.T_over_pi) * math.pi


@dataclass(frozen=True)
class DesignRequest:
    parity: str
    N: int
    M1: int
    M2: int

    def validate(self) -> None:
        """Raise InvalidDesignError naming the violated restriction."""
        if self.parity not in ("odd", "even"):
            raise InvalidDesignError(f"parity must be 'odd' or 'even', got {self.parity!r}")
        if self.N < 1 or (self.N % 2 == 1) != (self.parity == "odd"):
            raise InvalidDesignError(f"N={self.N} does not have {self.parity} parity")
        if self.M1 < 1 or self.M2 < 1:
            raise InvalidDesignError("M1 and M2 must be positive integers")
        if self.parity == "odd":
            if self.M2 % 2 != 0 or self.M1 % 2 != 1:
                raise InvalidDesignError(
                    f"odd N requires M2 even and M1 odd (alpha = M2/M1), got M1={self.M1}, M2={self.M2}")
            if not self.M2 > self.M1:
                raise InvalidDesignError(f"odd N requires M2 > M1, got M1={self.M1}, M2={self.M2}")
        elif self.M1 % 2 != 1 or self.M2 % 2 != 1:
            raise InvalidDesignError(
                f"even N requires M1 and M2 both odd (alpha = N + M1/M2), got M1={self.M1}, M2={self.M2}")
        if math.gcd(self.M1, self.M2) != 1:
            raise InvalidDesignError(f"M1={self.M1} and M2={self.M2} must be coprime")

    @property
    def alpha(self) -> Fraction:
        if self.parity == "odd":
            return Fraction(self.M2, self.M1)
        return self.N + Fraction(self.M1, self.M2)

    def expected_T_over_pi(self) -> Fraction:
        """Minimal T/pi predicted from (M1, M2), for the cross-check in design_chain."""
        if self.parity == "even":
            return Fraction(self.M2, 4)
        if self.N == 1:
            # only the gap 4(alpha + 1) is present
            return Fraction(self.M1, 4 * (self.M1 + self.M2))
        return Fraction(self.M1, 4)


def spacing_certificate(spectrum: Sequence[Fraction]) -> tuple[Fraction, tuple[int, ...]]:
    """Minimal T/pi and odd integers M_s with x_{s+1} - x_s = (pi/T) M_s.

    Raises SpacingViolationError when some spacing ratio, in lowest terms,
    has an even numerator or denominator.
    """
    xs = [Fraction(v) for v in spectrum]
    if len(xs) < 2:
        raise DomainError("need at least two spectral points")
    d = [xs[k + 1] - xs[k] for k in range(len(xs) - 1)]
    if any(v <= 0 for v in d):
        raise DegenerateSpectrumError("spectrum must be strictly increasing")
    ratios = [v / d[0] for v in d]
    for k, q in enumerate(ratios):
        if q.numerator % 2 == 0 or q.denominator % 2 == 0:
            raise SpacingViolationError(k, q)
    L = reduce(math.lcm, (q.denominator for q in ratios))
    M = [q.numerator * (L // q.denominator) for q in ratios]
    g = reduce(math.gcd, M)
    M = tuple(m // g for m in M)
    return Fraction(M[0]) / d[0], M


def satisfies_spacing(spectrum: Sequence[Fraction], T_over_pi: Fraction) -> bool:
    """Direct check that every (x_{s+1} - x_s) T/pi is an odd positive integer."""
    for k in range(len(spectrum) - 1):
        m = (Fraction(spectrum[k + 1]) - Fraction(spectrum[k])) * T_over_pi
        if m.denominator != 1 or m.numerator <= 0 or m.numerator % 2 == 0:
            return False
    return True


def certify_pst(p: ChainParameters, deflation_tol: float = DEFLATION_TOL) -> PSTCertificate:
    """Certify PST for the dual -1 Hahn chain with parameters ``p``."""
    if not p.exact:
        raise DomainError("certification needs rational alpha and beta")
    require_positivity(p)
    r = recurrence_coefficients(p)
    mirror = r.is_mirror_symmetric()
    if not mirror:
        return PSTCertificate(False, None, mirror=False, failure_reason=MIRROR_VIOLATION,
                              detail=_first_mirror_defect(r))
    try:
        grid = bi_grid(p)
    except DegenerateSpectrumError as exc:
        return PSTCertificate(False, None, mirror=True, failure_reason=DEGENERATE, detail=str(exc))
    try:
        t_over_pi, M = spacing_certificate(grid.ascending)
    except SpacingViolationError as exc:
        return PSTCertificate(False, None, mirror=True, failure_reason=SPACING_VIOLATION,
                              detail=str(exc))
    chain = build_jacobi(r)
    amp = complex(transfer_amplitudes(eigensystem(chain, deflation_tol), [float(t_over_pi) * math.pi])[0])
    return PSTCertificate(True, t_over_pi, M, True, phase=math.atan2(amp.imag, amp.real),
                          amplitude=abs(amp))


def _first_mirror_defect(r: RecurrenceData) -> str:
    N = r.N
    for n in range(1, N + 1):
        if r.u[n] != r.u[N - n + 1]:
            return f"u_{n} = {r.u[n]} differs from u_{N - n + 1} = {r.u[N - n + 1]}"
    for n in range(N + 1):
        if r.b[n] != r.b[N - n]:
            return f"b_{n} = {r.b[n]} differs from b_{N - n} = {r.b[N - n]}"
    return ""


def design_chain(d: DesignRequest) -> tuple[ChainParameters, PSTCertificate]:
    """Chain parameters realizing PST for (parity, N, M1, M2), with its certificate."""
    d.validate()
    p = ChainParameters(d.N, d.alpha, d.alpha)
    cert = certify_pst(p)
    if not cert.passed:
        raise HahnPSTError(f"designed chain failed certification: {cert.failure_reason}")
    if cert.T_over_pi != d.expected_T_over_pi():
        raise HahnPSTError(
            f"certified T/pi = {cert.T_over_pi} disagrees with the design value {d.expected_T_over_pi()}")
    return p, cert


def fidelity_trace(c: SpinChain, t_max: float, samples: int,
                   dec: SpectralDecomposition | None = None) -> FidelityTrace:
    if samples < 2:
        raise DomainError("need at least two samples")
    if not t_max > 0:
        raise DomainError("t_max must be positive")
    dec = dec or eigensystem(c)
    times = np.linspace(0.0, t_max, samples)
    return FidelityTrace(times, transfer_amplitudes(dec, times))


def mirror_inversion_residual(dec: SpectralDecomposition, t: float) -> tuple[float, float]:
    """Deviation of exp(i t J) from exp(i phi) R, with phi taken from the (N, 0) entry.

    Returns (max entrywise residual, phi).
    """
    U = propagator(dec, t)
    phi = float(np.angle(U[-1, 0]))
    target = np.exp(1j * phi) * np.fliplr(np.eye(U.shape[0]))
    return float(np.max(np.abs(U - target))), phi


@dataclass(frozen=True)
class ChristoffelLink:
    """Comparison of the transformed odd-N chain with the even-N family.

    ``shift`` is the constant offset b~_n - b'_n between the transformed
    diagonal and the even-N chain with parameters ``even``.
    """

    residual: object
    shift: object
    even: ChainParameters
    K: tuple
    transformed: RecurrenceData
    spectrum_residual: float = field(default=float("nan"))


def verify_christoffel_link(N: int, alpha) -> ChristoffelLink:
    """Remove the top level of the odd-N, alpha = beta chain and match it to the even family.

    The even-N' chain (N' = N - 1) with alpha' = beta' = N + alpha has the same
    off-diagonal coefficients and a diagonal differing by a constant.
    """
    if N % 2 == 0:
        raise DomainError("the link starts from an odd-N chain")
    if N < 3:
        raise DomainError("N must be at least 3 so the even chain is non-trivial")
    p = ChainParameters(N, alpha, alpha)
    require_positivity(p)
    r = recurrence_coefficients(p)
    grid = bi_grid(p)
    spectrum = list(grid.ascending)
    link = christoffel_transform(r, spectrum, remove="top")
    t = link.transformed

    even = ChainParameters(N - 1, N + p.alpha, N + p.alpha)
    ref = recurrence_coefficients(even)
    shift = t.b[0] - ref.b[0]
    residual = max(
        max(abs(a - b) for a, b in zip(t.u, ref.u)),
        max(abs(a - b - shift) for a, b in zip(t.b, ref.b)),
    )
    dec = eigensystem(build_jacobi(t))
    expected = np.array([float(v) for v in spectrum[:-1]])
    spec_res = float(np.max(np.abs(dec.values - expected)) / np.max(np.abs(expected)))
    return ChristoffelLink(residual, shift, even, link.K, t, spec_res)
