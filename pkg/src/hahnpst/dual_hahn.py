"""Closed-form data of the dual -1 Hahn polynomials.

Everything here is evaluated exactly when alpha and beta are rationals
(``fractions.Fraction``). Passing floats selects the real-valued path, which
is fine for simulation but cannot be used for PST certification.

Indexing conventions:

* ``u`` carries sentinels, ``u[0] == u[N+1] == 0``;
* grid values and weights are indexed by the Bannai-Ito label ``s``, which is
  *not* ascending order.  Use ``BannaiItoGrid.ascending`` / ``sort_permutation``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DegenerateSpectrumError, DomainError, ParameterDomainError

Number = Union[Fraction, float]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def as_number(value) -> Number:
    """Coerce ``value`` to a Fraction when it is exact, else to float.

    Strings are parsed as ``"p"`` or ``"p/q"``; decimal strings such as
    ``"0.5"`` are accepted and converted exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a number here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m:
            num, den = m.groups()
            if den is not None and int(den) == 0:
                raise DomainError(f"zero denominator in {value!r}")
            return Fraction(int(num), int(den) if den else 1)
        try:
            return Fraction(value.strip())
        except ValueError:
            raise DomainError(f"cannot parse {value!r} as a rational") from None
    if hasattr(value, "__index__"):
        return Fraction(int(value))
    return float(value)


def is_exact(*values) -> bool:
    return all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in values)


@dataclass(frozen=True)
class ChainParameters:
    """The triple (N, alpha, beta); N + 1 is the number of sites."""

    N: int
    alpha: Number
    beta: Number

    def __post_init__(self):
        if not isinstance(self.N, int) or isinstance(self.N, bool) or self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N!r}")
        object.__setattr__(self, "alpha", as_number(self.alpha))
        object.__setattr__(self, "beta", as_number(self.beta))

    @property
    def odd(self) -> bool:
        return self.N % 2 == 1

    @property
    def parity(self) -> str:
        return "odd" if self.odd else "even"

    @property
    def exact(self) -> bool:
        return is_exact(self.alpha, self.beta)

    @property
    def xi(self) -> Number:
        if self.odd:
            return self.alpha / 2
        return (self.beta - self.N - 1) / 2

    @property
    def eta(self) -> Number:
        if self.odd:
            return self.beta / 2
        return (self.alpha - self.N - 1) / 2

    @property
    def epsilons(self) -> tuple[Number, Number]:
        """Offsets of (alpha, beta) from the positivity threshold."""
        edge = -1 if self.odd else self.N
        return self.alpha - edge, self.beta - edge

    @property
    def delta(self) -> Number:
        e1, e2 = self.epsilons
        return e1 + e2


@dataclass(frozen=True)
class RecurrenceData:
    """Coefficients of P_{n+1} + b_n P_n + u_n P_{n-1} = x P_n, n = 0..N."""

    b: tuple
    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "u", tuple(self.u))
        if len(self.u) != len(self.b) + 1:
            raise DomainError("u must have exactly one more entry than b")
        if self.u[0] != 0 or self.u[-1] != 0:
            raise DomainError("u[0] and u[N+1] must be zero")

    @property
    def N(self) -> int:
        return len(self.b) - 1

    @property
    def exact(self) -> bool:
        return is_exact(*self.b, *self.u)

    def h(self, n: int):
        """h_n = u_1 u_2 ... u_n (h_0 = 1)."""
        return math.prod(self.u[1:n + 1], start=Fraction(1) if self.exact else 1.0)

    def is_mirror_symmetric(self) -> bool:
        """Exact test of u_{N-n+1} = u_n and b_{N-n} = b_n."""
        return self.u == self.u[::-1] and self.b == self.b[::-1]


@dataclass(frozen=True)
class BannaiItoGrid:
    """Grid points ``y[s]`` in BI order plus the ascending-order permutation.

    ``sort_permutation[k]`` is the BI label of the k-th smallest point.
    """

    y: tuple
    sort_permutation: tuple

    @property
    def ascending(self) -> tuple:
        return tuple(self.y[s] for s in self.sort_permutation)

    def to_ascending(self, values: Sequence) -> list:
        """Reorder any BI-indexed sequence into ascending spectral order."""
        return [values[s] for s in self.sort_permutation]


@dataclass(frozen=True)
class WeightTable:
    w: tuple
    kappa0: Number


@dataclass(frozen=True)
class PositivityReport:
    passed: bool
    violated: str | None = None

    def __bool__(self):
        return self.passed


def mu_number(n: int, mu):
    """[n]_mu = n + mu (1 - (-1)^n)."""
    if n < 0:
        raise DomainError(f"mu-number needs n >= 0, got {n}")
    return n if n % 2 == 0 else n + 2 * mu


def pochhammer(a, s: int):
    """Rising factorial (a)_s = a (a+1) ... (a+s-1)."""
    if s < 0:
        raise DomainError(f"Pochhammer index must be >= 0, got {s}")
    out = Fraction(1) if is_exact(a) else 1.0
    for k in range(s):
        out *= a + k
    return out


def positivity_check(p: ChainParameters) -> PositivityReport:
    if p.odd:
        if not p.alpha > -1:
            return PositivityReport(False, "alpha > -1")
        if not p.beta > -1:
            return PositivityReport(False, "beta > -1")
    else:
        if not p.alpha > p.N:
            return PositivityReport(False, "alpha > N")
        if not p.beta > p.N:
            return PositivityReport(False, "beta > N")
    return PositivityReport(True)


def require_positivity(p: ChainParameters) -> None:
    report = positivity_check(p)
    if not report:
        raise ParameterDomainError(
            f"positivity violated for N={p.N}, alpha={p.alpha}, beta={p.beta}: "
            f"need {report.violated}")


def _case_split_coefficients(p: ChainParameters) -> tuple[list, list]:
    N, a, b_ = p.N, p.alpha, p.beta
    u, b = [], []
    for n in range(N + 2):
        if p.odd:
            u.append(4 * n * (N + 1 - n) if n % 2 == 0 else 4 * (a + n) * (b_ + N + 1 - n))
        else:
            u.append(4 * n * (a - n) if n % 2 == 0 else 4 * (N - n + 1) * (n + b_ - N - 1))
    for n in range(N + 1):
        if p.odd:
            b.append(-1 - a + b_ if n % 2 == 0 else -1 + a - b_)
        else:
            b.append(2 * N + 1 - a - b_ if n % 2 == 0 else -2 * N - 3 + a + b_)
    return b, u


def _mu_form_coefficients(p: ChainParameters) -> tuple[list, list]:
    N, xi, eta = p.N, p.xi, p.eta
    shift = -2 * N - 1 - p.alpha - p.beta if p.odd else 1 - p.alpha - p.beta
    u = [4 * mu_number(n, xi) * mu_number(N - n + 1, eta) for n in range(N + 2)]
    b = [2 * (mu_number(n, xi) + mu_number(N - n, eta)) + shift for n in range(N + 1)]
    return b, u


def _wrap(values, exact):
    return [Fraction(v) if exact else float(v) for v in values]


def recurrence_case_split(p: ChainParameters) -> RecurrenceData:
    """Recurrence data from the parity case-split formulas."""
    b, u = _case_split_coefficients(p)
    return RecurrenceData(_wrap(b, p.exact), _wrap(u, p.exact))


def recurrence_mu_form(p: ChainParameters) -> RecurrenceData:
    """Recurrence data from the compact mu-number formulas."""
    b, u = _mu_form_coefficients(p)
    return RecurrenceData(_wrap(b, p.exact), _wrap(u, p.exact))


def recurrence_coefficients(p: ChainParameters) -> RecurrenceData:
    return recurrence_case_split(p)


def bi_grid(p: ChainParameters) -> BannaiItoGrid:
    """Bannai-Ito grid of the parity of N.

    Raises DegenerateSpectrumError if two points coincide (possible only
    outside the positivity domain).
    """
    s_all = range(p.N + 1)
    ab = p.alpha + p.beta
    if p.odd:
        y = [ab + 2 * s + 1 if s % 2 == 0 else -ab - 2 * s - 1 for s in s_all]
    else:
        y = [-ab + 2 * s + 1 if s % 2 == 0 else ab - 2 * s - 1 for s in s_all]
    y = _wrap(y, p.exact)
    perm = tuple(sorted(s_all, key=lambda s: y[s]))
    for k in range(p.N):
        if y[perm[k]] == y[perm[k + 1]]:
            raise DegenerateSpectrumError(
                f"grid points y_{perm[k]} and y_{perm[k + 1]} coincide at {y[perm[k]]}")
    return BannaiItoGrid(tuple(y), perm)


def closed_form_weights(p: ChainParameters) -> WeightTable:
    """Discrete orthogonality weights w_s (BI order) and kappa_0 = sum w_s."""
    require_positivity(p)
    N, a, b = p.N, p.alpha, p.beta
    poch = pochhammer
    w = []
    if p.odd:
        m = (N - 1) // 2
        c1 = (1 + a) / 2
        c2 = 1 + (a + b) / 2
        c3 = (1 + b) / 2
        c4 = (N + 3) // 2 + (a + b) / 2
        for k in range(N + 1):
            s = k // 2
            sign = -1 if s % 2 else 1
            if k % 2 == 0:
                val = (poch(-m, s) / math.factorial(s) * poch(c1, s) * poch(c2, s)
                       / (poch(c3, s) * poch(c4, s)))
            else:
                val = (poch(-m, s) / math.factorial(s) * poch(c1, s + 1) * poch(c2, s)
                       / (poch(c3, s + 1) * poch(c4, s)))
            w.append(sign * val)
        half = (N + 1) // 2
        kappa0 = poch(1 + (a + b) / 2, half) / poch((b + 1) / 2, half)
    else:
        half = N // 2
        c1 = 1 - a / 2
        c2 = 1 - a / 2 - b / 2
        c3 = 1 - b / 2
        c4 = half + 1 - a / 2 - b / 2
        for k in range(N + 1):
            s = k // 2
            sign = -1 if s % 2 else 1
            if k % 2 == 0:
                val = (poch(-half, s) / math.factorial(s) * poch(c1, s) * poch(c2, s)
                       / (poch(c3, s) * poch(c4, s)))
            else:
                val = (poch(-half, s + 1) / math.factorial(s) * poch(c1, s) * poch(c2, s)
                       / (poch(c3, s) * poch(c4, s + 1)))
            w.append(sign * val)
        kappa0 = poch(1 - (a + b) / 2, half) / poch(1 - b / 2, half)
    return WeightTable(tuple(_wrap(w, p.exact)), Fraction(kappa0) if p.exact else float(kappa0))
