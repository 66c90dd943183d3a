"""Monic orthogonal polynomials on a finite grid.

Pointwise evaluation, discrete orthogonality checks, the Christoffel
transform (removal of one spectral level) and the inverse map from a
discrete measure back to recurrence coefficients.

All routines are written against plain Python numbers so that Fraction
inputs produce exact results; float inputs give the usual float path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .dual_hahn import BannaiItoGrid, RecurrenceData, WeightTable, is_exact, mu_number
from .errors import (
    DegenerateSpectrumError,
    DomainError,
    IllConditionedMeasureError,
    SingularTransformError,
    UnsupportedRemovalError,
)


def evaluate_monic_sequence(r: RecurrenceData, x) -> list:
    """Return [P_0(x), ..., P_{N+1}(x)] by the forward recurrence."""
    one = Fraction(1) if is_exact(x) and r.exact else 1.0
    prev, cur = 0 * one, one
    out = [cur]
    for n in range(r.N + 1):
        prev, cur = cur, (x - r.b[n]) * cur - r.u[n] * prev
        out.append(cur)
    return out


def polynomial_tableau(r: RecurrenceData, points: Sequence) -> list[list]:
    """Matrix with entry (n, s) = P_n(points[s]), n = 0..N+1."""
    cols = [evaluate_monic_sequence(r, x) for x in points]
    return [[col[n] for col in cols] for n in range(r.N + 2)]


def characteristic_derivative(spectrum: Sequence, s: int):
    """P'_{N+1}(x_s) = prod_{t != s} (x_s - x_t)."""
    xs = spectrum[s]
    out = Fraction(1) if is_exact(*spectrum) else 1.0
    for t, xt in enumerate(spectrum):
        if t == s:
            continue
        d = xs - xt
        if d == 0:
            raise DegenerateSpectrumError(f"spectral points {s} and {t} coincide")
        out *= d
    return out


def gram_matrix(r: RecurrenceData, g: BannaiItoGrid, w: WeightTable) -> list[list]:
    """G[n][m] = sum_s w_s P_n(y_s) P_m(y_s) for n, m = 0..N."""
    tab = polynomial_tableau(r, g.y)[: r.N + 1]
    size = r.N + 1
    return [[sum(ws * pn * pm for ws, pn, pm in zip(w.w, tab[n], tab[m]))
             for m in range(size)] for n in range(size)]


def verify_orthogonality(r: RecurrenceData, g: BannaiItoGrid, w: WeightTable):
    """Maximum relative deviation of the Gram matrix from diag(kappa_0 h_n).

    Entry (n, m) is compared against its target on the scale
    sqrt(kappa_0 h_n * kappa_0 h_m). Exact inputs give an exact Fraction.
    """
    if not (len(g.y) == len(w.w) == r.N + 1):
        raise DomainError("recurrence, grid and weights have inconsistent sizes")
    exact = r.exact and is_exact(*g.y, *w.w, w.kappa0)
    if not exact:
        r = RecurrenceData([float(v) for v in r.b], [float(v) for v in r.u])
        g = BannaiItoGrid(tuple(float(v) for v in g.y), g.sort_permutation)
        w = WeightTable(tuple(float(v) for v in w.w), float(w.kappa0))
    gram = gram_matrix(r, g, w)
    target = [w.kappa0 * r.h(n) for n in range(r.N + 1)]
    worst = Fraction(0) if exact else 0.0
    for n, row in enumerate(gram):
        for m, val in enumerate(row):
            if n == m:
                dev = abs(val - target[n]) / abs(target[n])
            elif exact:
                # compare squares to stay in the rationals
                dev2 = val * val / abs(target[n] * target[m])
                if dev2 == 0:
                    continue
                dev = Fraction(math.sqrt(dev2))
            else:
                dev = abs(val) / math.sqrt(abs(target[n] * target[m]))
            worst = max(worst, dev)
    return worst


@dataclass(frozen=True)
class ChristoffelData:
    """Result of removing one extreme level from a spectrum.

    ``K[n] = P_{n+1}(x*) / P_n(x*)`` for n = 0..N, where x* is ``removed_level``;
    ``transformed`` is the recurrence of size one less.
    """

    K: tuple
    removed_level: object
    transformed: RecurrenceData


def christoffel_transform(r: RecurrenceData, spectrum: Sequence, remove="top") -> ChristoffelData:
    """Christoffel transform deleting the largest (``"top"``) or smallest level.

    ``remove`` may also be an index into the ascending ``spectrum``; only the
    extreme indices are accepted.
    """
    N = r.N
    if N < 1:
        raise DomainError("need at least two levels to remove one")
    if len(spectrum) != N + 1:
        raise DomainError("spectrum size does not match the recurrence")
    if isinstance(remove, bool):
        idx = N if remove else 0
    elif remove == "top":
        idx = N
    elif remove == "bottom":
        idx = 0
    elif isinstance(remove, int):
        idx = remove % (N + 1)
        if idx not in (0, N):
            raise UnsupportedRemovalError(
                f"only extreme levels can be removed, got index {remove}")
    else:
        raise DomainError(f"unknown removal mode {remove!r}")
    x = spectrum[idx]
    P = evaluate_monic_sequence(r, x)
    for n in range(N + 1):
        if P[n] == 0:
            raise SingularTransformError(f"P_{n} vanishes at the removed level {x}")
    K = [P[n + 1] / P[n] for n in range(N + 1)]
    u_new = [0 * K[0]] + [r.u[n] * K[n] / K[n - 1] for n in range(1, N)] + [0 * K[0]]
    b_new = [r.b[n + 1] + K[n + 1] - K[n] for n in range(N)]
    return ChristoffelData(tuple(K), x, RecurrenceData(b_new, u_new))


def christoffel_k_closed_form(N: int, alpha, n: int):
    """K_n = 2 [N - n]_{alpha/2} for the odd-N chain with alpha = beta."""
    if N % 2 == 0:
        raise DomainError("closed form holds for odd N only")
    if not 0 <= n <= N:
        raise DomainError(f"need 0 <= n <= N, got n={n}, N={N}")
    return 2 * mu_number(N - n, alpha / 2)


def christoffel_ub_closed_form(N: int, alpha) -> RecurrenceData:
    """Transformed coefficients of the odd-N, alpha = beta chain after removing x_N.

    u~_n = 4 [n]_{alpha/2} [N-n]_{alpha/2},  b~_n = -3 - 2 (-1)^n alpha.
    """
    half = alpha / 2
    u = [4 * mu_number(n, half) * mu_number(N - n, half) for n in range(N + 1)]
    b = [-3 - 2 * (-1) ** n * alpha for n in range(N)]
    return RecurrenceData(b, u)


def stieltjes_reconstruct(spectrum: Sequence, weights: Sequence, tol: float = 1e-10) -> RecurrenceData:
    """Recurrence coefficients of the monic OPs of a discrete measure.

    Runs the Stieltjes procedure on the vectors P_n(x_s):

        b_n = <x P_n, P_n> / <P_n, P_n>,  u_{n+1} = <P_{n+1}, P_{n+1}> / <P_n, P_n>.

    Exact (Fraction) input runs exactly. Float input re-orthogonalizes each new
    P_{n+1} against all lower P_k; this leaves the polynomial unchanged in exact
    arithmetic but stops the loss of orthogonality that otherwise ruins the
    last few coefficients.
    """
    n_pts = len(spectrum)
    if n_pts == 0 or len(weights) != n_pts:
        raise DomainError("spectrum and weights must be non-empty and of equal length")
    if any(not w > 0 for w in weights):
        raise DomainError("weights must be strictly positive")
    for k in range(n_pts - 1):
        if not spectrum[k] < spectrum[k + 1]:
            raise DomainError("spectrum must be strictly increasing")
    if is_exact(*spectrum, *weights):
        return _stieltjes_exact(list(spectrum), list(weights))

    x = np.asarray(spectrum, dtype=float)
    w = np.asarray(weights, dtype=float)
    w = w / w.sum()
    # orthonormal vectors q_n = P_n / ||P_n|| sampled on the nodes, times sqrt(w)
    sw = np.sqrt(w)
    Q = np.zeros((n_pts, n_pts))
    Q[0] = sw
    b = np.zeros(n_pts)
    u = np.zeros(n_pts + 1)
    floor = (tol * float(np.max(np.abs(x)) or 1.0)) ** 2
    for n in range(n_pts):
        b[n] = np.dot(x * Q[n], Q[n])
        if n == n_pts - 1:
            break
        nxt = x * Q[n] - b[n] * Q[n]
        if n > 0:
            nxt -= math.sqrt(u[n]) * Q[n - 1]
        for _ in range(2):
            nxt -= Q[: n + 1].T @ (Q[: n + 1] @ nxt)
        norm2 = float(np.dot(nxt, nxt))
        if not norm2 > floor:
            raise IllConditionedMeasureError(
                f"squared norm of P_{n + 1} collapsed to {norm2:.3e}")
        u[n + 1] = norm2
        Q[n + 1] = nxt / math.sqrt(norm2)
    return RecurrenceData(b.tolist(), u.tolist())


def _stieltjes_exact(x: list, w: list) -> RecurrenceData:
    total = sum(w)
    w = [wi / total for wi in w]
    n_pts = len(x)
    prev = [Fraction(0)] * n_pts
    cur = [Fraction(1)] * n_pts
    norm_cur = Fraction(1)
    b, u = [], [Fraction(0)]
    for n in range(n_pts):
        bn = sum(wi * xi * c * c for wi, xi, c in zip(w, x, cur)) / norm_cur
        b.append(bn)
        if n == n_pts - 1:
            break
        un = u[n]
        nxt = [(xi - bn) * c - un * p for xi, c, p in zip(x, cur, prev)]
        norm_nxt = sum(wi * c * c for wi, c in zip(w, nxt))
        if norm_nxt <= 0:
            raise IllConditionedMeasureError(f"squared norm of P_{n + 1} is {norm_nxt}")
        u.append(norm_nxt / norm_cur)
        prev, cur, norm_cur = cur, nxt, norm_nxt
    u.append(Fraction(0))
    return RecurrenceData(b, u)
