"""Acceptance criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria". Run just this module with

    pytest tests/test_acceptance.py
"""

import math
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from hahnpst import (
    ChainParameters,
    DesignRequest,
    bi_grid,
    build_jacobi,
    certify_pst,
    closed_form_weights,
    design_chain,
    eigensystem,
    recurrence_coefficients,
    spectral_weights,
    stieltjes_reconstruct,
    transfer_amplitude,
    verify_christoffel_link,
    verify_orthogonality,
)
from hahnpst.dual_hahn import RecurrenceData
from hahnpst.errors import InvalidDesignError
from hahnpst.orthopoly import christoffel_k_closed_form, christoffel_ub_closed_form
from hahnpst.pst import mirror_inversion_residual
from hahnpst.spinchain import propagator, transfer_amplitudes

F = Fraction

SWEEP = (
    [("odd", N, M1, M2) for N in (3, 7, 15, 31) for M1, M2 in ((1, 2), (3, 4), (1, 4))]
    + [("even", N, M1, M2) for N in (2, 10, 30) for M1, M2 in ((1, 1), (3, 1), (1, 3))]
)


@lru_cache(maxsize=None)
def designed(parity, N, M1, M2):
    p, cert = design_chain(DesignRequest(parity, N, M1, M2))
    chain = build_jacobi(recurrence_coefficients(p))
    return p, cert, chain, eigensystem(chain)


def random_params(rng, max_N, symmetric=False):
    N = rng.randint(1, max_N)
    edge = -1 if N % 2 else N
    a = edge + F(rng.randint(1, 60), rng.randint(1, 12))
    b = a if symmetric else edge + F(rng.randint(1, 60), rng.randint(1, 12))
    return ChainParameters(N, a, b)


def random_params_of_parity(rng, max_N, odd):
    while True:
        p = random_params(rng, max_N)
        if p.odd == odd:
            return p


def floated(r: RecurrenceData) -> RecurrenceData:
    return RecurrenceData([float(v) for v in r.b], [float(v) for v in r.u])


def test_01_two_site_chain(acceptance):
    chain = build_jacobi(recurrence_coefficients(ChainParameters(1, 2, 2)))
    dec = eigensystem(chain)
    errs = [
        abs(chain.couplings[0] - 6),
        float(np.max(np.abs(dec.values - [-7, 5]))),
        float(np.max(np.abs(spectral_weights(chain, dec) - [0.5, 0.5]))),
        abs(abs(transfer_amplitude(chain, math.pi / 12, dec)) - 1),
    ]
    ok = max(errs) <= 1e-12
    acceptance(1, "two-site chain N=1, alpha=beta=2", ok, f"max err {max(errs):.1e}")
    assert ok


def test_02_krawtchouk_chain(acceptance):
    p, cert, chain, dec = designed("even", 2, 1, 1)
    r = recurrence_coefficients(p)
    amp = abs(transfer_amplitude(chain, math.pi / 4, dec))
    ok = (p.alpha == p.beta == 3 and p.xi == 0
          and float(np.max(np.abs(dec.values - [-5, -1, 3]))) <= 1e-12
          and cert.passed and cert.T_over_pi == F(1, 4)
          and amp >= 1 - 1e-12 and cert.amplitude >= 1 - 1e-12
          and all(v == -1 for v in r.b))
    acceptance(2, "Krawtchouk chain N=2, M1=M2=1", ok, f"|A(pi/4)| = {amp:.15f}")
    assert ok


def test_03_family_soundness(acceptance):
    worst = 1.0
    failures = []
    for job in SWEEP:
        p, cert, chain, dec = designed(*job)
        amp = abs(transfer_amplitudes(dec, [cert.T])[0])
        worst = min(worst, amp)
        exact_T = isinstance(cert.T_over_pi, Fraction)
        if not (cert.passed and exact_T and amp >= 1 - 1e-9):
            failures.append(job)
    ok = not failures
    acceptance(3, f"family soundness sweep ({len(SWEEP)} chains)", ok,
               f"min |A(T)| = {worst:.15f}" + (f", failing {failures}" if failures else ""))
    assert ok


def test_04_grid_spectrum_agreement(acceptance):
    rng = random.Random(20240404)
    worst = 0.0
    parities = set()
    for k in range(50):
        p = random_params_of_parity(rng, 31, odd=bool(k % 2))
        parities.add(p.parity)
        dec = eigensystem(build_jacobi(recurrence_coefficients(p)))
        grid = np.array([float(v) for v in bi_grid(p).ascending])
        worst = max(worst, float(np.max(np.abs(dec.values - grid)) / np.max(np.abs(grid))))
    ok = worst <= 1e-10 and parities == {"odd", "even"}
    acceptance(4, "grid-spectrum agreement, 50 draws, N <= 31", ok, f"max rel err {worst:.1e}")
    assert ok


def test_05_orthogonality(acceptance):
    rng = random.Random(5)
    worst_float = 0.0
    for k in range(20):
        p = random_params_of_parity(rng, 20, odd=bool(k % 2))
        r, g, w = recurrence_coefficients(p), bi_grid(p), closed_form_weights(p)
        worst_float = max(worst_float, float(verify_orthogonality(floated(r), g, w)))
    exact_residuals = []
    for k in range(20):
        p = random_params_of_parity(rng, 10, odd=bool(k % 2))
        res = verify_orthogonality(recurrence_coefficients(p), bi_grid(p), closed_form_weights(p))
        exact_residuals.append(res)
    ok = worst_float <= 1e-8 and all(isinstance(v, Fraction) and v == 0 for v in exact_residuals)
    acceptance(5, "discrete orthogonality", ok,
               f"float max rel {worst_float:.1e}; exact residuals all zero: {all(v == 0 for v in exact_residuals)}")
    assert ok


def _weight_gap(p):
    chain = build_jacobi(recurrence_coefficients(p))
    g = bi_grid(p)
    w = np.array([float(v) for v in g.to_ascending(closed_form_weights(p).w)])
    return float(np.max(np.abs(w / w.sum() - spectral_weights(chain))))


def test_06_weight_equivalence(acceptance):
    rng = random.Random(6)
    symmetric = [designed(*job)[0] for job in SWEEP]
    symmetric += [random_params(rng, 25, symmetric=True) for _ in range(20)]
    worst_sym = max(_weight_gap(p) for p in symmetric)
    asymmetric = [ChainParameters(3, 2, 4)] + [random_params(rng, 25) for _ in range(10)]
    asymmetric = [p for p in asymmetric if p.alpha != p.beta]
    detected = [p for p in asymmetric if _weight_gap(p) > 1e-10]
    ok = worst_sym <= 1e-10 and len(detected) >= 1
    acceptance(6, "weight equivalence (mirror <=> 1/|P'| weights)", ok,
               f"alpha=beta max diff {worst_sym:.1e}; {len(detected)}/{len(asymmetric)} asymmetric detected")
    assert ok


def test_07_christoffel_link(acceptance):
    details = []
    ok = True
    for N in (3, 5, 11, 21):
        link = verify_christoffel_link(N, F(2))
        k_ok = link.K == tuple(christoffel_k_closed_form(N, F(2), n) for n in range(N + 1))
        ub_ok = link.transformed == christoffel_ub_closed_form(N, F(2))
        exact = all(isinstance(v, Fraction) for v in link.K)
        this = k_ok and ub_ok and exact and link.residual == 0 and link.spectrum_residual <= 1e-10
        ok &= this
        details.append(f"N={N}: spectrum err {link.spectrum_residual:.0e}")
    acceptance(7, "Christoffel link odd N -> even N-1, alpha=2", ok, "; ".join(details))
    assert ok


def test_08_reconstruction_round_trip(acceptance):
    jobs = ([("odd", N, 1, 2) for N in range(1, 21, 2)] + [("odd", N, 3, 4) for N in (5, 13, 19)]
            + [("even", N, 1, 1) for N in range(2, 21, 2)] + [("even", N, 3, 1) for N in (6, 14, 20)])
    worst = 0.0
    for job in jobs:
        p, _, chain, dec = designed(*job)
        r = recurrence_coefficients(p)
        rec = stieltjes_reconstruct(dec.values.tolist(), spectral_weights(chain, dec).tolist())
        b = np.array([float(v) for v in r.b])
        u = np.array([float(v) for v in r.u[1:-1]])
        err_b = float(np.max(np.abs(np.array(rec.b) - b))) / max(1.0, float(np.max(np.abs(b))))
        err_u = float(np.max(np.abs(np.array(rec.u[1:-1]) - u) / u))
        worst = max(worst, err_b, err_u)
    ok = worst <= 1e-8
    acceptance(8, f"Stieltjes reconstruction round trip ({len(jobs)} chains, N <= 20)", ok,
               f"max rel err {worst:.1e}")
    assert ok


def test_09_negative_controls(acceptance):
    spacing = certify_pst(ChainParameters(3, F(1, 2), F(1, 2)))
    mirror = certify_pst(ChainParameters(3, 2, 4))
    try:
        design_chain(DesignRequest("odd", 7, 1, 3))
        rejected = False
    except InvalidDesignError:
        rejected = True
    ok = (not spacing.passed and spacing.failure_reason == "spacing-violation"
          and not mirror.passed and mirror.failure_reason == "mirror-violation"
          and rejected)
    acceptance(9, "negative controls", ok,
               f"{spacing.failure_reason}, {mirror.failure_reason}, odd-M2 design rejected: {rejected}")
    assert ok


def test_10_unitarity_and_mirror_inversion(acceptance):
    rng = np.random.default_rng(10)
    worst_unit = 0.0
    worst_mirror = 0.0
    for job in SWEEP:
        _, cert, _, dec = designed(*job)
        for t in [cert.T, *rng.uniform(0, 20, size=3)]:
            U = propagator(dec, t)
            worst_unit = max(worst_unit, float(np.max(np.abs(np.sum(np.abs(U) ** 2, axis=0) - 1))))
        res, _ = mirror_inversion_residual(dec, cert.T)
        worst_mirror = max(worst_mirror, res)
    ok = worst_unit <= 1e-12 and worst_mirror <= 1e-9
    acceptance(10, "unitarity and full mirror inversion at T", ok,
               f"unitarity {worst_unit:.1e}, inversion {worst_mirror:.1e}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
