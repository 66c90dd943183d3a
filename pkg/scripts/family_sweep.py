"""Design chains across both families and report transfer time and fidelity.

    python scripts/family_sweep.py --N 3,7,15,31 --parity odd --pairs 1:2,3:4,1:4
"""

import argparse
import math
from dataclasses import dataclass

from hahnpst import DesignRequest, build_jacobi, design_chain, eigensystem, recurrence_coefficients
from hahnpst.spinchain import transfer_amplitudes


@dataclass(frozen=True)
class SweepConfig:
    parity: str = "odd"
    sizes: tuple[int, ...] = (3, 7, 15, 31)
    pairs: tuple[tuple[int, int], ...] = ((1, 2), (3, 4), (1, 4))


def run(cfg: SweepConfig) -> list[dict]:
    rows = []
    for N in cfg.sizes:
        for M1, M2 in cfg.pairs:
            p, cert = design_chain(DesignRequest(cfg.parity, N, M1, M2))
            dec = eigensystem(build_jacobi(recurrence_coefficients(p)))
            amp = abs(transfer_amplitudes(dec, [cert.T])[0])
            rows.append({"N": N, "M1": M1, "M2": M2, "alpha": p.alpha,
                         "T/pi": cert.T_over_pi, "fidelity": amp ** 2})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--parity", choices=("odd", "even"), default="odd")
    ap.add_argument("--N", default="3,7,15,31")
    ap.add_argument("--pairs", default="1:2,3:4,1:4")
    a = ap.parse_args()
    cfg = SweepConfig(a.parity, tuple(int(n) for n in a.N.split(",")),
                      tuple(tuple(int(m) for m in pr.split(":")) for pr in a.pairs.split(",")))
    print(f"{'N':>4} {'M1':>3} {'M2':>3} {'alpha':>8} {'T/pi':>8} {'T':>10} {'1-F':>10}")
    for r in run(cfg):
        T = float(r["T/pi"]) * math.pi
        print(f"{r['N']:>4} {r['M1']:>3} {r['M2']:>3} {str(r['alpha']):>8} {str(r['T/pi']):>8} "
              f"{T:>10.6f} {1 - r['fidelity']:>10.1e}")


if __name__ == "__main__":
    main()
