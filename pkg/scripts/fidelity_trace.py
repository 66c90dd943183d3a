"""Write the transfer amplitude of a designed chain over [0, t_max] as CSV.

    python scripts/fidelity_trace.py --parity even --N 10 --M1 1 --M2 3 --periods 3 > trace.csv
"""

import argparse
import sys

from hahnpst import DesignRequest, build_jacobi, design_chain, fidelity_trace, recurrence_coefficients
from hahnpst.documents import trace_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--parity", choices=("odd", "even"), default="odd")
    ap.add_argument("--N", type=int, default=7)
    ap.add_argument("--M1", type=int, default=1)
    ap.add_argument("--M2", type=int, default=2)
    ap.add_argument("--periods", type=float, default=2.0, help="t_max in units of the transfer time")
    ap.add_argument("--samples", type=int, default=401)
    a = ap.parse_args()
    p, cert = design_chain(DesignRequest(a.parity, a.N, a.M1, a.M2))
    trace = fidelity_trace(build_jacobi(recurrence_coefficients(p)), a.periods * cert.T, a.samples)
    print(f"# alpha={p.alpha} T/pi={cert.T_over_pi} max F={trace.fidelity.max():.15f}", file=sys.stderr)
    sys.stdout.write(trace_csv(trace))


if __name__ == "__main__":
    main()
