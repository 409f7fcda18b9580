"""CSV of PPT / SPPT diagnostics along one-parameter family lines.

Columns: family, parameter, min eigenvalue of rho^T_A, SPPT defect along the
canonical factor (blank when not representable), realignment value.

    python scripts/family_boundaries.py > boundaries.csv
"""

import csv
import sys

import numpy as np

from sppt.families import horodecki_2x4, horodecki_3x3, isotropic, orthogonally_invariant, werner
from sppt.report import analyze

LINES = {
    "horodecki_2x4(b)": (horodecki_2x4, np.linspace(0, 1, 41)),
    "horodecki_3x3(a)": (horodecki_3x3, np.linspace(0, 1, 41)),
    "werner_2(p)": (lambda p: werner(2, p), np.linspace(-1 / 3, 1, 41)),
    "isotropic_3(p)": (lambda p: isotropic(3, p), np.linspace(-1 / 8, 1, 41)),
    # b = c diagonal of the orthogonally invariant simplex, then the a = 1/2 edge
    "orth_inv(b=c)": (lambda b: orthogonally_invariant(1 - 2 * b, b, b), np.linspace(0, 0.5, 26)),
    "orth_inv(a=1/2, b)": (lambda b: orthogonally_invariant(0.5, b, 0.5 - b), np.linspace(0, 0.5, 26)),
}


def main():
    w = csv.writer(sys.stdout)
    w.writerow(["family", "param", "min_eig_pt", "sppt_defect", "realignment"])
    for name, (make, grid) in LINES.items():
        for x in grid:
            r = analyze(make(float(x)))
            defect = "" if r.max_defect is None else f"{r.max_defect:.6e}"
            w.writerow([name, f"{x:.6f}", f"{r.min_eig_pt:.6e}", defect, f"{r.realignment_value:.10f}"])


if __name__ == "__main__":
    main()
