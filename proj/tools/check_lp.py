#!/usr/bin/env python3
"""Solve an exported LP file with scipy's MILP solver and compare against enumeration.

usage: check_lp.py CURATE POPULATION_JSON K [WORKDIR]
Exits 0 when the MILP optimum and its menu match `curate optimize --method enumerate`.
"""

import csv
import io
import re
import subprocess
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

TERM = re.compile(r"([+-])\s*([0-9.eE+-]+)\s+([A-Za-z_][A-Za-z0-9_]*)")


def parse_lp(text):
    section, pending, objective, rows, bounds, binary = None, "", "", [], {}, set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        key = line.lower()
        if key in ("maximize", "subject to", "bounds", "binary", "end"):
            section = key
            continue
        if section == "maximize":
            objective += " " + line.split(":", 1)[-1]
        elif section == "subject to":
            pending = line.split(":", 1)[1] if ":" in line else pending + " " + line
            m = re.match(r"(.*?)(<=|>=|=)\s*(\S+)$", pending)
            if m:
                rows.append((TERM.findall(m.group(1)), m.group(2), float(m.group(3))))
        elif section == "bounds":
            lo, _, name, _, hi = line.split()
            bounds[name] = (float(lo), float(hi))
        elif section == "binary":
            binary.add(line)
    return TERM.findall(objective), rows, bounds, binary


def solve(text):
    objective, rows, bounds, binary = parse_lp(text)
    names = {}
    for terms in [objective] + [r[0] for r in rows]:
        for _, _, var in terms:
            names.setdefault(var, len(names))
    n = len(names)

    def coef(sign, value):
        return float(value) * (-1.0 if sign == "-" else 1.0)

    c = np.zeros(n)
    for sign, value, var in objective:
        c[names[var]] -= coef(sign, value)  # milp minimises
    a = np.zeros((len(rows), n))
    lo = np.full(len(rows), -np.inf)
    hi = np.full(len(rows), np.inf)
    for r, (terms, sense, rhs) in enumerate(rows):
        for sign, value, var in terms:
            a[r, names[var]] += coef(sign, value)
        if sense in ("<=", "="):
            hi[r] = rhs
        if sense in (">=", "="):
            lo[r] = rhs
    vlo, vhi, integrality = np.zeros(n), np.full(n, np.inf), np.zeros(n)
    for var, idx in names.items():
        if var in binary:
            vlo[idx], vhi[idx], integrality[idx] = 0.0, 1.0, 1
        elif var in bounds:
            vlo[idx], vhi[idx] = bounds[var]
    res = milp(c, constraints=LinearConstraint(a, lo, hi), bounds=Bounds(vlo, vhi), integrality=integrality,
               options={"mip_rel_gap": 1e-12})
    if not res.success:
        raise SystemExit(f"milp failed: {res.message}")
    menu = sorted(int(v[2:]) for v, i in names.items() if re.fullmatch(r"x_\d+", v) and res.x[i] > 0.5)
    return -res.fun, menu


def main():
    curate, population, k = sys.argv[1], sys.argv[2], sys.argv[3]
    workdir = Path(sys.argv[4] if len(sys.argv) > 4 else ".")
    workdir.mkdir(parents=True, exist_ok=True)
    lp = workdir / f"check_k{k}.lp"
    out = subprocess.run([curate, "optimize", "--population", population, "--k", k, "--method", "enumerate",
                          "--export-lp", str(lp), "--lp-cardinality", "exactly"],
                         check=True, capture_output=True, text=True).stdout
    row = next(csv.DictReader(io.StringIO(out)))
    expected = float(row["welfare"])
    expected_menu = [int(x) for x in row["menu"].strip("{}").split()]
    value, menu = solve(lp.read_text())
    print(f"milp {value:.10f} {menu}  enumeration {expected:.10f} {expected_menu}")
    ok = abs(value - expected) <= 1e-7 * max(1.0, abs(expected))
    # Ties can legitimately pick another menu; only the value must agree then.
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
