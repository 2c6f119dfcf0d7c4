#!/usr/bin/env python3
"""Solve an MPS model with HiGHS and write a plain-pairs solution file.

Usage: highs_solve.py MODEL.mps SOLUTION.txt [--gap G] [--time-limit S]

Output lines: `=status= <s>`, `=obj= <v>`, `=gap= <g>`, then `name value`.
Uses highspy when importable, otherwise scipy.optimize.milp (also HiGHS).
"""

import argparse
import math
import sys

FEAS_TOL = 1e-8
MIP_FEAS_TOL = 1e-7


def write_solution(path, status, objective=None, gap=None, names=(), values=()):
    with open(path, "w") as out:
        out.write("=status= %s\n" % status)
        if objective is not None:
            out.write("=obj= %r\n" % float(objective))
        if gap is not None and math.isfinite(gap):
            out.write("=gap= %r\n" % float(gap))
        for name, value in zip(names, values):
            value = float(value)
            if value == 0.0:
                value = 0.0  # drop negative zero
            out.write("%s %r\n" % (name, value))


def load_highs_core():
    """The compiled HiGHS bindings, loaded without the package wrapper.

    The wrapper imports numpy, which costs more than a small LP solve; the
    extension module itself does not need it.
    """
    import glob
    import importlib.util
    import os

    spec = importlib.util.find_spec("highspy")
    if spec is None or not spec.submodule_search_locations:
        raise ImportError("highspy is not installed")
    for folder in spec.submodule_search_locations:
        for path in sorted(glob.glob(os.path.join(folder, "_core*.so"))):
            core_spec = importlib.util.spec_from_file_location(
                "highspy._core", path)
            core = importlib.util.module_from_spec(core_spec)
            core_spec.loader.exec_module(core)
            return core
    import highspy
    return highspy._core


def solve_highspy(args, highspy):
    h = highspy._Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    h.setOptionValue("mip_rel_gap", args.gap)
    h.setOptionValue("time_limit", args.time_limit)
    h.setOptionValue("primal_feasibility_tolerance", FEAS_TOL)
    h.setOptionValue("mip_feasibility_tolerance", MIP_FEAS_TOL)
    if h.readModel(args.model) == highspy.HighsStatus.kError:
        print("cannot read model " + args.model, file=sys.stderr)
        return 1
    h.run()
    ms = h.getModelStatus()
    S = highspy.HighsModelStatus
    info = h.getInfo()
    lp = h.getLp()
    names = list(lp.col_names_)
    is_mip = any(v != highspy.HighsVarType.kContinuous for v in lp.integrality_)
    has_sol = info.primal_solution_status == 2  # feasible
    if ms == S.kOptimal:
        status = "optimal"
    elif ms in (S.kInfeasible,):
        status = "infeasible"
    elif ms in (S.kUnbounded, S.kUnboundedOrInfeasible):
        status = "infeasible" if not has_sol else "error"
    elif ms in (S.kTimeLimit, S.kIterationLimit, S.kSolutionLimit,
                S.kInterrupt):
        status = "feasible" if has_sol else "timeout"
    else:
        status = "error"
    if status in ("optimal", "feasible"):
        gap = info.mip_gap if is_mip else 0.0
        values = h.getSolution().col_value
        write_solution(args.solution, status, info.objective_function_value,
                       gap, names, values)
    else:
        write_solution(args.solution, status)
    return 0


# Minimal MPS reader for the scipy fallback. Handles the subset the library
# writes: N/L/G/E rows, MARKER lines, RHS, and BV/LI/UI/LO/UP/FX/FR/MI/PL.
def read_mps(path):
    rows, row_index, obj_name = [], {}, None
    cols, col_index = [], {}
    entries, rhs = [], {}
    integral = []
    bounds = {}
    section, in_int = None, False
    with open(path) as f:
        for raw in f:
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("*"):
                continue
            if not line[0].isspace():
                section = line.split()[0]
                continue
            tok = line.split()
            if section == "ROWS":
                kind, name = tok
                if kind == "N":
                    if obj_name is None:
                        obj_name = name
                    continue
                row_index[name] = len(rows)
                rows.append(kind)
            elif section == "COLUMNS":
                if len(tok) >= 3 and tok[1] == "'MARKER'":
                    in_int = tok[2] == "'INTORG'"
                    continue
                name = tok[0]
                if name not in col_index:
                    col_index[name] = len(cols)
                    cols.append(name)
                    integral.append(in_int)
                j = col_index[name]
                for k in range(1, len(tok) - 1, 2):
                    entries.append((tok[k], j, float(tok[k + 1])))
            elif section == "RHS":
                for k in range(1, len(tok) - 1, 2):
                    rhs[tok[k]] = float(tok[k + 1])
            elif section == "BOUNDS":
                kind, name = tok[0], tok[2]
                value = float(tok[3]) if len(tok) > 3 else None
                lo, hi = bounds.get(name, (0.0, math.inf))
                if kind == "BV":
                    lo, hi = 0.0, 1.0
                elif kind in ("LO", "LI"):
                    lo = value
                elif kind in ("UP", "UI"):
                    hi = value
                elif kind == "FX":
                    lo = hi = value
                elif kind == "FR":
                    lo, hi = -math.inf, math.inf
                elif kind == "MI":
                    lo = -math.inf
                elif kind == "PL":
                    hi = math.inf
                bounds[name] = (lo, hi)
    return rows, row_index, obj_name, cols, entries, rhs, integral, bounds


def solve_scipy(args):
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import coo_matrix

    rows, row_index, obj_name, cols, entries, rhs, integral, bounds = \
        read_mps(args.model)
    n, m = len(cols), len(rows)
    c = np.zeros(n)
    ri, ci, vals = [], [], []
    for row, j, v in entries:
        if row == obj_name:
            c[j] += v
        else:
            ri.append(row_index[row])
            ci.append(j)
            vals.append(v)
    lb = np.full(m, -np.inf)
    ub = np.full(m, np.inf)
    for name, i in row_index.items():
        b = rhs.get(name, 0.0)
        if rows[i] in ("L", "E"):
            ub[i] = b
        if rows[i] in ("G", "E"):
            lb[i] = b
    lo = np.array([bounds.get(name, (0.0, math.inf))[0] for name in cols])
    hi = np.array([bounds.get(name, (0.0, math.inf))[1] for name in cols])
    constraints = []
    if m:
        a = coo_matrix((vals, (ri, ci)), shape=(m, n)).tocsr()
        constraints.append(LinearConstraint(a, lb, ub))
    res = milp(c, constraints=constraints, integrality=np.array(integral, int),
               bounds=Bounds(lo, hi),
               options={"mip_rel_gap": args.gap, "time_limit": args.time_limit,
                        "presolve": True})
    if res.status == 0:
        status = "optimal"
    elif res.status == 2:
        status = "infeasible"
    elif res.status == 1:
        status = "feasible" if res.x is not None else "timeout"
    else:
        status = "error"
    if res.x is not None and status in ("optimal", "feasible"):
        gap = getattr(res, "mip_gap", 0.0) or 0.0
        write_solution(args.solution, status, res.fun, gap, cols, res.x)
    else:
        write_solution(args.solution, status)
    return 0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("model")
    parser.add_argument("solution")
    parser.add_argument("--gap", type=float, default=1e-6)
    parser.add_argument("--time-limit", type=float, default=600.0)
    parser.add_argument("--backend", choices=("auto", "highspy", "scipy"),
                        default="auto")
    args = parser.parse_args()
    if args.backend == "scipy":
        return solve_scipy(args)
    try:
        core = load_highs_core()
    except ImportError:
        if args.backend == "highspy":
            print("highspy is not installed", file=sys.stderr)
            return 1
        return solve_scipy(args)
    return solve_highspy(args, core)


if __name__ == "__main__":
    sys.exit(main())
