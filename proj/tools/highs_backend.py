#!/usr/bin/env python3
"""HiGHS solve bridge.

Reads a model interchange JSON file, solves it with scipy's HiGHS wrappers,
and writes a result JSON file.

    highs_backend.py solve-mip <model.json> <result.json>
    highs_backend.py solve-lp  <model.json> <result.json>

Model schema:
    {"vars": [{"name", "lb", "ub", "integer", "obj"}, ...],
     "cons": [{"tag", "sense": "<"|">"|"=", "rhs", "terms": [[col, coef], ...]}, ...],
     "options": {"time_limit_s", "mip_gap", "feasibility_tol"}}

solve-lp ignores integrality flags and returns one dual per constraint,
with the convention dual = d(objective)/d(rhs).
"""

import json
import sys
import time

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

INF = float("inf")


def load_model(path):
    with open(path) as fh:
        return json.load(fh)


def build_matrix(cons, ncols):
    rows, cols, vals = [], [], []
    for i, con in enumerate(cons):
        for col, coef in con["terms"]:
            rows.append(i)
            cols.append(col)
            vals.append(coef)
    return sparse.csr_matrix((vals, (rows, cols)), shape=(len(cons), ncols))


def solve_mip(model):
    nvars = len(model["vars"])
    c = np.array([v["obj"] for v in model["vars"]])
    lb = np.array([v["lb"] if v["lb"] is not None else -INF for v in model["vars"]])
    ub = np.array([v["ub"] if v["ub"] is not None else INF for v in model["vars"]])
    integrality = np.array([1 if v["integer"] else 0 for v in model["vars"]])
    cons = model.get("cons", [])
    opts = model.get("options", {})

    constraints = []
    if cons:
        mat = build_matrix(cons, nvars)
        clb = np.array([con["rhs"] if con["sense"] in "=>" else -INF for con in cons])
        cub = np.array([con["rhs"] if con["sense"] in "=<" else INF for con in cons])
        constraints = [LinearConstraint(mat, clb, cub)]

    options = {"presolve": True}
    if opts.get("time_limit_s"):
        options["time_limit"] = float(opts["time_limit_s"])
    if opts.get("mip_gap") is not None:
        options["mip_rel_gap"] = float(opts["mip_gap"])

    t0 = time.monotonic()
    if nvars == 0:
        return {"status": "optimal", "objective": 0.0, "values": [], "gap": 0.0,
                "best_bound": 0.0, "solve_time_s": 0.0}
    res = milp(c=c, constraints=constraints,
               integrality=integrality,
               bounds=Bounds(lb, ub),
               options=options)
    elapsed = time.monotonic() - t0

    if res.status == 0:
        status = "optimal"
    elif res.status == 1:
        status = "time_limit" if res.x is not None else "time_limit_no_incumbent"
    elif res.status == 2:
        status = "infeasible"
    elif res.status == 3:
        status = "unbounded"
    else:
        status = "error"

    out = {"status": status, "solve_time_s": elapsed, "message": res.message}
    if res.x is not None:
        gap = getattr(res, "mip_gap", None)
        if status == "time_limit" and gap is not None and np.isfinite(gap) \
                and gap <= float(opts.get("mip_gap", 1e-4)) + 1e-12:
            out["status"] = "optimal"
        out["objective"] = float(res.fun)
        out["values"] = [float(x) for x in res.x]
        out["gap"] = float(gap) if gap is not None and np.isfinite(gap) else None
        bound = getattr(res, "mip_dual_bound", None)
        out["best_bound"] = float(bound) if bound is not None and np.isfinite(bound) else None
    return out


def solve_lp(model):
    nvars = len(model["vars"])
    c = np.array([v["obj"] for v in model["vars"]])
    bounds = [(v["lb"], v["ub"]) for v in model["vars"]]
    cons = model.get("cons", [])

    # Split into equalities and <= rows; >= rows are negated and their
    # duals sign-flipped back so that every reported dual is d(obj)/d(rhs).
    eq_idx = [i for i, con in enumerate(cons) if con["sense"] == "="]
    ub_idx = [i for i, con in enumerate(cons) if con["sense"] != "="]

    def rows(indices, flip_ge):
        r, cidx, vals, rhs = [], [], [], []
        for j, i in enumerate(indices):
            con = cons[i]
            sign = -1.0 if (flip_ge and con["sense"] == ">") else 1.0
            rhs.append(sign * con["rhs"])
            for col, coef in con["terms"]:
                r.append(j)
                cidx.append(col)
                vals.append(sign * coef)
        mat = sparse.csr_matrix((vals, (r, cidx)), shape=(len(indices), nvars))
        return mat, np.array(rhs)

    kwargs = {}
    if eq_idx:
        kwargs["A_eq"], kwargs["b_eq"] = rows(eq_idx, flip_ge=False)
    if ub_idx:
        kwargs["A_ub"], kwargs["b_ub"] = rows(ub_idx, flip_ge=True)

    t0 = time.monotonic()
    res = linprog(c, bounds=bounds, method="highs", **kwargs)
    elapsed = time.monotonic() - t0

    status_map = {0: "optimal", 1: "time_limit", 2: "infeasible", 3: "unbounded"}
    out = {"status": status_map.get(res.status, "error"),
           "solve_time_s": elapsed, "message": res.message}
    if res.status == 0:
        duals = np.zeros(len(cons))
        if eq_idx:
            duals[eq_idx] = res.eqlin.marginals
        for j, i in enumerate(ub_idx):
            m = res.ineqlin.marginals[j]
            duals[i] = -m if cons[i]["sense"] == ">" else m
        out["objective"] = float(res.fun)
        out["values"] = [float(x) for x in res.x]
        out["duals"] = {cons[i]["tag"]: float(duals[i]) for i in range(len(cons))}
    return out


def main(argv):
    if len(argv) != 4 or argv[1] not in ("solve-mip", "solve-lp"):
        sys.stderr.write(__doc__)
        return 2
    model = load_model(argv[2])
    result = solve_mip(model) if argv[1] == "solve-mip" else solve_lp(model)
    with open(argv[3], "w") as fh:
        json.dump(result, fh)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
