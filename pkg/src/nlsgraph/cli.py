"""Command-line entry point.

Every command writes its CSV output and a ``manifest.json`` (parameters, seed,
tolerances, wall time) into ``--out``.  Floats are written with ``repr``, the
shortest string that round-trips, so identical runs give identical files.

Exit codes: 0 success, 2 bad configuration or input, 3 non-convergence,
4 file I/O.
"""

import argparse
import csv
import json
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import (classify_large_mass_limit, classify_small_mass_limit,
                          generalized_eigenpair, mass_sweep)
from .energy import ProblemSpec
from .errors import (ConfigParse, FileIO, InconsistentMultiplier, NotConverged,
                     SweepNotSettled, ValidationError)
from .finite import minimize_normalized
from .fixtures import load_fixture
from .graph import IntegerLattice, PowerPotential, ball_subgraph
from .graphio import load_graph
from .potential import (PotentialProblem, check_c3, check_growth, jphi,
                        maximize_constrained, truncation_study)
from .solution import SolverOptions

COMMANDS = ("solve", "maximize", "sweep", "limits", "truncate", "check-conditions", "eigen")

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_POTENTIAL = re.compile(
    rf"^\s*(?P<a>{_NUM})\s*(?:\+\s*(?:(?P<b>{_NUM})\s*\*\s*)?rho(?:\s*\^\s*(?P<g>{_NUM}))?)?\s*$")


class ConstantPotential:
    def __init__(self, a):
        if not a > 0:
            raise ConfigParse("constant potential must be positive")
        self.a = float(a)

    def __call__(self, rho):
        return np.full(np.shape(rho), self.a)

    def __repr__(self):
        return f"ConstantPotential({self.a:g})"


def parse_potential(text):
    """Parse ``"a"`` or ``"a+b*rho^g"`` (``b*`` and ``^g`` optional)."""
    match = _POTENTIAL.match(text)
    if not match:
        raise ConfigParse(f"cannot parse potential {text!r}; expected 'a+b*rho^g'")
    a = float(match.group("a"))
    if "rho" not in text:
        return ConstantPotential(a)
    b = float(match.group("b") or 1.0)
    g = float(match.group("g") or 1.0)
    try:
        return PowerPotential(a, b, g)
    except ValueError as exc:
        raise ConfigParse(f"potential {text!r}: {exc}") from None


def fmt(x):
    return repr(float(x))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nlsgraph",
        description="Normalized solutions of the nonlinear Schrodinger equation on weighted graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="FILE", help="JSON graph file")
    src.add_argument("--fixture", metavar="NAME", help="built-in graph, e.g. g6-table1 or lattice1d(8)")
    src.add_argument("--lattice", choices=("1d", "2d"), help="ball of the integer lattice")
    parser.add_argument("--radius", type=int, nargs="+", metavar="R",
                        help="lattice ball radius (several radii for truncate)")
    parser.add_argument("--p", type=float, default=3.0, help="exponent p > 2 (default 3)")
    parser.add_argument("--mass", type=float, help="mass m")
    parser.add_argument("--mass-from", type=float)
    parser.add_argument("--mass-to", type=float)
    parser.add_argument("--mass-points", type=int)
    pot = parser.add_mutually_exclusive_group()
    pot.add_argument("--potential", metavar="SPEC", help="h = a+b*rho^g, rho the distance to the origin")
    pot.add_argument("--potential-file", metavar="FILE", help="JSON object mapping vertex id to h")
    parser.add_argument("--origin", metavar="ID", help="origin vertex (lattice default: the zero site)")
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--max-iter", type=int, default=1_000_000)
    parser.add_argument("--restarts", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--digits", type=int, help="truncate: refine in this many digits")
    parser.add_argument("--out", default=".", metavar="DIR", help="output directory (default .)")
    return parser


class Invocation:
    """One parsed invocation: the graph, its potential and solver options."""

    def __init__(self, args):
        self.args = args
        self.notes = []
        self.outputs = []
        self.generator = None
        self.opts = SolverOptions(tol=args.tol, max_iter=args.max_iter,
                                  restarts=args.restarts, seed=args.seed)
        self.potential = None
        if args.potential is not None:
            self.potential = parse_potential(args.potential)
        self.graph = self._load_graph()
        self.origin = self._origin()
        self.h = self._h()

    def _load_graph(self):
        a = self.args
        if a.lattice is not None:
            if not a.radius:
                raise ConfigParse("--lattice needs --radius")
            self.generator = IntegerLattice(1 if a.lattice == "1d" else 2, self.potential)
            return ball_subgraph(self.generator, self.generator.origin, max(a.radius))
        if a.radius:
            raise ConfigParse("--radius only applies to --lattice")
        if a.fixture is not None:
            g, notes = load_fixture(a.fixture)
            self.notes.extend(notes)
            return g
        return load_graph(a.graph)

    def _origin(self):
        a = self.args
        if a.origin is not None:
            self.graph.idx(a.origin)
            return a.origin
        if self.generator is not None:
            return self.generator.origin
        if a.fixture and a.fixture.startswith("lattice"):
            return ",".join(["0"] * int(a.fixture[7]))
        return self.graph.vertices[0]

    def _h(self):
        a = self.args
        if self.potential is not None:
            return self.potential(self.graph.distances(self.origin))
        if a.potential_file is not None:
            try:
                with open(a.potential_file) as fh:
                    doc = json.load(fh)
            except OSError as exc:
                raise FileIO(f"{a.potential_file}: {exc.strerror}") from None
            except json.JSONDecodeError as exc:
                raise ConfigParse(f"{a.potential_file}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
            if not isinstance(doc, dict):
                raise ConfigParse(f"{a.potential_file}: expected an object mapping vertex ids to values")
            return self.graph.function({str(k): float(v) for k, v in doc.items()})
        return self.graph.potential

    def need_mass(self):
        if self.args.mass is None:
            raise ConfigParse(f"{self.args.command} needs --mass")
        return self.args.mass

    def need_potential(self):
        if self.h is None:
            raise ConfigParse(f"{self.args.command} needs --potential or --potential-file")
        return self.h

    def masses(self):
        a = self.args
        if None in (a.mass_from, a.mass_to, a.mass_points):
            raise ConfigParse("sweeps need --mass-from, --mass-to and --mass-points")
        if not (a.mass_from > 0 and a.mass_to > 0):
            raise ConfigParse("mass-range endpoints must be positive")
        if a.mass_points < 2 or a.mass_from == a.mass_to:
            raise ConfigParse("a sweep needs at least two distinct masses")
        return np.logspace(np.log10(a.mass_from), np.log10(a.mass_to), a.mass_points)

    def path(self, name):
        out = Path(self.args.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise FileIO(f"{out}: {exc.strerror}") from None
        self.outputs.append(name)
        return out / name

    def write_csv(self, name, header, rows):
        try:
            with open(self.path(name), "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(header)
                w.writerows(rows)
        except OSError as exc:
            raise FileIO(f"{name}: {exc.strerror}") from None

    def write_json(self, name, doc):
        try:
            with open(self.path(name), "w") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
        except OSError as exc:
            raise FileIO(f"{name}: {exc.strerror}") from None

    def solution_rows(self, g, sol, h):
        h = np.ones(g.n) if h is None else h
        v = sol.rescaled
        return [[x, fmt(g.mu[k]), fmt(h[k]), fmt(sol.u[k]), fmt(v[k])] for k, x in enumerate(g.vertices)]

    def write_solution(self, name, g, sol, h):
        self.write_csv(name, ["vertex_id", "mu", "h", "u", "v_rescaled"], self.solution_rows(g, sol, h))


def _solve(run):
    if run.h is not None:
        raise ConfigParse("solve is the problem without potential; use maximize")
    sol = minimize_normalized(run.graph, ProblemSpec(run.args.p, run.need_mass()), run.opts)
    run.write_solution("solution.csv", run.graph, sol, None)
    print(f"J={sol.energy!r} lambda={sol.lam!r} residual={sol.residual:.3g}")
    return {"energy": sol.energy, "lambda": sol.lam, "residual": sol.residual}


def _maximize(run):
    prob = PotentialProblem(run.args.p, run.need_mass(), run.origin, h=run.need_potential())
    sol = maximize_constrained(run.graph, prob, run.opts)
    run.write_solution("solution.csv", run.graph, sol, run.h)
    print(f"Jcal={sol.energy!r} lambda={sol.lam!r} residual={sol.residual:.3g}")
    return {"energy": sol.energy, "lambda": sol.lam, "residual": sol.residual}


def _sweep_records(run):
    masses = run.masses()
    spec = ProblemSpec(run.args.p, float(masses[0]), run.h)
    records = mass_sweep(run.graph, spec, masses, run.opts)
    header = ["m", "lambda_m", "lambda_rescaled", "J", "residual", "converged"]
    header += [f"v_{x}" for x in run.graph.vertices]
    rows = []
    for r in records:
        rows.append([fmt(r.m), fmt(r.lambda_m), fmt(r.rescaled_multiplier), fmt(r.solution.energy),
                     fmt(r.solution.residual), str(not r.failed).lower()] + [fmt(a) for a in r.rescaled])
    run.write_csv("sweep.csv", header, rows)
    failed = sum(r.failed for r in records)
    print(f"{len(records)} masses, {failed} not converged")
    return records


def _sweep(run):
    records = _sweep_records(run)
    return {"points": len(records), "failed": sum(r.failed for r in records)}


def _limits(run):
    records = _sweep_records(run)
    if records[-1].m < records[0].m:
        lim = classify_small_mass_limit(run.graph, records, run.h)
    else:
        lim = classify_large_mass_limit(run.graph, records, run.h)
    doc = {"kind": lim.kind, "limit_multiplier": lim.limit_multiplier, "residual": lim.residual,
           "support": list(lim.support), "structure_error": lim.structure_error,
           "multiplier_gap": lim.multiplier_gap, "matched_eigenvalue": lim.matched_eigenvalue,
           "limit": dict(zip(run.graph.vertices, map(float, lim.limit_fn))), "notes": lim.notes}
    run.write_json("limit.json", doc)
    print(f"limit: {lim.kind}, multiplier={lim.limit_multiplier!r}, residual={lim.residual:.3g}")
    return {"kind": lim.kind}


def _truncate(run):
    if run.generator is None or len(run.args.radius) < 2:
        raise ConfigParse("truncate needs --lattice and at least two --radius values")
    if run.potential is None:
        raise ConfigParse("truncate needs --potential")
    prob = PotentialProblem(run.args.p, run.need_mass(), run.origin, generator=run.generator)
    rep = truncation_study(prob, run.args.radius, run.opts, digits=run.args.digits)
    for r, g, sol in zip(rep.radii, rep.graphs, rep.solutions):
        run.write_solution(f"solution_r{r}.csv", g, sol, prob.potential_on(g))
    run.write_csv("truncation.csv", ["radius", "next_radius", "center_delta"],
                  [[str(a), str(b), fmt(d)] for a, b, d in zip(rep.radii, rep.radii[1:], rep.center_deltas)])
    for a, b, d in zip(rep.radii, rep.radii[1:], rep.center_deltas):
        print(f"r={a}->{b}: delta={d:.3g}")
    for note in rep.notes:
        print(note)
    return {"center_deltas": rep.center_deltas, "decreasing": rep.deltas_decreasing}


def _check_conditions(run):
    h = run.need_potential()
    m = run.need_mass()
    c3 = check_c3(run.graph, h, run.origin, run.args.p, m)
    growth = check_growth(run.graph, h, run.origin)
    value = jphi(run.graph, h, run.origin, run.args.p, m)
    print(f"(c3): {'holds' if c3.holds else 'fails'}, lhs={c3.lhs:.4g}, rhs={c3.rhs:.4g}")
    print(f"growth: {'ok' if growth else 'not observed'} on this graph")
    print(f"Jcal(sqrt(m) phi) = {value:.6g}")
    run.write_json("conditions.json", {"c3": {"holds": c3.holds, "lhs": c3.lhs, "rhs": c3.rhs, "note": c3.note},
                                       "growth": growth, "jphi": value})
    return {"c3": c3.holds}


def _eigen(run):
    pairs = generalized_eigenpair(run.graph, run.h)
    header = ["index", "lambda"] + [f"v_{x}" for x in run.graph.vertices]
    run.write_csv("eigen.csv", header, [[str(k), fmt(lam)] + [fmt(a) for a in v]
                                        for k, (lam, v) in enumerate(pairs)])
    print("eigenvalues: " + " ".join(f"{lam:.6g}" for lam, _ in pairs[:8]) + (" ..." if len(pairs) > 8 else ""))
    return {"eigenvalues": [lam for lam, _ in pairs]}


HANDLERS = {"solve": _solve, "maximize": _maximize, "sweep": _sweep, "limits": _limits,
            "truncate": _truncate, "check-conditions": _check_conditions, "eigen": _eigen}


def run(args):
    """Execute a parsed configuration; returns the process exit status."""
    start = time.perf_counter()
    try:
        r = Invocation(args)
        result = HANDLERS[args.command](r)
        status = 0
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotConverged, SweepNotSettled, InconsistentMultiplier) as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    manifest = {
        "command": args.command, "version": __version__,
        "parameters": {k: v for k, v in vars(args).items()},
        "seed": args.seed, "tolerances": {"tol": args.tol, "max_iter": args.max_iter},
        "restarts": args.restarts, "wall_time_s": time.perf_counter() - start,
        "outputs": list(r.outputs), "notes": r.notes, "result": result,
    }
    try:
        r.write_json("manifest.json", manifest)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    return status


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
