"""Command-line interface.

Exit codes: 0 computed, 1 computed a negative verdict (non-member, rejection,
property violated), 2 input error, 3 enumeration budget exceeded. The default
budget comes from ``$COBOUND_BUDGET``.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .applications import (SignMatrix, as_graph, constant_function_test, girth_and_min_cycle,
                           graph_from_edges, seidel_equivalence, sum_function_test,
                           tensor_power_test)
from .cohomology import cohomology_dim, homology_dim
from .complex import Complex, complete_complex, random_subcomplex
from .errors import BudgetExceeded, InputError
from .expansion import epsilon, mu
from .f2 import default_budget
from .tester import TesterReport, run_cocycle_tester, testability_certificate


class Outcome:
    def __init__(self, result: dict, code: int = 0, quiet: bool = False):
        self.result, self.code, self.quiet = result, code, quiet


def _fmt(v) -> str:
    if isinstance(v, dict) and "num" in v:
        return f"{v['num']}/{v['den']} (~{v['approx']})" if v["den"] != 1 else str(v["num"])
    return str(v)


def _text(result: dict) -> list[str]:
    return [f"{k}: {_fmt(v)}" for k, v in result.items()]


def _tester_json(r: TesterReport) -> dict:
    return {
        "i": r.i, "queries": r.queries, "trials": r.trials, "seed": r.seed,
        "rejections": r.rejections, "sampled_rate": io.rational(r.sampled_rate),
        "exact_rate": io.rational(r.exact_rate),
        "distance_normalized": io.rational(r.distance_normalized),
        "epsilon_bound": io.rational(r.epsilon_bound), "bound_satisfied": r.bound_satisfied,
        "member": r.member, "queries_made": r.queries_made,
        "wilson99": list(r.wilson99) if r.wilson99 else None,
        "notes": list(r.notes),
    }


def _tester_code(r: TesterReport) -> int:
    if r.trials:
        return 1 if r.rejections else 0
    return 0 if r.member else 1


# -- commands ------------------------------------------------------------------------

def cmd_generate(a) -> Outcome:
    if a.complete:
        n, d = a.complete
        X = complete_complex(n, d)
    else:
        n, d, p = a.random
        try:
            X = random_subcomplex(int(n), int(d), Fraction(p), a.seed)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    text = io.serialize_complex(X)
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)
    # without --out the file itself went to stdout
    return Outcome({"f_vector": X.f_vector(), "out": a.out}, quiet=not a.out)


def cmd_info(a) -> Outcome:
    X = io.read_complex(a.file)
    res = {
        "dim": X.dim,
        "f_vector": X.f_vector(),
        "cohomology_dims": [cohomology_dim(X, i) for i in range(X.dim + 1)],
        "homology_dims": [homology_dim(X, i) for i in range(X.dim + 1)],
    }
    return Outcome(res)


def cmd_epsilon(a) -> Outcome:
    X = io.read_complex(a.file)
    r = epsilon(X, a.i, a.budget, a.threads)
    return Outcome({
        "epsilon": io.rational(r.epsilon), "witness": io.faces_json(X, r.witness),
        "witness_dist": r.witness_dist, "witness_coboundary_weight": r.witness_coboundary_weight,
        "cosets_enumerated": r.cosets_enumerated, "h_nonzero": r.h_nonzero,
    })


def cmd_mu(a) -> Outcome:
    X = io.read_complex(a.file)
    return Outcome({"mu": io.rational(mu(X, a.i, a.budget, a.threads))})


def cmd_test(a) -> Outcome:
    X = io.read_complex(a.file)
    f = io.read_cochain(a.cochain, X)
    if f.dim != a.i:
        raise InputError(f"cochain has dimension {f.dim}, -i is {a.i}")
    r = run_cocycle_tester(X, f, a.trials, a.seed, a.budget, a.threads)
    return Outcome(_tester_json(r), _tester_code(r))


def cmd_certify(a) -> Outcome:
    X = io.read_complex(a.file)
    c = testability_certificate(X, a.i, a.budget, a.threads)
    res = {
        "epsilon": io.rational(c.epsilon), "cosets_checked": c.cosets_checked,
        "violations": c.violations, "equality_count": c.equality_count,
        "equality_witness": io.faces_json(X, c.equality_witness),
        "equality_rate": io.rational(c.equality_rate),
        "equality_distance": io.rational(c.equality_distance),
        "h_nonzero": c.h_nonzero, "cocycle_witness": io.faces_json(X, c.cocycle_witness),
        "valid": c.valid,
    }
    # a positive testing constant exists iff H^i = 0
    return Outcome(res, 0 if c.valid and not c.h_nonzero else 1)


def _sampled(a) -> tuple[int | None, int]:
    return (a.trials, a.seed) if a.trials else (None, a.seed)


def cmd_sumfn(a) -> Outcome:
    X = io.read_complex(a.file)
    f = io.read_cochain(a.cochain, X)
    trials, seed = _sampled(a)
    r = sum_function_test(X, f, trials, seed, a.budget)
    return Outcome(_tester_json(r), _tester_code(r))


def cmd_constfn(a) -> Outcome:
    G = io.read_complex(a.file)
    f = io.read_cochain(a.cochain, G)
    trials, seed = _sampled(a)
    r = constant_function_test(G, f, trials, seed, a.budget)
    return Outcome(_tester_json(r), _tester_code(r))


def cmd_tensor(a) -> Outcome:
    M = SignMatrix(tuple(tuple(r) for r in io.parse_sign_matrix(io.read_text(a.file))))
    trials, seed = _sampled(a)
    r = tensor_power_test(M, trials, seed, a.budget)
    res = _tester_json(r)
    res["tensor_power"] = r.member
    return Outcome(res, _tester_code(r))


def _graph_on(X: Complex, n: int) -> Complex:
    return graph_from_edges(n, as_graph(X).faces(1))


def cmd_seidel(a) -> Outcome:
    G1, G2 = io.read_complex(a.first), io.read_complex(a.second)
    n = a.vertices or max(G1.vertex_count, G2.vertex_count)
    trials, seed = _sampled(a)
    r = seidel_equivalence(_graph_on(G1, n), _graph_on(G2, n), trials, seed, a.budget)
    K = complete_complex(n, 2) if n >= 3 else None
    res = {
        "n": r.n, "equivalent": r.equivalent,
        "difference": io.faces_json(K, r.difference) if K else None,
        "distance": r.distance, "distance_normalized": io.rational(r.distance_normalized),
        "exact_rate": io.rational(r.exact_rate),
        "tester": _tester_json(r.tester) if r.tester else None,
    }
    if r.tester is not None:
        code = 1 if r.tester.rejections else 0
    else:
        code = 0 if r.equivalent else 1
    return Outcome(res, code)


def cmd_girth(a) -> Outcome:
    G = io.read_complex(a.file)
    r = girth_and_min_cycle(G, a.budget)
    res = {"girth": io.number(r.girth), "min_cycle_weight": io.number(r.min_cycle_weight),
           "cycle_space_dim": r.cycle_space_dim}
    return Outcome(res, 0 if r.girth == r.min_cycle_weight else 1)


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--budget", type=lambda s: int(s, 0), default=None,
                        help="max enumeration size (default $COBOUND_BUDGET or 2^22)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker threads; results do not depend on it")

    p = argparse.ArgumentParser(prog="cobound",
                                description="F2 cohomology, coboundary expansion and cocycle testers")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write a complex file")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--complete", nargs=2, type=int, metavar=("N", "D"))
    src.add_argument("--random", nargs=3, metavar=("N", "D", "P"))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("info", parents=[common], help="face counts and (co)homology")
    s.add_argument("file")
    s.set_defaults(func=cmd_info)

    for name, func, helptext in [("epsilon", cmd_epsilon, "exact ε_i"),
                                 ("mu", cmd_mu, "exact μ_i"),
                                 ("certify", cmd_certify, "testability certificate")]:
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("-i", type=int, required=True)
        s.add_argument("file")
        s.set_defaults(func=func)

    s = sub.add_parser("test", parents=[common], help="simulate the i-cocycle tester")
    s.add_argument("-i", type=int, required=True)
    s.add_argument("--cochain", required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_test)

    def sampling(sp):
        sp.add_argument("--trials", type=int, default=None,
                        help="sample this many trials (default: exact mode)")
        sp.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("sumfn", parents=[common], help="sum-function (triangle) test on K_m")
    s.add_argument("--cochain", required=True)
    s.add_argument("file")
    sampling(s)
    s.set_defaults(func=cmd_sumfn)

    s = sub.add_parser("constfn", parents=[common], help="constant-function edge test")
    s.add_argument("--cochain", required=True)
    s.add_argument("file")
    sampling(s)
    s.set_defaults(func=cmd_constfn)

    s = sub.add_parser("tensor", parents=[common], help="tensor-power test of a ±1 matrix")
    s.add_argument("file")
    sampling(s)
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("seidel", parents=[common], help="Seidel equivalence of labelled graphs")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--vertices", type=int, default=None, help="n (default: inferred)")
    sampling(s)
    s.set_defaults(func=cmd_seidel)

    s = sub.add_parser("girth", parents=[common], help="girth vs. minimum cycle weight")
    s.add_argument("file")
    s.set_defaults(func=cmd_girth)
    return p


def _params(a) -> dict:
    return {
        "i": getattr(a, "i", None),
        "seed": getattr(a, "seed", None),
        "trials": getattr(a, "trials", None),
        "budget": a.budget if a.budget is not None else default_budget(),
        "threads": max(1, a.threads),
    }


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report = {"command": a.command, "params": _params(a), "result": {}}
    try:
        out = a.func(a)
    except BudgetExceeded as exc:
        msg = f"budget exceeded: {exc}; required budget: {exc.required}"
        report.update(status="budget_exceeded", exit_code=3, error=msg,
                      required_budget=exc.required)
        return _emit(a, report, [], err=msg)
    except (InputError, OSError, ValueError) as exc:
        msg = f"input error: {exc}"
        report.update(status="input_error", exit_code=2, error=msg)
        return _emit(a, report, [], err=msg)
    report.update(status="ok" if out.code == 0 else "violated", exit_code=out.code,
                  result=out.result)
    return _emit(a, report, [] if out.quiet else _text(out.result), quiet=out.quiet)


def _emit(a, report: dict, text: list[str], err: str | None = None, quiet: bool = False) -> int:
    if err:
        print(err, file=sys.stderr)
    if a.json and not quiet:
        print(io.dumps(report))
    else:
        for line in text:
            print(line)
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
