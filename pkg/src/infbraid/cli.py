"""Command line driver.

    infbraid check-cdga <file>
    infbraid solve-poisson <file> [--require-nonzero-pi] [--out DIR]
    infbraid verify <plan> [--hbar 0|2|3] [--seed N] [--json OUT]

Exit status: 0 when everything passes, 1 on a mathematical failure and 2 on
an input error.
"""

import argparse
import json
import os
import random
import sys

from .algebra import check_square_zero
from .io import (InputError, algebra_from_json, is_lie_data, lie_spec_from_json, load_json,
                 poisson_to_json)
from .lie import InvalidLieData, solve_lie_invariance, solve_string_poisson
from .parser import format_poly
from .plan import MAX_TERMS, load_plan, run_plan

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def cmd_check_cdga(args, out):
    A = algebra_from_json(load_json(args.file), check=False)
    bad = check_square_zero(A)
    if not bad:
        out.write("PASS d^2 = 0 on %d generators\n" % A.alg.n)
        return EXIT_OK
    for name in A.alg.generators:
        r = bad.get(name.name)
        if r is not None:
            out.write("FAIL d^2(%s) = %s\n" % (name.name, format_poly(r, MAX_TERMS)))
    return EXIT_FAIL


def _describe_branch(sol, br, out):
    cond = " (%s)" % br.condition if br.condition else ""
    out.write("branch %s%s: %d parameter(s)\n" % (br.name, cond, br.dim))
    for k, v in enumerate(br.vectors):
        out.write("  p%d: %s\n" % (k + 1, format_poly(v, MAX_TERMS)))
    for rel in br.relations:
        out.write("  relation: %s\n" % rel)


def cmd_solve_poisson(args, out):
    data = load_json(args.file)
    if not is_lie_data(data) and "builtin" not in data:
        raise InputError("%s: expected a Lie spec" % args.file)
    spec = lie_spec_from_json(data)
    if spec.N == 1:
        sol = solve_lie_invariance(spec)
        if args.require_nonzero_pi and not any(b.vectors for b in sol.branches):
            sol.verdict = "infeasible"
    else:
        sol = solve_string_poisson(spec, require_nonzero_pi=args.require_nonzero_pi)
    out.write("%s: %s\n" % (spec.name, sol.verdict))
    if sol.verdict == "infeasible":
        # a decided "no solutions" is an answer, not a failed check
        return EXIT_OK
    for br in sol.branches:
        _describe_branch(sol, br, out)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for k, P in enumerate(sol.instances(random.Random(args.seed))):
            path = os.path.join(args.out, "%s_%d.json" % (spec.name, k + 1))
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(poisson_to_json(sol.PA, P), fh, indent=2)
                fh.write("\n")
            out.write("wrote %s\n" % path)
    return EXIT_OK


def cmd_verify(args, out):
    plan = load_plan(args.plan)
    report = run_plan(plan, seed=args.seed, hbar=args.hbar,
                      base_dir=os.path.dirname(os.path.abspath(args.plan)))
    for r in report["checks"]:
        if r["status"] == "skipped":
            out.write("SKIP %s (%s)\n" % (r["name"], r["reason"]))
            continue
        strict = sum(p["strict_passes"] for p in r["parts"])
        exact = sum(p["mod_exact_passes"] for p in r["parts"])
        out.write("%s %s: %d exact, %d mod-exact\n"
                  % ("PASS" if r["status"] == "pass" else "FAIL", r["name"], strict, exact))
        for p in r["parts"]:
            for f in p["failures"]:
                out.write("    %s at %s: %s\n" % (p["name"], f["at"], f["residue"]))
    s = report["summary"]
    out.write("summary: %d passed, %d failed, %d skipped\n"
              % (s["passed"], s["failed"], s["skipped"]))
    if args.json:
        text = json.dumps(report, indent=2) + "\n"
        if args.json == "-":
            out.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
    return EXIT_OK if s["ok"] else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="infbraid",
                                description="Exact checks for infinitesimal 2-braidings.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check-cdga", help="check d^2 = 0 for an algebra or Lie spec")
    c.add_argument("file")
    c.set_defaults(func=cmd_check_cdga)
    s = sub.add_parser("solve-poisson", help="solve for 2-shifted Poisson structures")
    s.add_argument("file")
    s.add_argument("--require-nonzero-pi", action="store_true")
    s.add_argument("--out", help="directory for Poisson candidate files")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve_poisson)
    v = sub.add_parser("verify", help="run a check plan")
    v.add_argument("plan")
    v.add_argument("--hbar", type=int, choices=(0, 2, 3))
    v.add_argument("--seed", type=int)
    v.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, InvalidLieData) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
