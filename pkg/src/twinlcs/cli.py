"""Command-line interface: LCS queries, twin search, family construction,
tail bounds, seeded experiments, and verification suites.

Words are accepted inline (full ``k=2;w=1,2,1`` form or compact digits)
or from a file via ``@path``.  Global flags may appear before or after
the subcommand.  With ``--json`` every command emits one JSON document
carrying a schema_version field; ``--out`` redirects output to a file.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .bounds import (alpha_threshold, asymptotic_threshold,
                     lower_bound_values, minmax_constant, role_count,
                     role_prob, theta, union_bound)
from .constructions import (FAMILY_BUILDERS, check_family, cube_quadruple,
                            grid_pair, multiperm_quadruple, quadratic_family,
                            stratified_family, tuplet_family)
from .errors import BudgetError, InvalidCertificateError
from .experiments import (SCHEMA_VERSION, SUITES, ExperimentConfig,
                          estimate_lt_tail, minimize_expected_lcs,
                          verify_suite)
from .lcs import (DEFAULT_BUDGET_CELLS, lcs_pair, lcs_reversible,
                  set_lcs_stats)
from .twins import (DEFAULT_NODE_BUDGET, lt_exact, lt_oracle, parse_roles,
                    role_stats, roles_to_text, twins_via_blocks,
                    twins_via_runs)
from .words import Word, parse_word


def load_word(text: str) -> Word:
    """Parse an inline word or, with a leading ``@``, a word file."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8").strip()
    return parse_word(text)


def _emit(args: argparse.Namespace, payload: dict,
          lines: list[str]) -> None:
    if args.json:
        body = json.dumps({"schema_version": SCHEMA_VERSION, **payload},
                          indent=2, sort_keys=True, default=str) + "\n"
    else:
        body = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)


def _config_from(args: argparse.Namespace, **overrides) -> ExperimentConfig:
    return ExperimentConfig(seed=args.seed,
                            budget_nodes=args.budget_nodes,
                            budget_cells=args.budget_cells,
                            out=args.out, **overrides)


# -- subcommand handlers ------------------------------------------------------


def _cmd_lcs(args: argparse.Namespace) -> int:
    a = load_word(args.first)
    b = load_word(args.second)
    if args.reversible:
        result = lcs_reversible(a, b, witness=not args.no_witness,
                                budget_cells=args.budget_cells)
        lines = [f"length: {result.length}",
                 f"orientation: {result.orientation}"]
        detail = result.detail
    else:
        detail = lcs_pair(a, b, witness=not args.no_witness,
                          budget_cells=args.budget_cells)
        result = detail
        lines = [f"length: {detail.length}"]
    if detail.word is not None:
        lines.append(f"common: {detail.word.to_text()}")
        for label, ix in zip(("first", "second"), detail.indices):
            lines.append(f"{label}: {' '.join(map(str, ix))}")
    _emit(args, result.to_json(), lines)
    return 0


def _cmd_lcs_set(args: argparse.Namespace) -> int:
    words = [load_word(text) for text in args.words]
    stats = set_lcs_stats(words, args.t, budget_cells=args.budget_cells)
    lines = [f"words: {len(words)}", f"t: {stats.t}",
             f"joint value: {stats.value}",
             f"best subset: {' '.join(map(str, stats.best_subset))}",
             "pairwise:"]
    lines += ["  " + " ".join(f"{v:3d}" for v in row)
              for row in stats.pairwise]
    _emit(args, stats.to_json(), lines)
    return 0


def _certificate_lines(cert) -> list[str]:
    return [f"length: {cert.length}",
            f"roles: {roles_to_text(cert.roles)}",
            f"twin word: {cert.twin_word().to_text()}",
            f"first: {' '.join(map(str, cert.first))}",
            f"second: {' '.join(map(str, cert.second))}"]


def _cmd_twins(args: argparse.Namespace) -> int:
    word = load_word(args.word)
    if args.method == "oracle":
        value = lt_oracle(word, max_length=args.max_length
                          if args.max_length else 14)
        _emit(args, {"value": value, "method": "oracle"},
              [f"length: {value}"])
        return 0
    if args.method == "runs":
        cert = twins_via_runs(word)
        _emit(args, cert.to_json(), _certificate_lines(cert))
        return 0
    if args.method == "blocks":
        result = twins_via_blocks(word)
        lines = _certificate_lines(result.certificate)
        lines.append(f"block values: {' '.join(map(str, result.block_values))}")
        lines.append(f"per-block floor: {result.per_block_floor:.4f} "
                     f"({'met' if result.floor_met else 'missed'})")
        _emit(args, result.to_json(), lines)
        return 0
    cert = lt_exact(word, max_length=args.max_length or 40,
                    budget_nodes=args.budget_nodes)
    _emit(args, cert.to_json(), _certificate_lines(cert))
    return 0


def _parse_ms(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"--ms expects comma-separated integers: {exc}")


def _cmd_construct(args: argparse.Namespace) -> int:
    family = args.family
    if family == "quadratic":
        out = quadratic_family(args.p, k=args.k)
    elif family == "cube":
        out = cube_quadruple(args.n)
    elif family == "grid":
        out = grid_pair(args.k, args.s, k1=args.k1, k2=args.k2)
    elif family == "multiperm":
        out = multiperm_quadruple(args.s, args.k1, args.k2, args.k3, k=args.k)
    elif family == "tuplet":
        out = tuplet_family(args.t, args.kappa)
    else:
        out = stratified_family(args.k, args.n, _parse_ms(args.ms))
    payload = out.to_json()
    lines = [f"family: {out.family}",
             "params: " + " ".join(f"{k}={v}" for k, v in out.params),
             f"words: {len(out.words)}"]
    lines += [f"  {w.to_text()}" for w in out.words]
    lines.append(f"ceilings: {len(out.ceilings)}")
    if args.check:
        report = check_family(out, budget_cells=args.budget_cells,
                              set_restrict=args.set_restrict)
        payload["checks"] = [
            {"ceiling": c.to_json(), "value": v, "ok": ok}
            for c, v, ok in report]
        for c, v, ok in report:
            lines.append(f"  {c.mode}{list(c.indices)} <= {c.bound}: "
                         f"value {v} {'ok' if ok else 'VIOLATED'}")
        if not all(ok for _, _, ok in report):
            _emit(args, payload, lines)
            return 1
    else:
        lines += [f"  {c.mode}{list(c.indices)} <= {c.bound}"
                  for c in out.ceilings]
    _emit(args, payload, lines)
    return 0


def _cmd_bound(args: argparse.Namespace) -> int:
    what = args.what
    if what == "theta":
        breakdown = theta(args.alpha, args.k)
        lines = [f"theta({args.alpha}, {args.k}) = {breakdown.value:.9f}",
                 f"shape: {breakdown.shape_term:.9f}",
                 f"match: {breakdown.match_term:.9f}",
                 f"switch: {breakdown.switch_term:.9f}",
                 f"idle: {breakdown.idle_term:.9f}"]
        _emit(args, breakdown.to_json(), lines)
        return 0
    if what == "threshold":
        result = alpha_threshold(args.k, tol=args.tol)
        if result is None:
            _emit(args, {"k": args.k, "alpha": None},
                  [f"k={args.k}: no negative-exponent density "
                   "(method certifies nothing)"])
            return 0
        _emit(args, result.to_json(),
              [f"alpha: {result.alpha:.9f}",
               f"theta: {result.theta:.3e}"])
        return 0
    if what == "union":
        value = union_bound(args.k, args.n, args.m)
        _emit(args, {"k": args.k, "n": args.n, "m": args.m,
                     "bound": str(value), "float": float(value)},
              [f"union bound: {value} ~ {float(value):.6g}"])
        return 0
    if what == "count":
        value = role_count(args.n, args.m, args.p, args.z)
        _emit(args, {"n": args.n, "m": args.m, "p": args.p, "z": args.z,
                     "count": value},
              [f"role words: {value}"])
        return 0
    if what == "prob":
        if args.roles is not None:
            stats = role_stats(parse_roles(args.roles))
            n, m, p, z = (stats.length, stats.pairs, stats.switches,
                          stats.leading_zeros)
        elif None in (args.n, args.m, args.p, args.z):
            raise ValueError("prob needs --roles or all of --n --m --p --z")
        else:
            n, m, p, z = args.n, args.m, args.p, args.z
        value = role_prob(args.k, n, m, p, z)
        _emit(args, {"k": args.k, "n": n, "m": m, "p": p, "z": z,
                     "probability": str(value), "float": float(value)},
              [f"probability: {value} ~ {float(value):.6g}"])
        return 0
    # constants
    values = lower_bound_values(args.k)
    asymptotic = asymptotic_threshold(args.k)
    payload = {"lower_bounds": values.to_json(),
               "asymptotic": asymptotic.to_json()}
    mm = values.minmax
    lines = [f"per-letter: {values.per_letter}",
             "improved: " + (str(values.improved)
                             if values.improved is not None else "n/a"),
             f"min-max constant: {mm.value:.9f} at x={mm.x:.9f}",
             f"linear: {values.linear_slope:.9f} n - "
             f"{values.linear_offset:.9f}",
             f"asymptotic leading: {asymptotic.leading:.9f}",
             f"asymptotic coarse: {asymptotic.coarse:.9f}",
             f"asymptotic refined: {asymptotic.refined:.9f}"]
    _emit(args, payload, lines)
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    if args.experiment == "lt-tail":
        config = _config_from(args, trials=args.trials, k=args.k, n=args.n,
                              alpha=args.alpha)
        estimate = estimate_lt_tail(args.k, args.n, args.alpha, config)
        lines = [f"Pr[LT >= {estimate.pairs}] over [{args.k}]^{args.n}",
                 f"method: {estimate.method}",
                 f"probability: {estimate.probability:.6f}",
                 f"interval: [{estimate.lo:.6f}, {estimate.hi:.6f}]",
                 f"trials: {estimate.trials}"]
        if estimate.exact is not None:
            lines.append(f"exact: {estimate.exact}")
        _emit(args, estimate.to_json(), lines)
        return 0
    config = _config_from(args, k=args.k, starts=args.starts)
    result = minimize_expected_lcs(args.k, config)
    lines = [f"minimum found: {result.value:.9f}",
             f"uniform value: {result.uniform_value:.9f}",
             f"starts: {result.starts} (best: {result.best_start})",
             f"conjectured floor sqrt({args.k}) = {args.k ** 0.5:.9f}"]
    if result.below_conjectured_floor:
        lines.append("BELOW CONJECTURED FLOOR: counterexample candidate; "
                     "inspect the distribution")
    _emit(args, result.to_json(), lines)
    return 1 if result.below_conjectured_floor else 0


def _cmd_verify(args: argparse.Namespace) -> int:
    config = _config_from(args)
    report = verify_suite(args.suite, config)
    _emit(args, report.to_json(), report.summary_lines())
    return 0 if report.ok else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="master seed for randomized work (default 0)")
    common.add_argument("--budget-cells", type=int, default=argparse.SUPPRESS,
                        help="cap on DP table cells")
    common.add_argument("--budget-nodes", type=int, default=argparse.SUPPRESS,
                        help="cap on twin-solver search nodes")
    common.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS,
                        help="emit one JSON document")
    common.add_argument("--out", type=str, default=argparse.SUPPRESS,
                        help="write output to this file")

    root = argparse.ArgumentParser(
        prog="twinlcs",
        parents=[common],
        description="Twins, common subsequences, permutation families, "
                    "and tail bounds.")
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lcs", parents=[common],
                       help="longest common subsequence of two words")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--no-witness", action="store_true",
                   help="length only, no alignment")
    p.add_argument("--reversible", action="store_true",
                   help="also try the reversed second word")
    p.set_defaults(func=_cmd_lcs)

    p = sub.add_parser("lcs-set", parents=[common],
                       help="pairwise table and best joint subsequence")
    p.add_argument("words", nargs="+")
    p.add_argument("--t", type=int, default=2,
                   help="subset size for the joint value")
    p.set_defaults(func=_cmd_lcs_set)

    p = sub.add_parser("twins", parents=[common],
                       help="longest twins of a word")
    p.add_argument("word")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", dest="method", action="store_const",
                       const="exact", help="memoized solver (default)")
    group.add_argument("--oracle", dest="method", action="store_const",
                       const="oracle", help="brute enumeration")
    group.add_argument("--runs", dest="method", action="store_const",
                       const="runs", help="run-pairing construction")
    group.add_argument("--blocks", dest="method", action="store_const",
                       const="blocks", help="blockwise construction")
    p.add_argument("--max-length", type=int, default=None)
    p.set_defaults(func=_cmd_twins, method="exact")

    p = sub.add_parser("construct", parents=[common],
                       help="build a low-LCS word family")
    fam = p.add_subparsers(dest="family", required=True)
    q = fam.add_parser("quadratic", parents=[common])
    q.add_argument("--p", type=int, required=True, help="prime modulus")
    q.add_argument("--k", type=int, default=None,
                   help="restrict to the first k letters")
    q = fam.add_parser("cube", parents=[common])
    q.add_argument("--n", type=int, required=True, help="side length")
    q = fam.add_parser("grid", parents=[common])
    q.add_argument("--k", type=int, default=None, help="alphabet size (auto)")
    q.add_argument("--s", type=int, default=1, help="multiplicity")
    q.add_argument("--k1", type=int, default=None)
    q.add_argument("--k2", type=int, default=None)
    q = fam.add_parser("multiperm", parents=[common])
    q.add_argument("--s", type=int, required=True, help="multiplicity")
    q.add_argument("--k1", type=int, default=None)
    q.add_argument("--k2", type=int, default=None)
    q.add_argument("--k3", type=int, default=None)
    q.add_argument("--k", type=int, default=None, help="alphabet size (auto)")
    q = fam.add_parser("tuplet", parents=[common])
    q.add_argument("--t", type=int, required=True, help="tuplet order")
    q.add_argument("--kappa", type=int, required=True,
                   help="pairwise ceiling")
    q = fam.add_parser("stratified", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--ms", type=str, required=True,
                   help="comma-separated block lengths")
    for name in ("quadratic", "cube", "grid", "multiperm", "tuplet",
                 "stratified"):
        fam.choices[name].add_argument(
            "--check", action="store_true",
            help="verify every ceiling numerically")
        fam.choices[name].add_argument(
            "--set-restrict", type=int, default=None,
            help="restrict alphabet before joint-LCS checks")
        fam.choices[name].set_defaults(func=_cmd_construct)

    p = sub.add_parser("bound", parents=[common],
                       help="tail-bound calculus and constants")
    what = p.add_subparsers(dest="what", required=True)
    q = what.add_parser("theta", parents=[common])
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--k", type=int, required=True)
    q = what.add_parser("threshold", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--tol", type=float, default=1e-9)
    q = what.add_parser("union", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q = what.add_parser("count", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--z", type=int, required=True)
    q = what.add_parser("prob", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--roles", type=str, default=None,
                   help="role word; overrides --n/--m/--p/--z")
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--m", type=int, default=None)
    q.add_argument("--p", type=int, default=None)
    q.add_argument("--z", type=int, default=None)
    q = what.add_parser("constants", parents=[common])
    q.add_argument("--k", type=int, required=True)
    for name in ("theta", "threshold", "union", "count", "prob", "constants"):
        what.choices[name].set_defaults(func=_cmd_bound)

    p = sub.add_parser("experiment", parents=[common],
                       help="seeded randomized experiments")
    exp = p.add_subparsers(dest="experiment", required=True)
    q = exp.add_parser("lt-tail", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--trials", type=int, default=1000)
    q.set_defaults(func=_cmd_experiment)
    q = exp.add_parser("conjecture", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--starts", type=int, default=100)
    q.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("verify", parents=[common],
                       help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.set_defaults(func=_cmd_verify)

    return root


_GLOBAL_DEFAULTS = (("seed", 0), ("budget_cells", DEFAULT_BUDGET_CELLS),
                    ("budget_nodes", DEFAULT_NODE_BUDGET), ("json", False),
                    ("out", None))


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # global flags use suppressed defaults so any position wins; fill the rest
    for dest, value in _GLOBAL_DEFAULTS:
        if not hasattr(args, dest):
            setattr(args, dest, value)
    try:
        return args.func(args)
    except (ValueError, InvalidCertificateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
