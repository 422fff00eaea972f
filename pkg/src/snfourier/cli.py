"""Command-line entry point.

Every subcommand emits an ExperimentReport (JSON by default) carrying the
command name, the seed and parameters needed to replay it, and the results.
Exit codes: 0 success, 1 negative verdict (is-lop / is-tsp / gordan-check /
characterize), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .characterize import (
    check_lop_structure,
    check_qap_structure,
    check_tsp_structure,
    generate_structured_coefficients,
    kondor_factorization_check,
    perm_rep_oracle_matrix,
)
from .fourier import CoefficientFamily, FunctionTable, ft, ft_at_perm_rep, ift
from .gordan import (
    base_functions,
    gordan_verdict,
    load_ranking_text,
    verify_witness,
)
from .membership import is_lop, is_tsp
from .partitions import enumerate_partitions, supported_tabloid_shapes
from .problems import (
    h_function,
    load_instance_json,
    load_instance_text,
    load_values_file,
    objective_table,
    random_instance,
)
from .rankings import algorithm1_experiment, lop_ranking_bound, pattern_closure_check

_KIND_ALIASES = {"lop": "LOP", "tsp": "TSP", "symtsp": "symTSP", "qap": "QAP"}


class InputError(Exception):
    """User-facing input problem; reported on stderr with exit code 2."""


def _report(command: str, parameters: dict, results, seed=None, n=None) -> dict:
    return {
        "command": command,
        "seed": seed,
        "n": n,
        "parameters": parameters,
        "results": results,
        "tool_version": __version__,
    }


def _flatten(prefix: str, value, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix, json.dumps(value)))
    else:
        rows.append((prefix, str(value)))


def _emit(report: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif fmt == "csv":
        rows: list[tuple[str, str]] = []
        _flatten("", report["results"], rows)
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["key", "value"])
        w.writerows(rows)
        text = buf.getvalue()
    else:  # text
        rows = []
        _flatten("", report["results"], rows)
        text = "\n".join(f"{k}: {v}" for k, v in rows) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_instance(args) -> object:
    kind = _KIND_ALIASES[args.kind]
    if args.instance:
        text = _read(args.instance)
        if args.instance.endswith(".json"):
            return load_instance_json(text)
        return load_instance_text(text, kind)
    if args.n is None:
        raise InputError("either --instance or --n (with --seed) is required")
    return random_instance(kind, args.n, args.seed)


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommand implementations; each returns (results, exit_code)
# ---------------------------------------------------------------------------

def _cmd_ft(args):
    f = load_values_file(_read(args.values))
    fam = ft(f)
    return json.loads(fam.to_json()), 0, f.n


def _cmd_ift(args):
    text = _read(args.coeffs)
    data = json.loads(text)
    if "coeffs" not in data and isinstance(data.get("results"), dict):
        # accept a full report produced by the ft subcommand
        data = data["results"]
        text = json.dumps(data)
    fam = CoefficientFamily.from_json(text)
    f = ift(fam)
    return {"n": f.n, "values": f.values.tolist()}, 0, f.n


def _cmd_characterize(args):
    inst = _load_instance(args)
    kind = _KIND_ALIASES[args.kind]
    if kind == "LOP":
        rep = check_lop_structure(inst, tol=args.tol)
    elif kind in ("TSP", "symTSP"):
        rep = check_tsp_structure(inst, tol=args.tol)
    else:
        rep = check_qap_structure(inst, tol=args.tol)
    results = rep.to_dict()
    fam = ft(objective_table(inst))
    results["coefficient_norms"] = {
        str(list(s)): float(np.linalg.norm(fam.matrix(s))) for s in enumerate_partitions(inst.n)
    }
    if kind == "QAP":
        results["factorization_residuals"] = {
            str(list(k)): v for k, v in kondor_factorization_check(inst).items()
        }
    if args.plot_dir:
        from .plots import ensure_plot_dir, save_structure_figure

        path = os.path.join(ensure_plot_dir(args.plot_dir), f"structure_{args.kind}_n{inst.n}.png")
        save_structure_figure(results, path)
        results["figure"] = path
    return results, 0 if rep.verdict else 1, inst.n


def _cmd_is_lop(args):
    f = load_values_file(_read(args.values))
    v = is_lop(f, threshold=args.threshold)
    results = {
        "member": v.member,
        "residual": v.residual,
        "matrix": v.matrix.tolist() if v.matrix is not None else None,
        "reason": v.reason,
    }
    return results, 0 if v.member else 1, f.n


def _cmd_is_tsp(args):
    f = load_values_file(_read(args.values))
    v = is_tsp(f, symmetric=args.symmetric, threshold=args.threshold)
    results = {
        "member": v.member,
        "residual": v.residual,
        "matrix": v.matrix.tolist() if v.matrix is not None else None,
        "reason": v.reason,
    }
    return results, 0 if v.member else 1, f.n


def _cmd_gen_structured(args):
    kind = _KIND_ALIASES[args.kind]
    if kind == "QAP":
        raise InputError("gen-structured supports lop, tsp and symtsp only")
    fam = generate_structured_coefficients(kind, args.n, args.seed)
    results = json.loads(fam.to_json())
    if args.with_values:
        results["values"] = ift(fam).values.tolist()
    return results, 0, args.n


def _cmd_ranking_experiment(args):
    rep = algorithm1_experiment(reps=args.reps, seed=args.seed)
    results = {
        "reps": rep.reps,
        "distinct_rankings": rep.distinct_rankings,
        "distinct_patterns": rep.distinct_patterns,
        "tie_count": rep.tie_count,
        "pattern_counts": dict(sorted(rep.pattern_counts.items())),
        "pattern_closure": pattern_closure_check(rep),
    }
    if args.plot_dir:
        from .plots import ensure_plot_dir, save_pattern_figure

        path = os.path.join(ensure_plot_dir(args.plot_dir), "pattern_frequencies.png")
        save_pattern_figure(rep.pattern_counts, path)
        results["figure"] = path
    return results, 0, 3


def _cmd_gordan_check(args):
    ranking = load_ranking_text(_read(args.ranking))
    excluded = frozenset(tuple(json.loads(e)) for e in args.exclude) if args.exclude else frozenset(
        {tuple([1] * ranking.n)}
    )
    v = gordan_verdict(ranking, excluded)
    results = {
        "possible": v.possible,
        "certified": v.certified,
        "nullspace_dim": v.nullspace_dim,
        "excluded": sorted(list(s) for s in excluded),
        "witness": v.witness.tolist() if v.witness is not None else None,
        "certificate": v.certificate.tolist() if v.certificate is not None else None,
    }
    if v.witness is not None:
        basis = base_functions(ranking.n, excluded)
        results["witness_verified"] = verify_witness(ranking, v.witness, basis)
    return results, 0 if v.possible else 1, ranking.n


def _cmd_oracle_check(args):
    if args.n < 4:
        raise InputError("oracle-check requires --n >= 4")
    h = h_function(args.n)
    results = {}
    worst = 0.0
    for shape in supported_tabloid_shapes(args.n):
        got = ft_at_perm_rep(h, shape)
        want = perm_rep_oracle_matrix(shape, args.n)
        err = float(np.max(np.abs(got - want)))
        results[str(list(shape))] = err
        worst = max(worst, err)
    results = {"max_abs_error": worst, "per_shape": results, "pass": worst <= args.tol}
    return results, 0 if worst <= args.tol else 1, args.n


def _cmd_bound(args):
    value = lop_ranking_bound(args.n)
    return {"bound": value}, 0, args.n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="snfourier", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=False, n=False, plot=False):
        sp.add_argument("--out", help="write the report to this file instead of stdout")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if n:
            sp.add_argument("--n", type=int)
        if plot:
            sp.add_argument("--plot-dir", help="render figures into this directory")

    sp = sub.add_parser("ft", help="Fourier coefficients of a value table")
    sp.add_argument("values", help="file with n! objective values, one per line")
    common(sp)
    sp.set_defaults(func=_cmd_ft)

    sp = sub.add_parser("ift", help="invert a coefficient family to a value table")
    sp.add_argument("coeffs", help="coefficient family JSON file")
    common(sp)
    sp.set_defaults(func=_cmd_ift)

    sp = sub.add_parser("characterize", help="structure report for an instance")
    sp.add_argument("--kind", choices=sorted(_KIND_ALIASES), required=True)
    sp.add_argument("--instance", help="instance file (text or .json)")
    sp.add_argument("--tol", type=float, default=1e-8)
    common(sp, seed=True, n=True, plot=True)
    sp.set_defaults(func=_cmd_characterize)

    sp = sub.add_parser("is-lop", help="decide realizability as a linear ordering objective")
    sp.add_argument("values")
    sp.add_argument("--threshold", type=float, default=1e-8)
    common(sp)
    sp.set_defaults(func=_cmd_is_lop)

    sp = sub.add_parser("is-tsp", help="decide realizability as a closed-tour objective")
    sp.add_argument("values")
    sp.add_argument("--symmetric", action="store_true")
    sp.add_argument("--threshold", type=float, default=1e-8)
    common(sp)
    sp.set_defaults(func=_cmd_is_tsp)

    sp = sub.add_parser("gen-structured", help="random coefficients with a kind's sparsity pattern")
    sp.add_argument("--kind", choices=("lop", "tsp", "symtsp"), required=True)
    sp.add_argument("--with-values", action="store_true", help="also include the value table")
    common(sp, seed=True, n=True)
    sp.set_defaults(func=_cmd_gen_structured)

    sp = sub.add_parser("ranking-experiment", help="sample rankings from random coefficients (n=3)")
    sp.add_argument("--reps", type=int, default=1_000_000)
    common(sp, seed=True, plot=True)
    sp.set_defaults(func=_cmd_ranking_experiment)

    sp = sub.add_parser("gordan-check", help="decide if a ranking survives excluded coefficients")
    sp.add_argument("--ranking", required=True, help="file with one permutation per line, best first")
    sp.add_argument(
        "--exclude",
        nargs="*",
        help='excluded partitions as JSON lists, e.g. "[1, 1, 1, 1]"; default: the all-ones partition',
    )
    common(sp)
    sp.set_defaults(func=_cmd_gordan_check)

    sp = sub.add_parser("oracle-check", help="closed-form vs direct transform at the tabloid representations")
    sp.add_argument("--tol", type=float, default=1e-10)
    common(sp, n=True)
    sp.set_defaults(func=_cmd_oracle_check)

    sp = sub.add_parser("bound", help="upper bound on distinct linear-ordering rankings")
    common(sp, n=True)
    sp.set_defaults(func=_cmd_bound)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and not 2 <= args.n <= 8:
        print(f"error: n={args.n} out of range 2..8", file=sys.stderr)
        return 2
    try:
        results, code, n = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = _report(
        args.command,
        {
            k: v
            for k, v in vars(args).items()
            if k not in ("func", "command", "out", "format") and not callable(v)
        },
        results,
        seed=getattr(args, "seed", None),
        n=n,
    )
    _emit(report, args.format, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
