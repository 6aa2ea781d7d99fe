"""Command-line front end.

Exit codes: 0 success, 1 malformed or unsupported input, 2 polar hypothesis
violated (the report is still printed), 3 resource or genericity failure,
4 a ``verify`` suite found a disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .delta import delta_generic_linear, delta_hat, delta_plain, milnor_number, teissier_check
from .errors import (
    GenericityFailure,
    HypothesisViolated,
    PolarError,
    PrecisionExhausted,
    ResourceLimit,
)
from .ideals import DEFAULT_BUDGET, step_budget
from .polar import StratumGeometry, check_hypothesis, polar_cycle, relevant_strata
from .poly import random_linear_form
from .problem import ProblemError, build_problem, load_document
from .strat import (
    StalkReport,
    characteristic_cycle,
    constant_sheaf,
    discriminant_check,
    euler_index_isolated,
    stalk_general,
    stalk_generic_linear,
    stalk_isolated,
)

COMMANDS = (
    "polar",
    "delta",
    "delta-hat",
    "cc",
    "stalk-iso",
    "stalk-generic",
    "stalk-general",
    "verify",
    "discriminant",
)
EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3, 4
NEEDS_G = {"delta-hat", "stalk-general", "discriminant"}


# -- JSON shapes ------------------------------------------------------------------


def module_json(m) -> dict:
    return {"rank": m.rank, "torsion": list(m.torsion)}


def table_json(table) -> dict | None:
    if table is None:
        return None
    return {str(k): module_json(m) for k, m in sorted(table.items())}


def delta_json(rep) -> dict:
    return {
        "stratum": rep.stratum,
        "mode": rep.mode,
        "total": rep.total,
        "linear_form": rep.linear_form,
        "components": [
            {"prime": c.prime, "n_f": c.n_f, "n_g": c.n_g, "contribution": c.contribution}
            for c in rep.components
        ],
    }


def stalk_json(rep: StalkReport) -> dict:
    out = {
        "mode": rep.mode,
        "terms": [
            {"stratum": t.stratum, "delta": t.delta, "morse": table_json(t.morse)} for t in rep.terms
        ],
        "table": table_json(rep.table),
        "euler": rep.euler,
        "warnings": list(rep.warnings),
    }
    if isinstance(rep.pencil, StalkReport):
        out["pencil"] = {"table": table_json(rep.pencil.table), "symbolic": None}
    elif rep.pencil is not None:
        out["pencil"] = {"table": None, "symbolic": rep.pencil}
    if "pencil_coefficients" in rep.extras and rep.extras["pencil_coefficients"] is not None:
        out["pencil_coefficients"] = list(rep.extras["pencil_coefficients"])
    for key in ("c0", "c0_phi_f"):
        if key in rep.extras:
            out[key] = rep.extras[key]
    return out


def hypothesis_json(hyp) -> dict:
    return {
        "ok": hyp.ok,
        "offending": [{"stratum": s, "component": p} for s, p in hyp.offending],
    }


def polar_json(cyc) -> dict:
    return {
        "stratum": cyc.stratum,
        "components": [
            {
                "prime": b.component.label(),
                "primary": str(b.component.primary),
                "through_origin": b.through_origin,
                "in_Vf": b.in_Vf,
                "in_Vg": b.in_Vg,
            }
            for b in cyc.branches
        ],
    }


# -- commands ---------------------------------------------------------------------


def _second(problem):
    """g if given, otherwise the seeded linear form."""
    if problem.g is not None:
        return problem.g, False
    return random_linear_form(f"{problem.seed}/0/0", problem.variables), True


def cmd_polar(problem) -> dict:
    g, sampled = _second(problem)
    cycles = [polar_cycle(s.geometry, problem.f, g) for s in relevant_strata(problem.spec, problem.f)]
    return {"g": g.to_str(), "g_sampled": sampled, "polar": [polar_json(c) for c in cycles]}


def cmd_delta(problem) -> dict:
    reps = []
    for s in relevant_strata(problem.spec, problem.f):
        if problem.g is None:
            reps.append(delta_generic_linear(s.geometry, problem.f, problem.seed))
        else:
            reps.append(delta_plain(s.geometry, problem.f, problem.g))
    return {"deltas": [delta_json(r) for r in reps], "delta": sum(r.total for r in reps)}


def cmd_delta_hat(problem) -> dict:
    hyp = check_hypothesis(problem.spec, problem.f, problem.g)
    if not hyp.ok:
        raise HypothesisViolated(hyp)
    reps = [delta_hat(s.geometry, problem.f, problem.g) for s in relevant_strata(problem.spec, problem.f)]
    return {
        "hypothesis": hypothesis_json(hyp),
        "deltas": [delta_json(r) for r in reps],
        "delta_hat": sum(r.total for r in reps),
    }


def cmd_cc(problem) -> dict:
    return {"cc": characteristic_cycle(problem.spec)}


def cmd_stalk_iso(problem) -> dict:
    rep = stalk_isolated(problem.spec, problem.f, problem.seed)
    out = stalk_json(rep)
    if problem.spec.integral_domain:
        out["euler_index"] = euler_index_isolated(problem.spec, problem.f, problem.seed)
    return out


def cmd_stalk_generic(problem) -> dict:
    return stalk_json(stalk_generic_linear(problem.spec, problem.f, problem.seed))


def cmd_stalk_general(problem) -> dict:
    rep = stalk_general(problem.spec, problem.f, problem.g, problem.seed)
    out = stalk_json(rep)
    out["hypothesis"] = {"ok": True, "offending": []}
    out["delta_hat"] = sum(t.delta for t in rep.terms)
    return out


def cmd_discriminant(problem) -> dict:
    rec = discriminant_check(problem.spec, problem.f, problem.g, problem.seed)
    return {
        "delta_hat_total": rec.delta_hat_total,
        "downstairs_total": rec.downstairs_total,
        "agree": rec.agree,
        "images": [
            {"stratum": s, "component": c, "image": p, "degree": k} for s, c, p, k in rec.images
        ],
    }


def _corpus_cases(data, seed):
    """(isolated problems, pair problems) from a corpus document or a single problem."""
    if "isolated" in data or "pairs" in data:
        iso = [build_problem(d, seed) for d in data.get("isolated", [])]
        pairs = [build_problem(d, seed) for d in data.get("pairs", [])]
        return iso, pairs
    problem = build_problem(data, seed)
    return [problem], ([problem] if problem.g is not None else [])


def cmd_verify(data, seed) -> dict:
    iso, pairs = _corpus_cases(data, seed)
    suites = {"mu_delta": [], "teissier": [], "skyscraper": [], "discriminant": []}
    for p in iso:
        dense = StratumGeometry("ambient", p.variables)
        mu = milnor_number(p.f)
        delta = delta_generic_linear(dense, p.f, p.seed).total
        suites["mu_delta"].append({"f": p.f.to_str(), "mu": mu, "delta": delta, "passed": mu == delta})
        t = teissier_check(p.f, p.seed)
        suites["teissier"].append(
            {
                "f": p.f.to_str(),
                "gamma_dot_f": t.gamma_dot_f,
                "mu_ambient": t.mu_ambient,
                "mu_slice": t.mu_slice,
                "passed": t.holds,
            }
        )
    for p in pairs:
        spec = constant_sheaf(p.variables)
        general = stalk_general(spec, p.f, p.g, p.seed)
        isolated = stalk_isolated(spec, p.f, p.seed)
        suites["skyscraper"].append(
            {
                "f": p.f.to_str(),
                "g": p.g.to_str(),
                "general": table_json(general.table),
                "isolated": table_json(isolated.table),
                "passed": general.table == isolated.table,
            }
        )
        rec = discriminant_check(spec, p.f, p.g, p.seed)
        suites["discriminant"].append(
            {
                "f": p.f.to_str(),
                "g": p.g.to_str(),
                "delta_hat_total": rec.delta_hat_total,
                "downstairs_total": rec.downstairs_total,
                "passed": rec.agree,
            }
        )
    passed = all(case["passed"] for cases in suites.values() for case in cases)
    return {"suites": suites, "passed": passed}


_DISPATCH = {
    "polar": cmd_polar,
    "delta": cmd_delta,
    "delta-hat": cmd_delta_hat,
    "cc": cmd_cc,
    "stalk-iso": cmd_stalk_iso,
    "stalk-generic": cmd_stalk_generic,
    "stalk-general": cmd_stalk_general,
    "discriminant": cmd_discriminant,
}


# -- rendering ------------------------------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _text_lines(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_scalar(v)}"
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                yield f"{pad}-"
                yield from _text_lines(item, indent + 1)
            else:
                yield f"{pad}- {_scalar(item)}"
    else:
        yield f"{pad}{_scalar(value)}"


def _scalar(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "none"
    return str(v)


def render_text(report: dict) -> str:
    return "\n".join(_text_lines(report)) + "\n"


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarvc",
        description="Polar curves, delta invariants and vanishing-cycle stalk formulas for polynomial germs.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("problem", help="problem file (YAML or JSON)")
    parser.add_argument("--seed", type=int, default=None, help="overrides the seed in the problem file")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument(
        "--budget", type=int, default=DEFAULT_BUDGET, help="work budget per basis computation (term updates weighted by coefficient size)"
    )
    return parser


def run(command: str, path, seed=None, fmt="text", budget=DEFAULT_BUDGET):
    """Execute one command; returns (exit code, rendered report)."""
    report = {"command": command, "problem": Path(path).name}
    code = EXIT_OK
    try:
        data = load_document(path)
        with step_budget(budget):
            if command == "verify":
                report["seed"] = seed if seed is not None else data.get("seed", 0)
                body = cmd_verify(data, seed)
                if not body["passed"]:
                    code = EXIT_VERIFY
            else:
                problem = build_problem(data, seed)
                report["seed"] = problem.seed
                report["f"] = problem.f.to_str()
                if problem.g is not None:
                    report["g"] = problem.g.to_str()
                if command in NEEDS_G and problem.g is None:
                    raise ProblemError(f"command {command} needs g in the problem file")
                body = _DISPATCH[command](problem)
        report.update(body)
        report["status"] = "ok" if code == EXIT_OK else "verification-failed"
    except HypothesisViolated as exc:
        code = EXIT_HYPOTHESIS
        report["status"] = "hypothesis-violated"
        report["hypothesis"] = hypothesis_json(exc.report)
        report["message"] = str(exc)
    except (ResourceLimit, GenericityFailure, PrecisionExhausted) as exc:
        code = EXIT_RESOURCE
        report["status"] = "failed"
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except (PolarError, ValueError, OSError) as exc:
        code = EXIT_INPUT
        report["status"] = "invalid-input"
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    render = render_json if fmt == "json" else render_text
    return code, render(report)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, text = run(args.command, args.problem, args.seed, args.format, args.budget)
    sys.stdout.write(text)
    if code == EXIT_INPUT:
        sys.stderr.write("polarvc: invalid input, see report\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
