"""Command-line front end.

    atomspec space check|dual|stratify [FILE] [--builtin NAME] ...
    atomspec model classify|dims --family F [FILE] [--builtin NAME] ...

Exit codes: 0 success, 1 an ``--assert`` check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import builtins as B
from . import checks
from . import classify as C
from . import poset as P
from . import symbolic as S
from .errors import AtomSpecError, ParseError, UnknownExtRead, UnsupportedForSymbolic
from .io import load_poset, load_quiver
from .models import (
    FiniteAtomicModel,
    GradedKxModel,
    model_from_commutative_poset,
    model_from_quiver,
    model_from_triangular,
    prime_poset_isomorphism_check,
)

EXIT_OK, EXIT_ASSERT, EXIT_INPUT = 0, 1, 2
FAMILIES = ("commutative", "triangular", "quiver", "graded-kx")


@dataclass(frozen=True)
class RunConfig:
    command: tuple
    input: str | None
    builtin: str | None
    format: str = "table"
    truncate: int | None = None
    window: tuple = (-3, 3)
    cap: int = C.DEFAULT_DEGREE_CAP
    size_cap: int = P.DEFAULT_SIZE_CAP
    seed: int = 0
    assert_: bool = False
    brute_force: bool = False
    twice: bool = False
    family: str | None = None

    def __post_init__(self):
        if (self.input is None) == (self.builtin is None):
            raise ParseError("give exactly one of an input file or --builtin NAME")


class _AssertFailed(Exception):
    pass


# -- rendering ----------------------------------------------------------------


def _fmt_scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_table(data, indent: int = 0) -> str:
    """Plain-text rendering of a report dict; carries the same data as JSON."""
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(data, list):
        if data and all(isinstance(r, dict) for r in data):
            cols = []
            for r in data:
                cols += [c for c in r if c not in cols]
            rows = [[_inline(r.get(c)) for c in cols] for r in data]
            widths = [max(len(c), *(len(row[i]) for row in rows)) for i, c in enumerate(cols)]
            lines.append(pad + "  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            for row in rows:
                lines.append(pad + "  ".join(x.ljust(w) for x, w in zip(row, widths)))
        else:
            for v in data:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _fmt_scalar(data))
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "{" + ", ".join(_inline(x) for x in v) + "}"
    if isinstance(v, dict):
        return json.dumps(v)
    return _fmt_scalar(v)


def emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, indent=2, default=str) + "\n")
    else:
        out.write(render_table(report) + "\n")


# -- input resolution ---------------------------------------------------------


def _load_space(cfg: RunConfig):
    if cfg.builtin is not None:
        try:
            return B.builtin_space(cfg.builtin)
        except KeyError as exc:
            raise ParseError(exc.args[0]) from None
    return load_poset(cfg.input)


def _load_model(cfg: RunConfig):
    if cfg.builtin is not None:
        if cfg.family in ("commutative", "triangular") and cfg.builtin in B.POSETS:
            name = f"{cfg.family}:{cfg.builtin}"
        else:
            name = cfg.builtin
        try:
            return B.builtin_model(name)
        except KeyError as exc:
            raise ParseError(exc.args[0]) from None
    fam = cfg.family
    if fam is None:
        raise ParseError("--family is required with an input file")
    if fam == "graded-kx":
        raise ParseError("the graded-kx family takes no input file; use --builtin graded-kx")
    if fam == "quiver":
        return model_from_quiver(load_quiver(cfg.input), name=cfg.input)
    spec = load_poset(cfg.input)
    if fam == "commutative":
        return model_from_commutative_poset(spec, name=cfg.input)
    return model_from_triangular(spec, name=cfg.input)


# -- commands -----------------------------------------------------------------


def _assertions(report, items):
    report["assertions"] = [{"check": name, "passed": bool(ok)} for name, ok in items]
    return all(ok for _, ok in items)


def cmd_space_check(cfg: RunConfig) -> tuple[dict, bool]:
    space = _load_space(cfg)
    if space == "omega-plus-one":
        return _check_omega(cfg)
    if space == "graded-kx":
        return _check_graded(cfg)
    spec = P.spectral_check(space, size_cap=cfg.size_cap)
    strat = P.stratify(space)
    obstruction = P.obstruction_points(space)
    report = {
        "space": cfg.builtin or cfg.input,
        "points": len(space),
        "summary": {
            "spectral": "pass" if spec.is_spectral else "fail",
            "kolmogorov": spec.kolmogorov,
            "obstruction": C.format_set(obstruction),
            "kgdim": strat.space_dim,
            "chain_dimension": P.chain_dimension(space),
        },
        "spectral": spec.to_dict(),
        "obstruction_points": P.sorted_ids(obstruction),
        "stratification": strat.to_dict(),
    }
    ok = True
    if cfg.assert_:
        if len(space) <= 8:
            subsets = None
        else:
            subsets = list(checks.sample_subsets(space, 64, cfg.seed))
        violations = checks.limit_lemma_violations(
            space, subsets, max_pairs=None if subsets is None else 2000
        )
        ok = _assertions(report, [
            ("spectral", spec.is_spectral),
            ("no obstruction points", not obstruction),
            ("limit-point identities", not violations),
            ("stratification matches chain heights", checks.stratify_cross_check(space)),
            ("dual is an involution", checks.dual_check(space)),
        ])
    return report, ok


def _check_omega(cfg):
    X = S.OmegaSetDescriptor
    inf = X.of([S.INF])
    spec = S.omega_spectral_check()
    obstruction = S.omega_obstruction_points()
    l_inf = S.omega_limit_points(inf)
    l_cl = S.omega_limit_points(S.omega_closure(inf))
    strat = S.omega_stratify(range(cfg.truncate or 4))
    report = {
        "space": "omega-plus-one",
        "summary": {
            "spectral": "pass" if spec.is_spectral else "fail",
            "kolmogorov": spec.kolmogorov,
            "obstruction": str(obstruction),
            "kgdim": "not reached at any finite level",
            "chain_dimension": "unbounded",
        },
        "spectral": spec.to_dict(),
        "obstruction_points": obstruction.to_json(),
        "limit_points": {
            "L({x_inf})": str(l_inf),
            "L({x_inf}) closed": S.omega_is_closed(l_inf),
            "L(closure({x_inf}))": str(l_cl),
        },
        "stratification": strat.to_dict(),
    }
    if cfg.truncate:
        trunc = S.truncate_omega(cfg.truncate)
        report["truncation"] = {
            "poset": trunc.to_json(),
            "obstruction_points": P.sorted_ids(P.obstruction_points(trunc)),
            "stratification": P.stratify(trunc).to_dict(),
        }
    ok = True
    if cfg.assert_:
        ok = _assertions(report, [
            ("spectral", spec.is_spectral),
            ("obstruction is {x_inf}", obstruction == inf),
            ("L({x_inf}) = X minus x_inf", l_inf == X.whole() - inf),
            ("L({x_inf}) not closed", not S.omega_is_closed(l_inf)),
            ("L(closure({x_inf})) = X", l_cl == X.whole()),
        ])
    return report, ok


def _check_graded(cfg):
    lo, hi = cfg.window
    strat = S.graded_stratify((lo, hi))
    chain_dim = S.graded_chain_dimension((lo, hi))
    report = {
        "space": "graded-kx",
        "summary": {
            "kgdim": strat.space_dim,
            "chain_dimension": chain_dim,
            "obstruction": "{}",
        },
        "stratification": strat.to_dict(),
    }
    # every point is closed, so no point is a limit point of its closure
    obstruction = [p for p in list(range(lo, hi + 1)) + [S.G]
                   if p in S.graded_closure(S.graded_closure(S.GradedSetDescriptor.of([p])) - S.GradedSetDescriptor.of([p]))]
    report["obstruction_points"] = obstruction
    trunc = S.truncate_graded(lo, hi)
    report["truncation"] = {"poset": trunc.to_json(), "opens": [P.sorted_ids(u) for u in P.enumerate_opens(trunc)]}
    ok = True
    if cfg.assert_:
        ok = _assertions(report, [
            ("KGdim = 1", strat.space_dim == 1),
            ("chain dimension = 0", chain_dim == 0),
            ("s_i at level 0", all(strat.level[i] == 0 for i in range(lo, hi + 1))),
            ("g at level 1", strat.level[S.G] == 1),
            ("no obstruction points", not obstruction),
        ])
    return report, ok


def cmd_space_dual(cfg: RunConfig) -> tuple[dict, bool]:
    space = _load_space(cfg)
    if isinstance(space, str):
        raise UnsupportedForSymbolic(f"the dual is only computed for finite spaces, not {space}")
    dual = P.hochster_dual(space)
    if cfg.twice:
        back = P.hochster_dual(dual)
        if back != space:
            raise _AssertFailed("double dual differs from the input")
        return back.to_json(), True
    return dual.to_json(), True


def cmd_space_stratify(cfg: RunConfig) -> tuple[dict, bool]:
    space = _load_space(cfg)
    if space == "omega-plus-one":
        return S.omega_stratify(range(cfg.truncate or 4)).to_dict(), True
    if space == "graded-kx":
        return S.graded_stratify(cfg.window).to_dict(), True
    rep = P.stratify(space)
    ok = True
    out = rep.to_dict()
    if cfg.assert_:
        ok = _assertions(out, [("stratification matches chain heights", checks.stratify_cross_check(space))])
    return out, ok


def cmd_model_classify(cfg: RunConfig) -> tuple[dict, bool]:
    model = _load_model(cfg)
    result = C.qualifying_opens(model, size_cap=cfg.size_cap, window=cfg.window)
    report = result.to_dict()
    report["model"] = getattr(model, "name", "") or model.family
    report["family"] = model.family
    ok = True
    checks_run = []
    if cfg.brute_force:
        if isinstance(model, GradedKxModel):
            lo, hi = cfg.window
            agree = C.cross_validate_graded(lo, hi)
            report["brute_force"] = {"window": [lo, hi], "agrees": agree}
        else:
            oracle = C.brute_force_qualifying(model, size_cap=cfg.size_cap)
            agree = oracle == list(result.qualifying)
            report["brute_force"] = {"agrees": agree, "count": len(oracle)}
        checks_run.append(("brute-force oracle agrees", agree))
        ok = agree
    if cfg.assert_:
        if isinstance(model, FiniteAtomicModel):
            checks_run.append(("order matches source", prime_poset_isomorphism_check(model)))
            union_closed = all(a | b in set(result.qualifying) for a in result.qualifying for b in result.qualifying)
            checks_run.append(("closed under unions", union_closed))
        ok = _assertions(report, checks_run) and ok
    return report, ok


def cmd_model_dims(cfg: RunConfig) -> tuple[dict, bool]:
    model = _load_model(cfg)
    rep = C.dims_report(model, cap=cfg.cap, window=cfg.window)
    report = rep.to_dict()
    report["model"] = getattr(model, "name", "") or model.family
    ok = True
    if cfg.assert_:
        ok = _assertions(report, [
            ("dimension bound", rep.bound.holds),
            ("epi containment", rep.containment.holds),
        ])
    return report, ok


COMMANDS = {
    ("space", "check"): cmd_space_check,
    ("space", "dual"): cmd_space_dual,
    ("space", "stratify"): cmd_space_stratify,
    ("model", "classify"): cmd_model_classify,
    ("model", "dims"): cmd_model_dims,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="atomspec", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def common(p):
        p.add_argument("input", nargs="?", help="poset JSON file (or quiver text for --family quiver)")
        p.add_argument("--builtin", metavar="NAME")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--truncate", type=int, metavar="N")
        p.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"), default=(-3, 3))
        p.add_argument("--cap", type=int, default=C.DEFAULT_DEGREE_CAP, help="degree cap")
        p.add_argument("--size-cap", type=int, default=P.DEFAULT_SIZE_CAP)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--assert", dest="assert_", action="store_true",
                       help="exit 1 if any check fails")

    space = groups.add_parser("space").add_subparsers(dest="action", required=True)
    for name in ("check", "dual", "stratify"):
        p = space.add_parser(name)
        common(p)
        if name == "dual":
            p.add_argument("--twice", action="store_true")
    model = groups.add_parser("model").add_subparsers(dest="action", required=True)
    for name in ("classify", "dims"):
        p = model.add_parser(name)
        common(p)
        p.add_argument("--family", choices=FAMILIES)
        if name == "classify":
            p.add_argument("--brute-force", action="store_true")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        builtin = args.builtin
        if builtin is None and args.input is None and getattr(args, "family", None) == "graded-kx":
            builtin = "graded-kx"
        cfg = RunConfig(
            command=(args.group, args.action),
            input=args.input,
            builtin=builtin,
            format=args.format,
            truncate=args.truncate,
            window=tuple(args.window),
            cap=args.cap,
            size_cap=args.size_cap,
            seed=args.seed,
            assert_=args.assert_,
            brute_force=getattr(args, "brute_force", False),
            twice=getattr(args, "twice", False),
            family=getattr(args, "family", None),
        )
        if cfg.window[0] > cfg.window[1]:
            raise ParseError("--window needs LO <= HI")
        if cfg.cap < 1:
            raise ParseError("--cap must be at least 1")
        report, ok = COMMANDS[cfg.command](cfg)
    except _AssertFailed as exc:
        err.write(f"assertion failed: {exc}\n")
        return EXIT_ASSERT
    except UnknownExtRead as exc:
        err.write(f"error: {exc} (degree={exc.degree}, source={exc.source!r}, target={exc.target!r})\n")
        return EXIT_INPUT
    except (AtomSpecError, OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    emit(report, cfg.format, out)
    return EXIT_OK if ok else EXIT_ASSERT


if __name__ == "__main__":
    sys.exit(main())
