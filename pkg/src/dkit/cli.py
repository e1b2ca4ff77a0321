"""Command-line front end.

    dkit der   --algebra sl2 --module adjoint
    dkit hh1   --algebra "quaternion(-1,-1)"
    dkit loop  --base sl2 --auto id --order 1 --deltas 0..0
    dkit verify --case a2-twisted --deltas -4..4 --window 10

Exit codes: 0 pass, 2 invalid input, 3 inconclusive, 4 identity failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import Algebra, base_change_algebra, base_change_dimodule
from .catalog import LOOP_CASES, catalog_get, extension_get, module_get
from .errors import DkitError, InvalidInput, PreconditionFailed, WindowTooSmall
from .reports import EXIT_FAILURE, EXIT_INCONCLUSIVE, Report, emit, render_text
from . import solvers

COMMANDS = ("der", "cent", "ider", "h1", "hh1", "loop", "verify")


@dataclass
class RunConfig:
    command: str
    algebra: str | None = None
    module: str = "regular"
    over: str = "k"
    ext: str | None = None
    base: str | None = None
    auto: str = "id"
    order: int = 1
    deltas: tuple[int, int] = (0, 0)
    window: int = 10
    fmt: str = "text"
    spec: str | None = None
    case: str | None = None
    parallel: bool = False

    def __post_init__(self):
        if self.window < 1:
            raise InvalidInput("--window must be at least 1")
        if self.over not in ("k", "K", "R"):
            raise InvalidInput("--over must be k, K or R")

    @property
    def delta_range(self) -> range:
        return range(self.deltas[0], self.deltas[1] + 1)


def parse_deltas(s: str) -> tuple[int, int]:
    try:
        if ".." in s:
            a, b = s.split("..", 1)
            return int(a), int(b)
        return int(s), int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {s!r}") from None


def _is_path(s: str) -> bool:
    return s.endswith(".json") or Path(s).is_file()


def _load_algebra(name: str) -> Algebra:
    if _is_path(name):
        from .io import load_algebra
        return load_algebra(name)
    return catalog_get(name)


def _load_pair(cfg: RunConfig):
    if not cfg.algebra:
        raise InvalidInput("--algebra is required")
    A = _load_algebra(cfg.algebra)
    if _is_path(cfg.module):
        from .io import load_dimodule
        M = load_dimodule(cfg.module, A)
    else:
        M = module_get(A, cfg.module)
    if cfg.over == "k":
        return A, M
    if not cfg.ext:
        if A.scalars is None:
            raise InvalidInput(f"--over {cfg.over} needs --ext or an algebra with a recorded scalar structure")
        return A, M
    K = extension_get(cfg.ext)
    AK = base_change_algebra(A, K)
    return AK, base_change_dimodule(M, K, AK)


def _fmt_map(F, field) -> str:
    return "[" + "; ".join(" ".join(str(field.format(x)) for x in r) for r in F.rows) + "]"


def _basis_lines(label, A, M, space) -> list[str]:
    out = []
    for k, v in enumerate(space.basis):
        F = solvers.hom_to_matrix(v, A.dim, M.dim, A.field)
        out.append(f"{label}{k + 1} = {_fmt_map(F, A.field)}")
    return out


def _basis_json(A, M, space) -> list:
    F = A.field
    return [[F.format(x) for x in v] for v in space.basis]


def _inner(A, M):
    if A.flavor == "lie":
        return solvers.ider_lie(A, M)
    if A.flavor == "associative":
        return solvers.ider_assoc(A, M)
    return None


def cmd_der(cfg: RunConfig) -> Report:
    A, M = _load_pair(cfg)
    D = solvers.der_space(A, M, relative_to=cfg.over)
    summary = {"dim Der": D.dim}
    inner = _inner(A, M)
    if inner is not None:
        h = solvers._h1(D, inner)
        summary["dim IDer"] = inner.dim
        summary["H¹" if A.flavor == "lie" else "HH¹"] = h.dim
    summary["basis"] = _basis_json(A, M, D.space)
    return Report("der", summary=summary, messages=_basis_lines("d", A, M, D.space))


def cmd_cent(cfg: RunConfig) -> Report:
    A, M = _load_pair(cfg)
    C = solvers.cent_space(A, M, relative_to=cfg.over)
    return Report("cent", summary={"dim Cent": C.dim, "basis": _basis_json(A, M, C.space)},
                  messages=_basis_lines("chi", A, M, C.space))


def cmd_ider(cfg: RunConfig) -> Report:
    A, M = _load_pair(cfg)
    inner = _inner(A, M)
    if inner is None:
        raise InvalidInput(f"inner derivations need a lie or associative algebra, not {A.flavor}")
    return Report("ider", summary={"dim IDer": inner.dim, "basis": _basis_json(A, M, inner)},
                  messages=_basis_lines("ad", A, M, inner))


def _cohomology(cfg: RunConfig, flavor: str, label: str) -> Report:
    A, M = _load_pair(cfg)
    if A.flavor != flavor:
        raise InvalidInput(f"{cfg.command} needs a {flavor} algebra, got {A.flavor}")
    h = solvers.h1_lie(A, M) if flavor == "lie" else solvers.hh1_assoc(A, M)
    return Report(cfg.command, summary={"dim Der": h.der.dim, "dim IDer": h.inner.dim, label: h.dim})


def cmd_h1(cfg: RunConfig) -> Report:
    return _cohomology(cfg, "lie", "H¹")


def cmd_hh1(cfg: RunConfig) -> Report:
    return _cohomology(cfg, "associative", "HH¹")


def _loop_target(cfg: RunConfig):
    if cfg.case:
        if cfg.case not in LOOP_CASES:
            raise InvalidInput(f"unknown loop case {cfg.case!r}; known: {', '.join(LOOP_CASES)}")
        base, auto, m = LOOP_CASES[cfg.case]
        return catalog_get(base), auto, m
    if not cfg.base:
        raise InvalidInput("--base (or --case / --spec) is required")
    return catalog_get(cfg.base), cfg.auto, cfg.order


def _loop_row(B, d, W):
    from .graded import graded_cent_solver, window_der_solver
    der = window_der_solver(B, d, W)
    cent = graded_cent_solver(B, d, W)
    status = "inconclusive" if "inconclusive" in (der.status, cent.status) else (
        "pass" if der.status == cent.status == "pass" else "mismatch")
    return {"delta": d, "dim B_delta": B.dim(d), "raw": der.raw_dim, "dim Der_delta": der.dim,
            "predicted": der.predicted, "inner": der.inner_dim, "dim Cent_delta": cent.dim,
            "status": status}


def cmd_loop(cfg: RunConfig) -> Report:
    from .graded import loop_from_automorphism
    if cfg.spec:
        from .io import load_loop_spec
        s = load_loop_spec(cfg.spec)
        cfg.base, cfg.auto, cfg.order = s["base"], s["automorphism"], s["order"]
        cfg.deltas, cfg.window = s["deltas"], s["window"]
    g, auto, m = _loop_target(cfg)
    B = loop_from_automorphism(g, auto, m)
    deltas = list(cfg.delta_range)
    if cfg.parallel and len(deltas) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor() as ex:
            rows = list(ex.map(_loop_row, [B] * len(deltas), deltas, [cfg.window] * len(deltas)))
    else:
        rows = [_loop_row(B, d, cfg.window) for d in deltas]
    rows.sort(key=lambda r: r["delta"])
    st = [r["status"] for r in rows]
    status = "identity-failure" if "mismatch" in st else "inconclusive" if "inconclusive" in st else "pass"
    msgs = []
    if status == "inconclusive":
        msgs.append(f"window {cfg.window} did not stabilize for some degrees; rerun with a larger --window")
    cols = ["delta", "dim B_delta", "dim Der_delta", "predicted", "dim Cent_delta", "status"]
    return Report("loop", status=status, columns=cols, rows=rows, messages=msgs,
                  summary={"algebra": g.name, "automorphism": auto if isinstance(auto, str) else "custom",
                           "m": m, "window": cfg.window})


def _verify_graded(g, auto, m, cfg: RunConfig) -> Report:
    from .graded import verify_main_theorem_graded
    res = verify_main_theorem_graded(g, auto, m, cfg.delta_range, cfg.window, parallel=cfg.parallel)
    rows, checks = [], dict(res.preconditions)
    for r in res.results:
        rows.append({"delta": r.delta, "dim B_delta": r.dim_component, "dim Der_delta": r.der.dim,
                     "predicted": r.der.predicted, "dim Cent_delta": r.cent.dim, "H1": r.h1,
                     "status": r.status})
        for k, v in r.checks.items():
            checks[k] = checks.get(k, True) and v
    status = {"pass": "pass", "inconclusive": "inconclusive", "fail": "identity-failure"}[res.status]
    msgs = []
    if status == "inconclusive":
        msgs.append(f"window {cfg.window} did not stabilize for some degrees; rerun with a larger --window")
    cols = ["delta", "dim B_delta", "dim Der_delta", "predicted", "dim Cent_delta", "H1", "status"]
    return Report("verify", status=status, columns=cols, rows=rows, checks=checks, messages=msgs,
                  summary={"algebra": g.name, "automorphism": res.automorphism, "m": m, "window": cfg.window})


def _verify_descent(A, setup, z, label) -> Report:
    from .descent import verify_main_theorem_fd
    rows, checks = [], {}
    for mod in ("regular", "dual"):
        r = verify_main_theorem_fd(A, setup, z, mod)
        row = {"module": mod}
        row.update(r.dims)
        rows.append(row)
        for k, v in r.checks.items():
            checks[f"{mod}:{k}"] = v
    status = "pass" if all(checks.values()) else "identity-failure"
    cols = ["module", "dim_B", "der", "inner", "h1", "cent", "der_R_into_cent"]
    return Report("verify", status=status, columns=cols, rows=rows, checks=checks,
                  summary={"case": label, "algebra": A.name})


def cmd_verify(cfg: RunConfig) -> Report:
    from .descent import DESCENT_CASES
    if cfg.spec:
        from .io import load_descent_spec, load_loop_spec, spec_kind
        if spec_kind(cfg.spec) == "descent":
            A, st, z = load_descent_spec(cfg.spec)
            return _verify_descent(A, st, z, Path(cfg.spec).name)
        s = load_loop_spec(cfg.spec)
        cfg.deltas, cfg.window = s["deltas"], s["window"]
        return _verify_graded(catalog_get(s["base"]), s["automorphism"], s["order"], cfg)
    if cfg.case in DESCENT_CASES:
        return _verify_descent(*DESCENT_CASES[cfg.case](), cfg.case)
    g, auto, m = _loop_target(cfg)
    return _verify_graded(g, auto, m, cfg)


HANDLERS = {"der": cmd_der, "cent": cmd_cent, "ider": cmd_ider, "h1": cmd_h1, "hh1": cmd_hh1,
            "loop": cmd_loop, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dkit", description="Derivations, centroids and descent checks.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--format", dest="fmt", choices=("text", "structured"), default="text")
        if name in ("der", "cent", "ider", "h1", "hh1"):
            s.add_argument("--algebra", required=True, help="catalog name or JSON file")
            s.add_argument("--module", default="regular", help="regular, dual, trivial, V(n), twisted:<aut>, or JSON")
            s.add_argument("--over", choices=("k", "K", "R"), default="k")
            s.add_argument("--ext", help="commutative extension for --over K/R (dual, split2, gauss)")
        else:
            s.add_argument("--base")
            s.add_argument("--auto", default="id")
            s.add_argument("--order", type=int, default=1)
            s.add_argument("--case")
            s.add_argument("--spec")
            s.add_argument("--deltas", type=parse_deltas, default=(0, 0) if name == "loop" else (-4, 4))
            s.add_argument("--window", type=int, default=10)
            s.add_argument("--parallel", action="store_true")
    return p


def _fix_negative(argv: list[str]) -> list[str]:
    # "--deltas -4..4" would otherwise be read as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--deltas" and i + 1 < len(argv):
            out.append(f"--deltas={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: list[str]) -> tuple[int, str]:
    """Parse, dispatch and render; returns (exit code, output text)."""
    args = build_parser().parse_args(_fix_negative(list(argv)))
    fmt = args.fmt
    try:
        cfg = RunConfig(**{k: v for k, v in vars(args).items()})
        report = HANDLERS[cfg.command](cfg)
    except WindowTooSmall as e:
        report = Report(args.command, status="inconclusive", messages=[f"{e}; rerun with a larger --window"])
    except PreconditionFailed as e:
        report = Report(args.command, status="identity-failure", checks={e.assumption: False},
                        messages=[str(e)])
    except (InvalidInput, DkitError, ValueError) as e:
        report = Report(args.command, status="invalid", messages=[f"error: {e}"])
    text = emit(report) if fmt == "structured" else render_text(report)
    return report.exit_code, text


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (0, EXIT_INCONCLUSIVE, EXIT_FAILURE) else sys.stderr
    print(text, file=stream)
    return code

