"""
Command-line front end.

    kirchlab tables export --level 3
    kirchlab acs check --model octonion --samples 200 --seed 42
    kirchlab frame eval --model octonion --point "1,1,0,0,0,0,0,0" --index 2
    kirchlab frame scan --model rotated --samples 100 --out frame.csv
    kirchlab parallelism scan --frame classical --level 3 --samples 100 --out report.json
    kirchlab hspace defects --model octonion --op assoc --samples 10000 --out defects.json
    kirchlab verify --model quaternion
    kirchlab report --model octonion --out-dir reports/

Exit codes: 0 success, 1 identity failure, 2 usage error, 3 I/O error.
Output goes to ``--out`` if given, else to ``$LAB_OUT_DIR/<default name>``
if that variable is set, else to stdout.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, algebra
from .acs import chart_matrix, contract_j, nijenhuis_chart, sample_chart_points, tau_chart
from .errors import UsageError
from .geometry import DEFAULT_H, EPS_POLE, Chart, pole, sample_sphere, sphere_point
from .hspace import HMultiplication, associativity_defect, moufang_defect
from .kirchhoff import frame_field, kirchhoff_frame, sigma_tilde_matrices
from .parallelism import classical_frame, constancy_scan
from .verify import MODELS, make_acs, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class IOFailure(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    level: int | None = None
    h: float = DEFAULT_H
    eps_pole: float = EPS_POLE
    samples: int = 200
    seed: int = 42
    out: str | None = None
    format: str = "json"
    tolerances: dict = field(default_factory=dict)

    def validate(self):
        if self.samples <= 0:
            raise UsageError("--samples must be positive")
        if self.h <= 0 or self.eps_pole <= 0:
            raise UsageError("--h and --eps-pole must be positive")
        if self.seed < 0:
            raise UsageError("--seed must be non-negative")
        if any(not v > 0 for v in self.tolerances.values()):
            raise UsageError("--tol values must be positive")


# ---------------------------------------------------------------------------
# output


def _rows(payload: dict) -> list[dict]:
    """Tabular view of a report: its row list if it has one, else key/value pairs."""
    for key in ("components", "points"):
        if key in payload:
            return payload[key]
    if "triples" in payload:
        return [dict(zip("ijk", t[:3]), sign=t[3]) for t in payload["triples"]]
    flat = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, list):
            for i, v in enumerate(value):
                walk(f"{prefix}[{i}]", v)
        elif _is_number(value):
            flat.append({"key": prefix, "value": value})

    walk("", {k: v for k, v in payload.items() if k not in ("version", "config")})
    return flat


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# version: {payload['version']}\n")
    buf.write(f"# config: {json.dumps(payload['config'], sort_keys=True)}\n")
    rows = _rows(payload)
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    return buf.getvalue()


def emit(payload: dict, cfg: RunConfig, default_name: str) -> None:
    text = render(payload, cfg.format)
    target = cfg.out
    if target is None and os.environ.get("LAB_OUT_DIR"):
        target = str(Path(os.environ["LAB_OUT_DIR"]) / f"{default_name}.{cfg.format}")
    if target is None:
        sys.stdout.write(text)
        return
    try:
        Path(target).write_text(text)
    except OSError as exc:
        raise IOFailure(f"cannot write {target}: {exc}") from exc


def envelope(cfg: RunConfig, **body) -> dict:
    # the output path is left out so that a rerun elsewhere is byte-identical
    config = {k: v for k, v in asdict(cfg).items() if k != "out"}
    return {"version": __version__, "config": config, "seed": cfg.seed, **body}


# ---------------------------------------------------------------------------
# commands


def cmd_tables(cfg: RunConfig) -> int:
    algebra.check_level(cfg.level)
    payload = envelope(cfg, level=cfg.level, dim=algebra.dimension(cfg.level),
                       triples=algebra.structure_constant_triples(cfg.level))
    emit(payload, cfg, f"tables_level{cfg.level}")
    return EXIT_OK


def acs_report(cfg: RunConfig) -> dict:
    J = make_acs(cfg.model, cfg.seed)
    suite = run_suite(cfg.model, cfg.samples, cfg.seed, cfg.h, cfg.eps_pole, sections=["acs"],
                      tolerances=cfg.tolerances)
    return envelope(cfg, model=cfg.model, n=J.n, hermitian=bool(J.hermitian),
                    residuals={c.name: c.value for c in suite.checks}, passed=suite.passed)


def cmd_acs_check(cfg: RunConfig) -> int:
    payload = acs_report(cfg)
    emit(payload, cfg, f"acs_{cfg.model}")
    return EXIT_OK if payload["passed"] else EXIT_FAIL


def _parse_point(text: str, dim: int) -> np.ndarray:
    try:
        x = np.array([float(t) for t in text.split(",")])
    except ValueError as exc:
        raise UsageError(f"cannot parse point {text!r}") from exc
    if x.shape != (dim,):
        raise UsageError(f"point must have {dim} coordinates, got {x.shape[0]}")
    return sphere_point(x)


def cmd_frame_eval(cfg: RunConfig, point: str, index: int) -> int:
    J = make_acs(cfg.model, cfg.seed)
    x = _parse_point(point, J.ambient_dim + 1)
    value = frame_field(J, index, x)
    emit(envelope(cfg, model=cfg.model, index=index, point=x.tolist(), value=value.tolist()),
         cfg, f"frame_eval_{cfg.model}")
    return EXIT_OK


def frame_scan_report(cfg: RunConfig) -> dict:
    J = make_acs(cfg.model, cfg.seed)
    dim = J.ambient_dim + 1
    rng = np.random.default_rng(cfg.seed)
    xs = sample_sphere(rng, cfg.samples, dim, avoid=(pole(dim), -pole(dim)), eps=cfg.eps_pole)
    S = sigma_tilde_matrices(J, xs)[:, :, 1:]
    rows = []
    for s, x in enumerate(xs):
        F = S[s]
        closed = np.column_stack([frame_field(J, i, x) for i in range(1, dim)])
        rows.append({"index": s,
                     "gram_residual": float(np.abs(F.T @ F - np.eye(dim - 1)).max()),
                     "tangency": float(np.abs(x @ F).max()),
                     "closed_form": float(np.abs(closed - F).max())})
    return envelope(cfg, model=cfg.model, hermitian=bool(J.hermitian), points=rows)


def cmd_frame_scan(cfg: RunConfig) -> int:
    emit(frame_scan_report(cfg), cfg, f"frame_scan_{cfg.model}")
    return EXIT_OK


def constancy_report(cfg: RunConfig, frame_kind: str, level: int, model: str | None = None) -> dict:
    if level not in (2, 3):
        raise UsageError("--level must be 2 or 3")
    if frame_kind == "classical":
        frame = classical_frame(level)
    elif frame_kind == "kirchhoff":
        model = model or ("quaternion" if level == 2 else "octonion")
        J = make_acs(model, cfg.seed)
        if algebra.dimension(level) != J.ambient_dim + 1:
            raise UsageError(f"model {model!r} does not live at level {level}")
        frame = kirchhoff_frame(J)
    else:
        raise UsageError(f"unknown frame {frame_kind!r}")
    rep = constancy_scan(frame, cfg.samples, cfg.seed, cfg.h, cfg.eps_pole)
    return envelope(cfg, frame=frame_kind, level=level, model=model, h=cfg.h, eps_pole=cfg.eps_pole,
                    max_dev=rep.max_deviation, flagged=rep.flagged, components=rep.components())


def cmd_parallelism_scan(cfg: RunConfig, frame_kind: str) -> int:
    payload = constancy_report(cfg, frame_kind, cfg.level, cfg.model)
    emit(payload, cfg, f"constancy_{frame_kind}_level{cfg.level}")
    return EXIT_OK


def defects_report(cfg: RunConfig, op: str) -> dict:
    J = make_acs(cfg.model, cfg.seed)
    mult = HMultiplication(J, normalize=False)
    if op == "assoc":
        rep = associativity_defect(mult, cfg.samples, cfg.seed)
    elif op == "moufang":
        rep = moufang_defect(mult, cfg.samples, cfg.seed)
    else:
        raise UsageError(f"unknown op {op!r}")
    return envelope(cfg, model=cfg.model, op=op, n=rep.samples, max=rep.max, mean=rep.mean,
                    hist=rep.hist)


def cmd_hspace_defects(cfg: RunConfig, op: str) -> int:
    emit(defects_report(cfg, op), cfg, f"defects_{cfg.model}_{op}")
    return EXIT_OK


def nijenhuis_report(cfg: RunConfig) -> dict:
    J = make_acs(cfg.model, cfg.seed)
    chart = Chart(np.eye(J.ambient_dim)[-1])
    rows = []
    for s, u in enumerate(sample_chart_points(np.random.default_rng(cfg.seed), cfg.samples, J.n)):
        N = nijenhuis_chart(J, chart, u, cfg.h)
        T = tau_chart(J, chart, u, cfg.h)
        rows.append({"index": s, "max_abs_N": float(np.abs(N).max()), "max_abs_tau": float(np.abs(T).max()),
                     "tau_plus_JN": float(np.abs(T + contract_j(chart_matrix(J, chart, u), N)).max())})
    return envelope(cfg, model=cfg.model, points=rows)


def cmd_verify(cfg: RunConfig) -> int:
    summary = run_suite(cfg.model, cfg.samples, cfg.seed, cfg.h, cfg.eps_pole, tolerances=cfg.tolerances)
    print(f"model={cfg.model} samples={cfg.samples} seed={cfg.seed}")
    print(summary.table())
    if cfg.out is not None:
        emit(envelope(cfg, **summary.to_dict()), cfg, f"verify_{cfg.model}")
    return EXIT_OK if summary.passed else EXIT_FAIL


def cmd_report(cfg: RunConfig, out_dir: str | None) -> int:
    out_dir = out_dir or os.environ.get("LAB_OUT_DIR") or "."
    try:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IOFailure(f"cannot create {out_dir}: {exc}") from exc
    level = algebra.level_of(pole(make_acs(cfg.model, cfg.seed).ambient_dim + 1))
    jobs = {
        "constancy": lambda: constancy_report(cfg, "kirchhoff", level, cfg.model),
        "assoc": lambda: defects_report(cfg, "assoc"),
        "moufang": lambda: defects_report(cfg, "moufang"),
        "nijenhuis": lambda: nijenhuis_report(cfg),
    }
    for name, job in jobs.items():
        sub = RunConfig(**{**asdict(cfg), "out": str(Path(out_dir) / f"{cfg.model}_{name}.{cfg.format}")})
        emit(job(), sub, name)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, model: bool = True, samples: int = 200):
    if model:
        p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--h", type=float, default=DEFAULT_H, help="finite-difference step")
    p.add_argument("--eps-pole", type=float, default=EPS_POLE, help="radius of excluded caps at +-e")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _tolerance(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    try:
        if not sep:
            raise ValueError
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}") from None


def _tolerances(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=_tolerance, action="append", default=[], metavar="NAME=VALUE",
                   help="replace the bound of one named check (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kirchlab", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="group", required=True)

    tables = sub.add_parser("tables").add_subparsers(dest="action", required=True)
    p = tables.add_parser("export", help="structure constants a_ijk as [i, j, k, sign]")
    p.add_argument("--level", type=int, choices=algebra.LEVELS, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    acs = sub.add_parser("acs").add_subparsers(dest="action", required=True)
    p = acs.add_parser("check", help="residuals of the almost complex structure identities")
    _common(p)
    _tolerances(p)

    frame = sub.add_parser("frame").add_subparsers(dest="action", required=True)
    p = frame.add_parser("eval", help="one Kirchhoff frame field at one point")
    _common(p)
    p.add_argument("--point", required=True, help="comma-separated ambient coordinates")
    p.add_argument("--index", type=int, required=True)
    p = frame.add_parser("scan", help="per-point Gram residuals of the Kirchhoff frame")
    _common(p)

    par = sub.add_parser("parallelism").add_subparsers(dest="action", required=True)
    p = par.add_parser("scan", help="constancy scan of structure functions")
    p.add_argument("--frame", choices=("classical", "kirchhoff"), required=True)
    p.add_argument("--level", type=int, choices=(2, 3), required=True)
    p.add_argument("--model", choices=MODELS, default=None, help="J for the kirchhoff frame")
    _common(p, model=False)

    hs = sub.add_parser("hspace").add_subparsers(dest="action", required=True)
    p = hs.add_parser("defects", help="associativity / Moufang defect statistics")
    _common(p, samples=10000)
    p.add_argument("--op", choices=("assoc", "moufang"), required=True)

    p = sub.add_parser("verify", help="run the identity suite for one model")
    _common(p)
    _tolerances(p)

    p = sub.add_parser("report", help="write every scan for one model into a directory")
    _common(p)
    p.add_argument("--out-dir", default=None)
    return parser


def _config(args) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    cfg = RunConfig(command=" ".join(filter(None, [args.group, getattr(args, "action", None)])),
                    tolerances=dict(getattr(args, "tol", [])),
                    **{k: v for k, v in vars(args).items() if k in fields and k not in ("command", "tolerances")})
    if cfg.command != "tables export":
        cfg.validate()
    return cfg


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        key = (args.group, getattr(args, "action", None))
        if key == ("tables", "export"):
            return cmd_tables(cfg)
        if key == ("acs", "check"):
            return cmd_acs_check(cfg)
        if key == ("frame", "eval"):
            return cmd_frame_eval(cfg, args.point, args.index)
        if key == ("frame", "scan"):
            return cmd_frame_scan(cfg)
        if key == ("parallelism", "scan"):
            return cmd_parallelism_scan(cfg, args.frame)
        if key == ("hspace", "defects"):
            return cmd_hspace_defects(cfg, args.op)
        if args.group == "verify":
            return cmd_verify(cfg)
        if args.group == "report":
            return cmd_report(cfg, args.out_dir)
    except UsageError as exc:
        print(f"kirchlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IOFailure as exc:
        print(f"kirchlab: error: {exc}", file=sys.stderr)
        return EXIT_IO
    parser.error("unknown command")


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
