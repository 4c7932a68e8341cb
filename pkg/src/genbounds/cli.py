"""Command-line client: runs handlers in-process, or against a server via --server.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from .experiment import ExperimentConfig, ExperimentRow, emit_csv, emit_svg_plots, run_gaussian_mean_experiment
from .schemas import (
    BoundsRequest,
    DistributionPayload,
    DivergenceRequest,
    InformationRequest,
    JointPayload,
    ModelPayload,
    VerifyConfig,
)
from .service import handle_bounds, handle_divergence, handle_information, handle_verify

THEOREMS = ("thm2", "cor1", "cor2", "eq9", "thm3", "thm4", "eq12", "cor3")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ValueError(f"file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON in {path}: {exc}")


def _post(server: str, route: str, payload: dict) -> dict:
    import httpx

    resp = httpx.post(server.rstrip("/") + route, json=payload, timeout=600.0)
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise ValueError(f"server returned {resp.status_code}: {detail}")
    return resp.json()


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _cmd_divergence(args) -> int:
    req = DivergenceRequest(
        p=DistributionPayload(**_load_json(args.p)),
        q=DistributionPayload(**_load_json(args.q)),
        kind=args.kind,
        order=args.order,
    )
    if args.server:
        payload = _post(args.server, "/divergence", req.model_dump())
    else:
        payload = handle_divergence(req).model_dump()
    _emit(payload, args.out)
    return 0


def _cmd_info(args) -> int:
    joint = JointPayload(**_load_json(args.joint)) if args.joint else None
    model = ModelPayload(**_load_json(args.model)) if args.model else None
    req = InformationRequest(joint=joint, model=model, t=args.t, w_round_digits=args.w_round_digits)
    if args.server:
        payload = _post(args.server, "/information", req.model_dump())
    else:
        payload = handle_information(req).model_dump()
    _emit(payload, args.out)
    return 0


def _cmd_bounds(args) -> int:
    req = BoundsRequest(
        theorem=args.theorem, sigma=args.sigma, n=args.n, mode=args.mode,
        m=args.m, t=args.t, q=args.q, alpha=args.alpha, delta=args.delta,
        info=args.info, mi=args.mi, ratio=args.ratio,
    )
    if args.server:
        payload = _post(args.server, "/bounds", req.model_dump())
    else:
        payload = handle_bounds(req).model_dump()
    _emit(payload, args.out)
    return 0


def _cmd_experiment(args) -> int:
    cfg_dict = _load_json(args.config) if args.config else {}
    config = ExperimentConfig(**cfg_dict)
    if args.out_dir:
        config = config.model_copy(update={"out_dir": args.out_dir})
    if args.server:
        data = _post(args.server, "/experiment/gaussian-mean", json.loads(config.model_dump_json()))
        rows = [ExperimentRow(**r) for r in data["rows"]]
    else:
        rows = run_gaussian_mean_experiment(config)
    out_dir = Path(config.out_dir)
    csv_path = emit_csv(rows, out_dir / "gen_moments.csv")
    svg_paths = emit_svg_plots(rows, out_dir)
    _emit({
        "out_dir": str(out_dir),
        "csv": csv_path,
        "svgs": svg_paths,
        "rows": [r.to_dict() for r in rows],
    }, args.out)
    return 0


def _cmd_verify(args) -> int:
    cfg_dict = _load_json(args.config) if args.config else {}
    config = VerifyConfig(**cfg_dict)
    if args.server:
        payload = _post(args.server, "/verify", config.model_dump())
    else:
        payload = handle_verify(config).model_dump()
    _emit(payload, args.out)
    return 0 if payload["passed"] else 2


def build_parser() -> _Parser:
    parser = _Parser(prog="genbounds", description=__doc__)
    parser.add_argument("--server", help="base URL of a running service; routes the call over HTTP")
    parser.add_argument("--out", help="write the JSON result to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("divergence", help="divergence between two discrete distributions")
    p.add_argument("--p", required=True, help="JSON file {atoms, probs}")
    p.add_argument("--q", required=True, help="JSON file {atoms, probs}")
    p.add_argument("--kind", required=True, choices=("kl", "renyi", "power", "chi2"))
    p.add_argument("--order", type=float, help="order t (power) or alpha (renyi)")
    p.set_defaults(func=_cmd_divergence)

    p = sub.add_parser("info", help="information measures of a joint law")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--joint", help="JSON file {w_atoms, s_count, mass}")
    group.add_argument("--model", help="JSON file {data, n, kernel}")
    p.add_argument("--t", type=float, help="also report power information of this order")
    p.add_argument("--w-round-digits", type=int, default=10)
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("bounds", help="evaluate one bound with side-condition reporting")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--sigma", required=True, type=float)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--mode", choices=("strict", "relaxed"), default="relaxed")
    p.add_argument("--m", type=int, help="moment order")
    p.add_argument("--t", type=float, help="divergence order")
    p.add_argument("--q", type=float, help="conjugate exponent (cor2)")
    p.add_argument("--alpha", type=float, help="Renyi order (eq12)")
    p.add_argument("--delta", type=float, help="tail probability")
    p.add_argument("--info", type=float, help="power/chi-square/Renyi information value")
    p.add_argument("--mi", type=float, help="mutual information (thm3)")
    p.add_argument("--ratio", type=float, help="max density ratio R (eq9)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("experiment", help="run a bundled experiment")
    exp_sub = p.add_subparsers(dest="experiment_kind", required=True)
    g = exp_sub.add_parser("gaussian-mean", help="mean estimation sweep with CSV and SVG output")
    g.add_argument("--config", help="JSON file with ExperimentConfig fields")
    g.add_argument("--out-dir", help="override the config's output directory")
    g.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("verify", help="run the inequality verification suite")
    p.add_argument("--config", help="JSON file with battery parameters")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        errors = "; ".join(e["msg"] for e in exc.errors())
        print(f"genbounds: error: {errors}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"genbounds: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
