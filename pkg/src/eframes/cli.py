"""Command line interface.

Commands: analyze, dual, verify, neumann, paper-example. Exit codes:
0 success, 1 input or validation error, 2 mathematical-verdict
failure. The machine format is deterministic JSON (no timestamps);
elapsed time is shown in the text format only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import controlled, eframe, gallery, neumann
from .config import DEFAULT_SEED, DEFAULT_TRIALS, ConfigError, parse_config
from .errors import (
    ConvergenceError,
    DualConditionError,
    NotAFrameError,
)
from .hilbert import DEFAULT_TOL, trial_matrix
from .mapping import apply_mapping

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERDICT = 2


def _sequence_pairs(seq) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(seq)]


def _cert_dict(cert: controlled.DualCertificate) -> dict:
    return {
        "orientation": cert.orientation,
        "max_residual": cert.max_residual,
        "trials": cert.trials,
        "verdict": cert.verdict,
    }


def _render_text(report: dict, elapsed: float) -> str:
    lines: list[str] = []

    def emit(prefix: str, value) -> None:
        if isinstance(value, dict):
            for key in value:
                emit(f"{prefix}.{key}" if prefix else str(key), value[key])
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            lines.append(f"{prefix}: <{len(value)} rows>")
        else:
            lines.append(f"{prefix}: {value}")

    emit("", report)
    lines.append(f"elapsed: {elapsed:.3f}s")
    return "\n".join(lines)


def _render_machine(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def _max_column_residual(values: np.ndarray, targets: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(values - targets, axis=0)))


def cmd_analyze(cfg, strict: bool) -> tuple[dict, int]:
    record = eframe.e_frame_bounds(cfg.mapping, cfg.psi, cfg.tol)
    crecord = controlled.controlled_bounds(cfg.mapping, cfg.psi, cfg.u, cfg.tol)
    report = {
        "command": "analyze",
        "eframe": {
            "lower": record.bounds.lo,
            "upper": record.bounds.hi,
            "verdict": record.verdict,
        },
        "controlled": {
            "lower": crecord.bounds.lo,
            "upper": crecord.bounds.hi,
            "verdict": crecord.verdict,
        },
        "parseval": controlled.is_parseval(cfg.mapping, cfg.psi, cfg.u, cfg.tol),
    }
    if crecord.verdict == controlled.CONTROLLED_FRAME:
        ident = controlled.identity_errors(
            cfg.mapping, cfg.psi, cfg.u, cfg.trials, cfg.seed, cfg.tol
        )
        report["identities"] = {
            "err_sue_use": ident.err_sue_use,
            "err_commute": ident.err_commute,
            "err_switched_sum": ident.err_switched_sum,
        }
    failing = (
        record.verdict != eframe.FRAME
        or crecord.verdict != controlled.CONTROLLED_FRAME
    )
    return report, EXIT_VERDICT if strict and failing else EXIT_OK


def cmd_dual(cfg, mode: str) -> tuple[dict, int]:
    report: dict = {"command": "dual", "mode": mode}
    code = EXIT_OK
    if mode == "canonical":
        family = controlled.canonical_dual(cfg.mapping, cfg.psi, cfg.u, cfg.tol)
    elif mode == "right-inverse":
        v = controlled.random_right_inverse(
            cfg.mapping, cfg.psi, cfg.u, cfg.seed, cfg.tol
        )
        family = controlled.dual_from_right_inverse(
            cfg.mapping, cfg.psi, cfg.u, v, cfg.tol
        )
    elif mode == "offset":
        v = controlled.random_null_map(cfg.mapping, cfg.psi, cfg.u, cfg.seed, cfg.tol)
        family = controlled.dual_with_offset(cfg.mapping, cfg.psi, cfg.u, v, cfg.tol)
        recovered = controlled.extract_null_map(
            cfg.mapping, cfg.psi, family, cfg.u, cfg.trials, cfg.seed
        )
        roundtrip = float(
            np.linalg.norm(recovered - v) / max(np.linalg.norm(v), 1.0)
        )
        report["null_map_roundtrip"] = roundtrip
        if roundtrip > max(1e-9, cfg.tol):
            code = EXIT_VERDICT
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown dual mode {mode!r}")
    cert_def, cert_sw = controlled.verify_dual(
        cfg.mapping, cfg.psi, family, cfg.u, cfg.trials, cfg.seed, cfg.tol
    )
    report["dual"] = _sequence_pairs(family)
    report["certificates"] = [_cert_dict(cert_def), _cert_dict(cert_sw)]
    if not cert_def.verdict:
        code = EXIT_VERDICT
    return report, code


def cmd_verify(cfg) -> tuple[dict, int]:
    if cfg.phi is None:
        raise ConfigError("verify requires 'phi' in the configuration")
    cert_def, cert_sw = controlled.verify_dual(
        cfg.mapping, cfg.psi, cfg.phi, cfg.u, cfg.trials, cfg.seed, cfg.tol
    )
    report = {
        "command": "verify",
        "certificates": [_cert_dict(cert_def), _cert_dict(cert_sw)],
    }
    return report, EXIT_OK if cert_def.verdict else EXIT_VERDICT


def cmd_neumann(cfg, rho, eps: float, max_terms: int) -> tuple[dict, int]:
    if rho is not None:
        base = controlled.canonical_dual(cfg.mapping, cfg.psi, cfg.u, cfg.tol)
        phi = rho * base
    elif cfg.phi is not None:
        phi = cfg.phi
    else:
        raise ConfigError("neumann requires --rho or 'phi' in the configuration")
    report: dict = {"command": "neumann", "eps": eps, "max_terms": max_terms}
    if rho is not None:
        report["rho"] = float(rho)
    ratio = neumann.contraction_ratio(cfg.mapping, cfg.psi, phi, cfg.u)
    report["ratio"] = ratio
    if ratio >= 1.0:
        report["converged"] = False
        return report, EXIT_VERDICT
    corrected, diag = neumann.corrected_dual(
        cfg.mapping, cfg.psi, phi, cfg.u, eps, max_terms
    )
    cert_tol = max(cfg.tol, 10.0 * eps / max(1.0 - diag.ratio, 1e-12))
    cert_def, cert_sw = controlled.verify_dual(
        cfg.mapping, cfg.psi, corrected, cfg.u, cfg.trials, cfg.seed, cert_tol
    )
    report.update(
        {
            "terms_used": diag.terms_used,
            "converged": diag.converged,
            "residual_history": list(diag.residual_history),
            "certificates": [_cert_dict(cert_def), _cert_dict(cert_sw)],
        }
    )
    ok = diag.converged and cert_def.verdict
    return report, EXIT_OK if ok else EXIT_VERDICT


def cmd_paper_example(
    dim: int, tol: float, trials: int, seed: int
) -> tuple[dict, int]:
    mapping = gallery.example_mapping(dim)
    psi = gallery.example_psi(dim)
    psi_tilde = gallery.example_psi_tilde(dim)
    phi = gallery.example_phi(dim)
    u = gallery.example_u(dim)

    images_psi = apply_mapping(mapping, psi)
    images_tilde = apply_mapping(mapping, psi_tilde)
    images_phi = apply_mapping(mapping, phi)
    f = trial_matrix(dim, trials, seed)

    plain_pair = images_tilde.T @ (images_psi.conj() @ f)
    controlled_pair = (u @ images_tilde.T) @ (images_psi.conj() @ f)
    plain_dual = images_psi.T @ (images_phi.conj() @ f)
    controlled_dual = (u @ images_psi.T) @ (images_phi.conj() @ f)

    residuals = {
        "plain_psi_tilde": _max_column_residual(plain_pair, 2.0 * f),
        "controlled_psi_tilde": _max_column_residual(controlled_pair, f),
        "plain_phi": _max_column_residual(plain_dual, f),
        "controlled_phi": _max_column_residual(controlled_dual, 0.5 * f),
    }
    expected = {
        "plain_psi_tilde": "2f",
        "controlled_psi_tilde": "f",
        "plain_phi": "f",
        "controlled_phi": "f/2",
    }
    report = {
        "command": "paper-example",
        "dim": dim,
        "count": dim + 1,
        "expected": expected,
        "residuals": residuals,
        "tol": tol,
    }
    ok = all(value <= tol for value in residuals.values())
    return report, EXIT_OK if ok else EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eframes",
        description="Frame analysis over matrix mappings: bounds, duals, "
        "Neumann correction, and a built-in worked example.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=None, help="override tolerance")
        p.add_argument(
            "--trials", type=int, default=None, help="random trial vectors per check"
        )
        p.add_argument("--seed", type=int, default=None, help="random seed")
        p.add_argument(
            "--format",
            choices=("text", "machine"),
            default="text",
            help="report format",
        )

    p_analyze = sub.add_parser("analyze", help="frame and controlled-frame bounds")
    p_analyze.add_argument("config")
    p_analyze.add_argument(
        "--strict", action="store_true", help="exit 2 on a failing verdict"
    )
    common(p_analyze)

    p_dual = sub.add_parser("dual", help="produce and certify a dual family")
    p_dual.add_argument("config")
    p_dual.add_argument(
        "--mode",
        choices=("canonical", "right-inverse", "offset"),
        default="canonical",
    )
    common(p_dual)

    p_verify = sub.add_parser("verify", help="certify the configured phi as a dual")
    p_verify.add_argument("config")
    common(p_verify)

    p_neumann = sub.add_parser("neumann", help="series-correct an approximate dual")
    p_neumann.add_argument("config")
    p_neumann.add_argument(
        "--rho", type=float, default=None, help="scale the canonical dual by rho"
    )
    p_neumann.add_argument("--eps", type=float, default=1e-12)
    p_neumann.add_argument("--max-terms", type=int, default=10_000)
    common(p_neumann)

    p_example = sub.add_parser(
        "paper-example", help="reproduce the built-in worked example"
    )
    p_example.add_argument("--dim", type=int, required=True)
    common(p_example)

    return parser


def _load(args):
    cfg = parse_config(args.config)
    overrides = {}
    if args.tol is not None:
        if args.tol <= 0:
            raise ConfigError("--tol must be positive")
        overrides["tol"] = args.tol
    if args.trials is not None:
        if args.trials < 1:
            raise ConfigError("--trials must be positive")
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        from dataclasses import replace

        cfg = replace(cfg, **overrides)
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for verdict failures
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    start = time.perf_counter()
    try:
        if args.command == "paper-example":
            tol = args.tol if args.tol is not None else DEFAULT_TOL
            trials = args.trials if args.trials is not None else DEFAULT_TRIALS
            seed = args.seed if args.seed is not None else DEFAULT_SEED
            if tol <= 0 or trials < 1:
                raise ConfigError("--tol and --trials must be positive")
            report, code = cmd_paper_example(args.dim, tol, trials, seed)
        else:
            cfg = _load(args)
            if args.command == "analyze":
                report, code = cmd_analyze(cfg, args.strict)
            elif args.command == "dual":
                report, code = cmd_dual(cfg, args.mode)
            elif args.command == "verify":
                report, code = cmd_verify(cfg)
            else:
                report, code = cmd_neumann(cfg, args.rho, args.eps, args.max_terms)
    except (NotAFrameError, DualConditionError, ConvergenceError) as exc:
        print(f"verdict failure: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    elapsed = time.perf_counter() - start
    if args.format == "machine":
        print(_render_machine(report))
    else:
        print(_render_text(report, elapsed))
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
