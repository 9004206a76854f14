"""Command-line front end.

Every command reads JSON inputs, writes a single JSON report to stdout or to
the --output path, and exits 0 on success, 1 on domain errors, 2 on parse or
I/O errors.  Reports are deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import serialize
from .algebra import (
    AlgebraSpec,
    Element,
    frobenius,
    multiply,
    projection_path,
    rank,
    riesz_projection,
    spectrum,
    trace,
)
from .commutators import (
    certifies_non_commutator,
    commutator_decompose,
    decompose_in_completion,
    infeasibility_certificate,
    is_shoda_complete,
)
from .completion import complete
from .errors import AlgebraError
from .norms import A_NORM_MODEL, isometry_check, submultiplicativity_audit
from .sampling import random_rank_one_projection


@dataclass(frozen=True)
class CliConfig:
    command: str
    spec_path: str
    element_path: Optional[str] = None
    tol: float = 1e-9
    seed: int = 42
    samples: int = 1000
    output_path: Optional[str] = None
    in_completion: bool = False
    dump_table: bool = False

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")


def _load_spec(config: CliConfig) -> AlgebraSpec:
    return serialize.spec_from_json(serialize.load_json_file(config.spec_path))


def _load_element(config: CliConfig, spec: AlgebraSpec) -> Element:
    if config.element_path is None:
        raise ValueError(f"command {config.command!r} needs an element file")
    return serialize.element_from_json(spec, serialize.load_json_file(config.element_path))


def _cmd_info(config: CliConfig) -> dict:
    spec = _load_spec(config)
    report = is_shoda_complete(spec, config.tol, config.seed)
    return {
        "blocks": list(spec.block_dims),
        "dim": spec.dim,
        "matrix_size": spec.matrix_size,
        "extension_dim": spec.matrix_size**2,
        "shoda_complete": report.verdict,
    }


def _cmd_complete(config: CliConfig) -> dict:
    spec = _load_spec(config)
    result = complete(spec, config.tol, seed=config.seed)
    report = {
        "N": result.matrix_size,
        "radical_dim": result.radical_dim,
        "components": list(result.block_structure),
        "iso_residual": result.iso_residual,
    }
    if config.dump_table:
        from .completion import build_B

        table = build_B(spec).table
        report["table"] = [
            [[serialize.complex_to_pair(z) for z in row] for row in plane]
            for plane in table
        ]
    return report


def _cmd_check(config: CliConfig) -> dict:
    spec = _load_spec(config)
    report = is_shoda_complete(spec, config.tol, config.seed)
    return {
        "verdict": report.verdict,
        "criterion_minimal_ideal": report.criterion_minimal_ideal,
        "criterion_single_generator": report.criterion_single_generator,
        "criterion_corner": [[r, d] for r, d in report.criterion_corner],
        "criterion_connectivity": report.criterion_connectivity,
        "witness": None if report.witness is None else serialize.element_to_json(report.witness),
    }


def _cmd_decompose(config: CliConfig) -> dict:
    spec = _load_spec(config)
    t = _load_element(config, spec)
    if config.in_completion:
        witness = decompose_in_completion(t, config.tol)
        return {
            "in_completion": True,
            "a": serialize.b_to_json(witness.a),
            "b": serialize.b_to_json(witness.b),
            "residual": witness.residual,
        }
    if spec.num_blocks >= 2:
        traces = infeasibility_certificate(t)
        return {
            "in_completion": False,
            "decomposable_in_algebra": not certifies_non_commutator(t, config.tol),
            "certified_non_commutator": certifies_non_commutator(t, config.tol),
            "block_traces": [serialize.complex_to_pair(z) for z in traces],
            "note": "multi-block algebra; rerun with --in-completion for factors",
        }
    witness = commutator_decompose(t, config.tol)
    return {
        "in_completion": False,
        "a": serialize.element_to_json(witness.a),
        "b": serialize.element_to_json(witness.b),
        "residual": witness.residual,
    }


def _cmd_rank(config: CliConfig) -> dict:
    spec = _load_spec(config)
    x = _load_element(config, spec)
    return {"rank": rank(x, config.tol)}


def _cmd_trace(config: CliConfig) -> dict:
    spec = _load_spec(config)
    x = _load_element(config, spec)
    return {"trace": serialize.complex_to_pair(trace(x))}


def _cmd_spectrum(config: CliConfig) -> dict:
    spec = _load_spec(config)
    x = _load_element(config, spec)
    report = spectrum(x, config.tol)
    return {
        "eigenvalues": [[serialize.complex_to_pair(v), m] for v, m in report.eigenvalues],
        "nonzero": [[serialize.complex_to_pair(v), m] for v, m in report.nonzero],
    }


def _cmd_riesz(config: CliConfig) -> dict:
    spec = _load_spec(config)
    x = _load_element(config, spec)
    report = spectrum(x, config.tol)
    out = []
    for value, mult in report.nonzero:
        p = riesz_projection(x, value, config.tol)
        idem = frobenius(multiply(p, p) - p)
        comm = frobenius(multiply(p, x) - multiply(x, p))
        out.append(
            {
                "eigenvalue": serialize.complex_to_pair(value),
                "multiplicity": mult,
                "rank": rank(p, config.tol),
                "idempotency_residual": idem,
                "commutation_residual": comm,
                "projection": serialize.element_to_json(p),
            }
        )
    return {"projections": out}


def _cmd_norm_audit(config: CliConfig) -> dict:
    spec = _load_spec(config)
    audit = submultiplicativity_audit(spec, config.samples, config.seed)
    deviation = isometry_check(spec, min(config.samples, 200), config.seed)
    return {
        "worst_ratio": audit.worst_ratio,
        "isometry_dev": deviation,
        "families": {
            "tensor_times_algebra": audit.tensor_times_algebra,
            "algebra_times_tensor": audit.algebra_times_tensor,
            "tensor_times_tensor": audit.tensor_times_tensor,
            "full_pairs": audit.full_pairs,
        },
        "a_norm_model": A_NORM_MODEL,
    }


def _cmd_path(config: CliConfig) -> dict:
    spec = _load_spec(config)
    if config.element_path is not None:
        data = serialize.load_json_file(config.element_path)
        if not isinstance(data, dict) or "p" not in data or "q" not in data:
            raise ValueError('path endpoints JSON needs "p" and "q" keys')
        p = serialize.element_from_json(spec, data["p"])
        q = serialize.element_from_json(spec, data["q"])
    else:
        rng = np.random.default_rng(config.seed)
        p = random_rank_one_projection(spec, 0, rng)
        q = random_rank_one_projection(spec, 0, rng)
    samples = min(config.samples, 1000)
    arc = projection_path(p, q, samples, config.tol, seed=config.seed)
    worst_idem = 0.0
    for e in arc:
        worst_idem = max(worst_idem, frobenius(multiply(e, e) - e))
    return {
        "samples": len(arc),
        "max_idempotency_residual": worst_idem,
        "max_rank_defect": max(abs(rank(e, config.tol) - 1) for e in arc),
        "endpoints_exact": bool(
            all((a == b).all() for a, b in zip(arc[0].blocks, p.blocks))
            and all((a == b).all() for a, b in zip(arc[-1].blocks, q.blocks))
        ),
    }


_COMMANDS = {
    "info": _cmd_info,
    "complete": _cmd_complete,
    "check": _cmd_check,
    "decompose": _cmd_decompose,
    "rank": _cmd_rank,
    "trace": _cmd_trace,
    "spectrum": _cmd_spectrum,
    "riesz": _cmd_riesz,
    "norm-audit": _cmd_norm_audit,
    "path": _cmd_path,
}


def run(config: CliConfig) -> tuple[int, dict]:
    """Dispatch a parsed config; returns (exit code, report)."""
    try:
        report = _COMMANDS[config.command](config)
        return 0, report
    except AlgebraError as exc:
        return 1, {"error": type(exc).__name__, "detail": str(exc)}
    except (OSError, ValueError, KeyError, TypeError, IndexError) as exc:
        return 2, {"error": type(exc).__name__, "detail": str(exc)}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shoda",
        description="Completion, completeness checks and commutator decomposition "
        "for block-diagonal complex semisimple algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    needs_element = {"decompose", "rank", "trace", "spectrum", "riesz"}
    optional_element = {"path"}
    for name in _COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("spec_path", help="algebra spec JSON file")
        if name in needs_element:
            cmd.add_argument("element_path", help="element JSON file")
        elif name in optional_element:
            cmd.add_argument("element_path", nargs="?", default=None,
                             help='JSON file with "p" and "q" endpoint elements')
        cmd.add_argument("--tol", type=float, default=1e-9)
        cmd.add_argument("--seed", type=int, default=42)
        cmd.add_argument("--samples", type=int, default=1000)
        cmd.add_argument("-o", "--output", dest="output_path", default=None)
        if name == "decompose":
            cmd.add_argument("--in-completion", action="store_true", dest="in_completion")
        if name == "complete":
            cmd.add_argument("--dump-table", action="store_true", dest="dump_table")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = CliConfig(
            command=args.command,
            spec_path=args.spec_path,
            element_path=getattr(args, "element_path", None),
            tol=args.tol,
            seed=args.seed,
            samples=args.samples,
            output_path=args.output_path,
            in_completion=getattr(args, "in_completion", False),
            dump_table=getattr(args, "dump_table", False),
        )
    except ValueError as exc:
        sys.stderr.write(serialize.dumps({"error": "ValueError", "detail": str(exc)}))
        return 2
    code, report = run(config)
    text = serialize.dumps(report)
    if config.output_path:
        try:
            with open(config.output_path, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            sys.stderr.write(serialize.dumps({"error": "OSError", "detail": str(exc)}))
            return 2
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
