"""
Phantom QEC Toolkit - CLI Module

Command-line surface: construct, check-phantom, enumerate, discover, distance, gates,
compile and hamming-bound. Output is JSON (or CSV for tables) on stdout; --pretty
switches to human-readable tables.

Exit codes: 0 success, 1 negative verdict, 2 usage or parse error, 3 resource limit
or timeout.
"""

from mylogger import logger
import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from .__version__ import __version__
from .codes import (CssCode, DistanceBound, StabilizerCode, check_hamming_bound, distance_css,
                    distance_stabilizer, hamming_B)
from .config import CutoffExceeded, QecConfig, default_config
from .enums import ExitCode, SolveStatus
from .utils import QecUtils
from .validator import CodeValidator


logger.info("Loading cli module")


class UsageError(ValueError):
    """Bad command-line usage."""


# ==================== Input / output ====================

def _emit(payload: Any, pretty: bool = False) -> None:
    if isinstance(payload, pd.DataFrame):
        print(payload.to_string(index=False) if pretty else payload.to_csv(index=False), end="\n" if pretty else "")
        return
    print(json.dumps(payload, indent=2 if pretty else None, default=str))


def load_code(source: str) -> Union[CssCode, StabilizerCode]:
    """
    Load code JSON from a path or '-' (stdin).

    Raises:
        ValueError: With a diagnostic when the JSON is malformed or the code is invalid
    """
    payload = QecUtils.read_json_input(source)
    ok, message = CodeValidator().validate('code', payload)
    if not ok:
        raise ValueError(f"Invalid code JSON: {message}")
    if "h" in payload and "hx" not in payload:
        return StabilizerCode.from_dict(payload)
    return CssCode.from_dict(payload)


def _load_checked(source: str, kind: str, **kwargs: Any) -> Dict[str, Any]:
    payload = QecUtils.read_json_input(source)
    ok, message = CodeValidator().validate(kind, payload, **kwargs)
    if not ok:
        raise ValueError(f"Invalid {kind} JSON: {message}")
    return payload


def _coerce(value: str) -> Any:
    lowered = value.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    try:
        return int(value)
    except ValueError:
        return value


def parse_family_params(tokens: Sequence[str]) -> Dict[str, Any]:
    """
    Turn ['--m', '4', '--l=2'] into {'m': 4, 'l': 2}.

    Raises:
        UsageError: On a token that is not a --key value pair

    Example:
        >>> parse_family_params(["--m", "4", "--l=2"])
        {'m': 4, 'l': 2}
    """
    params: Dict[str, Any] = {}
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if not token.startswith("--"):
            raise UsageError(f"Unexpected argument {token!r}; family parameters are --key value")
        key = token[2:]
        if "=" in key:
            key, value = key.split("=", 1)
            i += 1
        elif i + 1 < len(tokens) and not tokens[i + 1].startswith("--"):
            value = tokens[i + 1]
            i += 2
        else:
            raise UsageError(f"Parameter {token} needs a value")
        params[key.replace("-", "_")] = _coerce(value)
    return params


# ==================== Commands ====================

def cmd_construct(args: argparse.Namespace, extra: List[str]) -> int:
    from .construct import TRANSFORMS, build_family, family_key

    params = parse_family_params(extra)
    key = family_key(args.family)
    if key in TRANSFORMS:
        if not args.input:
            raise UsageError(f"Transform {args.family} needs --input code.json")
        inputs = [load_code(args.input)]
        if args.inner:
            inputs.append(load_code(args.inner))
        code = TRANSFORMS[key](*inputs, **params)
    else:
        code = build_family(args.family, **params)

    payload = code.to_dict()
    if args.distance and isinstance(code, CssCode) and code.k:
        dx, dz = distance_css(code)
        payload["metadata"].update(dx=dx, dz=dz)
    elif args.distance and isinstance(code, StabilizerCode) and code.k:
        payload["metadata"]["d"] = distance_stabilizer(code)
    _emit(payload, args.pretty)
    return ExitCode.SUCCESS


def cmd_check_phantom(args: argparse.Namespace, config: QecConfig) -> int:
    from .phantom import is_phantom_bruteforce, is_phantom_sat
    from .solver import SolverHandle

    code = load_code(args.code)
    if not isinstance(code, CssCode):
        raise ValueError("Phantomness checks need a CSS code")
    if code.k < 2:
        raise ValueError(f"Phantomness needs k >= 2, got k={code.k}")

    if args.brute:
        witness = is_phantom_bruteforce(code, config=config)
        status, method = (SolveStatus.SAT if witness else SolveStatus.UNSAT), "brute"
    else:
        handle = SolverHandle.from_config(config, explicit_path=args.solver, force_internal=args.internal)
        result = is_phantom_sat(code, handle, config)
        witness, status, method = result.witness, result.status, str(handle.mode)

    payload: Dict[str, Any] = {
        "code": code.parameters(),
        "phantom": witness is not None,
        "method": method,
        "status": status.value,
        "witness": witness.to_dict() if witness else None,
    }
    if witness and args.witness_out:
        QecUtils.save(witness.to_dict(), args.witness_out, "json")
    _emit(payload, args.pretty)
    if status in (SolveStatus.TIMEOUT, SolveStatus.UNKNOWN):
        return ExitCode.RESOURCE
    return ExitCode.SUCCESS if witness else ExitCode.NEGATIVE


def cmd_enumerate(args: argparse.Namespace, config: QecConfig) -> int:
    from .enumerate import enumerate_all, filter_phantom

    if args.phantom and args.non_css:
        raise UsageError("--phantom needs a CSS enumeration")
    db = enumerate_all(args.n, k_min=args.k_min, config=config, css=not args.non_css)
    if args.phantom:
        frame = filter_phantom(db, min_distance=args.min_distance, config=config)
    else:
        frame = db.counts(min_distance=args.min_distance)
    if args.out:
        db.save(args.out)
        QecUtils.save(frame, f"{args.out}/counts.csv", "csv")
    _emit(frame, args.pretty)
    return ExitCode.SUCCESS


def _discover_fixed_n(args: argparse.Namespace, config: QecConfig, handle: Any) -> Tuple[int, Dict[str, Any]]:
    from .sat import DiscoverySpec, discovery_instance, solve

    dz = args.dz if args.dz is not None else args.dx
    css = not args.non_css
    statuses = []
    for r in range(0, args.n - args.k + 1):
        if css and args.dx == dz and r > args.n - args.k - r:
            continue
        spec = DiscoverySpec(n=args.n, r=r, k=args.k, dx=args.dx, dz=dz, css=css, phantom=args.phantom)
        formula, decode = discovery_instance(spec, config)
        result = solve(formula, handle)
        statuses.append({"r": r, "status": result.status.value})
        if result.status == SolveStatus.SAT:
            code = decode(result)
            return ExitCode.SUCCESS, {"status": "sat", "r": r, "code": code.to_dict(), "runs": statuses}
    if all(s["status"] == SolveStatus.UNSAT.value for s in statuses):
        return ExitCode.NEGATIVE, {"status": "unsat", "message": "UNSAT for all r", "runs": statuses}
    return ExitCode.RESOURCE, {"status": "unknown", "runs": statuses}


def cmd_discover(args: argparse.Namespace, config: QecConfig) -> int:
    from .sat import minimal_n, sweep_frame
    from .solver import SolverHandle

    handle = SolverHandle.from_config(config, explicit_path=args.solver, force_internal=args.internal)
    if args.n is not None:
        code, payload = _discover_fixed_n(args, config, handle)
        _emit(payload, args.pretty)
        return code
    rows = minimal_n(args.k, args.dx, args.dz, phantom=args.phantom, n_max=args.n_max,
                     css=not args.non_css, handle=handle, config=config)
    _emit(sweep_frame(rows), args.pretty)
    if rows and rows[-1].status == SolveStatus.SAT:
        return ExitCode.SUCCESS
    return ExitCode.NEGATIVE if all(r.status == SolveStatus.UNSAT for r in rows) else ExitCode.RESOURCE


def cmd_distance(args: argparse.Namespace, config: QecConfig) -> int:
    code = load_code(args.code)
    if isinstance(code, StabilizerCode):
        payload = {"code": f"[[{code.n},{code.k}]]", "d": distance_stabilizer(code, config=config)}
    else:
        result = distance_css(code, allow_bound=args.bound is not None,
                              max_weight=args.bound or 8, config=config)
        if isinstance(result, DistanceBound):
            payload = {"code": code.parameters(), "dx": result.dx, "dz": result.dz,
                       "exact": result.exact_x and result.exact_z}
        else:
            payload = {"code": code.parameters(), "dx": result[0], "dz": result[1], "exact": True}
    _emit(payload, args.pretty)
    return ExitCode.SUCCESS


def cmd_gates(args: argparse.Namespace, config: QecConfig) -> int:
    from .gates import automorphism_gates, diagonal_gates, fold_gates, gate_report

    code = load_code(args.code)
    if args.kind == "automorphism":
        search = automorphism_gates(code, limit=args.limit, uniform=args.uniform, config=config)
        reports = [gate_report(g) for g in search.gates]
        payload: Dict[str, Any] = {"complete": search.complete, "gates": reports}
    elif args.kind == "diagonal":
        payload = {"gates": [gate_report(g) for g in diagonal_gates(code, level=args.level, config=config)]}
    else:
        payload = {"gates": [gate_report(g) for g in fold_gates(code, level=2, config=config)]}
    payload["count"] = len(payload["gates"])
    _emit(payload, args.pretty)
    return ExitCode.SUCCESS if payload["count"] else ExitCode.NEGATIVE


def cmd_compile(args: argparse.Namespace, config: QecConfig) -> int:
    from .compile import LogicalCnotCircuit, compile_multiblock, route_residual, verify_schedule
    from .phantom import PhantomWitness, is_phantom_bruteforce

    circuit = LogicalCnotCircuit.from_dict(_load_checked(args.circuit, 'circuit'))
    code = load_code(args.code) if args.code else None
    if code is not None and not isinstance(code, CssCode):
        raise ValueError("Compilation needs CSS codeblocks")
    witness: Optional[PhantomWitness] = None
    if args.witness:
        witness = PhantomWitness.from_dict(_load_checked(args.witness, 'witness', k=circuit.k))
    elif code is not None:
        witness = is_phantom_bruteforce(code, config=config)
        if witness is None:
            logger.error(f"{code.parameters()} is not phantom; in-block CNOTs cannot be relabelled")
            _emit({"error": "code is not phantom"}, args.pretty)
            return ExitCode.NEGATIVE

    schedule = compile_multiblock(circuit, witness=witness)
    if args.route_residual:
        schedule = route_residual(schedule, witness)
    verified = None
    if args.verify:
        verified = verify_schedule(schedule, circuit, code, witness)

    if args.emit_depth:
        payload: Dict[str, Any] = {"depth": schedule.depth, "relabel_count": schedule.relabel_count,
                                   "residual": schedule.residual}
    else:
        payload = schedule.to_dict()
    if verified is not None:
        payload["verified"] = verified
    if args.pretty and args.emit_depth:
        print(schedule.summary())
    else:
        _emit(payload, args.pretty)
    return ExitCode.NEGATIVE if verified is False else ExitCode.SUCCESS


def cmd_hamming_bound(args: argparse.Namespace, config: QecConfig) -> int:
    if args.code:
        code = load_code(args.code)
        if not isinstance(code, CssCode):
            raise ValueError("The phantom Hamming bound is stated for CSS codes")
        holds = check_hamming_bound(code, eta=args.eta, config=config)
        _emit({"code": code.parameters(), "holds": holds}, args.pretty)
        return ExitCode.SUCCESS if holds else ExitCode.NEGATIVE
    if args.n is None or args.d is None:
        raise UsageError("hamming-bound needs --n and --d, or --code")
    _emit({"n": args.n, "d": args.d, "B": hamming_B(args.n, args.d, config)}, args.pretty)
    return ExitCode.SUCCESS


# ==================== Parser ====================

def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--solver", help="External SAT solver binary (DIMACS in, SAT competition output)")
    group.add_argument("--internal", action="store_true", help="Use the built-in CDCL engine")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-command per operation."""
    parser = argparse.ArgumentParser(prog="phantomqec", description="Phantom quantum code toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--pretty", action="store_true", help="Human-readable output")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes for sweeps")
    parser.add_argument("--seed", type=int, default=None, help="Seed for randomised helpers")
    parser.add_argument("--config", help="JSON settings file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="Build a code family member or apply a transform", allow_abbrev=False)
    p.add_argument("family")
    p.add_argument("--input", help="Code JSON for transforms")
    p.add_argument("--inner", help="Inner code JSON for concat-simple")
    p.add_argument("--distance", action="store_true", help="Record distances in the metadata")

    p = sub.add_parser("check-phantom", help="Decide phantomness")
    p.add_argument("code", help="Code JSON path or '-'")
    _add_solver_flags(p)
    p.add_argument("--brute", action="store_true", help="Brute-force permutation search")
    p.add_argument("--witness-out", help="Write the witness JSON here")

    p = sub.add_parser("enumerate", help="Enumerate CSS codes up to ΠH equivalence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--min-distance", type=int, default=2)
    p.add_argument("--phantom", action="store_true", help="Add weak-phantom strata")
    p.add_argument("--non-css", action="store_true", help="Enumerate all stabilizer codes (small n)")
    p.add_argument("--out", help="Database directory")

    p = sub.add_parser("discover", help="SAT discovery at fixed n, or a minimal-n sweep")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dx", type=int, required=True)
    p.add_argument("--dz", type=int, default=None)
    p.add_argument("--phantom", action="store_true")
    p.add_argument("--non-css", action="store_true", help="Search general stabilizer codes")
    _add_solver_flags(p)

    p = sub.add_parser("distance", help="Code distance")
    p.add_argument("code")
    p.add_argument("--bound", type=int, default=None, help="Fall back to a weight-limited bound")

    p = sub.add_parser("gates", help="Search logical gates")
    p.add_argument("code")
    p.add_argument("--kind", choices=["automorphism", "diagonal", "fold"], default="automorphism")
    p.add_argument("--level", type=int, default=3)
    p.add_argument("--limit", type=int, default=10_000)
    p.add_argument("--uniform", action="store_true", help="Same local Clifford on every qubit")

    p = sub.add_parser("compile", help="Compile a logical CNOT circuit into a physical schedule")
    p.add_argument("circuit", help="Circuit JSON path or '-'")
    p.add_argument("--code", help="Block code JSON (witness found by brute force)")
    p.add_argument("--witness", help="Phantom witness JSON")
    p.add_argument("--route-residual", action="store_true", help="Route the residual permutation")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--emit-depth", action="store_true", help="Print depth, relabel count and residual only")

    p = sub.add_parser("hamming-bound", help="B(n,d) or the phantom Hamming bound of a code")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--code")
    p.add_argument("--eta", type=int, default=None)
    return parser


COMMANDS = {
    "check-phantom": cmd_check_phantom,
    "enumerate": cmd_enumerate,
    "discover": cmd_discover,
    "distance": cmd_distance,
    "gates": cmd_gates,
    "compile": cmd_compile,
    "hamming-bound": cmd_hamming_bound,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the ``phantomqec`` console script.

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as e:
        return ExitCode.SUCCESS if e.code == 0 else ExitCode.USAGE

    config = default_config
    if args.config and not config.load_config(args.config):
        logger.error(f"Could not load settings from {args.config}")
        return ExitCode.USAGE
    if args.jobs is not None:
        config.configure(jobs=args.jobs)
    if args.seed is not None:
        config.configure(seed=args.seed)

    try:
        if args.command == "construct":
            return int(cmd_construct(args, extra))
        if extra:
            raise UsageError(f"Unrecognised arguments: {' '.join(extra)}")
        return int(COMMANDS[args.command](args, config))
    except (CutoffExceeded, TimeoutError) as e:
        logger.error(f"Resource limit: {e}")
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return ExitCode.RESOURCE
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as e:
        logger.error(f"Input error: {e}")
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return ExitCode.USAGE
