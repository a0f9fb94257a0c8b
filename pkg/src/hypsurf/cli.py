"""Command-line surface over the library.

Subcommands mirror the modules: chi / classify / double / thirteen for
the signature calculus, pants / plan for hyperbolic metrics, limit-set
for endpoint samples, boundary-map for sampled circle maps.  Output is
machine-readable JSON or CSV with floats at 17 significant digits;
identical flags (including --seed) give byte-identical output.

Exit codes: 0 success, 2 invalid input, 3 numeric failure (ambiguous
classification, length mismatches, order violations); errors are a
one-line JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

from hypsurf.boundary import (
    DEFAULT_IDENTITY_TOL,
    DEFAULT_SEARCH_DEPTH,
    FreeAutomorphism,
    induced_boundary_sample,
    is_boundary_identity,
    order_check,
)
from hypsurf.disk import DiskPoint
from hypsurf.errors import HypsurfError, InvalidInput, NumericFailure
from hypsurf.groups import (
    DEFAULT_DELTA,
    GroupRep,
    SampleMode,
    cusped_torus_group,
    limit_sample,
    octagon_group,
    schottky_rank2,
)
from hypsurf.pants import CuffLengths, build_pants, plan_decomposition, realize
from hypsurf.signature import (
    NEG_INF,
    Signature,
    description_from_json,
    description_to_json,
    double,
    doubling_report,
    euler_characteristic,
    is_standard,
    thirteen_list,
)

DEFAULT_SEPARATION = 4.0


def format_float(x: float) -> str:
    return format(x, ".17g")


def dump_json(obj) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    out: list[str] = []
    _write_json(obj, out)
    return "".join(out)


def _write_json(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            raise InvalidInput("non-finite float has no JSON encoding here")
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _write_json(v, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(k)))
            out.append(":")
            _write_json(v, out)
        out.append("}")
    else:
        raise InvalidInput(f"cannot serialize {type(obj).__name__}")


@dataclass(frozen=True)
class CliConfig:
    """Effective flag values; echoed verbatim by --echo-config."""

    subcommand: str
    max_word_length: Optional[int] = None
    tol: float = DEFAULT_IDENTITY_TOL
    delta: float = DEFAULT_DELTA
    output_format: str = "json"
    output_path: Optional[str] = None
    rng_seed: int = 0

    def to_json(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "max_word_length": self.max_word_length,
            "tol": self.tol,
            "delta": self.delta,
            "output_format": self.output_format,
            "output_path": self.output_path,
            "rng_seed": self.rng_seed,
        }


def _add_common(sub: argparse.ArgumentParser, default_format: str) -> None:
    sub.add_argument("--format", choices=("json", "csv"), default=default_format,
                     dest="output_format")
    sub.add_argument("--output", "-o", default=None, dest="output_path")
    sub.add_argument("--seed", type=int, default=0, dest="rng_seed")
    sub.add_argument("--echo-config", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypsurf", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = p.add_subparsers(dest="subcommand", required=True)

    for name in ("chi", "classify", "double"):
        sp = subs.add_parser(name)
        sp.add_argument("description", help="path to a surface description JSON file")
        if name == "double":
            sp.add_argument("--report", action="store_true",
                            help="include the chi bookkeeping of the doubling")
        _add_common(sp, "json")

    sp = subs.add_parser("thirteen")
    _add_common(sp, "json")

    sp = subs.add_parser("pants")
    sp.add_argument("--lengths", required=True,
                    help="three comma-separated cuff lengths, 0 for a cusp")
    _add_common(sp, "json")

    sp = subs.add_parser("plan")
    sp.add_argument("--sig", required=True, help="signature as g,c,b,a")
    sp.add_argument("--lengths", default="",
                    help="comma-separated boundary lengths, one per compact boundary circle")
    _add_common(sp, "json")

    sp = subs.add_parser("limit-set")
    sp.add_argument("--group", required=True,
                    choices=("octagon", "schottky", "cusped-torus"))
    sp.add_argument("--n", type=int, required=True, dest="max_word_length")
    sp.add_argument("--mode", choices=("orbit", "axes"), default="axes")
    sp.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    sp.add_argument("--separation", type=float, default=DEFAULT_SEPARATION)
    sp.add_argument("--base", default="0,0", help="orbit basepoint as re,im")
    _add_common(sp, "csv")

    sp = subs.add_parser("boundary-map")
    sp.add_argument("--group", required=True,
                    choices=("octagon", "schottky", "cusped-torus"))
    sp.add_argument("--aut", required=True,
                    help='automorphism images like "A=AB,B=B" (lowercase = inverse)')
    sp.add_argument("--n", type=int, required=True, dest="max_word_length")
    sp.add_argument("--check-identity", action="store_true")
    sp.add_argument("--m", type=int, default=DEFAULT_SEARCH_DEPTH,
                    help="inner-correction search depth")
    sp.add_argument("--tol", type=float, default=DEFAULT_IDENTITY_TOL)
    sp.add_argument("--separation", type=float, default=DEFAULT_SEPARATION)
    _add_common(sp, "csv")
    return p


def _config_from_args(args) -> CliConfig:
    return CliConfig(
        subcommand=args.subcommand,
        max_word_length=getattr(args, "max_word_length", None),
        tol=getattr(args, "tol", DEFAULT_IDENTITY_TOL),
        delta=getattr(args, "delta", DEFAULT_DELTA),
        output_format=args.output_format,
        output_path=args.output_path,
        rng_seed=args.rng_seed,
    )


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
            if not text.endswith("\n"):
                f.write("\n")


def _load_description(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            obj = json.load(f)
    except OSError as e:
        raise InvalidInput(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path} is not valid JSON: {e}")
    return description_from_json(obj)


def _parse_floats(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError as e:
        raise InvalidInput(f"bad number list {text!r}: {e}")


def _group_from_args(args) -> GroupRep:
    if args.group == "octagon":
        return octagon_group()
    if args.group == "schottky":
        return schottky_rank2(args.separation)
    return cusped_torus_group()


def _chi_json(value) -> object:
    return "-inf" if value == NEG_INF else int(value)


def run(argv) -> int:
    args = build_parser().parse_args(argv)
    config = _config_from_args(args)
    if args.echo_config:
        _emit(dump_json(config.to_json()), None)
        return 0
    cmd = args.subcommand

    if cmd == "chi":
        d = _load_description(args.description)
        _emit(dump_json({"chi": _chi_json(euler_characteristic(d))}), args.output_path)
    elif cmd == "classify":
        d = _load_description(args.description)
        _emit(dump_json(is_standard(d).to_json()), args.output_path)
    elif cmd == "double":
        d = _load_description(args.description)
        if args.report:
            rep = doubling_report(d)
            payload = {
                "doubled": None if rep.doubled is None else description_to_json(rep.doubled),
                "r": rep.r,
                "chi_two_chi_minus_r": rep.chi_minus_r,
                "chi_two_chi_plus_r": rep.chi_plus_r,
                "chi_direct": rep.chi_direct,
            }
        else:
            payload = description_to_json(double(d))
        _emit(dump_json(payload), args.output_path)
    elif cmd == "thirteen":
        payload = [
            {"name": name, "description": description_to_json(d)}
            for name, d in thirteen_list()
        ]
        _emit(dump_json(payload), args.output_path)
    elif cmd == "pants":
        lengths = _parse_floats(args.lengths)
        if len(lengths) != 3:
            raise InvalidInput("--lengths needs exactly three values")
        _emit(dump_json(build_pants(CuffLengths(*lengths)).to_json()), args.output_path)
    elif cmd == "plan":
        sig = _parse_floats(args.sig)
        if len(sig) != 4 or any(x != int(x) for x in sig):
            raise InvalidInput("--sig needs four integers g,c,b,a")
        s = Signature(*(int(x) for x in sig))
        plan = plan_decomposition(s, _parse_floats(args.lengths))
        payload = plan.to_json()
        payload["summary"] = realize(plan).to_json()
        _emit(dump_json(payload), args.output_path)
    elif cmd == "limit-set":
        rep = _group_from_args(args)
        base_re, base_im = (_parse_floats(args.base) + (0.0, 0.0))[:2]
        mode = SampleMode.ORBIT_PROJECTION if args.mode == "orbit" else SampleMode.AXIS_ENDPOINTS
        sample = limit_sample(rep, DiskPoint(complex(base_re, base_im)),
                              args.max_word_length, mode, delta=args.delta)
        if args.output_format == "csv":
            _emit("\n".join(sample.to_csv_rows()), args.output_path)
        else:
            _emit(dump_json(sample.to_json()), args.output_path)
    elif cmd == "boundary-map":
        rep = _group_from_args(args)
        phi = FreeAutomorphism.from_spec(args.aut, rank=rep.rank)
        sample = induced_boundary_sample(rep, phi, args.max_word_length)
        if args.output_format == "csv":
            sample_text = "\n".join(sample.to_csv_rows())
        else:
            sample_text = dump_json(sample.to_json())
        if args.check_identity:
            result = is_boundary_identity(rep, phi, args.max_word_length,
                                          m=args.m, tol=args.tol)
            verdict = result.to_json()
            verdict["order"] = order_check(sample).orientation
            if args.output_path is not None:
                _emit(sample_text, args.output_path)
            _emit(dump_json(verdict), None)
        else:
            _emit(sample_text, args.output_path)
    else:  # pragma: no cover - argparse enforces the choices
        raise InvalidInput(f"unknown subcommand {cmd!r}")
    return 0


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except NumericFailure as e:
        sys.stderr.write(dump_json({"error": type(e).__name__, "message": str(e)}) + "\n")
        return 3
    except HypsurfError as e:
        sys.stderr.write(dump_json({"error": type(e).__name__, "message": str(e)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
