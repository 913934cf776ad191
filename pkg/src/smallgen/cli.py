"""Command-line interface: field-spec files, JSON reports, CSV scans, result cache.

Exit codes: 0 success (including budget-limited partial results, which carry
"exhaustive": false), 2 usage error or unknown subcommand, 3 input
validation failure.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import hashlib
import json
import logging
import math
import os
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .abelian import (
    AbelianSpec,
    character_group,
    defining_polynomial,
    field_conductor,
    splits_completely_abelian,
)
from .exactalg.arith import is_prime, is_squarefree_int, primality
from .exactalg.factor import is_irreducible
from .exactalg.polynomial import IntPolynomial
from .heights import height_algebraic, height_rational
from .northcott import EnumerationBudget, delta
from .numfield.discriminant import field_discriminant, splits_completely
from .numfield.field import NumberField
from .numfield.trager import monic_model
from .pipelines import (
    exponent_table,
    family_polynomials,
    silverman_lower_bound,
    verify_family,
    verify_thm12_steps,
)
from .primes import APSpec, check_pi_psi_sandwich, linnik_exponent_scan
from .report import dumps, enclosure_json, height_json, to_jsonable

log = logging.getLogger("smallgen")

ALGORITHM_VERSION = 2
EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 2, 3
SPEC_TYPES = ("polynomial", "quadratic", "abelian", "radical-family")


class SpecError(ValueError):
    """Validation failure with a stable machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


# --- field specs -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    type: str
    payload: tuple

    def normalized(self) -> dict:
        if self.type == "polynomial":
            return {"type": "polynomial", "coefficients": list(self.payload)}
        if self.type == "quadratic":
            return {"type": "quadratic", "m": self.payload[0]}
        if self.type == "abelian":
            return {"type": "abelian", "modulus": self.payload[0], "subgroup": list(self.payload[1])}
        m, n, p, q = self.payload
        return {"type": "radical-family", "m": m, "n": n, "p": p, "q": q}

    def serialize(self) -> str:
        return json.dumps(self.normalized(), sort_keys=True)

    @property
    def hash(self) -> str:
        return hashlib.sha256(self.serialize().encode()).hexdigest()

    def polynomial(self) -> IntPolynomial:
        """A defining polynomial of the field (not necessarily monic)."""
        if self.type == "polynomial":
            return IntPolynomial.from_high(*self.payload)
        if self.type == "quadratic":
            return IntPolynomial([-self.payload[0], 0, 1])
        if self.type == "abelian":
            return defining_polynomial(self.abelian())
        from .northcott import best_integer_combination
        f_F, f_alpha, _ = family_polynomials(*self.payload)
        return best_integer_combination(f_alpha, f_F).minpoly

    def number_field(self) -> NumberField:
        return NumberField(monic_model(self.polynomial().primitive()), check=False)

    def abelian(self) -> AbelianSpec:
        if self.type != "abelian":
            raise SpecError("wrong-type", f"expected an abelian spec, got {self.type}")
        return AbelianSpec.build(self.payload[0], self.payload[1])


def _int_field(doc: dict, key: str) -> int:
    if key not in doc:
        raise SpecError("missing-field", f"field {key!r} is required")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError("invalid-field", f"field {key!r} must be an integer")
    return v


def parse_field_spec(text: str) -> FieldSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError("malformed-json", f"malformed JSON: {e}") from None
    if not isinstance(doc, dict):
        raise SpecError("malformed-json", "spec must be a JSON object")
    kind = doc.get("type")
    if kind not in SPEC_TYPES:
        raise SpecError("unknown-type", f"unknown spec type {kind!r}")
    if kind == "polynomial":
        cs = doc.get("coefficients")
        if not isinstance(cs, list) or not cs or not all(isinstance(c, int) and not isinstance(c, bool) for c in cs):
            raise SpecError("invalid-field", "coefficients must be a non-empty list of integers")
        f = IntPolynomial.from_high(*cs).primitive()
        if f.degree < 1:
            raise SpecError("invalid-polynomial", "polynomial must have degree >= 1")
        if not is_irreducible(f):
            raise SpecError("reducible-polynomial", f"{f} is reducible over Q")
        return FieldSpec("polynomial", tuple(f.coeffs[::-1]))
    if kind == "quadratic":
        m = _int_field(doc, "m")
        if m in (0, 1) or not is_squarefree_int(abs(m)):
            raise SpecError("not-squarefree", f"m = {m} is not a squarefree integer other than 0, 1")
        return FieldSpec("quadratic", (m,))
    if kind == "abelian":
        f = _int_field(doc, "modulus")
        gens = doc.get("subgroup", [])
        if f < 1 or not isinstance(gens, list) or not all(isinstance(g, int) for g in gens):
            raise SpecError("invalid-field", "modulus must be positive and subgroup a list of integers")
        bad = [g for g in gens if math.gcd(g, f) != 1]
        if bad:
            raise SpecError("not-coprime", f"subgroup generators {bad} are not coprime to {f}")
        H = AbelianSpec.build(f, gens).subgroup
        return FieldSpec("abelian", (f, tuple(sorted(H))))
    m, n, p, q = (_int_field(doc, k) for k in ("m", "n", "p", "q"))
    for name, v in (("p", p), ("q", q)):
        if not is_prime(v):
            raise SpecError("not-prime", f"{name} = {v} is not prime")
    if m < 1 or n < 2 or not (m < p < q < 2 * p):
        raise SpecError("family-precondition", f"need m >= 1, n >= 2 and m < p < q < 2p; got {(m, n, p, q)}")
    return FieldSpec("radical-family", (m, n, p, q))


# --- cache ----------------------------------------------------------------------

class ResultCache:
    """Append-only JSON-lines store keyed by (spec hash, operation, version)."""

    def __init__(self, directory: Path | None):
        self.path = None
        if directory is None:
            return
        try:
            directory.mkdir(parents=True, exist_ok=True)
            probe = directory / ".write-test"
            probe.write_text("")
            probe.unlink()
            self.path = directory / "cache.jsonl"
        except OSError as e:
            log.warning("cache directory %s unusable (%s); continuing without cache", directory, e)

    def load(self, key: str, op: str, version: str) -> str | None:
        if self.path is None or not self.path.exists():
            return None
        hit = None
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                try:
                    entry = json.loads(line)
                    if (entry["hash"], entry["op"], entry["version"]) == (key, op, version):
                        hit = entry["report"]
                except (json.JSONDecodeError, KeyError, TypeError):
                    log.warning("skipping corrupted cache line %d in %s", lineno, self.path)
        return hit

    def store(self, key: str, op: str, version: str, report_text: str, flags: dict):
        if self.path is None:
            return
        entry = {"hash": key, "op": op, "version": version, "report": report_text,
                 "timestamp": _now(), "flags": flags}
        line = (json.dumps(entry, sort_keys=True) + "\n").encode()
        try:
            fd = os.open(self.path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
            try:
                os.write(fd, line)      # one write per entry keeps lines whole
            finally:
                os.close(fd)
        except OSError as e:
            log.warning("could not append to cache %s: %s", self.path, e)


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _version() -> str:
    return f"{__version__}+alg{ALGORITHM_VERSION}"


# --- commands -------------------------------------------------------------------

def _digits(args) -> int:
    return max(6, int(args.precision_bits * math.log10(2)))


def _budget(args) -> EnumerationBudget:
    return EnumerationBudget(max_candidates=args.budget_candidates, max_seconds=args.budget_seconds)


def _load_spec(args, required: bool = True) -> FieldSpec | None:
    if getattr(args, "spec", None) is None:
        if required:
            raise SpecError("missing-spec", "--spec FILE is required")
        return None
    try:
        text = Path(args.spec).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError("unreadable-spec", f"cannot read spec file: {e}") from None
    return parse_field_spec(text)


def _parse_coeffs(text: str) -> list[int]:
    try:
        return [int(c) for c in text.replace(" ", "").split(",") if c]
    except ValueError:
        raise SpecError("invalid-field", f"bad coefficient list {text!r}") from None


def cmd_height(args):
    digits = _digits(args)
    if args.rational is not None:
        try:
            r = Fraction(args.rational)
        except (ValueError, ZeroDivisionError):
            raise SpecError("invalid-field", f"bad rational {args.rational!r}") from None
        return {"rational": str(r)}, height_json(height_rational(r), digits), {}
    if args.poly is not None:
        f = IntPolynomial.from_high(*_parse_coeffs(args.poly)).primitive()
        if f.degree < 1 or not is_irreducible(f):
            raise SpecError("reducible-polynomial", f"{f} must be irreducible of degree >= 1")
        inp = {"polynomial": list(f.coeffs[::-1])}
    else:
        spec = _load_spec(args)
        f = spec.polynomial()
        if spec.type == "radical-family":
            f = family_polynomials(*spec.payload)[1]
        inp = spec.normalized()
    width = Fraction(1, 1 << max(args.precision_bits + 16, 80))
    h = height_algebraic(f, width)
    return inp, height_json(h, digits), {}


def cmd_delta(args):
    spec = _load_spec(args)
    K = spec.number_field()
    cert = delta(K, _budget(args))
    digits = _digits(args)
    result = {
        "field": to_jsonable(K),
        "generator": to_jsonable(cert.generator),
        "delta": height_json(cert.height, digits),
        "exhaustive": cert.exhaustive,
        "candidates_scanned": cert.candidates_scanned,
        "bound_B": str(cert.bound_B),
        "mahler_box": str(cert.mahler_box),
    }
    if K.degree >= 2:
        disc = field_discriminant(K)
        result["abs_discriminant"] = abs(disc.value)
        result["discriminant_status"] = disc.status
        if disc.exact:
            sil = silverman_lower_bound(K.degree, abs(disc.value))
            result["silverman_lower_bound"] = enclosure_json(sil, digits)
            result["silverman_ok"] = not (sil > cert.height.height())
    return spec.normalized(), result, {"wall_time": round(cert.wall_time, 6)}


def cmd_split_prime(args):
    spec = _load_spec(args)
    K = spec.number_field()
    result = {}
    if args.prime is not None:
        p = args.prime
        if not is_prime(p):
            raise SpecError("not-prime", f"{p} is not prime")
        result["prime"] = p
        result["splits_completely"] = splits_completely(K, p)
        if spec.type == "abelian":
            result["sharp_criterion"] = splits_completely_abelian(spec.abelian(), p)
    else:
        x = Fraction(args.above)
        p = math.floor(x) + 1
        while not (is_prime(p) and splits_completely(K, p)):
            p += 1
        result.update({"above": str(x), "least_split_prime": p, "probable": primality(p)[1]})
    return {**spec.normalized(), "prime": args.prime, "above": args.above}, result, {}


def cmd_abelian_disc(args):
    if args.spec is not None:
        spec = _load_spec(args)
        a = spec.abelian()
        inp = spec.normalized()
    else:
        if args.modulus is None:
            raise SpecError("missing-spec", "give --spec or --modulus")
        a = AbelianSpec.build(args.modulus, _parse_coeffs(args.subgroup or ""))
        inp = {"type": "abelian", "modulus": a.modulus, "subgroup": sorted(a.subgroup)}
    table = character_group(a)
    rep = field_conductor(a)
    g = defining_polynomial(rep.minimized)
    result = {
        "degree": a.degree,
        "characters": [{"exponents": list(e), "conductor": c}
                       for e, c in zip(table.characters, table.conductors)],
        "unit_group_generators": list(table.generators),
        "unit_group_orders": list(table.orders),
        "conductor_discriminant": rep.abs_discriminant,
        "conductor": rep.conductor,
        "minimized": {"modulus": rep.minimized.modulus, "subgroup": sorted(rep.minimized.subgroup)},
        "conductor_bound_ok": rep.bound_ok,
        "defining_polynomial": to_jsonable(g),
    }
    if g.degree >= 2:
        disc = field_discriminant(NumberField(g, check=False))
        result["field_discriminant"] = {"value": disc.value, "status": disc.status}
        result["agree"] = disc.exact and abs(disc.value) == rep.abs_discriminant
    return inp, result, {}


def cmd_thm12(args):
    spec = _load_spec(args)
    r = verify_thm12_steps(spec.abelian(), with_delta=args.with_delta, budget=_budget(args))
    digits = _digits(args)
    result = {
        "label": r.label,
        "degree": r.degree,
        "conductor": r.conductor,
        "abs_discriminant": r.abs_discriminant,
        "conductor_bound_ok": r.conductor_bound_ok,
        "interval": [enclosure_json(e, digits) for e in r.interval],
        "split_prime_congruence": r.split_prime_congruence,
        "split_prime_sharp": r.split_prime_sharp,
        "bound_value": enclosure_json(r.bound_value, digits),
    }
    if r.generator_search is not None:
        s = r.generator_search
        result["generator_below_split_prime"] = {
            "generator": to_jsonable(s.generator),
            "height": height_json(s.height, digits) if s.height else None,
            "exhaustive": s.exhaustive,
        }
    if r.delta_certificate is not None:
        c = r.delta_certificate
        result["delta"] = {"generator": to_jsonable(c.generator), "height": height_json(c.height, digits),
                           "exhaustive": c.exhaustive}
        result["delta_below_split_bound"] = r.delta_below_split_bound
        result["delta_below_theorem_bound"] = r.delta_below_theorem_bound
    return spec.normalized(), result, {}


def cmd_family(args):
    if args.spec is not None:
        spec = _load_spec(args)
        if spec.type != "radical-family":
            raise SpecError("wrong-type", "family needs a radical-family spec")
        m, n, p, q = spec.payload
    else:
        if None in (args.m, args.n, args.p, args.q):
            raise SpecError("missing-spec", "give --spec or all of --m --n --p --q")
        doc = json.dumps({"type": "radical-family", "m": args.m, "n": args.n, "p": args.p, "q": args.q})
        spec = parse_field_spec(doc)
        m, n, p, q = spec.payload
    r = verify_family(m, n, p, q, _budget(args))
    digits = _digits(args)
    result = to_jsonable(r, digits)
    return spec.normalized(), result, {}


def cmd_exponents(args):
    t = exponent_table(args.d)
    return {"d": args.d}, to_jsonable(t), {}


def cmd_sandwich(args):
    x = Fraction(args.x)
    residues = [args.a] if args.a is not None else [a for a in range(args.q) if math.gcd(a, args.q) == 1]
    rows = []
    digits = _digits(args)
    for a in residues:
        try:
            spec = APSpec(args.q, a)
        except ValueError as e:
            raise SpecError("not-coprime", str(e)) from None
        r = check_pi_psi_sandwich(x, spec)
        rows.append({"a": spec.a, "pi_x": r.pi_x, "pi_sqrt_x": r.pi_sqrt_x,
                     "psi": enclosure_json(r.psi, digits),
                     "lower_bound": enclosure_json(r.lower_bound, digits),
                     "upper_bound": enclosure_json(r.upper_bound, digits),
                     "lower_ok": r.lower_ok, "upper_ok": r.upper_ok, "passed": r.passed,
                     "pi_sqrt_x_all": r.pi_sqrt_x_all,
                     "upper_bound_all": enclosure_json(r.upper_bound_all, digits),
                     "upper_ok_all": r.upper_ok_all})
    return {"x": str(x), "q": args.q, "a": args.a}, {"rows": rows, "all_passed": all(r["passed"] for r in rows)}, {}


COMMANDS = {
    "height": cmd_height,
    "delta": cmd_delta,
    "split-prime": cmd_split_prime,
    "abelian-disc": cmd_abelian_disc,
    "thm12": cmd_thm12,
    "family": cmd_family,
    "exponents": cmd_exponents,
    "sandwich": cmd_sandwich,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--budget-seconds", type=float, default=600.0)
    common.add_argument("--budget-candidates", type=int, default=20_000_000)
    common.add_argument("--precision-bits", type=int, default=64,
                        help="precision of reported enclosures (default 64)")
    common.add_argument("--cache-dir", type=Path,
                        default=Path(os.environ.get("SMALLGEN_CACHE", Path.home() / ".cache" / "smallgen")))
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="smallgen", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("height", parents=[common], help="Weil height of an algebraic number")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--spec")
    g.add_argument("--poly", help="integer coefficients, leading first, e.g. 7,0,-5")
    g.add_argument("--rational")

    p = sub.add_parser("delta", parents=[common], help="smallest generator height delta(K)")
    p.add_argument("--spec", required=True)

    p = sub.add_parser("split-prime", parents=[common], help="complete splitting of primes")
    p.add_argument("--spec", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--prime", type=int)
    g.add_argument("--above", help="find the least completely split prime above this bound")

    p = sub.add_parser("abelian-disc", parents=[common], help="characters, conductor and discriminant")
    p.add_argument("--spec")
    p.add_argument("--modulus", type=int)
    p.add_argument("--subgroup", help="comma-separated generators")

    p = sub.add_parser("thm12", parents=[common], help="splitting-prime generator pipeline")
    p.add_argument("--spec", required=True)
    p.add_argument("--with-delta", action="store_true")

    p = sub.add_parser("family", parents=[common], help="radical family sandwich bounds")
    p.add_argument("--spec")
    for k in ("m", "n", "p", "q"):
        p.add_argument(f"--{k}", type=int)

    p = sub.add_parser("linnik-scan", parents=[common], help="least primes 1 mod q (CSV)")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--qmin", type=int, default=3)

    p = sub.add_parser("exponents", parents=[common], help="exponent table for degree d")
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("sandwich", parents=[common], help="pi/psi inequalities in a progression")
    p.add_argument("--x", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int)
    return parser


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _flags(result: dict) -> dict:
    return {k: result[k] for k in ("exhaustive", "probable") if k in result}


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    random.seed(args.seed)
    np.random.seed(args.seed % (1 << 32))
    started = time.perf_counter()
    try:
        if args.command == "linnik-scan":
            if args.qmax < 3:
                raise SpecError("invalid-field", "--qmax must be >= 3")
            scan = linnik_exponent_scan(args.qmax, args.qmin)
            _emit(scan.to_csv(), args.out)
            return EXIT_OK
        if args.precision_bits < 16:
            raise SpecError("invalid-field", "--precision-bits must be >= 16")
        cache = ResultCache(None if args.no_cache else args.cache_dir)
        key_doc = {"argv": _cache_argv(args)}
        key = hashlib.sha256(json.dumps(key_doc, sort_keys=True).encode()).hexdigest()
        cached = cache.load(key, args.command, _version())
        if cached is not None:
            _emit(cached, args.out)
            return EXIT_OK
        inp, result, timings = COMMANDS[args.command](args)
    except SpecError as e:
        sys.stderr.write(json.dumps({"error": e.code, "message": str(e)}) + "\n")
        return EXIT_INVALID
    timings = {**timings, "total_seconds": round(time.perf_counter() - started, 6)}
    report = {
        "command": args.command,
        "input": inp,
        "result": result,
        "flags": _flags(result),
        "seed": args.seed,
        "version": _version(),
        "timings": timings,
        "timestamp": _now(),
    }
    text = dumps(report)
    cache.store(key, args.command, _version(), text, report["flags"])
    _emit(text, args.out)
    return EXIT_OK


def _cache_argv(args) -> dict:
    skip = {"out", "cache_dir", "no_cache", "verbose", "command"}
    d = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items() if k not in skip}
    spec_path = d.pop("spec", None)
    if spec_path is not None:
        try:
            d["spec"] = parse_field_spec(Path(spec_path).read_text(encoding="utf-8")).hash
        except (OSError, SpecError):
            d["spec"] = None
    return d


def main(argv: list[str] | None = None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
