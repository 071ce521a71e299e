"""Command-line front-end and the exact-rational serialization format.

Module files are JSON documents with a fixed key order (dim, X, Y, kappa,
lambda, mu, meta); every scalar is a rational string in lowest terms ("p/q",
or "n" for integers), never a float.  Reports are JSON too, deterministic up
to a timing field that ``--no-timing`` suppresses, which keeps golden files
byte-stable.

Exit codes: 0 success/pass, 1 mathematical property failed, 2 malformed
input or out-of-domain module, 3 indeterminate verdict.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from fractions import Fraction

from .bimodule import BIModule, NotAModule, TwistSign, check_relations, \
    even_module, example_even, example_odd, odd_module, twist
from .classify import IdentificationFailed, IndeterminateIsomorphism, \
    NonSplitSpectrum, NotRationalFamily, are_isomorphic, criterion_even, \
    criterion_odd, identify, invariants, oracle_irreducible
from .exactlinalg import Matrix, Poly, is_squarefree, min_poly, rational_roots

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INDETERMINATE = 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# --- exact serialization --------------------------------------------------------

def _rat_to_str(q: Fraction) -> str:
    return str(q)


def _str_to_rat(s) -> Fraction:
    if not isinstance(s, str):
        raise CliError(EXIT_INPUT, f"rational must be a string, got {s!r}")
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_INPUT, f"bad rational {s!r}") from exc
    if str(q) != s:
        raise CliError(EXIT_INPUT, f"rational {s!r} is not in canonical lowest terms")
    return q


def _matrix_to_lists(m: Matrix) -> list[list[str]]:
    return [[_rat_to_str(e) for e in row] for row in m.rows]


def _matrix_from_lists(rows, what: str) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise CliError(EXIT_INPUT, f"{what} must be a nonempty list of rows")
    return Matrix([[_str_to_rat(e) for e in row] for row in rows])


def serialize_module(mod: BIModule, meta: dict | None = None) -> str:
    doc = {"dim": mod.dim,
           "X": _matrix_to_lists(mod.X),
           "Y": _matrix_to_lists(mod.Y),
           "kappa": _rat_to_str(mod.kappa)}
    if mod.lam is not None:
        doc["lambda"] = _rat_to_str(mod.lam)
    if mod.mu is not None:
        doc["mu"] = _rat_to_str(mod.mu)
    doc["meta"] = dict(meta) if meta else {}
    return json.dumps(doc, indent=2) + "\n"


def parse_module(text: str) -> tuple[BIModule, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INPUT, f"module file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CliError(EXIT_INPUT, "module file must be a JSON object")
    allowed = {"dim", "X", "Y", "kappa", "lambda", "mu", "meta"}
    unknown = set(doc) - allowed
    if unknown:
        raise CliError(EXIT_INPUT, f"unknown module-file keys: {sorted(unknown)}")
    for key in ("dim", "X", "Y", "kappa"):
        if key not in doc:
            raise CliError(EXIT_INPUT, f"module file is missing {key!r}")
    x = _matrix_from_lists(doc["X"], "X")
    y = _matrix_from_lists(doc["Y"], "Y")
    kappa = _str_to_rat(doc["kappa"])
    lam = _str_to_rat(doc["lambda"]) if "lambda" in doc else None
    mu = _str_to_rat(doc["mu"]) if "mu" in doc else None
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise CliError(EXIT_INPUT, "meta must be an object")
    try:
        mod = BIModule(x, y, kappa, lam, mu)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    if doc["dim"] != mod.dim:
        raise CliError(EXIT_INPUT, f"declared dim {doc['dim']} != matrix size {mod.dim}")
    return mod, meta


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc}") from exc


def _write_output(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(report: dict, args, started: float, code: int) -> int:
    if not args.no_timing:
        report["timing_s"] = f"{time.monotonic() - started:.3f}"
    report["exit"] = code
    _write_output(json.dumps(report, indent=2) + "\n", args)
    return code


def _note(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


# --- parameter plumbing -----------------------------------------------------------

def _parse_rat_arg(s: str, what: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_INPUT, f"bad rational for {what}: {s!r}") from exc


def _parse_twist_arg(s: str) -> TwistSign:
    parts = s.split(",")
    if len(parts) != 2 or any(p not in ("1", "-1") for p in parts):
        raise CliError(EXIT_INPUT, f"twist must be a sign pair like 1,-1 with each sign 1 or -1, got {s!r}")
    return TwistSign(int(parts[0]), int(parts[1]))


def _build_family_module(family: str, d: int, a, b, c) -> BIModule:
    try:
        if family == "even":
            return even_module(d, a, b, c)
        return odd_module(d, a, b, c)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc


def _family_meta(family: str, d: int, a, b, c, sign: TwistSign) -> dict:
    return {"family": family, "d": str(d), "a": str(Fraction(a)), "b": str(Fraction(b)),
            "c": str(Fraction(c)), "twist": f"{sign.eps},{sign.eps_prime}"}


def _criterion_from_meta(meta: dict):
    """(holds, coordinates) from a provenance map, or None if absent/foreign."""
    try:
        family = meta["family"]
        d = int(meta["d"])
        a, b, c = (Fraction(meta[k]) for k in ("a", "b", "c"))
    except (KeyError, ValueError, ZeroDivisionError, TypeError):
        return None
    if family == "even":
        return criterion_even(d, a, b, c), (family, d, a, b, c)
    if family == "odd":
        return criterion_odd(d, a, b, c), (family, d, a, b, c)
    return None


# --- report fragments --------------------------------------------------------------

def _relations_fragment(mod: BIModule) -> tuple[list[dict], bool]:
    rep = check_relations(mod)
    rows = [{"relation": ch.name, "passed": ch.passed,
             "scalar": None if ch.scalar is None else _rat_to_str(ch.scalar),
             "expected": None if ch.expected is None else _rat_to_str(ch.expected)}
            for ch in rep.checks]
    return rows, rep.ok


def _verdict_fragment(verdict) -> dict:
    out = {"status": verdict.status, "method": verdict.method, "detail": verdict.detail}
    out["witness"] = (None if verdict.witness is None
                      else [[_rat_to_str(e) for e in v] for v in verdict.witness])
    return out


def _invariants_fragment(mod: BIModule) -> dict:
    inv = invariants(mod)
    return {"trace_X": _rat_to_str(inv.trace_x), "trace_Y": _rat_to_str(inv.trace_y),
            "kappa": _rat_to_str(inv.kappa), "lambda": _rat_to_str(inv.lam),
            "mu": _rat_to_str(inv.mu)}


def _coords_fragment(coords) -> dict:
    return {"family": coords.family, "d": coords.d,
            "twist": None if coords.twist is None
            else f"{coords.twist.eps},{coords.twist.eps_prime}",
            "params": [_rat_to_str(p) for p in coords.params]}


def _factored_string(p: Poly) -> str | None:
    roots = rational_roots(p)
    if not roots.split:
        return None
    pieces = []
    for r in sorted(set(roots.roots), reverse=True):
        mult = roots.roots.count(r)
        if r == 0:
            base = "x"
        else:
            base = f"(x - {r})" if r > 0 else f"(x + {-r})"
        pieces.append(base + (f"^{mult}" if mult > 1 else ""))
    return "".join(pieces)


# --- commands -----------------------------------------------------------------------

def cmd_build(args) -> int:
    a = _parse_rat_arg(args.a, "--a")
    b = _parse_rat_arg(args.b, "--b")
    c = _parse_rat_arg(args.c, "--c")
    sign = _parse_twist_arg(args.twist)
    mod = _build_family_module(args.family, args.d, a, b, c)
    if not sign.is_identity:
        mod = twist(mod, sign)
    _note(args, f"kappa={mod.kappa} lambda={mod.lam} mu={mod.mu}")
    _write_output(serialize_module(mod, _family_meta(args.family, args.d, a, b, c, sign)), args)
    return EXIT_OK


def cmd_fixture(args) -> int:
    if args.name == "exampleE":
        mod = example_even()
        meta = _family_meta("even", 3, 1, 0, 1, TwistSign(1, 1))
    else:
        mod = example_odd()
        meta = _family_meta("odd", 4, Fraction(3, 2), Fraction(1, 2),
                            Fraction(-1, 2), TwistSign(1, 1))
    _write_output(serialize_module(mod, meta), args)
    return EXIT_OK


def cmd_check(args) -> int:
    started = time.monotonic()
    mod, _ = parse_module(_read_input(args.path))
    rows, ok = _relations_fragment(mod)
    report = {"command": "check", "input": args.path, "relations": rows, "passed": ok}
    return _emit_report(report, args, started, EXIT_OK if ok else EXIT_FAIL)


def cmd_classify(args) -> int:
    started = time.monotonic()
    mod, meta = parse_module(_read_input(args.path))
    report: dict = {"command": "classify", "input": args.path}
    rows, ok = _relations_fragment(mod)
    if not ok:
        report["relations"] = rows
        report["error"] = "defining relations fail; not a module"
        return _emit_report(report, args, started, EXIT_FAIL)
    verdict = oracle_irreducible(mod)
    report["oracle"] = _verdict_fragment(verdict)
    crit = _criterion_from_meta(meta)
    if crit is not None:
        holds, _ = crit
        report["criterion"] = {"status": "irreducible" if holds else "reducible",
                               "method": "criterion"}
        if verdict.status != "indeterminate":
            report["methods_agree"] = holds == verdict.is_irreducible
    report["invariants"] = _invariants_fragment(mod)
    code = EXIT_INDETERMINATE if verdict.status == "indeterminate" else EXIT_OK
    if verdict.is_irreducible:
        try:
            report["class"] = _coords_fragment(identify(mod, assume_irreducible=True))
        except NotRationalFamily as exc:
            report["class"] = None
            report["identify_error"] = str(exc)
            code = EXIT_INPUT
        except IdentificationFailed as exc:
            report["class"] = None
            report["identify_error"] = str(exc)
            code = EXIT_FAIL
    return _emit_report(report, args, started, code)


def cmd_identify(args) -> int:
    started = time.monotonic()
    mod, _ = parse_module(_read_input(args.path))
    report: dict = {"command": "identify", "input": args.path}
    rows, ok = _relations_fragment(mod)
    if not ok:
        report["relations"] = rows
        report["error"] = "defining relations fail; not a module"
        return _emit_report(report, args, started, EXIT_FAIL)
    try:
        coords = identify(mod)
    except IdentificationFailed as exc:
        report["error"] = str(exc)
        return _emit_report(report, args, started, EXIT_FAIL)
    report["class"] = _coords_fragment(coords)
    report["invariants"] = _invariants_fragment(mod)
    return _emit_report(report, args, started, EXIT_OK)


def cmd_iso(args) -> int:
    started = time.monotonic()
    mod1, _ = parse_module(_read_input(args.path1))
    mod2, _ = parse_module(_read_input(args.path2))
    report: dict = {"command": "iso", "inputs": [args.path1, args.path2]}
    try:
        ok, t = are_isomorphic(mod1, mod2)
    except IndeterminateIsomorphism as exc:
        report["isomorphic"] = "indeterminate"
        report["detail"] = str(exc)
        return _emit_report(report, args, started, EXIT_INDETERMINATE)
    report["isomorphic"] = ok
    report["intertwiner"] = _matrix_to_lists(t) if ok else None
    return _emit_report(report, args, started, EXIT_OK if ok else EXIT_FAIL)


def cmd_minpoly(args) -> int:
    started = time.monotonic()
    mod, _ = parse_module(_read_input(args.path))
    gens = ("X", "Y", "Z") if args.gen == "all" else (args.gen,)
    results = []
    for name in gens:
        p = min_poly(mod.generator(name))
        roots = rational_roots(p)
        squarefree = is_squarefree(p)
        results.append({
            "generator": name,
            "min_poly_coeffs": [_rat_to_str(cf) for cf in p.coeffs],
            "factored": _factored_string(p),
            "squarefree": squarefree,
            "split": roots.split,
            "diagonalizable": squarefree and roots.split,
        })
    report = {"command": "minpoly", "input": args.path, "gen": args.gen,
              "results": results}
    return _emit_report(report, args, started, EXIT_OK)


def cmd_scan(args) -> int:
    started = time.monotonic()
    values = [_parse_rat_arg(tok, "--values") for tok in args.values.split(",") if tok]
    if not values:
        raise CliError(EXIT_INPUT, "--values must list at least one rational")
    crit_fn = criterion_even if args.family == "even" else criterion_odd
    build_fn = even_module if args.family == "even" else odd_module
    disagreements = []
    indeterminate = []
    count = 0
    for a, b, c in itertools.product(values, repeat=3):
        count += 1
        point = [_rat_to_str(a), _rat_to_str(b), _rat_to_str(c)]
        expected = crit_fn(args.d, a, b, c)
        verdict = oracle_irreducible(build_fn(args.d, a, b, c))
        if verdict.status == "indeterminate":
            indeterminate.append(point)
        elif verdict.is_irreducible != expected:
            disagreements.append(point)
    report = {"command": "scan", "family": args.family, "d": args.d,
              "grid_points": count,
              "disagreements": disagreements, "indeterminate": indeterminate}
    if disagreements:
        code = EXIT_FAIL
    elif indeterminate:
        code = EXIT_INDETERMINATE
    else:
        code = EXIT_OK
    return _emit_report(report, args, started, code)


# --- argument parsing -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--quiet", action="store_true", help="suppress stderr notes")
    common.add_argument("--no-timing", action="store_true",
                        help="omit the timing field for byte-stable output")

    parser = argparse.ArgumentParser(
        prog="bimod",
        description="Construct, verify and classify exact rational modules "
                    "of the universal Bannai-Ito algebra.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("build", parents=[common],
                       help="construct a family module and write its module file")
    p.add_argument("--family", choices=("even", "odd"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", required=True, help="rational, e.g. 1 or -3/2 (use --a=-3/2)")
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--twist", default="1,1", help="sign pair like 1,-1 (default 1,1)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("fixture", parents=[common],
                       help="emit one of the two pinned reference modules")
    p.add_argument("name", choices=("exampleE", "exampleO"))
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("check", parents=[common],
                       help="verify the defining relations of a module file")
    p.add_argument("path", nargs="?", default="-")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common],
                       help="irreducibility verdict, invariants and class coordinates")
    p.add_argument("path", nargs="?", default="-")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("identify", parents=[common],
                       help="recover family coordinates of an irreducible module")
    p.add_argument("path", nargs="?", default="-")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("iso", parents=[common],
                       help="decide isomorphism of two module files")
    p.add_argument("path1")
    p.add_argument("path2")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("minpoly", parents=[common],
                       help="minimal polynomial of a generator, factored when split")
    p.add_argument("path", nargs="?", default="-")
    p.add_argument("--gen", choices=("X", "Y", "Z", "all"), default="all")
    p.set_defaults(func=cmd_minpoly)

    p = sub.add_parser("scan", parents=[common],
                       help="compare criterion and oracle over a parameter cube")
    p.add_argument("--family", choices=("even", "odd"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--values", required=True,
                   help="comma-separated rationals for each of a, b, c (use --values=-1,0,1)")
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NonSplitSpectrum, NotRationalFamily) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotAModule, IdentificationFailed) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BrokenPipeError:
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
