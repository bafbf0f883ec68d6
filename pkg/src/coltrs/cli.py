"""Command-line front end.

Exit codes: 0 success, 1 negative verdict, 2 usage error, 3 I/O error.
Every run prints a JSON manifest on stderr (and to ``--manifest`` if given).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import certify as cert
from .codec import DecodeError, Codeword, encode, erasure_decode, read_stream, write_stream
from .construct import ConstructionError, corollary_construct, five_step, generator, spec_from_json
from .galois import FieldError, field_from_q
from .gfmatrix import GFMatrix, MatrixError, load_matrix, to_csv, to_json
from .golden import reproduce

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _matrix_text(M: GFMatrix, path: str) -> str:
    return to_json(M) if path.endswith(".json") else to_csv(M)


def _coeff_list(text: str | None):
    if text is None:
        return None
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _load_code(args):
    """(spec or None, generator) from --spec / --matrix."""
    if getattr(args, "spec", None):
        spec = spec_from_json(_read(args.spec))
        return spec, generator(spec)
    if getattr(args, "matrix", None):
        return None, load_matrix(args.matrix)
    raise UsageError("give --spec or --matrix")


def _show(M: GFMatrix) -> str:
    return M.to_text("both" if M.field.m > 1 else "auto")


# -- subcommands ---------------------------------------------------------------

def cmd_construct(args, manifest: dict) -> int:
    if args.spec:
        spec = spec_from_json(_read(args.spec))
    else:
        if args.q is None or args.k is None:
            raise UsageError("construct needs --q and --k (or --spec)")
        F = field_from_q(args.q, _coeff_list(args.modulus))
        if args.variant in ("odd-squares", "even-cubics"):
            shape = args.shape or "two-ext"
            spec = corollary_construct(F, args.k, args.variant, shape, b=args.b, c=args.c)
            if args.n is not None and args.n != spec.n:
                raise UsageError(f"{args.variant} {shape} has length {spec.n}, not {args.n}")
        else:
            if args.n is None:
                raise UsageError("five-step construction needs --n")
            lams = None
            if args.l1 is not None or args.l2 is not None:
                if args.l1 is None or args.l2 is None:
                    raise UsageError("give both --l1 and --l2")
                lams = [args.l1, args.l2]
            spec = five_step(F, args.n, args.k, b=args.b, c=args.c, lambdas=lams,
                             subgroup_order=args.subgroup_order, extended=args.extended,
                             point_order=args.point_order)
    G = generator(spec)
    print(spec.bookkeeping())
    print(_show(G))
    outputs = {}
    if args.out_spec:
        write_atomic(args.out_spec, spec.to_json() + "\n")
        outputs["spec"] = args.out_spec
    if args.out_matrix:
        write_atomic(args.out_matrix, _matrix_text(G, args.out_matrix))
        outputs["matrix"] = args.out_matrix
    manifest.update(outputs=outputs, verdict={"n": spec.n, "k": spec.k, "regime": spec.regime})
    return EXIT_OK


def cmd_certify(args, manifest: dict) -> int:
    spec, G = _load_code(args)
    mode = "criterion" if args.criterion_only else args.mode
    try:
        report = cert.certify(spec if spec is not None else G, mode=mode, jobs=args.jobs)
    except cert.OversizeError as exc:
        raise UsageError(f"{exc}; rerun with --criterion-only") from None
    text = report.to_json()
    print(text)
    if args.out:
        write_atomic(args.out, text + "\n")
        manifest["outputs"] = {"report": args.out}
    manifest["verdict"] = report.to_dict()
    return EXIT_OK if report.is_mds else EXIT_NEGATIVE


def cmd_dual(args, manifest: dict) -> int:
    spec, G = _load_code(args)
    if spec is not None and spec.columns == 2 and not args.oracle:
        H = cert.parity_closed_form(spec)
        how = "closed-form"
    else:
        H = cert.dual_oracle(G)
        how = "nullspace"
    ok = cert.dual_consistent(H, G)
    print(f"# {how} parity check, {H.rows}x{H.cols}, consistent: {ok}")
    print(_show(H))
    if args.out:
        write_atomic(args.out, _matrix_text(H, args.out))
        manifest["outputs"] = {"parity": args.out}
    manifest["verdict"] = {"method": how, "dual_ok": ok}
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_encode(args, manifest: dict) -> int:
    _, G = _load_code(args)
    F, _, k, msgs = read_stream(_read(args.input))
    if F != G.field or k != G.rows:
        raise UsageError("message stream header does not match the code")
    words = [encode(m, G).symbols for m in msgs]
    text = write_stream(words, G.field, G.cols, G.rows)
    _emit(text, args.out, manifest, "codewords")
    manifest["verdict"] = {"encoded": len(words)}
    return EXIT_OK


def cmd_decode(args, manifest: dict) -> int:
    _, G = _load_code(args)
    F, n, k, words = read_stream(_read(args.input))
    if F != G.field or n != G.cols:
        raise UsageError("codeword stream header does not match the code")
    out, failures = [], []
    for i, w in enumerate(words):
        try:
            out.append(erasure_decode(Codeword(F, tuple(w)), G))
        except DecodeError as exc:
            failures.append({"line": i + 1, "error": str(exc)})
            out.append([None] * G.rows)
    text = write_stream(out, F, G.rows, G.rows)
    _emit(text, args.out, manifest, "messages")
    manifest["verdict"] = {"decoded": len(words) - len(failures), "failures": failures}
    for f in failures:
        print(f"line {f['line']}: {f['error']}", file=sys.stderr)
    return EXIT_OK if not failures else EXIT_NEGATIVE


def _emit(text: str, path: str | None, manifest: dict, key: str) -> None:
    if path:
        write_atomic(path, text)
        manifest["outputs"] = {key: path}
    else:
        sys.stdout.write(text)


def cmd_reproduce(args, manifest: dict) -> int:
    if args.example not in (1, 2, 3):
        raise UsageError(f"unknown example {args.example}; choose 1, 2 or 3")
    strict = args.strict_modulus is not None
    modulus = _coeff_list(args.strict_modulus) if args.strict_modulus else None
    result = reproduce(args.example, modulus=modulus, strict=strict, jobs=args.jobs)
    print("\n".join(result.lines))
    manifest["verdict"] = {"example": args.example, "pass": result.ok,
                           "params": result.params, "schur": result.schur_params,
                           "entry_exact": result.entry_exact}
    return EXIT_OK if result.ok else EXIT_NEGATIVE


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    jobs_default = int(os.environ.get("COLTRS_JOBS", "1"))
    parser = argparse.ArgumentParser(prog="coltrs", description="Column twisted Reed-Solomon codes.")
    parser.add_argument("--manifest", help="also write the run manifest here")
    parser.add_argument("--jobs", type=int, default=jobs_default,
                        help="worker processes for minor sweeps (env COLTRS_JOBS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and its generator matrix")
    p.add_argument("--spec", help="rebuild from a spec JSON file")
    p.add_argument("--q", type=int)
    p.add_argument("--modulus", help="comma-separated monic modulus, lowest degree first")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--l1")
    p.add_argument("--l2")
    p.add_argument("--subgroup-order", type=int)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--variant", choices=["five-step", "odd-squares", "even-cubics"], default="five-step")
    p.add_argument("--shape", choices=["one", "one-ext", "two", "two-ext"])
    p.add_argument("--point-order", choices=["ascending", "mu"], default="ascending")
    p.add_argument("--out-spec")
    p.add_argument("--out-matrix", help=".csv or .json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="MDS verdict, distance, Schur square, dual check")
    p.add_argument("--spec")
    p.add_argument("--matrix")
    p.add_argument("--mode", choices=["oracle", "criterion", "both"], default="both")
    p.add_argument("--criterion-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("dual", help="parity-check matrix")
    p.add_argument("--spec")
    p.add_argument("--matrix")
    p.add_argument("--oracle", action="store_true", help="use the nullspace even for two-column specs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dual)

    for name, func in (("encode", cmd_encode), ("decode", cmd_decode)):
        p = sub.add_parser(name, help=f"{name} a symbol stream")
        p.add_argument("--spec")
        p.add_argument("--matrix")
        p.add_argument("--input", required=True)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("reproduce", help="rebuild a reference example and compare")
    p.add_argument("example", type=int)
    p.add_argument("--strict-modulus", nargs="?", const="",
                   help="compare entries; optional modulus coefficients (default: the printed one)")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    manifest = {"command": args.command, "argv": list(argv) if argv is not None else sys.argv[1:],
                "outputs": {}, "verdict": None}
    try:
        status = args.func(args, manifest)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = EXIT_USAGE
    except (ConstructionError, FieldError, cert.CertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = EXIT_USAGE
    except (MatrixError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        status = EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = EXIT_IO
    manifest["exit_status"] = status
    text = json.dumps(manifest, default=str)
    print(text, file=sys.stderr)
    if args.manifest:
        try:
            write_atomic(args.manifest, text + "\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
