"""Command-line entry point: ``ifzcz <command> ...``.

Exit codes: 0 success, 2 validation failure, 3 I/O or parse error,
4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .constructions import (
    GeneralParams,
    NonPerfectSeedError,
    S1Params,
    S2Params,
    alphabet_size,
    build_general,
    build_s1,
    build_s2,
    perfect_frank_modulatable,
    perfect_zadoff_chu,
    predict_zak_s1,
    predict_zak_s2,
)
from .correlation import check_bound, pair_residuals
from .equivalence import IncompatibleSetsError, SearchBudgetExceeded, are_equivalent
from .filterbank import _default_lattice, complexity_table, run_filterbank
from .seqcore import ComplexSequence, SequenceSet, TolerancePolicy, energy
from .zak import fzt, sparsity

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_BUDGET = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_VALIDATION):
        super().__init__(message)
        self.code = code


# -- argument helpers ----------------------------------------------------------

def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _perm_spec(text: str, M: int) -> tuple[int, ...]:
    return tuple(range(M)) if text == "id" else tuple(_int_list(text))


def parse_seed(spec: str, M: int) -> ComplexSequence:
    """``zc:q``, ``frank:a[,sigma...]`` or ``file:path``."""
    kind, _, arg = spec.partition(":")
    if kind == "zc":
        return perfect_zadoff_chu(M, int(arg) if arg else 1)
    if kind == "frank":
        m = int(round(M ** 0.5))
        if m * m != M:
            raise CliError(f"frank seeds need a square period, got M={M}")
        parts = arg.split(",") if arg else ["0"]
        a = int(parts[0])
        sigma = None
        if len(parts) > 1:
            sigma = _perm_spec(",".join(parts[1:]), m)
        return perfect_frank_modulatable(m, a, sigma=sigma)
    if kind == "file":
        seq = fileio.read_sequence(arg)
        if seq.period != M:
            raise CliError(f"seed in {arg} has period {seq.period}, expected {M}")
        return seq
    raise CliError(f"unknown seed spec {spec!r}; use zc:q, frank:a,sigma or file:path")


def _seeds(specs: list[str] | None, K: int, M: int) -> tuple[ComplexSequence, ...]:
    specs = specs or ["zc:1"]
    if len(specs) == 1:
        specs = specs * K
    if len(specs) != K:
        raise CliError(f"give one seed or K={K} seeds, got {len(specs)}")
    return tuple(parse_seed(s, M) for s in specs)


def _tol(args) -> TolerancePolicy:
    return TolerancePolicy(args.tol_abs, args.tol_rel)


def _complex_list(values) -> list[dict]:
    return [{"re": float(z.real), "im": float(z.imag)} for z in np.asarray(values).ravel()]


def _spectrum_json(Z) -> dict:
    if Z.is_exact:
        ints, den = Z.data.integer_scales()
        return {"rows": Z.rows, "cols": Z.cols, "modulus": Z.data.modulus,
                "exponents": [int(e) for e in Z.data.exponents],
                "scales": [int(s) for s in ints], "denominator": int(den)}
    return {"rows": Z.rows, "cols": Z.cols, "values": _complex_list(Z.matrix)}


def _emit(args, payload: dict | str) -> None:
    text = payload if isinstance(payload, str) else fileio.dumps(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> SequenceSet:
    return fileio.read_set(path)


# -- commands ------------------------------------------------------------------

def cmd_generate(args) -> int:
    K, M = args.k, args.m
    if K is None or M is None:
        raise CliError("--k and --m are required")
    validate = not args.no_validate
    if args.kind == "s1":
        p = S1Params(K, M, _seeds(args.seed, K, M), args.offsets)
        seqs = build_s1(p, validate=validate)
    elif args.kind == "general":
        if args.e is None or args.t is None:
            raise CliError("general needs --e and --t")
        seqs = build_general(GeneralParams(K, M, args.e, args.t, _seeds(args.seed, K, M)),
                             validate=validate)
    else:
        perms = [tuple(range(M))] * K
        for spec in args.perm or []:
            a, _, body = spec.partition(":")
            try:
                perms[int(a)] = _perm_spec(body, M)
            except (ValueError, IndexError):
                raise CliError(f"bad --perm {spec!r}; expected a:id or a:p0,p1,...")
        seqs = build_s2(S2Params(K, M, perms, None, args.offsets))
    _emit(args, fileio.set_to_json(seqs))
    return EXIT_OK


def cmd_verify(args) -> int:
    seqs = _read(args.set)
    tol = _tol(args)
    report = check_bound(seqs, tol)
    ok = report.optimal and report.interference_free
    payload = {
        "command": "verify",
        "report": report.as_dict(),
        "residuals": pair_residuals(seqs, report.zcz_length),
        "summary": (f"N={report.period} K={report.size} Z={report.zcz_length} "
                    f"{'IF' if report.interference_free else 'not IF'}, "
                    f"{'optimal' if report.optimal else 'not optimal'}"),
    }
    try:
        payload["alphabet_size"] = alphabet_size(seqs)
    except ValueError:
        payload["alphabet_size"] = None
    _emit(args, payload)
    if args.expect_optimal and not ok:
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_spectra(args) -> int:
    seqs = _read(args.set)
    L = args.l if args.l is not None else _default_lattice(seqs)
    if L < 1 or seqs.period % L:
        raise CliError(f"L={L} does not divide N={seqs.period}")
    tol = _tol(args)
    spectra = [fzt(u, L) for u in seqs]
    items = []
    for a, Z in enumerate(spectra):
        sp = sparsity(Z, tol)
        items.append({"index": a, "spectrum": _spectrum_json(Z),
                      "sparsity": {"nonzero": len(sp), "row_counts": sp.row_counts,
                                   "col_counts": sp.col_counts,
                                   "positions": [list(p) for p in sp.positions]}})
    payload = {"command": "spectra", "L": L, "M": seqs.period // L, "spectra": items}
    prov = seqs.provenance
    predicted = None
    if isinstance(prov, S1Params) and L == prov.K:
        predicted = predict_zak_s1(prov)
    elif isinstance(prov, S2Params) and L == prov.K * prov.M:
        predicted = predict_zak_s2(prov)
    if predicted is not None:
        payload["structure"] = {"predicted_sparse_form": all(
            np.allclose(P.matrix, Z.matrix, atol=tol.threshold(1.0)) if not (P.is_exact and Z.is_exact)
            else P == Z for P, Z in zip(predicted, spectra))}
    payload["summary"] = f"{len(spectra)} Zak spectra on a {L}x{seqs.period // L} lattice"
    _emit(args, payload)
    return EXIT_OK


def cmd_filterbank(args) -> int:
    seqs = _read(args.set)
    y = fileio.read_sequence(args.input)
    if y.period != seqs.period:
        raise CliError(f"input period {y.period} differs from set period {seqs.period}")
    res = run_filterbank(y, seqs, args.impl, args.l)
    payload = {
        "command": "filterbank",
        "implementation": res.implementation,
        "counter": res.counter.as_dict(),
        "outputs": [_complex_list(row) for row in res.matrix],
    }
    if args.compare:
        ref = res.matrix
        devs = {}
        for impl in ("direct", "zak", "fast_s1", "fast_s2"):
            try:
                other = run_filterbank(y, seqs, impl, args.l if impl == "zak" else None)
            except ValueError:
                continue
            devs[impl] = {"max_deviation": float(np.abs(other.matrix - ref).max()),
                          "counter": other.counter.as_dict()}
        payload["compare"] = devs
        payload["input_energy"] = float(energy(y))
    payload["summary"] = f"{seqs.size} outputs via {res.implementation}, {res.counter.total} ops"
    _emit(args, payload)
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        table = complexity_table(args.n, args.k)
    except ValueError as exc:
        raise CliError(str(exc))
    if args.format == "csv":
        _emit(args, table.to_csv())
    else:
        _emit(args, {"command": "table", **table.as_dict()})
    return EXIT_OK


def cmd_equiv(args) -> int:
    A, B = _read(args.a), _read(args.b)
    try:
        T = are_equivalent(A, B, budget=args.budget, atol=args.tol_abs)
    except IncompatibleSetsError as exc:
        raise CliError(f"shape mismatch: {exc}")
    except SearchBudgetExceeded as exc:
        _emit(args, {"command": "equiv", "witness": None, "summary": str(exc)})
        return EXIT_BUDGET
    payload = {"command": "equiv", "witness": None if T is None else T.as_dict(),
               "summary": "equivalent" if T is not None else "no equivalence transform exists"}
    _emit(args, payload)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-abs", type=float, default=1e-9, help="absolute zero tolerance")
    common.add_argument("--tol-rel", type=float, default=1e-12, help="relative zero tolerance")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    common.add_argument("--out", help="write output here instead of stdout")
    common.set_defaults(format="json")

    parser = argparse.ArgumentParser(prog="ifzcz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="build a sequence set")
    g.add_argument("kind", choices=["s1", "general", "s2"])
    g.add_argument("--k", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--seed", action="append", help="zc:q | frank:a[,sigma] | file:path (repeatable)")
    g.add_argument("--e", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--perm", action="append", help="a:id or a:p0,p1,... (s2 only)")
    g.add_argument("--offsets", "--a-offset", type=_int_list, help="per-sequence frequency offsets")
    g.add_argument("--no-validate", action="store_true", help="skip the seed perfectness check")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", parents=[common], help="correlation properties and bound check")
    v.add_argument("set")
    v.add_argument("--expect-optimal", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("spectra", parents=[common], help="Zak spectra and sparsity")
    s.add_argument("set")
    s.add_argument("--l", type=int)
    s.set_defaults(func=cmd_spectra)

    f = sub.add_parser("filterbank", parents=[common], help="run a matched-filter bank")
    f.add_argument("set")
    f.add_argument("input")
    f.add_argument("--impl", default="direct", choices=["direct", "zak", "fast", "fast_s1", "fast_s2"])
    f.add_argument("--l", type=int)
    f.add_argument("--compare", action="store_true")
    f.set_defaults(func=cmd_filterbank)

    t = sub.add_parser("table", parents=[common], help="complexity model table")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--k", type=_int_list, default=[])
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("equiv", parents=[common], help="search for an equivalence transform")
    e.add_argument("a")
    e.add_argument("b")
    e.add_argument("--budget", type=int, default=10**6)
    e.set_defaults(func=cmd_equiv)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format == "csv" and args.command != "table":
        print("error: --csv is only supported by 'table'", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except fileio.SetFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NonPerfectSeedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
