"""Command-line interface: ``dbspectral <command> [options]``.

Exit status is 0 on success and 1 on a failed check or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import export
from .errors import DomainError, ResourceError, ShapeError
from .fourier import TransformKind
from .hopf import (
    HOPF_PAIRS,
    FormalWordSum,
    PrimitiveAlphabet,
    antipode,
    antipode_axiom_residual,
    coassociativity_residual,
    concat_words,
    deconcatenate,
    deshuffle,
    primitive_factorize,
    shuffle,
)
from .kmers import CircularString, count_kmers, cycle_residual, decompose
from .operators import COMBINATORIAL, DEFAULT_DENSE_LIMIT, PAPER, OperatorKind, materialize
from .spectral import closed_form_spectrum, dense_spectrum_oracle
from .suite import run_invariant_suite
from .words import FOURIER, NATIVE, Alphabet


def _alphabet(args) -> Alphabet:
    if getattr(args, "alphabet", None):
        alpha = Alphabet(tuple(args.alphabet))
        if args.q is not None and args.q != alpha.q:
            raise DomainError(f"--alphabet has {alpha.q} letters but --q is {args.q}")
        return alpha
    return Alphabet.default(args.q or 2)


def _q(args) -> int:
    return _alphabet(args).q


def read_sequences(path) -> list[str]:
    """One circular string per line; blank lines and ``#`` comments are skipped."""
    fh = sys.stdin if path == "-" else open(path)
    try:
        lines = [line.strip() for line in fh]
    finally:
        if fh is not sys.stdin:
            fh.close()
    return [line for line in lines if line and not line.startswith("#")]


# -- commands ------------------------------------------------------------------


def cmd_basis(args):
    q = _q(args)
    fmt = args.format or "json"
    if fmt == "json":
        text = export.basis_json(q, args.k, args.space)
    elif fmt == "csv":
        text = export.basis_csv(q, args.k, args.space)
    else:
        raise DomainError(f"basis supports json or csv, not {fmt}")
    export.atomic_write(args.out, text)
    return 0


def cmd_spectrum(args):
    q = _q(args)
    if args.method == "dense":
        values = dense_spectrum_oracle(q, args.k, args.which, args.dense_limit)
    else:
        values = closed_form_spectrum(q, args.k, args.which)
    fmt = args.format or "json"
    if fmt == "json":
        text = json.dumps({"q": q, "k": args.k, "which": args.which, "method": args.method, "eigenvalues": values}) + "\n"
    elif fmt == "csv":
        text = export.spectrum_csv(values)
    else:
        raise DomainError(f"spectrum supports json or csv, not {fmt}")
    export.atomic_write(args.out, text)
    return 0


def cmd_decompose(args):
    alpha = _alphabet(args)
    transform = TransformKind(args.transform)
    results = []
    for line in read_sequences(args.sequences):
        s = CircularString.parse(line, alpha)
        counts = count_kmers(s, args.k)
        coeffs, residual = decompose(counts, transform=transform)
        kept = [(ident, c) for ident, c in coeffs if abs(c) > args.tolerance]
        results.append(
            {
                "sequence": line,
                "n": s.n,
                "counts": {alpha.format(_word(i, args.k, alpha.q)): c for i, c in counts.nonzero()},
                "cycle_residual": cycle_residual(counts),
                "decomposition_residual": residual,
                "coefficients": [{"id": ident, "re": c.real, "im": c.imag} for ident, c in kept],
            }
        )
    fmt = args.format or "json"
    if fmt == "json":
        text = json.dumps({"q": alpha.q, "k": args.k, "transform": transform.value, "strings": results}, indent=1) + "\n"
    elif fmt == "csv":
        rows = ["sequence,id,re,im"]
        for r in results:
            rows += [f"{r['sequence']},{c['id']},{c['re']!r},{c['im']!r}" for c in r["coefficients"]]
        text = "\n".join(rows) + "\n"
    else:
        raise DomainError(f"decompose supports json or csv, not {fmt}")
    export.atomic_write(args.out, text)
    bad = [r for r in results if r["cycle_residual"] != 0.0]
    return 1 if bad else 0


def _word(i, k, q):
    from .words import decode_index

    return decode_index(i, k, q)


def cmd_check(args):
    q = _q(args)
    report = run_invariant_suite(q, args.k, args.seed, args.dense_limit)
    if (args.format or "text") == "json":
        text = json.dumps(report.to_dict(), indent=1) + "\n"
    else:
        status = "all checks passed" if report.passed else "some checks FAILED"
        text = "\n".join(report.lines()) + f"\n{status}\n"
    export.atomic_write(args.out, text)
    return report.exit_code


def cmd_materialize(args):
    q = _q(args)
    frame = args.frame
    m = materialize(OperatorKind(args.kind), args.k, q, args.normalization, frame, args.dense_limit)
    fmt = args.format or "mm"
    writers = {"mm": export.matrix_mm, "json": export.matrix_json, "csv": export.matrix_csv}
    if fmt not in writers:
        raise DomainError(f"materialize supports mm, json or csv, not {fmt}")
    export.atomic_write(args.out, writers[fmt](m, tol=args.tolerance))
    return 0


def cmd_graph(args):
    alpha = _alphabet(args)
    fmt = args.format or "dot"
    if fmt == "dot":
        text = export.graph_dot(args.k, alpha, args.dense_limit)
    elif fmt == "csv":
        text = export.graph_csv(args.k, alpha, args.dense_limit)
    else:
        raise DomainError(f"graph supports dot or csv, not {fmt}")
    export.atomic_write(args.out, text)
    return 0


def _hopf_word(text, args):
    if args.alphabet or args.op == "factor" or args.primitive:
        return _alphabet(args).parse(text)
    return tuple(text)


def _render_word(w, args):
    if not w:
        return "1"
    if all(isinstance(c, int) for c in w):
        return _alphabet(args).format(w)
    return "".join(map(str, w))


def _render_sum(z: FormalWordSum, args) -> str:
    parts = []
    for w, c in z:
        parts.append(f"{_coeff(c)}{_render_word(w, args)}")
    return " + ".join(parts) if parts else "0"


def _render_pairs(z, args) -> str:
    parts = []
    for (u, v), c in z:
        parts.append(f"{_coeff(c)}{_render_word(u, args)} (x) {_render_word(v, args)}")
    return " + ".join(parts) if parts else "0"


def _coeff(c) -> str:
    c = complex(c)
    if c == 1:
        return ""
    if c.imag == 0 and c.real == int(c.real):
        return f"{int(c.real)}*"
    return f"({c.real:g}{c.imag:+g}j)*"


def _primitive_alphabet(words, args):
    if not args.primitive:
        return None
    q = _q(args)
    factors = []
    for w in words:
        for f in primitive_factorize(w):
            if f not in factors:
                factors.append(f)
    return PrimitiveAlphabet(q, tuple(factors))


def cmd_hopf(args):
    words = [_hopf_word(w, args) for w in args.words]
    op = args.op
    letters = _primitive_alphabet(words, args)
    if op in ("shuffle", "concat"):
        if len(words) < 2:
            raise DomainError(f"{op} needs at least two words")
        acc = FormalWordSum.word(words[0])
        for w in words[1:]:
            acc = shuffle(acc, w, letters) if op == "shuffle" else concat_words(acc, w)
        text = _render_sum(acc, args)
    elif op in ("deconcat", "deshuffle", "antipode", "factor"):
        if len(words) != 1:
            raise DomainError(f"{op} takes exactly one word")
        w = words[0]
        if op == "deconcat":
            text = _render_pairs(deconcatenate(w, letters), args)
        elif op == "deshuffle":
            text = _render_pairs(deshuffle(w, letters), args)
        elif op == "antipode":
            text = _render_sum(antipode(w, letters), args)
        else:
            text = " | ".join(_render_word(f, args) for f in primitive_factorize(w))
    else:  # axioms
        lines, worst = [], 0.0
        for w in words or [()]:
            for pair in HOPF_PAIRS:
                r = antipode_axiom_residual(pair, w, letters)
                worst = max(worst, r)
                lines.append(f"antipode[{pair[0]},{pair[1]}] {_render_word(w, args)} residual={r:.3e}")
            for cop in ("deconcat", "deshuffle"):
                r = coassociativity_residual(cop, w, letters)
                worst = max(worst, r)
                lines.append(f"coassociativity[{cop}] {_render_word(w, args)} residual={r:.3e}")
        export.atomic_write(args.out, "\n".join(lines) + "\n")
        return 0 if worst <= args.tolerance else 1
    export.atomic_write(args.out, text + "\n")
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=None, help="alphabet size (default 2, or the --alphabet length)")
    common.add_argument("--k", type=int, default=3, help="order (word length)")
    common.add_argument("--alphabet", default=None, help="letter symbols in index order, e.g. ab or acgt")
    common.add_argument("--transform", choices=[t.value for t in TransformKind], default="dft")
    common.add_argument("--normalization", choices=[PAPER, COMBINATORIAL], default=PAPER)
    common.add_argument("--format", choices=["json", "csv", "mm", "dot", "text"], default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerance", type=float, default=1e-12, help="drop/compare threshold for printed values")
    common.add_argument("--dense-limit", type=int, default=DEFAULT_DENSE_LIMIT)
    common.add_argument("--out", default="-", help="output path, - for stdout")

    parser = argparse.ArgumentParser(prog="dbspectral", description="Spectral tools for de Bruijn graphs and k-mer counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="export the cycle/cut basis")
    p.add_argument("--space", choices=export.SPACES, default="all")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("spectrum", parents=[common], help="Laplacian eigenvalues")
    p.add_argument("--which", choices=["vertex", "edge"], default="vertex")
    p.add_argument("--method", choices=["closed", "dense"], default="closed")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("decompose", parents=[common], help="count k-mers of circular strings and expand them in the cycle basis")
    p.add_argument("sequences", help="text file with one string per line, - for stdin")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check", parents=[common], help="run the invariant suite for orders 1..k")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("materialize", parents=[common], help="dense operator matrix on order-k tensors")
    p.add_argument("--kind", choices=[kd.value for kd in OperatorKind], default=OperatorKind.VERTEX_LAPLACIAN.value)
    p.add_argument("--frame", choices=[NATIVE, FOURIER], default=NATIVE)
    p.set_defaults(func=cmd_materialize)

    p = sub.add_parser("graph", parents=[common], help="the order-k de Bruijn graph")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("hopf", parents=[common], help="word algebra operations")
    p.add_argument("op", choices=["shuffle", "concat", "deconcat", "deshuffle", "antipode", "factor", "axioms"])
    p.add_argument("words", nargs="*", help="words; an empty string is the empty word")
    p.add_argument("--primitive", action="store_true", help="treat primitive factors as letters")
    p.set_defaults(func=cmd_hopf)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ShapeError, ResourceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
