"""Serialization of bases, spectra, matrices and graphs.

Floats are written with ``repr``, the shortest string that parses back to
the same double, so JSON and CSV round-trips are bit-exact.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
import tempfile

import numpy as np

from .errors import DomainError
from .operators import DenseMatrix, debruijn_edges
from .spectral import cut_basis, cycle_basis, full_basis
from .words import FOURIER, Alphabet, Tensor

COEFF_TOL = 1e-12
SPACES = ("cycle", "cut", "all")


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` via a temporary file and rename; ``-`` or None means stdout."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def basis_elements(q: int, k: int, space: str = "all"):
    if space == "cycle":
        return cycle_basis(q, k)
    if space == "cut":
        return cut_basis(q, k)
    if space == "all":
        return full_basis(q, k)
    raise DomainError(f"space must be one of {SPACES}, got {space!r}")


def _coeff_list(t: Tensor, tol=COEFF_TOL):
    out = []
    for i in np.flatnonzero(np.abs(t.coeffs) > tol):
        c = t.coeffs[i]
        re = float(c.real) if abs(c.real) > tol else 0.0
        im = float(c.imag) if abs(c.imag) > tol else 0.0
        out.append({"index": int(i), "re": re, "im": im})
    return out


def basis_to_dict(q: int, k: int, space: str = "all") -> dict:
    elements = []
    for e in basis_elements(q, k, space):
        elements.append(
            {
                "kind": e.kind,
                "i": e.i,
                "j": e.j,
                "h": e.h,
                "x_word": list(e.x_word),
                "eigenvalue": float(e.eigenvalue),
                "coeffs": _coeff_list(e.vector),
            }
        )
    return {"q": q, "k": k, "frame": FOURIER, "elements": elements}


def basis_json(q: int, k: int, space: str = "all") -> str:
    return json.dumps(basis_to_dict(q, k, space), indent=1) + "\n"


def basis_csv(q: int, k: int, space: str = "all") -> str:
    """One row per element; ``coeffs`` is ``index:re:im`` joined by ``;``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "i", "j", "h", "x_word", "eigenvalue", "coeffs"])
    for el in basis_to_dict(q, k, space)["elements"]:
        coeffs = ";".join(f"{c['index']}:{c['re']!r}:{c['im']!r}" for c in el["coeffs"])
        word = ".".join(map(str, el["x_word"]))
        writer.writerow([el["kind"], el["i"], el["j"], el["h"], word, repr(el["eigenvalue"]), coeffs])
    return buf.getvalue()


def vectors_from_dict(data: dict) -> list:
    """Rebuild the Fourier-frame tensors of an exported basis."""
    q, k = int(data["q"]), int(data["k"])
    out = []
    for el in data["elements"]:
        arr = np.zeros(q**k, dtype=np.complex128)
        for c in el["coeffs"]:
            arr[c["index"]] = complex(c["re"], c["im"])
        out.append(Tensor(arr, q, FOURIER))
    return out


def verify_basis_dict(data: dict) -> dict:
    """Re-verify an exported basis: incidence residual of cycle elements,
    Gram off-diagonal and unit-norm error."""
    from .operators import apply_incidence

    vectors = vectors_from_dict(data)
    kinds = [el["kind"] for el in data["elements"]]
    incidence = max((apply_incidence(v).norm() for v, kd in zip(vectors, kinds) if kd == "cycle"), default=0.0)
    mat = np.column_stack([v.coeffs for v in vectors]) if vectors else np.zeros((1, 0))
    gram = mat.conj().T @ mat
    off = gram - np.diag(np.diag(gram))
    return {
        "incidence_residual": float(incidence),
        "gram_offdiagonal": float(np.max(np.abs(off), initial=0.0)),
        "norm_error": float(np.max(np.abs(np.diag(gram) - 1), initial=0.0)),
    }


def spectrum_csv(values) -> str:
    return "".join(f"{v!r}\n" for v in values)


def matrix_mm(m: DenseMatrix, tol: float = 0.0) -> str:
    """Coordinate text: ``rows cols nnz`` then ``row col re im`` (0-based)."""
    rows, cols = np.nonzero(np.abs(m.entries) > tol)
    lines = [f"{m.rows} {m.cols} {len(rows)}"]
    for r, c in zip(rows, cols):
        v = m.entries[r, c]
        lines.append(f"{r} {c} {float(v.real)!r} {float(v.imag)!r}")
    return "\n".join(lines) + "\n"


def matrix_json(m: DenseMatrix, tol: float = 0.0) -> str:
    rows, cols = np.nonzero(np.abs(m.entries) > tol)
    entries = [
        {"row": int(r), "col": int(c), "re": float(m.entries[r, c].real), "im": float(m.entries[r, c].imag)}
        for r, c in zip(rows, cols)
    ]
    data = {
        "kind": m.kind.value,
        "order": m.order,
        "q": m.q,
        "normalization": m.normalization,
        "frame": m.frame,
        "rows": m.rows,
        "cols": m.cols,
        "entries": entries,
    }
    return json.dumps(data, indent=1) + "\n"


def matrix_csv(m: DenseMatrix, tol: float = 0.0) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["row", "col", "re", "im"])
    rows, cols = np.nonzero(np.abs(m.entries) > tol)
    for r, c in zip(rows, cols):
        v = m.entries[r, c]
        writer.writerow([r, c, repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def graph_dot(k: int, alphabet: Alphabet, dense_limit: int | None = None) -> str:
    """de Bruijn graph of order ``k``: one directed edge per k-mer."""
    kwargs = {} if dense_limit is None else {"dense_limit": dense_limit}
    edges = debruijn_edges(k, alphabet.q, **kwargs)
    lines = [f"digraph debruijn_k{k} {{"]
    for src, dst, w in edges:
        lines.append(f'  "{alphabet.format(src)}" -> "{alphabet.format(dst)}" [label="{alphabet.format(w)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_csv(k: int, alphabet: Alphabet, dense_limit: int | None = None) -> str:
    kwargs = {} if dense_limit is None else {"dense_limit": dense_limit}
    lines = ["source,target,edge"]
    for src, dst, w in debruijn_edges(k, alphabet.q, **kwargs):
        lines.append(f"{alphabet.format(src)},{alphabet.format(dst)},{alphabet.format(w)}")
    return "\n".join(lines) + "\n"
