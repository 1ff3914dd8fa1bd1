"""File formats: matrix documents, probability vectors and measure reports.

Matrix document (JSON)::

    {"kind": "density", "dim": 2,
     "re": [[0.5, 0.0], [0.0, 0.5]],
     "im": [[0.0, 0.0], [0.0, 0.0]]}

``kind`` is ``"density"`` (default) or ``"hermitian"``. Probability vectors
are either newline-separated reals or a JSON array (or ``{"probs": [...]}``);
the format is chosen from the first non-blank byte.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import numpy as np

from .classical import PROB_TOL
from .quantum import STATE_TOL, validate

MATRIX_KINDS = ("density", "hermitian")
REPORT_FORMATS = ("text", "csv", "structured")


class DocumentError(ValueError):
    """A document could not be turned into a valid object.

    ``category`` is one of ``"parse"``, ``"shape"`` or ``"invariant"``;
    ``field`` names the offending entry and ``defect`` gives the size of an
    invariant violation when there is one.
    """

    def __init__(self, category: str, field: str, message: str, defect: Optional[float] = None):
        self.category = category
        self.field = field
        self.defect = defect
        self.message = message
        super().__init__(self.reason())

    def reason(self) -> str:
        out = f"{self.category}: {self.field}: {self.message}"
        if self.defect is not None:
            out += f" (defect={self.defect:.6g})"
        return out


def fmt_exact(x: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(x), ".16e")


def fmt_human(x: float) -> str:
    """12 significant digits, no trailing zeros."""
    s = format(float(x), ".12g")
    return "0" if s == "-0" else s


def _read_text(source) -> str:
    if isinstance(source, (str, Path)):
        try:
            return Path(source).read_text()
        except OSError as exc:
            raise DocumentError("parse", "path", str(exc)) from None
    return source.read()


# -- matrices ---------------------------------------------------------------


def _real_grid(doc: dict, key: str, dim: int) -> np.ndarray:
    if key not in doc:
        raise DocumentError("parse", key, "missing field")
    try:
        arr = np.array(doc[key], dtype=float)
    except (TypeError, ValueError):
        raise DocumentError("parse", key, "entries must be real numbers") from None
    if arr.shape != (dim, dim):
        raise DocumentError("shape", key, f"expected {dim}x{dim} array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DocumentError("parse", key, "non-finite entry")
    return arr


def parse_matrix(text: str, kind: Optional[str] = None, tol: float = STATE_TOL) -> np.ndarray:
    """Parse and validate a matrix document.

    ``kind`` overrides the document's own tag. Density documents must pass
    full state validation, hermitian documents only the hermiticity check.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("parse", "document", f"invalid JSON: {exc.msg} at char {exc.pos}") from None
    if not isinstance(doc, dict):
        raise DocumentError("parse", "document", "expected a JSON object")
    kind = kind or doc.get("kind", "density")
    if kind not in MATRIX_KINDS:
        raise DocumentError("parse", "kind", f"unknown kind {kind!r}")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise DocumentError("parse", "dim", f"dim must be a positive integer, got {dim!r}")
    re = _real_grid(doc, "re", dim)
    im = _real_grid(doc, "im", dim)
    m = re + 1j * im
    report = validate(m, tol)
    if not report.hermitian:
        raise DocumentError("invariant", "hermiticity", "matrix is not Hermitian",
                            report.hermiticity_defect)
    if kind == "density":
        for field, defect in report.failures():
            raise DocumentError("invariant", field, "not a density matrix", defect)
    return m


def load_matrix(source, kind: Optional[str] = None, tol: float = STATE_TOL) -> np.ndarray:
    return parse_matrix(_read_text(source), kind, tol)


def dump_matrix(m, kind: str = "density") -> str:
    m = np.asarray(m, dtype=complex)
    dim = m.shape[0]

    def grid(a):
        rows = ("[" + ", ".join(fmt_exact(x) for x in row) + "]" for row in a)
        return "[\n    " + ",\n    ".join(rows) + "\n  ]"

    return (
        "{\n"
        f'  "kind": "{kind}",\n'
        f'  "dim": {dim},\n'
        f'  "re": {grid(m.real)},\n'
        f'  "im": {grid(m.imag)}\n'
        "}\n"
    )


def write_matrix(path, m, kind: str = "density") -> None:
    Path(path).write_text(dump_matrix(m, kind))


# -- probability vectors ----------------------------------------------------


def parse_vector(text: str, tol: float = PROB_TOL) -> np.ndarray:
    stripped = text.lstrip()
    if stripped[:1] in ("[", "{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise DocumentError("parse", "document", f"invalid JSON: {exc.msg}") from None
        if isinstance(doc, dict):
            if "probs" not in doc:
                raise DocumentError("parse", "probs", "missing field")
            doc = doc["probs"]
        values = doc
    else:
        values = stripped.split()
    try:
        p = np.array(values, dtype=float)
    except (TypeError, ValueError):
        raise DocumentError("parse", "probs", "entries must be real numbers") from None
    if p.ndim != 1 or p.size == 0:
        raise DocumentError("shape", "probs", "expected a nonempty flat list of reals")
    if not np.all(np.isfinite(p)):
        raise DocumentError("parse", "probs", "non-finite entry")
    if p.min() < 0:
        raise DocumentError("invariant", "nonnegativity", "negative probability", -float(p.min()))
    defect = abs(float(p.sum()) - 1.0)
    if defect > tol:
        raise DocumentError("invariant", "sum", "probabilities do not sum to 1", defect)
    return p


def load_vector(source, tol: float = PROB_TOL) -> np.ndarray:
    return parse_vector(_read_text(source), tol)


def dump_vector(p) -> str:
    return "[" + ", ".join(fmt_exact(x) for x in np.asarray(p, dtype=float)) + "]\n"


# -- reports ----------------------------------------------------------------


@dataclass
class MeasureReport:
    input: Optional[str] = None
    shape: Optional[str] = None
    entropy: Optional[float] = None
    mutual: Optional[float] = None
    conditional: Optional[float] = None
    min_pt_eigenvalue: Optional[float] = None
    slack: Optional[float] = None
    ppt: Optional[bool] = None
    conclusive: Optional[bool] = None

    def __post_init__(self):
        for name in MEASURES:
            value = getattr(self, name)
            if value is not None:
                value = float(value)
                if not math.isfinite(value):
                    raise ValueError(f"report measure {name} is not finite: {value}")
                setattr(self, name, value)

    def items(self):
        """Present ``(name, value)`` pairs in canonical order."""
        for f in fields(self):
            value = getattr(self, f.name)
            if value is not None:
                yield f.name, value


DESCRIPTORS = ("input", "shape")
MEASURES = ("entropy", "mutual", "conditional", "min_pt_eigenvalue", "slack")
VERDICTS = ("ppt", "conclusive")


def _human(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_human(value)
    return str(value)


def write_report(report: MeasureReport, fmt: str = "structured") -> bytes:
    """Serialize ``report`` deterministically.

    ``csv`` has a ``measure,value`` header and one row per present measure or
    verdict; ``text`` is ``name=value`` lines; ``structured`` is JSON with
    reals rounded to 12 significant digits.
    """
    if fmt == "csv":
        lines = ["measure,value"]
        lines += [f"{k},{_human(v)}" for k, v in report.items() if k not in DESCRIPTORS]
    elif fmt == "text":
        lines = [f"{k}={_human(v)}" for k, v in report.items()]
    elif fmt == "structured":
        doc = {}
        for k, v in report.items():
            doc[k] = float(fmt_human(v)) if isinstance(v, float) else v
        lines = [json.dumps(doc)]
    else:
        raise ValueError(f"unknown report format {fmt!r}; choose from {REPORT_FORMATS}")
    return ("\n".join(lines) + "\n").encode()


def read_report(data: bytes) -> MeasureReport:
    """Inverse of ``write_report(..., "structured")``."""
    doc = json.loads(data.decode())
    known = {f.name for f in fields(MeasureReport)}
    unknown = set(doc) - known
    if unknown:
        raise DocumentError("parse", sorted(unknown)[0], "unknown report field")
    return MeasureReport(**doc)
