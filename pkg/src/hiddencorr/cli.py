"""Command-line front end.

Exit codes: 0 success (including PPT and inequality-holds verdicts),
2 usage error, 3 NPT verdict, 4 inequality violated, 5 invalid input.
Every failure prints a single ``error: <category>: ...`` line to stderr.
"""
from __future__ import annotations

import math
import sys

import click
import numpy as np

from . import classical, quantum, thermo
from .errors import DomainError, InvalidStateError
from .indexmap import FactorShape, MarginalSpec, check_dimension, compose, decompose, enumerate_cells
from .io import (
    REPORT_FORMATS,
    DocumentError,
    MeasureReport,
    dump_matrix,
    fmt_human,
    load_matrix,
    load_vector,
    write_report,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NPT = 3
EXIT_VIOLATED = 4
EXIT_INVALID = 5

DEFAULT_TOL = 1e-9
LN2 = math.log(2)


class ShapeType(click.ParamType):
    name = "shape"

    def convert(self, value, param, ctx):
        if isinstance(value, FactorShape):
            return value
        try:
            return FactorShape.parse(value)
        except DomainError as exc:
            self.fail(str(exc), param, ctx)


SHAPE = ShapeType()
PATH = click.Path(exists=True, dir_okay=False)


def fmt_scalar(x: float) -> str:
    s = f"{x:.12f}"
    return s[1:] if s.startswith("-") and float(s) == 0 else s


def _tol(ctx: click.Context) -> float:
    return ctx.find_root().params.get("tolerance") or DEFAULT_TOL


def _check_shape(dim: int, shape: FactorShape) -> None:
    try:
        check_dimension(dim, shape)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from None


def _load_input(ctx, input_path, matrix_path):
    """Return ``("vector" | "matrix", array, path)`` for exactly one input option."""
    if (input_path is None) == (matrix_path is None):
        raise click.UsageError("give exactly one of --input or --matrix")
    if input_path is not None:
        return "vector", load_vector(input_path, _tol(ctx)), input_path
    return "matrix", load_matrix(matrix_path, "density", _tol(ctx)), matrix_path


def _emit_measure(name, value, bits, report, fmt, source, shape=None):
    if bits:
        value = value / LN2
    if report:
        rep = MeasureReport(input=str(source), shape=None if shape is None else str(shape),
                            **{name: value})
        click.echo(write_report(rep, fmt).decode(), nl=False)
    else:
        click.echo(fmt_scalar(value))


def _measure_options(f):
    f = click.option("--input", "input_path", type=PATH, help="Probability vector file.")(f)
    f = click.option("--matrix", "matrix_path", type=PATH, help="Density matrix document.")(f)
    f = click.option("--bits", is_flag=True, help="Report in bits instead of nats.")(f)
    f = click.option("--report", is_flag=True, help="Emit a report record instead of a bare number.")(f)
    f = click.option("--format", "fmt", type=click.Choice(REPORT_FORMATS), default="structured",
                     show_default=True, help="Report format (with --report).")(f)
    return f


def _check_tolerance(ctx, param, value):
    if value is not None and not 1e-12 <= value <= 1e-6:
        raise click.BadParameter("must lie in [1e-12, 1e-6]")
    return value


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--tolerance", type=float, default=None, callback=_check_tolerance,
              help="Validation tolerance override, within [1e-12, 1e-6] (default 1e-9).")
def main(tolerance):
    """Hidden correlations of a single qudit split into artificial subsystems.

    The index y = 1..N of a state is mapped to virtual coordinates
    (x1, ..., xn) via y = x1 + (x2-1) X1 + (x3-1) X1 X2 + ... for a shape
    X1,X2,...; entropies are in nats unless --bits is given.
    """


@main.command("decompose-index")
@click.option("--dim", type=int, required=True, help="System dimension N.")
@click.option("--shape", type=SHAPE, required=True, help="Factors X1,X2[,X3...].")
@click.option("--y", "y", type=int, help="Single index to decompose.")
@click.option("--all", "show_all", is_flag=True, help="Print the full table as CSV.")
def decompose_index(dim, shape, y, show_all):
    """Split y into (x1, ..., xn) with x1 = (y-1) mod X1 + 1, and so on."""
    _check_shape(dim, shape)
    if show_all == (y is not None):
        raise click.UsageError("give exactly one of --y or --all")
    if show_all:
        header = ",".join(["y"] + [f"x{i}" for i in range(1, shape.n + 1)])
        click.echo(header)
        for yy, coords in enumerate_cells(shape):
            click.echo(",".join(str(v) for v in (yy,) + coords))
        return
    try:
        coords = decompose(y, shape)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from None
    assert compose(coords, shape) == y
    click.echo("(" + ",".join(str(v) for v in coords) + ")")


@main.command()
@_measure_options
@click.pass_context
def entropy(ctx, input_path, matrix_path, bits, report, fmt):
    """Shannon entropy -sum p ln p, or von Neumann entropy -Tr rho ln rho."""
    kind, data, source = _load_input(ctx, input_path, matrix_path)
    if kind == "vector":
        value = classical.shannon_entropy(data)
    else:
        value = quantum.von_neumann_entropy(data, _tol(ctx))
    _emit_measure("entropy", value, bits, report, fmt, source)


@main.command()
@click.option("--shape", type=SHAPE, required=True, help="Two factors X1,X2.")
@_measure_options
@click.pass_context
def mutual(ctx, shape, input_path, matrix_path, bits, report, fmt):
    """Mutual information I = S(1) + S(2) - S(1,2) across two artificial subsystems."""
    if shape.n != 2:
        raise click.UsageError("mutual needs a two-factor --shape")
    kind, data, source = _load_input(ctx, input_path, matrix_path)
    _check_shape(data.shape[0], shape)
    if kind == "vector":
        value = classical.mutual_information(data, shape)
    else:
        value = quantum.mutual_quantum_information(data, shape, _tol(ctx))
    _emit_measure("mutual", value, bits, report, fmt, source, shape)


@main.command()
@click.option("--shape", type=SHAPE, required=True, help="Three factors X1,X2,X3.")
@_measure_options
@click.pass_context
def conditional(ctx, shape, input_path, matrix_path, bits, report, fmt):
    """Conditional information S(1,2) + S(2,3) - S(2) - S(1,2,3)."""
    if shape.n != 3:
        raise click.UsageError("conditional needs a three-factor --shape")
    kind, data, source = _load_input(ctx, input_path, matrix_path)
    _check_shape(data.shape[0], shape)
    if kind == "vector":
        value = classical.conditional_information(data, shape)
    else:
        value = quantum.conditional_quantum_information(data, shape, _tol(ctx))
    _emit_measure("conditional", value, bits, report, fmt, source, shape)


def _parse_axes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise click.UsageError(f"cannot parse axis list {text!r}") from None


def _write_out(text: str, output) -> None:
    if output is None:
        click.echo(text, nl=False)
    else:
        with open(output, "w") as fh:
            fh.write(text)


@main.command()
@click.option("--shape", type=SHAPE, required=True, help="Factors X1,X2[,X3...].")
@click.option("--keep", required=True, help="Axes to keep, e.g. 1 or 1,2.")
@click.option("--matrix", "matrix_path", type=PATH, required=True, help="Density matrix document.")
@click.option("--output", type=click.Path(dir_okay=False), help="Write here instead of stdout.")
@click.pass_context
def reduce(ctx, shape, keep, matrix_path, output):
    """Partial trace: rho(1)[x1,x1'] = sum_x2 rho[y(x1,x2), y(x1',x2)], and alike."""
    rho = load_matrix(matrix_path, "density", _tol(ctx))
    _check_shape(rho.shape[0], shape)
    try:
        spec = MarginalSpec(shape, _parse_axes(keep))
    except DomainError as exc:
        raise click.UsageError(str(exc)) from None
    _write_out(dump_matrix(quantum.artificial_reduce(rho, spec, _tol(ctx))), output)


@main.command()
@click.option("--shape", type=SHAPE, required=True, help="Two factors X1,X2.")
@click.option("--matrix", "matrix_path", type=PATH, required=True, help="Density matrix document.")
@click.option("--format", "fmt", type=click.Choice(REPORT_FORMATS), default="text", show_default=True)
@click.pass_context
def ppt(ctx, shape, matrix_path, fmt):
    """Peres-Horodecki test: a negative eigenvalue of the partial transpose means entangled.

    Exit code 0 when the partial transpose is positive, 3 otherwise.
    """
    if shape.n != 2:
        raise click.UsageError("ppt needs a two-factor --shape")
    rho = load_matrix(matrix_path, "density", _tol(ctx))
    _check_shape(rho.shape[0], shape)
    verdict = quantum.is_ppt(rho, shape, _tol(ctx))
    rep = MeasureReport(input=str(matrix_path), shape=str(shape),
                        min_pt_eigenvalue=verdict.min_pt_eigenvalue,
                        ppt=verdict.ppt, conclusive=verdict.conclusive)
    click.echo(write_report(rep, fmt).decode(), nl=False)
    ctx.exit(EXIT_OK if verdict.ppt else EXIT_NPT)


@main.command()
@click.option("--k", "k", type=click.IntRange(min=0), required=True, help="Zero rows/columns to add.")
@click.option("--matrix", "matrix_path", type=PATH, required=True, help="Density matrix document.")
@click.option("--output", type=click.Path(dir_okay=False), help="Write here instead of stdout.")
@click.pass_context
def pad(ctx, k, matrix_path, output):
    """Embed an N-level state into N+k levels by adding zero rows and columns."""
    rho = load_matrix(matrix_path, "density", _tol(ctx))
    _write_out(dump_matrix(quantum.embed_pad(rho, k, _tol(ctx))), output)


@main.command("gibbs-scan")
@click.option("--hamiltonian", type=PATH, required=True, help="Hermitian matrix document.")
@click.option("--beta-min", type=float, required=True)
@click.option("--beta-max", type=float, required=True)
@click.option("--steps", type=click.IntRange(min=1), required=True)
@click.option("--shape", type=SHAPE, help="Two factors X1,X2 to add the thermal mutual information.")
@click.pass_context
def gibbs_scan(ctx, hamiltonian, beta_min, beta_max, steps, shape):
    """Scan rho(beta) = exp(-beta H) / Tr exp(-beta H) over a beta grid.

    Columns: E = Tr(H rho), S = -Tr rho ln rho, F = E - S/beta (blank at
    beta = 0), ln Z, and with --shape I_q = S(rho1) + S(rho2) - S(rho).
    """
    h = load_matrix(hamiltonian, "hermitian", _tol(ctx))
    if shape is not None:
        if shape.n != 2:
            raise click.UsageError("gibbs-scan needs a two-factor --shape")
        _check_shape(h.shape[0], shape)
    cols = ["beta", "energy", "entropy", "free_energy", "log_partition"]
    if shape is not None:
        cols.append("mutual_information")
    click.echo(",".join(cols))
    for beta in np.linspace(beta_min, beta_max, steps):
        r = thermo.thermo_report(h, float(beta), shape)
        row = [r.beta, r.energy, r.entropy, r.free_energy, r.log_partition]
        if shape is not None:
            row.append(r.mutual_information)
        click.echo(",".join("" if v is None else fmt_human(v) for v in row))


@main.command("check-inequality")
@click.option("--matrix", "matrix_path", type=PATH, required=True, help="Density matrix document.")
@click.option("--hamiltonian", type=PATH, required=True, help="Hermitian matrix document.")
@click.pass_context
def check_inequality(ctx, matrix_path, hamiltonian):
    """Slack of Tr(H rho) + S(rho) <= ln Tr exp(H), i.e. ln Z at T = -1.

    Exit code 0 when the slack is >= -tolerance, 4 otherwise.
    """
    tol = _tol(ctx)
    rho = load_matrix(matrix_path, "density", tol)
    h = load_matrix(hamiltonian, "hermitian", tol)
    if rho.shape != h.shape:
        raise click.UsageError(f"state dimension {rho.shape[0]} != observable dimension {h.shape[0]}")
    slack = thermo.check_energy_entropy_inequality(rho, h, tol)
    click.echo(fmt_scalar(slack))
    ctx.exit(EXIT_OK if slack >= -tol else EXIT_VIOLATED)


def _fail(category: str, message: str, code: int) -> int:
    click.echo(f"error: {category}: {' '.join(str(message).split())}", err=True)
    return code


def run(argv=None) -> int:
    """Run the CLI on ``argv`` and return the exit code."""
    try:
        rv = main.main(args=argv, prog_name="hiddencorr", standalone_mode=False)
    except click.UsageError as exc:
        return _fail("usage", exc.format_message(), EXIT_USAGE)
    except DocumentError as exc:
        return _fail(exc.category, f"{exc.field}: {exc.message}"
                     + ("" if exc.defect is None else f" (defect={exc.defect:.6g})"), EXIT_INVALID)
    except InvalidStateError as exc:
        return _fail("invariant", str(exc), EXIT_INVALID)
    except DomainError as exc:
        return _fail("usage", str(exc), EXIT_USAGE)
    except click.Abort:
        return _fail("usage", "aborted", EXIT_USAGE)
    return rv if isinstance(rv, int) else EXIT_OK


def console_main() -> None:
    sys.exit(run())
