"""Command-line front end.

Exit codes: 0 success (including an OEIS match when one was asked
for); 1 unexpected error; 2 usage error; 3 engine/oracle mismatch;
4 OEIS mismatch; 5 OEIS check unverifiable (offline with no cache,
or no overlapping terms).  A requested check never passes silently.
"""

from __future__ import annotations

import json
import re
import sys
from dataclasses import replace
from pathlib import Path

import click

from . import __version__
from .dp import kernel2, rectangle, trapezoid3, weight_series
from .oeis import MATCH, MISMATCH, oeis_check
from .sequences import (
    GEN_DER,
    GLR3,
    TRAPEZOID,
    TRAPEZOID_SPEC,
    TRIANGLE,
    JobSpec,
    OracleMismatchError,
    SequenceRecord,
    apply_total,
    run_job,
)
from .tiles import ShiftSpec, dump_tiles, enumerate_tiles

EXIT_ORACLE_MISMATCH = 3
EXIT_OEIS_MISMATCH = 4
EXIT_OEIS_UNVERIFIABLE = 5


def _parse_shifts(value: str | None) -> tuple[int, ...]:
    if value is None:
        return ()
    body = value.strip().strip("{}")
    if not body:
        return ()
    try:
        return tuple(sorted({int(p) for p in re.split(r"[,\s]+", body) if p}))
    except ValueError:
        raise click.BadParameter(f"expected integers like '0,1,-2', got {value!r}")


class ShiftList(click.ParamType):
    name = "shifts"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        return _parse_shifts(value)


SHIFTS = ShiftList()


def _spec_for(record: SequenceRecord) -> ShiftSpec | None:
    if record.family == GEN_DER:
        return ShiftSpec.two_rows(record.params["shifts"])
    if record.family == GLR3:
        return ShiftSpec.three_rows(
            record.params["s12"], record.params["s13"], record.params["s23"]
        )
    if record.family == TRAPEZOID:
        return TRAPEZOID_SPEC
    return None


def _bfile_comments(record: SequenceRecord) -> tuple[str, ...]:
    params = " ".join(f"{k}={v}" for k, v in sorted(record.params.items()))
    head = f"family={record.family}"
    if params:
        head += f" {params}"
    return (
        head,
        f"n={record.offset}..{record.last_n} reduced={record.reduced} "
        f"provenance={record.provenance} engine=latinrect-{record.engine_version}",
    )


def _render(record: SequenceRecord, fmt: str) -> str:
    if fmt == "plain":
        return "\n".join(f"{n} {t}" for n, t in record.indexed_terms()) + "\n"
    if fmt == "bfile":
        from .oeis import format_bfile

        return format_bfile(record, _bfile_comments(record))
    return json.dumps(record.to_json_dict(), indent=2, sort_keys=True) + "\n"


def _emit(payload: str, output: Path | None) -> None:
    if output is None:
        click.echo(payload, nl=False)
    else:
        output.write_text(payload)
        click.echo(f"wrote {output}", err=True)


def _dumps(record: SequenceRecord, dump_tiles_flag: bool, dump_series: int | None) -> None:
    spec = _spec_for(record)
    if spec is None:
        if dump_tiles_flag or dump_series is not None:
            raise click.UsageError("this family has no tile alphabet to dump")
        return
    if dump_tiles_flag:
        click.echo(dump_tiles(enumerate_tiles(spec)), err=True)
    if dump_series is not None:
        board = trapezoid3() if record.family == TRAPEZOID else rectangle(spec.rows)
        n_hi = max(dump_series, board.min_n)
        table = weight_series(enumerate_tiles(spec), board, n_hi)
        for n, poly in table:
            if n > dump_series:
                break
            click.echo(f"P_{n} = {poly.canonical_str()}", err=True)


def _oeis(record: SequenceRecord, oeis_id: str | None, offline: bool) -> int:
    if oeis_id is None:
        return 0
    report = oeis_check(record, oeis_id, offline=offline)
    click.echo(report.summary(), err=True)
    if report.status == MATCH:
        return 0
    if report.status == MISMATCH:
        return EXIT_OEIS_MISMATCH
    return EXIT_OEIS_UNVERIFIABLE


def _run(job: JobSpec, fmt, output, oeis_id, offline, dump_tiles_flag, dump_series):
    try:
        reduced = run_job(replace(job, total=False))
    except OracleMismatchError as exc:
        click.echo(f"oracle mismatch: {exc}", err=True)
        sys.exit(EXIT_ORACLE_MISMATCH)
    record = apply_total(reduced) if job.total else reduced
    _dumps(record, dump_tiles_flag, dump_series)
    _emit(_render(record, fmt), output)
    # catalog terms describe reduced counts; compare before the n! blowup
    code = _oeis(reduced, oeis_id, offline)
    if code:
        sys.exit(code)


def _common(fn):
    for deco in reversed(
        (
            click.option(
                "--format",
                "-f",
                "fmt",
                type=click.Choice(("plain", "bfile", "json")),
                default="plain",
                show_default=True,
                help="plain 'n a(n)' lines, a commented b-file, or the full record",
            ),
            click.option(
                "--output",
                "-o",
                type=click.Path(dir_okay=False, path_type=Path),
                default=None,
                help="write the formatted terms to a file instead of stdout",
            ),
            click.option(
                "--oeis",
                "oeis_id",
                default=None,
                metavar="ID",
                help="compare reduced terms against this OEIS entry's b-file",
            ),
            click.option("--offline", is_flag=True, help="use only cached b-files"),
            click.option(
                "--total",
                is_flag=True,
                help="multiply a(n) by n!: counts without the fixed identity row",
            ),
        )
    ):
        fn = deco(fn)
    return fn


def _engine_extras(fn):
    for deco in reversed(
        (
            click.option(
                "--oracle-depth",
                type=click.IntRange(0),
                default=None,
                help="brute-force cross-check up to this n (0 disables)",
            ),
            click.option("--dump-tiles", "dump_tiles_flag", is_flag=True,
                         help="print the tile alphabet to stderr"),
            click.option("--dump-series", type=click.IntRange(0), default=None,
                         metavar="N", help="print weight polynomials up to P_N to stderr"),
        )
    ):
        fn = deco(fn)
    return fn


@click.group()
@click.version_option(__version__, prog_name="latinrect")
def main() -> None:
    """Exact counts of generalized derangements, 3-row Latin
    rectangles, Latin trapezoids and Latin triangles."""


@main.command("gen-der")
@click.option("--shifts", type=SHIFTS, required=True,
              help="forbidden values of i - pi(i), e.g. '0,1,-2'")
@click.option("-N", "n_terms", type=click.IntRange(1), required=True,
              help="number of terms (n = 1..N)")
@_common
@_engine_extras
def gen_der_cmd(shifts, n_terms, fmt, output, oeis_id, offline, total,
                oracle_depth, dump_tiles_flag, dump_series):
    """Permutations of n with i - pi(i) outside the shift set."""
    job = JobSpec(GEN_DER, {"shifts": list(shifts)}, n_terms, oracle_depth, total)
    _run(job, fmt, output, oeis_id, offline, dump_tiles_flag, dump_series)


@main.command("glr3")
@click.option("--s12", type=SHIFTS, default="", help="row 0 vs row 1 shifts")
@click.option("--s13", type=SHIFTS, default="", help="row 0 vs row 2 shifts")
@click.option("--s23", type=SHIFTS, default="", help="row 1 vs row 2 shifts")
@click.option("-N", "n_terms", type=click.IntRange(1), required=True,
              help="number of terms (n = 1..N)")
@_common
@_engine_extras
def glr3_cmd(s12, s13, s23, n_terms, fmt, output, oeis_id, offline, total,
             oracle_depth, dump_tiles_flag, dump_series):
    """Reduced 3 x n boards avoiding three shift sets ({0},{0},{0} is
    the classical Latin rectangle case)."""
    job = JobSpec(
        GLR3,
        {"s12": list(s12), "s13": list(s13), "s23": list(s23)},
        n_terms,
        oracle_depth,
        total,
    )
    _run(job, fmt, output, oeis_id, offline, dump_tiles_flag, dump_series)


@main.command("trapezoid")
@click.option("-N", "n_terms", type=click.IntRange(1), required=True,
              help="number of terms (n = 3..N+2)")
@_common
@_engine_extras
def trapezoid_cmd(n_terms, fmt, output, oeis_id, offline, total,
                  oracle_depth, dump_tiles_flag, dump_series):
    """Latin trapezoids: rows of lengths n, n-1, n-2 with the diagonal
    constraint families; terms start at n=3."""
    job = JobSpec(TRAPEZOID, {}, n_terms, oracle_depth, total)
    _run(job, fmt, output, oeis_id, offline, dump_tiles_flag, dump_series)


@main.command("triangle")
@click.option("--n", "n_max", type=click.IntRange(3), required=True,
              help="largest side length (terms for n = 3..n)")
@_common
def triangle_cmd(n_max, fmt, output, oeis_id, offline, total):
    """Latin triangles (rows n, n-1, ..., 1), brute-force only."""
    job = JobSpec(TRIANGLE, {}, n_max - 2, None, total)
    _run(job, fmt, output, oeis_id, offline, False, None)


@main.command("kernel")
@click.option("--shifts", type=SHIFTS, required=True,
              help="forbidden values of i - pi(i), e.g. '0,1,-2'")
@click.option("--format", "-f", "fmt", type=click.Choice(("plain", "json")),
              default="plain", show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path),
              default=None)
@click.option("--dump-series", type=click.IntRange(0), default=None, metavar="N",
              help="also print weight polynomials up to P_N to stderr")
def kernel_cmd(shifts, fmt, output, dump_series):
    """Closed-form rational kernel of a 2-row spec: the generating
    function whose X^n coefficient is the weight polynomial P_n.
    Wide shift sets are expensive; widths up to 4 or 5 are quick."""
    kern = kernel2(shifts)
    if dump_series is not None:
        for n, poly in enumerate(kern.series(dump_series)):
            click.echo(f"P_{n} = {poly.canonical_str()}", err=True)
    if fmt == "plain":
        _emit(kern.canonical_str() + "\n", output)
    else:
        payload = {
            "shifts": list(shifts),
            "kernel": kern.canonical_str(),
            "normalized": kern.normalized,
            "numerator_degree": kern.order()[0],
            "denominator_degree": kern.order()[1],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", output)


if __name__ == "__main__":
    main()
