"""Command-line entry point: ``heisenzhu <subcommand>``.

Exit codes are stable: 0 for success or a proven claim, 2 when a claim stays
unknown within the cutoff, 3 for a failed check or a parse error.
"""

from __future__ import annotations

import hashlib
import json
import random
import sys
from pathlib import Path

import click

from . import zhu
from .certificate import Certificate
from .fock import FockVector, ParseError, format_element, parse_element
from .fockmod import format_module, nonmembership_witness, parse_module
from .gpoly import GPolyParseError, format_gpoly, parse_gpoly
from .realize import realize, reduce_level2
from .vertexop import circ_n, star_n

EXIT_OK, EXIT_UNKNOWN, EXIT_FAILED = 0, 2, 3
DEFAULT_SEED = 20240607


# expressions may start with "-", so unknown option-like tokens stay positional
_EXPR_ARGS = {"ignore_unknown_options": True}


class InputError(click.ClickException):
    """Parse failure reported with exit code 3."""

    exit_code = EXIT_FAILED


def _is_element(text: str) -> bool:
    return "|0>" in text


def read_vector(text: str, level: int) -> FockVector:
    """A Fock element, or a polynomial in x, y, Y, Z, W realized through ``*_level``."""
    try:
        if _is_element(text):
            return parse_element(text)
        return realize(parse_gpoly(text), level).full
    except (ParseError, GPolyParseError, ValueError) as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from exc


def _read_element(text: str) -> FockVector:
    try:
        return parse_element(text)
    except (ParseError, ValueError) as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from exc


def _write_certificate(cert: Certificate, out: str | None, cert_dir: str) -> Path:
    text = cert.to_json()
    if out:
        path = Path(out)
    else:
        digest = hashlib.sha256(text.encode()).hexdigest()[:16]
        path = Path(cert_dir) / f"cert-{digest}.json"
    zhu.atomic_write(path, text)
    return path


@click.group()
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None, help="Persist span bases here.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed for randomized sampling.")
@click.pass_context
def main(ctx: click.Context, cache_dir: str | None, seed: int) -> None:
    """Exact computations in the level-n Zhu algebras of the rank-one Heisenberg VOA."""
    ctx.ensure_object(dict)
    ctx.obj["seed"] = seed
    random.seed(seed)
    if cache_dir:
        try:
            zhu.set_cache_dir(cache_dir)
        except OSError as exc:
            click.echo(f"warning: caching disabled ({exc})", err=True)
            zhu.set_cache_dir(None)
    ctx.obj["cache_dir"] = cache_dir


@main.command("parse", context_settings=_EXPR_ARGS)
@click.argument("text")
def cmd_parse(text: str) -> None:
    """Print TEXT in canonical form (Fock element, module vector or generator polynomial)."""
    try:
        if "|λ>" in text or "|lam>" in text:
            click.echo(format_module(parse_module(text)))
        elif _is_element(text):
            click.echo(format_element(parse_element(text)))
        else:
            click.echo(format_gpoly(parse_gpoly(text)))
    except (ParseError, GPolyParseError, ValueError) as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from exc


@main.command("mul", context_settings=_EXPR_ARGS)
@click.option("--level", "-n", type=click.IntRange(min=0), default=2, show_default=True)
@click.argument("lhs")
@click.argument("rhs")
def cmd_mul(level: int, lhs: str, rhs: str) -> None:
    """Print LHS *_n RHS."""
    click.echo(format_element(star_n(_read_element(lhs), _read_element(rhs), level)))


@main.command("circ", context_settings=_EXPR_ARGS)
@click.option("--level", "-n", type=click.IntRange(min=0), default=2, show_default=True)
@click.argument("lhs")
@click.argument("rhs")
def cmd_circ(level: int, lhs: str, rhs: str) -> None:
    """Print LHS o_n RHS."""
    click.echo(format_element(circ_n(_read_element(lhs), _read_element(rhs), level)))


@main.command("reduce", context_settings=_EXPR_ARGS)
@click.argument("target")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Certificate file.")
@click.option("--cert-dir", default="certificates", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Print a JSON record.")
def cmd_reduce(target: str, out: str | None, cert_dir: str, as_json: bool) -> None:
    """Express TARGET modulo O_2 as a polynomial in x, y, Y, Z, W."""
    v = _read_element(target)
    p, cert = reduce_level2(v)
    if not cert.check():
        click.echo(f"certificate does not replay; residual {format_element(cert.residual())}", err=True)
        sys.exit(EXIT_FAILED)
    path = _write_certificate(cert, out, cert_dir)
    if as_json:
        click.echo(json.dumps({"result": format_gpoly(p), "certificate": str(path)}, ensure_ascii=False))
    else:
        click.echo(format_gpoly(p))
        click.echo(f"certificate: {path}", err=True)


@main.command("member", context_settings=_EXPR_ARGS)
@click.argument("target")
@click.option("--level", "-n", type=click.IntRange(min=0), default=2, show_default=True)
@click.option("--max-weight", "-M", type=click.IntRange(min=0), default=None, help="Exact cutoff M.")
@click.option("--ceiling", type=click.IntRange(min=0), default=zhu.DEFAULT_CEILING, show_default=True)
@click.option("--plus-filtration", "filtration", type=click.IntRange(min=0), default=None, help="Adjoin F_r(1).")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Certificate file.")
@click.option("--cert-dir", default="certificates", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Print the certificate JSON.")
def cmd_member(target, level, max_weight, ceiling, filtration, out, cert_dir, as_json) -> None:
    """Decide TARGET ∈ O_n (an element, or a polynomial in x, y, Y, Z, W realized through *_n)."""
    v = read_vector(target, level)
    extra = (filtration, FockVector.vacuum()) if filtration is not None else None
    try:
        res = zhu.membership(v, level, M=max_weight, extra=extra, ceiling=ceiling)
    except zhu.CutoffTooSmall as exc:
        click.echo(f"unknown: {exc}")
        sys.exit(EXIT_UNKNOWN)
    if not isinstance(res, zhu.Proven):
        click.echo("unknown")
        click.echo(f"hint: heisenzhu witness {target!r} {level} looks for a zero-mode obstruction", err=True)
        sys.exit(EXIT_UNKNOWN)
    cert = res.certificate
    if not cert.check():
        click.echo(f"certificate does not replay; residual {format_element(cert.residual())}", err=True)
        sys.exit(EXIT_FAILED)
    path = _write_certificate(cert, out, cert_dir)
    if as_json:
        click.echo(cert.to_json())
    else:
        click.echo(f"proven at cutoff {cert.max_cutoff()}; certificate: {path}")


@main.command("witness", context_settings=_EXPR_ARGS)
@click.argument("expr")
@click.argument("level", type=click.IntRange(min=0), default=2)
def cmd_witness(expr: str, level: int) -> None:
    """Look for a module vector on which the zero mode of EXPR is nonzero."""
    try:
        p = parse_element(expr) if _is_element(expr) else parse_gpoly(expr)
    except (ParseError, GPolyParseError, ValueError) as exc:
        raise InputError(f"cannot parse {expr!r}: {exc}") from exc
    w = nonmembership_witness(p, level)
    click.echo(w.describe())
    if not w:
        sys.exit(EXIT_UNKNOWN)


@main.command("verify")
@click.argument("ids", nargs=-1)
@click.option("--all", "run_all", is_flag=True, help="Run every registry entry.")
@click.option("--only", multiple=True, help="Restrict to a section (repeatable).")
@click.option("--ceiling", "--budget", "budget", type=click.IntRange(min=0), default=40, show_default=True)
@click.option("--bound", type=click.IntRange(min=0), default=3, show_default=True, help="Largest sampled exponent.")
@click.option("--jobs", "-j", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--cert-dir", default=None, help="Write certificates here.")
@click.option("--report", type=click.Path(dir_okay=False), default=None, help="Also write the JSON report here.")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON report.")
@click.pass_context
def cmd_verify(ctx, ids, run_all, only, budget, bound, jobs, cert_dir, report, as_json) -> None:
    """Run registry entries and print a report."""
    from .verify import REGISTRY, Report, SECTIONS, verify, verify_all

    unknown = [i for i in ids if i not in REGISTRY]
    if unknown:
        raise InputError(f"unknown registry id(s): {', '.join(unknown)}")
    bad = [s for s in only if s not in SECTIONS]
    if bad:
        raise InputError(f"unknown section(s): {', '.join(bad)}; choose from {', '.join(SECTIONS)}")
    if not ids and not run_all and not only:
        raise click.UsageError("give registry ids, --all or --only")
    if ids:
        rep = Report([verify(i, budget, bound, cert_dir) for i in ids], budget)
    else:
        rep = verify_all(budget, only or None, jobs, bound, cert_dir, cache_dir=ctx.obj.get("cache_dir"))
    if report:
        zhu.atomic_write(Path(report), rep.to_json())
    click.echo(rep.to_json() if as_json else rep.table())
    if rep.failed:
        sys.exit(EXIT_FAILED)
    if ids and any(e.status == "Unknown" for e in rep.entries):
        sys.exit(EXIT_UNKNOWN)


@main.command("conjecture")
@click.argument("n", type=click.IntRange(min=0))
@click.argument("cutoff", type=click.IntRange(min=0))
def cmd_conjecture(n: int, cutoff: int) -> None:
    """Per-weight coranks of the truncated span at level N (informational)."""
    click.echo(zhu.conjecture_probe(n, cutoff).table())


if __name__ == "__main__":  # pragma: no cover
    main()
