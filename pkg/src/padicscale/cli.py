"""Command-line front end with a stable JSON contract.

One subcommand per computation; no interactive mode.  Reports embed the
schema version, rationals travel as strings, and identical inputs give
byte-identical output.  Exit codes: 0 success, 2 input error, 3
precision exhausted, 4 unbounded verdict, 5 internal certificate
failure.  Errors are emitted as JSON on stderr.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import contraction, model, newton, nilpotent, tidy
from .errors import (
    CertificateError,
    IterationCapError,
    PadicScaleError,
    PrecisionExhaustedError,
)
from .lattice import canonicalize, standard_lattice
from .linalg import QMatrix
from .padic import vp
from .serialize import matrix_from_json, rat_parse, rat_str

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECISION = 3
EXIT_UNBOUNDED = 4
EXIT_CERTIFICATE = 5


class CliFailure(Exception):
    def __init__(self, code, payload):
        self.code = code
        self.payload = payload


def _load_input(source: str):
    """Input is a file path, '-' for stdin, or inline JSON."""
    try:
        if source == "-":
            text = sys.stdin.read()
        elif source.lstrip().startswith("{"):
            text = source
        else:
            with open(source, "r", encoding="utf-8") as handle:
                text = handle.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliFailure(EXIT_INPUT, {"error": "input", "detail": str(exc)})


def _field(obj, name, caster=None):
    if name not in obj:
        raise CliFailure(
            EXIT_INPUT, {"error": "input", "detail": f"missing field {name!r}"})
    value = obj[name]
    if caster is None:
        return value
    try:
        return caster(value)
    except (ValueError, TypeError, ArithmeticError) as exc:
        raise CliFailure(
            EXIT_INPUT,
            {"error": "input", "detail": f"bad field {name!r}: {exc}"})


def _parse_matrix(rows) -> QMatrix:
    try:
        return matrix_from_json(rows)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliFailure(
            EXIT_INPUT, {"error": "input", "detail": f"bad matrix: {exc}"})


def _parse_finite_factor(obj):
    if obj is None:
        return None
    try:
        factors = []
        if "cyclic" in obj:
            factors.extend(nilpotent.cyclic(int(n)) for n in obj["cyclic"])
        if obj.get("quaternion8"):
            factors.append(nilpotent.quaternion8())
        for spec in obj.get("groups", ()):
            factors.append(
                nilpotent.FinitePGroup(int(spec["p"]), spec["table"]))
        return nilpotent.ProductGroup(factors)
    except (PadicScaleError, ValueError, KeyError, TypeError) as exc:
        raise CliFailure(
            EXIT_INPUT,
            {"error": "input", "detail": f"bad finite factor: {exc}"})


def _parse_model(obj):
    factors = {int(p): int(n) for p, n in _field(obj, "factors").items()}
    finite = _parse_finite_factor(obj.get("finite_factor"))
    try:
        return model.GroupModel(factors, finite)
    except (PadicScaleError, ValueError) as exc:
        raise CliFailure(
            EXIT_INPUT, {"error": "input", "detail": f"bad model: {exc}"})


def _parse_automorphism(group_model, obj):
    finite_block = None
    blocks = {}
    for key, value in obj.items():
        if key == "finite_block":
            finite_block = tuple(int(i) for i in value)
        else:
            blocks[int(key)] = _parse_matrix(value)
    try:
        return model.ModelAutomorphism(group_model, blocks, finite_block)
    except (PadicScaleError, ValueError) as exc:
        raise CliFailure(
            EXIT_INPUT,
            {"error": "input", "detail": f"bad automorphism: {exc}"})


def _emit(report, as_json, text_lines, figure=None, renderer=None):
    if figure is not None and renderer is not None:
        renderer(figure)
    if as_json:
        click.echo(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            click.echo("\t".join(str(part) for part in line))


def _run(handler):
    try:
        return handler()
    except CliFailure as exc:
        click.echo(json.dumps(exc.payload, sort_keys=True), err=True)
        sys.exit(exc.code)
    except PrecisionExhaustedError as exc:
        click.echo(json.dumps(
            {"error": "precision", "detail": str(exc),
             "precision": exc.precision}, sort_keys=True), err=True)
        sys.exit(EXIT_PRECISION)
    except (CertificateError, IterationCapError, AssertionError) as exc:
        click.echo(json.dumps(
            {"error": "certificate", "detail": str(exc)},
            sort_keys=True), err=True)
        sys.exit(EXIT_CERTIFICATE)
    except PadicScaleError as exc:
        click.echo(json.dumps(
            {"error": "input", "detail": str(exc)}, sort_keys=True), err=True)
        sys.exit(EXIT_INPUT)


def input_option(func):
    return click.option(
        "--input", "source", required=True,
        help="Input file path, inline JSON, or - for stdin.")(func)


def format_options(func):
    func = click.option(
        "--json", "as_json", flag_value=True, default=True,
        help="JSON output (default).")(func)
    func = click.option(
        "--text", "as_json", flag_value=False,
        help="Tab-delimited output.")(func)
    return func


def prec_option(func):
    return click.option(
        "--prec", default=contraction.DEFAULT_PRECISION, show_default=True,
        help="Working precision exponent N (answers modulo p^N).")(func)


def figure_option(func):
    return click.option(
        "--figure", default=None, type=click.Path(dir_okay=False),
        help="Also render a figure of the report to this file.")(func)


@click.group()
def main():
    """Exact scale computations for automorphisms of p-adic product groups."""


@main.command("newton")
@input_option
@format_options
@figure_option
def newton_cmd(source, as_json, figure):
    """Eigenvalue valuations from the Newton polygon.

    Input: {"p": 2, "matrix": [["1/2","0"],["0","2"]]} or
    {"p": 2, "poly": ["-2", "0", "1"]} (constant term first).
    """
    def handler():
        obj = _load_input(source)
        p = _field(obj, "p", int)
        if "matrix" in obj:
            f = _parse_matrix(obj["matrix"]).charpoly()
        else:
            from .serialize import poly_from_json
            f = poly_from_json(_field(obj, "poly"))
        vals = newton.eigenvalue_valuations(f, p)
        segments = newton.newton_segments(f, p)
        report = {
            "schema": SCHEMA_VERSION,
            "command": "newton",
            "p": p,
            "valuations": [
                {"valuation": rat_str(v), "multiplicity": m}
                for v, m in vals.entries
            ],
            "scale_exponent": newton.scale_exponent(vals),
        }
        lines = [("valuation", "multiplicity")]
        lines += [(rat_str(v), m) for v, m in vals.entries]

        def renderer(path):
            from .plots import render_newton_polygon
            points = [
                (i, vp(c, p)) for i, c in enumerate(f.coeffs) if c != 0
            ]
            hull = []
            x, y = points[0]
            cursor = (Fraction(x), Fraction(y))
            for seg in segments:
                nxt = (cursor[0] + seg.length,
                       cursor[1] + seg.slope * seg.length)
                hull.append((cursor[0], cursor[1], nxt[0], nxt[1]))
                cursor = nxt
            render_newton_polygon(points, hull, path)

        _emit(report, as_json, lines, figure, renderer)

    _run(handler)


@main.command("contract")
@input_option
@format_options
@prec_option
@figure_option
def contract_cmd(source, as_json, prec, figure):
    """Contraction decomposition of Q_p^n for a matrix.

    Input: {"p": 2, "matrix": [[...], ...]}.
    """
    def handler():
        obj = _load_input(source)
        p = _field(obj, "p", int)
        mat = _parse_matrix(_field(obj, "matrix"))
        split = contraction.split_with_retry(mat, p, prec)
        report = {
            "schema": SCHEMA_VERSION,
            "command": "contract",
        }
        report.update(contraction.split_to_json(split))
        lines = [("piece", "dimension")]
        lines += list(zip(("expanding", "bounded", "contracting"),
                          split.dims))
        lines.append(("exact", str(split.exact).lower()))

        def renderer(path):
            from .plots import render_piece_dims
            render_piece_dims(
                ["expanding", "bounded", "contracting"], list(split.dims),
                "contraction decomposition", path)

        _emit(report, as_json, lines, figure, renderer)

    _run(handler)


@main.command("tidy")
@input_option
@format_options
@prec_option
@figure_option
@click.option("--cap-tidy", default=tidy.TIDYING_CAP, show_default=True,
              help="Iteration cap for the tidying procedure.")
def tidy_cmd(source, as_json, prec, figure, cap_tidy):
    """Tidying certificate from the standard lattice (or a given one).

    Input: {"p": 2, "matrix": [[...]], "lattice": [[...], ...]} where the
    optional lattice is a list of generator columns.
    """
    def handler():
        obj = _load_input(source)
        p = _field(obj, "p", int)
        mat = _parse_matrix(_field(obj, "matrix"))
        if "lattice" in obj:
            cols = [[rat_parse(e) for e in col] for col in obj["lattice"]]
            start = canonicalize(cols, p, mat.rows)
        else:
            start = standard_lattice(p, mat.rows)
        split = contraction.split_with_retry(mat, p, prec)
        cert = tidy.tidying(start, mat, split, cap=cap_tidy)
        report = {"schema": SCHEMA_VERSION, "command": "tidy"}
        report.update(tidy.certificate_to_json(cert))
        del report["alpha"]
        lines = [
            ("steps", cert.steps),
            ("scale_exponent", cert.scale_exponent),
            ("scale_value", p ** cert.scale_exponent),
            ("t1_verified", str(cert.t1_verified).lower()),
            ("exact", str(cert.exact).lower()),
        ]

        def renderer(path):
            from .plots import render_piece_dims
            render_piece_dims(
                ["V+", "V-", "tidy lattice"],
                [cert.v_plus.rank, cert.v_minus.rank, cert.lattice.rank],
                f"tidy ranks (scale exponent {cert.scale_exponent})", path)

        _emit(report, as_json, lines, figure, renderer)

    _run(handler)


@main.command("scale")
@input_option
@format_options
@figure_option
def scale_cmd(source, as_json, figure):
    """Factored scale of a block automorphism of a product model.

    Input: {"factors": {"2": 1}, "finite_factor": null,
    "automorphism": {"2": [["1/2"]]}}.
    """
    def handler():
        obj = _load_input(source)
        group_model = _parse_model(obj)
        aut = _parse_automorphism(group_model, _field(obj, "automorphism"))
        factored = model.scale(group_model, aut)
        exponents = {p: factored.exponent(p) for p in group_model.factors}
        report = {
            "schema": SCHEMA_VERSION,
            "command": "scale",
            "scale": {str(p): e for p, e in exponents.items()},
            "value": str(factored.value()),
        }
        lines = [("prime", "exponent")]
        lines += [(p, e) for p, e in sorted(exponents.items())]
        lines.append(("value", factored.value()))

        def renderer(path):
            from .plots import render_scale_bars
            render_scale_bars(exponents, path)

        _emit(report, as_json, lines, figure, renderer)

    _run(handler)


@main.command("module")
@input_option
@format_options
def module_cmd(source, as_json):
    """Module of a block automorphism (product of p-adic determinant sizes).

    Input: same schema as the scale subcommand.
    """
    def handler():
        obj = _load_input(source)
        group_model = _parse_model(obj)
        aut = _parse_automorphism(group_model, _field(obj, "automorphism"))
        value = model.module_of(group_model, aut)
        report = {
            "schema": SCHEMA_VERSION,
            "command": "module",
            "module": rat_str(value),
        }
        _emit(report, as_json, [("module", rat_str(value))])

    _run(handler)


@main.command("primes")
@input_option
@format_options
def primes_cmd(source, as_json):
    """Prime spectrum of a family, local prime content, and containment.

    Input: {"factors": {...}, "finite_factor": null,
    "automorphisms": [{"2": [["1/2"]]}, ...]}.
    """
    def handler():
        obj = _load_input(source)
        group_model = _parse_model(obj)
        auts = [
            _parse_automorphism(group_model, spec)
            for spec in _field(obj, "automorphisms")
        ]
        spectrum = sorted(model.prime_spectrum(group_model, auts))
        content = sorted(model.local_prime_content(group_model))
        report = {
            "schema": SCHEMA_VERSION,
            "command": "primes",
            "prime_spectrum": spectrum,
            "local_prime_content": content,
            "containment": set(spectrum) <= set(content),
            "uniscalar": not spectrum,
        }
        lines = [
            ("prime_spectrum", ",".join(map(str, spectrum))),
            ("local_prime_content", ",".join(map(str, content))),
            ("containment", str(report["containment"]).lower()),
            ("uniscalar", str(report["uniscalar"]).lower()),
        ]
        _emit(report, as_json, lines)

    _run(handler)


@main.command("sylow")
@input_option
@format_options
def sylow_cmd(source, as_json):
    """Sylow decomposition of a subgroup of a finite nilpotent product.

    Input: {"cyclic": [4, 9], "generators": [[1, 1]]} (generators are
    tuples of factor indices; general groups via "groups" tables).
    """
    def handler():
        obj = _load_input(source)
        group = _parse_finite_factor(obj)
        if group is None or not group.factors:
            raise CliFailure(
                EXIT_INPUT,
                {"error": "input", "detail": "no finite group factors given"})
        gens = [tuple(int(i) for i in g)
                for g in _field(obj, "generators")]
        handle = nilpotent.SubgroupHandle(group, tuple(gens))
        decomposition = nilpotent.sylow_decompose(group, handle)
        order = len(handle.closure())
        report = {
            "schema": SCHEMA_VERSION,
            "command": "sylow",
            "subgroup_order": order,
            "verified": decomposition.verified,
            "parts": {
                str(p): len(elems) for p, elems in decomposition.parts
            },
        }
        lines = [("prime", "part_order")]
        lines += [(p, len(elems)) for p, elems in decomposition.parts]
        lines.append(("subgroup_order", order))
        lines.append(("verified", str(decomposition.verified).lower()))
        _emit(report, as_json, lines)

    _run(handler)


@main.command("invariant-lattice")
@input_option
@format_options
@click.option("--cap-budget", default=32, show_default=True,
              help="Valuation budget before the Unbounded verdict.")
def invariant_lattice_cmd(source, as_json, cap_budget):
    """Common invariant lattice of a matrix family, or Unbounded.

    Input: {"p": 2, "n": 1, "mats": [[["2"]]]}.  Exit code 4 on the
    Unbounded verdict.
    """
    def handler():
        obj = _load_input(source)
        p = _field(obj, "p", int)
        n = _field(obj, "n", int)
        mats = [_parse_matrix(rows) for rows in _field(obj, "mats")]
        result = model.invariant_lattice(p, n, mats, budget=cap_budget)
        if isinstance(result, model.Unbounded):
            report = {
                "schema": SCHEMA_VERSION,
                "command": "invariant-lattice",
                "unbounded": {
                    "witness_word": list(result.witness),
                    "vector": [rat_str(e) for e in result.vector],
                },
            }
            lines = [
                ("unbounded", "true"),
                ("witness_word",
                 ",".join(str(i) for i in result.witness)),
            ]
            _emit(report, as_json, lines)
            sys.exit(EXIT_UNBOUNDED)
        report = {
            "schema": SCHEMA_VERSION,
            "command": "invariant-lattice",
            "lattice": result.to_json(),
        }
        lines = [("basis_column", "entries")]
        lines += [
            (j, ",".join(rat_str(e) for e in col))
            for j, col in enumerate(result.basis)
        ]
        _emit(report, as_json, lines)

    _run(handler)


if __name__ == "__main__":
    main()
