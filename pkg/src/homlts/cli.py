"""Command-line interface: ``homlts VERB ...``.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 malformed
input, 3 a precondition was violated (e.g. a cochain that is not a cocycle).
"""

from __future__ import annotations

import sys

import click

from . import io
from .algebra import AXIOMS, GeneralHomTripleSystem, center, check_axioms
from .cohomology import CochainTooLargeError, NotACochainError, cohomology
from .deformation import (
    DeformationError,
    ObstructionError,
    check_deformation,
    check_equivalence,
    infinitesimal_is_cocycle,
    integrate,
)
from .extension import ExtensionError, are_equivalent, build_extension
from .field import GF, QQ, FieldError
from .generators import GeneratorError, gen_bilinear, gen_matrix, random_homlts
from .representation import (
    RepresentationError,
    adjoint_rep,
    check_representation,
    trivial_rep,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3

MAX_LISTED = 20

_PRECONDITION = (
    NotACochainError,
    DeformationError,
    ExtensionError,
    RepresentationError,
    GeneratorError,
    CochainTooLargeError,
    FieldError,
)


class Report:
    """A command result: ``status`` plus an ordered payload rendered as text or JSON."""

    def __init__(self, command: str, ok: bool = True):
        self.command = command
        self.ok = ok
        self.payload = {}
        self.lines = []

    def add(self, key, value, text=None):
        self.payload[key] = value
        if text is not None:
            self.lines.append(text)

    def note(self, text):
        self.lines.append(text)

    @property
    def code(self) -> int:
        return EXIT_OK if self.ok else EXIT_FAIL

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return io.dumps({"command": self.command, "status": "pass" if self.ok else "fail", **self.payload})
        head = f"{self.command}: {'pass' if self.ok else 'FAIL'}"
        return "\n".join([head] + self.lines) + "\n"


def _read(path: str, what: str):
    try:
        with open(path, "rb") as fh:
            return io.load_json(fh.read(), path)
    except OSError as exc:
        raise io.ParseError(f"cannot read {what}: {exc.strerror}", path) from None


def _load_algebra(path: str):
    return io.parse_algebra(_read(path, "algebra file"), path)


def _multiplicative(T):
    if isinstance(T, GeneralHomTripleSystem) or not T.multiplicative:
        raise RepresentationError("this command needs a multiplicative system")
    return T


def _load_rep(T, spec: str, mdim: int):
    if spec == "adjoint":
        return adjoint_rep(_multiplicative(T))
    if spec == "trivial":
        return trivial_rep(_multiplicative(T), mdim)
    return io.parse_representation(_read(spec, "representation file"), _multiplicative(T), spec)


def _require_valid_rep(R):
    rep = check_representation(R)
    if not rep.ok:
        failed = ", ".join(k for k, v in rep.status.items() if not v)
        raise RepresentationError(f"representation identities fail: {failed}")
    if not check_axioms(R.base).ok:
        raise RepresentationError("base system fails the axioms")


def _write(output, text: str):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _emit(ctx, report: Report):
    click.echo(report.render(ctx.obj["format"]), nl=False)
    ctx.exit(report.code)


def _guarded(fn):
    """Translate library exceptions into the documented exit codes."""

    @click.pass_context
    def wrapper(ctx, *args, **kwargs):
        fmt = ctx.obj["format"]
        try:
            return ctx.invoke(fn, *args, **kwargs)
        except io.ParseError as exc:
            code, kind, msg = EXIT_PARSE, "parse", str(exc)
        except ObstructionError as exc:
            code, kind, msg = EXIT_FAIL, "obstructed", str(exc)
        except _PRECONDITION as exc:
            code, kind, msg = EXIT_PRECONDITION, "precondition", str(exc)
        if fmt == "json":
            click.echo(io.dumps({"command": ctx.info_name, "status": "error", "kind": kind, "message": msg}), nl=False)
        else:
            click.echo(f"error ({kind}): {msg}", err=True)
        ctx.exit(code)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--verbose", is_flag=True, help="Include full residuals and bases in reports.")
@click.pass_context
def main(ctx, fmt, verbose):
    """Exact computations for multiplicative Hom-Lie triple systems."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt
    ctx.obj["verbose"] = verbose


def _violation_lines(report, verbose):
    shown = report.violations if verbose else report.violations[:MAX_LISTED]
    lines = [f"  {v}" for v in shown]
    if len(report.violations) > len(shown):
        lines.append(f"  ... {len(report.violations) - len(shown)} more (use --verbose)")
    return lines


def _status_word(v):
    return "n/a" if v is None else ("pass" if v else "fail")


@main.command()
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.option("--rep", default=None, help="Also check a module: trivial, adjoint, or a representation file.")
@click.option("--mdim", default=1, show_default=True, help="Dimension of a trivial module.")
@_guarded
@click.pass_context
def verify(ctx, algebra, rep, mdim):
    """Check the Hom-LTS axioms (and optionally a representation)."""
    verbose = ctx.obj["verbose"]
    T = _load_algebra(algebra)
    r = check_axioms(T)
    out = Report("verify", r.ok)
    out.add("axioms", {a: _status_word(r.status[a]) for a in AXIOMS})
    for a in AXIOMS:
        out.note(f"{a}: {_status_word(r.status[a])}")
    listed = r.violations if verbose else r.violations[:MAX_LISTED]
    out.add("violations", [{"identity": v.axiom, "at": list(v.indices), "residual": list(v.residual)} for v in listed])
    out.add("violation_count", len(r.violations))
    out.lines += _violation_lines(r, verbose)
    if rep is not None:
        R = _load_rep(T, rep, mdim)
        rr = check_representation(R)
        out.ok = out.ok and rr.ok
        out.add("representation", {k: _status_word(v) for k, v in rr.status.items()})
        for k, v in rr.status.items():
            out.note(f"representation {k}: {_status_word(v)}")
        out.lines += _violation_lines(rr, verbose)
    _emit(ctx, out)


def _degrees(value: str):
    try:
        degs = sorted({int(x) for x in value.split(",") if x.strip()})
    except ValueError:
        raise click.BadParameter("expected a comma-separated list of degrees") from None
    if not degs or degs[0] < 1:
        raise click.BadParameter("degrees must be >= 1")
    return degs


@main.command(name="cohomology")
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.option("--degrees", default="1,3", show_default=True)
@click.option("--rep", default="trivial", show_default=True, help="trivial, adjoint, or a representation file.")
@click.option("--mdim", default=1, show_default=True, help="Dimension of a trivial module.")
@_guarded
@click.pass_context
def cohomology_cmd(ctx, algebra, degrees, rep, mdim):
    """Dimensions of cochains, cocycles, coboundaries and cohomology."""
    degs = _degrees(degrees)
    T = _load_algebra(algebra)
    R = _load_rep(T, rep, mdim)
    _require_valid_rep(R)
    out = Report("cohomology")
    table = {}
    for n in degs:
        H = cohomology(R, n)
        entry = {
            "cochains": H.cochain_dim,
            "cocycles": H.cocycle_dim,
            "coboundaries": H.coboundary_dim,
            "cohomology": H.dim,
        }
        if ctx.obj["verbose"]:
            entry["representatives"] = [io.cochain_to_json(f) for f in H.representatives]
        table[str(n)] = entry
        out.note(
            f"H^{n}: {H.dim}  (C^{n}: {H.cochain_dim}, Z^{n}: {H.cocycle_dim}, B^{n}: {H.coboundary_dim})"
        )
    out.add("degrees", table)
    _emit(ctx, out)


def _load_fiber(T, fiber):
    if fiber is None:
        return trivial_rep(_multiplicative(T), 1)
    R = io.parse_representation(_read(fiber, "fiber file"), _multiplicative(T), fiber)
    return R


def _load_cochain(path, R):
    return io.parse_cochain(_read(path, "cochain file"), R, path)


@main.command()
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.argument("cocycle", type=click.Path(dir_okay=False))
@click.option("--fiber", default=None, help="Trivial module file (default: 1-dimensional, twist id).")
@click.option("-o", "--output", default=None, help="Write the extension document here.")
@_guarded
@click.pass_context
def extend(ctx, algebra, cocycle, fiber, output):
    """Build the central extension defined by a 3-cocycle."""
    T = _load_algebra(algebra)
    R = _load_fiber(T, fiber)
    g = _load_cochain(cocycle, R)
    E = build_extension(T, R, g)
    F = T.field
    doc = {
        "algebra": io.algebra_to_json(E.total),
        "iota": io.matrix_to_json(F, E.iota),
        "pi": io.matrix_to_json(F, E.pi),
        "section": io.matrix_to_json(F, E.section),
    }
    if output is None and ctx.obj["format"] == "text":
        _write(None, io.dumps(doc))
        ctx.exit(EXIT_OK)
    if output is not None:
        _write(output, io.dumps(doc))
    out = Report("extend")
    out.add("dim", E.total.dim, f"extension of dimension {E.total.dim}")
    if output is None:
        out.add("extension", doc)
    else:
        out.add("output", output, f"written to {output}")
    _emit(ctx, out)


@main.command()
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.argument("cocycle1", type=click.Path(dir_okay=False))
@click.argument("cocycle2", type=click.Path(dir_okay=False))
@click.option("--fiber", default=None, help="Trivial module file (default: 1-dimensional, twist id).")
@_guarded
@click.pass_context
def equiv(ctx, algebra, cocycle1, cocycle2, fiber):
    """Decide whether two 3-cocycles give equivalent extensions."""
    T = _load_algebra(algebra)
    R = _load_fiber(T, fiber)
    g1 = _load_cochain(cocycle1, R)
    g2 = _load_cochain(cocycle2, R)
    res = are_equivalent(T, R, g1, g2)
    out = Report("equiv")
    out.add("equivalent", res.equivalent)
    if res.equivalent:
        out.note("equivalent")
        out.add("f", io.cochain_to_json(res.f))
        out.add("phi", io.matrix_to_json(T.field, res.phi), f"phi = {io.matrix_to_json(T.field, res.phi)}")
    else:
        out.note("inequivalent")
        out.add("class_difference", list(res.coords), f"class difference in H^3: {list(res.coords)}")
    _emit(ctx, out)


def _residual_entry(res, verbose):
    entry = {"zero": res.is_zero(), "nonzero_at": [list(t) for t in res.nonzero()[:MAX_LISTED]]}
    if verbose:
        entry["nonzero_at"] = [list(t) for t in res.nonzero()]
        entry["values"] = io._values_to_json(res.field, res.values)["values"]
    return entry


@main.command(name="def-check")
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.argument("deformation", type=click.Path(dir_okay=False))
@click.option("--against", default=None, help="Second deformation file for an equivalence check.")
@click.option("--iso", default=None, help="Formal isomorphism file (with --against).")
@_guarded
@click.pass_context
def def_check(ctx, algebra, deformation, against, iso):
    """Residuals of the deformation equations, order by order."""
    verbose = ctx.obj["verbose"]
    T = _multiplicative(_load_algebra(algebra))
    D = io.parse_deformation(_read(deformation, "deformation file"), T, deformation)
    out = Report("def-check")
    orders = []
    for n, res in enumerate(check_deformation(D), start=1):
        orders.append(_residual_entry(res, verbose))
        out.ok = out.ok and res.is_zero()
        out.note(f"order {n}: {'zero' if res.is_zero() else 'NONZERO'}")
    out.add("orders", orders)
    if D.order:
        inf = infinitesimal_is_cocycle(D)
        out.add("infinitesimal_is_cocycle", inf, f"infinitesimal is a cocycle: {inf}")
    if (against is None) != (iso is None):
        raise DeformationError("--against and --iso must be given together")
    if against is not None:
        D2 = io.parse_deformation(_read(against, "deformation file"), T, against)
        phi = io.parse_isomorphism(_read(iso, "isomorphism file"), T, iso)
        rep = check_equivalence(D, D2, phi)
        eq_orders = []
        for n, res in enumerate(rep["orders"], start=1):
            eq_orders.append(_residual_entry(res, verbose))
            out.ok = out.ok and res.is_zero()
            out.note(f"equivalence order {n}: {'zero' if res.is_zero() else 'NONZERO'}")
        comm = [T.field.is_zero(c) for c in rep["commutation"]]
        out.ok = out.ok and all(comm)
        out.add("equivalence", {"orders": eq_orders, "commutes_with_twist": comm})
        out.note(f"jets commute with the twist: {comm}")
    _emit(ctx, out)


@main.command(name="def-integrate")
@click.argument("algebra", type=click.Path(dir_okay=False))
@click.argument("cocycle", type=click.Path(dir_okay=False))
@click.option("--order", "N", default=4, show_default=True, type=click.IntRange(min=1))
@click.option("-o", "--output", default=None, help="Write the deformation file here.")
@_guarded
@click.pass_context
def def_integrate(ctx, algebra, cocycle, N, output):
    """Extend an infinitesimal 3-cocycle to a deformation of the given order."""
    T = _multiplicative(_load_algebra(algebra))
    R = adjoint_rep(T)
    d1 = _load_cochain(cocycle, R)
    D = integrate(T, d1, N)
    doc = io.dumps(io.deformation_to_json(D))
    if output is None and ctx.obj["format"] == "text":
        _write(None, doc)
        ctx.exit(EXIT_OK)
    if output is not None:
        _write(output, doc)
    out = Report("def-integrate")
    out.add("order", D.order, f"integrated to order {D.order}")
    if output is None:
        out.add("deformation", io.deformation_to_json(D))
    else:
        out.add("output", output, f"written to {output}")
    _emit(ctx, out)


@main.command(name="center")
@click.argument("algebra", type=click.Path(dir_okay=False))
@_guarded
@click.pass_context
def center_cmd(ctx, algebra):
    """Basis of the center {x : [x, T, T] = 0}."""
    T = _load_algebra(algebra)
    Z = center(T)
    out = Report("center")
    basis = [io._vector_to_json(T.field, v) for v in Z]
    out.add("dim", len(basis), f"dim: {len(basis)}")
    out.add("basis", basis)
    for v in basis:
        out.note(f"  {v}")
    _emit(ctx, out)


# -- gen --------------------------------------------------------------------

def _parse_field_option(value: str):
    v = value.strip().upper().replace("(", ":").replace(")", "")
    if v == "Q":
        return QQ
    if v.startswith("GF:"):
        try:
            return GF(int(v[3:]))
        except (ValueError, FieldError) as exc:
            raise click.BadParameter(str(exc)) from None
    raise click.BadParameter("expected Q or GF:p")


def _parse_matrix_option(F, spec: str, dim: int):
    """``id``, ``diag:a,b,...`` or ``rows:a,b;c,d``."""
    try:
        if spec == "id":
            return F.eye(dim)
        if spec.startswith("diag:"):
            vals = [F.scalar(x.strip()) for x in spec[5:].split(",")]
            if len(vals) != dim:
                raise click.BadParameter(f"diag needs {dim} entries")
            M = F.zeros((dim, dim))
            for i, x in enumerate(vals):
                M[i, i] = x
            return M
        if spec.startswith("rows:"):
            rows = [[x.strip() for x in r.split(",")] for r in spec[5:].split(";")]
            if len(rows) != dim or any(len(r) != dim for r in rows):
                raise click.BadParameter(f"rows needs a {dim} x {dim} matrix")
            return F.array(rows)
    except FieldError as exc:
        raise click.BadParameter(str(exc)) from None
    raise click.BadParameter("expected id, diag:a,b,... or rows:a,b;c,d")


@main.group()
def gen():
    """Generate example algebra files."""


def _gen_out(T, output):
    _write(output, io.dumps(io.algebra_to_json(T)))


@gen.command()
@click.option("--dim", required=True, type=click.IntRange(min=1))
@click.option("--form", default="id", show_default=True, help="Symmetric form: id, diag:..., rows:...")
@click.option("--alpha", default="id", show_default=True, help="Twist preserving the form.")
@click.option("--lambda", "lam", default="1", show_default=True)
@click.option("--field", "field", default="Q", show_default=True, help="Q or GF:p")
@click.option("-o", "--output", default=None)
@_guarded
def bilinear(dim, form, alpha, lam, field, output):
    """[x y z] = lambda (<y,z> alpha(x) - <z,x> alpha(y))."""
    F = _parse_field_option(field)
    B = _parse_matrix_option(F, form, dim)
    a = _parse_matrix_option(F, alpha, dim)
    try:
        lam = F.scalar(lam)
    except FieldError as exc:
        raise click.BadParameter(str(exc), param_hint="--lambda") from None
    _gen_out(gen_bilinear(B, a, lam, F), output)


@gen.command()
@click.option("--rows", "m", required=True, type=click.IntRange(min=1))
@click.option("--cols", "n", required=True, type=click.IntRange(min=1))
@click.option("--conjugator", default=None, help="Orthogonal g (rows:... or diag:...) for the twist A -> g A g^T.")
@click.option("--field", "field", default="Q", show_default=True)
@click.option("-o", "--output", default=None)
@_guarded
def matrix(m, n, conjugator, field, output):
    """Matrices with [A B C] = A B^T C + C B^T A - B A^T C - C A^T B."""
    F = _parse_field_option(field)
    g = None if conjugator is None else _parse_matrix_option(F, conjugator, m)
    _gen_out(gen_matrix(m, n, g, F), output)


@gen.command(name="random")
@click.option("--dim", required=True, type=click.IntRange(1, 4))
@click.option("--seed", required=True, type=int)
@click.option("--field", "field", default="GF:101", show_default=True)
@click.option("-o", "--output", default=None)
@_guarded
def random_cmd(dim, seed, field, output):
    """Seeded random multiplicative Hom-LTS (checked against the axioms)."""
    F = _parse_field_option(field)
    _gen_out(random_homlts(dim, F, seed), output)


def run(argv) -> tuple:
    """Run the CLI in-process; returns ``(exit_code, stdout)``."""
    from click.testing import CliRunner

    res = CliRunner().invoke(main, list(argv), catch_exceptions=False)
    return res.exit_code, res.stdout


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
