"""Command-line interface.

Subcommands: count, ehrhart, hstar, roots, verify, certify, scan, plot.

Exit codes: 0 success, 1 usage error, 2 enumeration budget exceeded,
3 verification failure (a result contradicting a theorem, which means a bug
here), 4 root finder did not converge.

Floats print with 17 significant digits in human and CSV output; JSON lines
use the shortest repr that round-trips.  Rationals print as ``p/q``.
Complex numbers print and parse as ``a+bi``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .basis import HStarVector, basis_polynomials, from_hstar, to_hstar
from .bounds import (
    OriginInsideFactorDiskError,
    angular_limit,
    angular_width,
    bddps_bound,
    bound_region_scan,
    braun_disc,
    halfplane_certificate,
    summarize_checks,
    verify_roots,
)
from .exactcore import Polynomial, as_rational
from .lattice import (
    DEFAULT_BUDGET,
    FAMILIES,
    BudgetExceededError,
    ConsistencyError,
    PolytopeFormatError,
    count_lattice_points,
    ehrhart_many,
    ehrhart_polynomial,
    parse_polytope,
    simplex_corpus,
    standard_family,
)
from .roots import find_roots
from .svg import roots_svg

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY, EXIT_NONCONVERGENCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- value formatting and parsing -----------------------------------------------

def fmt_float(x: float) -> str:
    return format(float(x) + 0.0, ".17g")  # + 0.0 folds -0.0 into 0.0


def fmt_complex(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{fmt_float(z.real)}{sign}{fmt_float(abs(z.imag))}i"


_COMPLEX = re.compile(
    r"^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"(?:(?P<im>[+-]\s*(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)[ij])?$")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``bi``, ``a`` (spaces allowed, ``j`` accepted)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty complex number")
    m = _COMPLEX.match(s)
    if m and (m.group("re") or m.group("im") is not None):
        re_part = float(m.group("re")) if m.group("re") else 0.0
        im_txt = m.group("im")
        if im_txt is None:
            im = 0.0
        elif im_txt in ("+", "-"):
            im = 1.0 if im_txt == "+" else -1.0
        else:
            im = float(im_txt)
        return complex(re_part, im)
    m = re.fullmatch(r"([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]", s)
    if m:
        mag = float(m.group(2)) if m.group(2) else 1.0
        return complex(0.0, -mag if m.group(1) == "-" else mag)
    raise ValueError(f"cannot parse complex number {text!r}; use a+bi")


def parse_dilates(text: str) -> List[int]:
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(\d+)\.\.(\d+)", part)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            if b < a:
                raise ValueError(f"empty dilate range {part!r}")
            out.extend(range(a, b + 1))
        elif re.fullmatch(r"\d+", part):
            out.append(int(part))
        else:
            raise ValueError(f"bad dilate {part!r}; use N or A..B")
    return out


def parse_rationals(text: str) -> List[Fraction]:
    try:
        return [as_rational(tok) for tok in re.split(r"[,\s]+", text.strip()) if tok]
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad rational list {text!r}") from None


# -- report rendering --------------------------------------------------------------

@dataclass
class Report:
    columns: List[str] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)


def _text(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, complex):
        return fmt_complex(v)
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_text(x) for x in v) + "]"
    if v is None:
        return ""
    return str(v)


def _json_value(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return v + 0.0
    if isinstance(v, complex):
        return [v.real + 0.0, v.imag + 0.0]
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, Polynomial):
        return [str(c) for c in v.coefficients]
    return v


def render(report: Report, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "human":
        for row in report.rows:
            buf.write("; ".join(f"{k} = {_text(row[k])}" for k in report.columns) + "\n")
        for k, v in report.summary.items():
            buf.write(f"{k} = {_text(v)}\n")
    elif fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        if report.columns:
            writer.writerow(report.columns)
            for row in report.rows:
                writer.writerow([_text(row[k]) for k in report.columns])
        for k, v in report.summary.items():
            buf.write(f"# {k} = {_text(v)}\n")
    elif fmt == "jsonl":
        for row in report.rows:
            buf.write(json.dumps({k: _json_value(row[k]) for k in report.columns}) + "\n")
        if report.summary:
            buf.write(json.dumps({"summary": {k: _json_value(v) for k, v in report.summary.items()}})
                      + "\n")
    else:
        raise UsageError(f"unknown format {fmt!r}")
    return buf.getvalue()


# -- inputs ----------------------------------------------------------------------

@dataclass
class RunConfig:
    subcommand: str
    file: Optional[str] = None
    family: Optional[str] = None
    dim: Optional[int] = None
    random: bool = False
    coeffs: Optional[str] = None
    hstar: Optional[str] = None
    dilates: Optional[str] = None
    degree: Optional[int] = None
    trials: int = 1
    coord_bound: int = 4
    seed: int = 0
    tol: float = 1e-12
    margin: float = 1e-9
    budget: int = DEFAULT_BUDGET
    format: str = "human"
    output: Optional[str] = None
    jobs: int = 1
    z: Optional[str] = None
    basis: str = "Bd"
    grid: Optional[List[float]] = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__}
        cfg = cls(**{k: v for k, v in vars(ns).items() if k in known and v is not None})
        if ns.subcommand == "scan" and ns.format is None:
            cfg.format = "csv"
        return cfg

    def polytope_sources(self) -> int:
        return sum([self.file is not None, self.family is not None, self.random])

    def polynomial_sources(self) -> int:
        return self.polytope_sources() + sum([self.coeffs is not None, self.hstar is not None])


def _load_polytope(cfg: RunConfig):
    if cfg.polytope_sources() != 1 or cfg.coeffs is not None or cfg.hstar is not None:
        raise UsageError("give exactly one input: --file PATH or --family NAME --dim D")
    if cfg.file is not None:
        try:
            return parse_polytope(Path(cfg.file).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.file}: {exc.strerror}") from None
    if cfg.random:
        raise UsageError("--random is only supported by verify")
    if cfg.dim is None:
        raise UsageError("--family needs --dim")
    return standard_family(cfg.family, cfg.dim)


@dataclass
class _Subject:
    label: str
    polynomial: Polynomial
    hstar: Optional[HStarVector]
    degree: int
    from_polytope: bool


def _subjects(cfg: RunConfig) -> List[_Subject]:
    """Polynomials named by the input flags, one per polytope or trial."""
    if cfg.polynomial_sources() != 1:
        raise UsageError("give exactly one input: --file, --family/--dim, --random, --coeffs or --hstar")
    if cfg.coeffs is not None:
        p = Polynomial(tuple(parse_rationals(cfg.coeffs)))
        return [_Subject("coeffs", p, None, p.degree, False)]
    if cfg.hstar is not None:
        h = HStarVector(tuple(parse_rationals(cfg.hstar)))
        return [_Subject("hstar", from_hstar(h), h, h.degree, False)]
    if cfg.random:
        if cfg.dim is None:
            raise UsageError("--random needs --dim")
        polys = simplex_corpus(cfg.dim, cfg.trials, cfg.coord_bound, cfg.seed)
        labels = [f"simplex[{i}]" for i in range(len(polys))]
    else:
        polys = [_load_polytope(cfg)]
        labels = [cfg.family if cfg.family else Path(cfg.file).name]
    results = ehrhart_many(polys, cfg.budget, cfg.jobs)
    return [_Subject(lab, r.polynomial, r.hstar, r.affine_dim, True)
            for lab, r in zip(labels, results)]


# -- subcommands -------------------------------------------------------------------

def cmd_count(cfg: RunConfig):
    P = _load_polytope(cfg)
    dilates = parse_dilates(cfg.dilates or "0..3")
    rows = [{"t": t, "count": count_lattice_points(P, t, cfg.budget)} for t in dilates]
    return Report(["t", "count"], rows), EXIT_OK


def cmd_ehrhart(cfg: RunConfig):
    P = _load_polytope(cfg)
    res = ehrhart_polynomial(P, cfg.budget)
    row = {
        "L": res.polynomial,
        "h*": res.hstar.as_ints(),
        "theorem2": "pass",
        "dimension": res.affine_dim,
        "normalized_volume": res.normalized_volume,
    }
    return Report(list(row), [row]), EXIT_OK


def cmd_hstar(cfg: RunConfig):
    if cfg.coeffs is not None and cfg.polytope_sources() == 0 and cfg.hstar is None:
        p = Polynomial(tuple(parse_rationals(cfg.coeffs)))
        h = to_hstar(p, cfg.degree)
    else:
        if cfg.degree is not None:
            raise UsageError("--degree applies to --coeffs input only")
        [subject] = _subjects(cfg)
        h = subject.hstar if subject.hstar is not None else to_hstar(subject.polynomial)
    row = {"h*": list(h.entries), "degree": h.degree, "all_nonnegative": h.all_nonnegative,
           "all_integral": h.all_integral}
    return Report(list(row), [row]), EXIT_OK


def _roots_or_fail(subject: _Subject, cfg: RunConfig):
    if subject.degree < 1 or subject.polynomial.is_zero:
        raise UsageError(f"{subject.label}: polynomial of degree {subject.polynomial.degree} has no roots")
    return find_roots(subject.polynomial, tol=cfg.tol)


def cmd_roots(cfg: RunConfig):
    rows, code = [], EXIT_OK
    for s in _subjects(cfg):
        rs = _roots_or_fail(s, cfg)
        if not rs.converged:
            code = EXIT_NONCONVERGENCE
        for i, (z, r) in enumerate(zip(rs.roots, rs.residuals)):
            rows.append({"input": s.label, "index": i, "root": z, "residual": r,
                         "converged": rs.converged, "multiple": rs.multiplicity_suspected})
    return Report(["input", "index", "root", "residual", "converged", "multiple"], rows), code


def cmd_verify(cfg: RunConfig):
    subjects = _subjects(cfg)
    rows = []
    checked, binding = [], []
    nonconverged = 0
    degrees = set()
    for s in subjects:
        rs = _roots_or_fail(s, cfg)
        degrees.add(s.degree)
        if not rs.converged:
            nonconverged += 1
            continue
        checks = verify_roots(rs, s.degree, cfg.margin)
        checked.extend(checks)
        # the disc is only promised for non-negative h*
        if s.hstar is None or s.hstar.all_nonnegative:
            binding.extend(checks)
        for i, c in enumerate(checks):
            rows.append({"input": s.label, "index": i, "root": c.root, "slack": c.slack,
                         "re_plus_half": c.re_offset, "in_disc": c.in_disc})
    overall = summarize_checks(checked)
    violations = summarize_checks(binding).violations
    summary: Dict[str, Any] = {
        "polytopes" if subjects[0].from_polytope else "polynomials": len(subjects),
        "roots_checked": overall.roots,
        "nonconverged": nonconverged,
        "violations": violations,
        "min_slack": overall.min_slack,
        "max_abs_z_plus_half": overall.max_distance,
        "max_abs_re_plus_half": overall.max_re_offset,
    }
    if len(degrees) == 1:
        d = degrees.pop()
        summary["braun_radius"] = braun_disc(d).radius_float
        summary["bddps"] = bddps_bound(d)
    summary["result"] = "pass" if not violations and not nonconverged else "fail"
    code = EXIT_VERIFY if violations else EXIT_NONCONVERGENCE if nonconverged else EXIT_OK
    return Report(["input", "index", "root", "slack", "re_plus_half", "in_disc"], rows, summary), code


def cmd_certify(cfg: RunConfig):
    if cfg.degree is None or cfg.z is None:
        raise UsageError("certify needs -d DEGREE and -z COMPLEX")
    z = parse_complex(cfg.z)
    d = cfg.degree
    cert = halfplane_certificate(z, d)
    disc = braun_disc(d)
    try:
        width: Any = angular_width(z, d)
    except OriginInsideFactorDiskError:
        width = "undefined"
    outside = not disc.contains(z)
    rows = [{"j": j, "value": v, "argument": a}
            for j, (v, a) in enumerate(zip(cert.basis_values, cert.arguments))]
    summary = {
        "z": z,
        "degree": d,
        "valid": cert.valid,
        "zero_value": cert.zero_value,
        "max_gap": cert.max_gap,
        "separating_direction": cert.separating_direction,
        "angular_width": width,
        "pi_over_d": angular_limit(d),
        "abs_z_plus_half": disc.distance(z),
        "braun_radius": disc.radius_float,
        "outside_disc": outside,
    }
    code = EXIT_VERIFY if outside and not cert.valid and d >= 2 else EXIT_OK
    return Report(["j", "value", "argument"], rows, summary), code


def _scan_basis(cfg: RunConfig) -> List[Polynomial]:
    if cfg.basis == "Bd":
        if cfg.dim is None:
            raise UsageError("--basis Bd needs --dim")
        return basis_polynomials(cfg.dim)
    return [Polynomial(tuple(parse_rationals(part))) for part in cfg.basis.split(";") if part.strip()]


def cmd_scan(cfg: RunConfig):
    if not cfg.grid or len(cfg.grid) != 5:
        raise UsageError("scan needs --grid RE_MIN RE_MAX IM_MIN IM_MAX STEP")
    grid = bound_region_scan(_scan_basis(cfg), *cfg.grid)
    rows = [{"re": x, "im": y, "valid": v} for x, y, v in grid.rows()]
    return Report(["re", "im", "valid"], rows), EXIT_OK


def cmd_plot(cfg: RunConfig):
    subjects = _subjects(cfg)
    if len(subjects) != 1:
        raise UsageError("plot takes a single polynomial")
    [s] = subjects
    rs = _roots_or_fail(s, cfg)
    svg = roots_svg(rs.roots, s.degree, title=f"{s.label}: {s.polynomial}")
    return svg, EXIT_OK if rs.converged else EXIT_NONCONVERGENCE


COMMANDS = {
    "count": cmd_count,
    "ehrhart": cmd_ehrhart,
    "hstar": cmd_hstar,
    "roots": cmd_roots,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "scan": cmd_scan,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--format", choices=("human", "csv", "jsonl"))
    g.add_argument("--seed", type=int)
    g.add_argument("--budget", type=int, help="max candidate lattice points per count")
    g.add_argument("--tol", type=float, help="root finder step tolerance")
    g.add_argument("--margin", type=float, help="slack allowed outside the disc")
    g.add_argument("-o", "--output", help="write output here instead of stdout")
    g.add_argument("--jobs", type=int, help="worker processes for batch runs")

    inputs = _Parser(add_help=False)
    i = inputs.add_argument_group("input")
    i.add_argument("--file", help="polytope file (vertices: or inequalities: stanza)")
    i.add_argument("--family", choices=FAMILIES)
    i.add_argument("--dim", type=int)

    poly_inputs = _Parser(add_help=False)
    pi = poly_inputs.add_argument_group("polynomial input")
    pi.add_argument("--coeffs", help="monomial coefficients a_0,a_1,...,a_d (rationals)")
    pi.add_argument("--hstar", help="h*-vector h_0,...,h_d (rationals)")

    parser = _Parser(prog="ehrhart-roots",
                     description="Ehrhart polynomials, h*-vectors and root-norm bounds.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common, inputs], help="lattice points in dilates")
    p.add_argument("--dilates", help="N, A..B, or a comma list of those (default 0..3)")

    sub.add_parser("ehrhart", parents=[common, inputs], help="Ehrhart polynomial and h*-vector")

    p = sub.add_parser("hstar", parents=[common, inputs, poly_inputs], help="h*-vector")
    p.add_argument("--degree", type=int, help="basis degree for --coeffs (default: deg p)")

    sub.add_parser("roots", parents=[common, inputs, poly_inputs], help="complex roots")

    p = sub.add_parser("verify", parents=[common, inputs, poly_inputs],
                       help="check every root lies in |z+1/2| <= d(d-1/2)")
    p.add_argument("--random", action="store_true", help="random lattice simplices")
    p.add_argument("--trials", type=int)
    p.add_argument("--coord-bound", dest="coord_bound", type=int)

    p = sub.add_parser("certify", parents=[common], help="half-plane certificate at a point",
                       epilog="complex numbers are written a+bi or a-bi, e.g. -z -1+0i")
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("-z", required=True, help="point a+bi")

    p = sub.add_parser("scan", parents=[common], help="grid of half-plane verdicts (CSV)")
    p.add_argument("--basis", help="'Bd' or ';'-separated coefficient lists")
    p.add_argument("--dim", type=int)
    p.add_argument("--grid", nargs=5, type=float,
                   metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX", "STEP"), required=True)

    sub.add_parser("plot", parents=[common, inputs, poly_inputs], help="SVG of roots and bounds")
    return parser


def _join_complex_arg(argv: Sequence[str]) -> List[str]:
    """Let ``-z -1+0i`` through argparse, which would read ``-1+0i`` as a flag."""
    out = list(argv)
    for k in range(len(out) - 1):
        if out[k] in ("-z", "--z") and out[k + 1].startswith("-"):
            out[k:k + 2] = [f"{out[k]}={out[k + 1]}", ""]
    return [a for a in out if a != ""]


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    ns = parser.parse_args(_join_complex_arg(argv))
    cfg = RunConfig.from_args(ns)
    try:
        result, code = COMMANDS[cfg.subcommand](cfg)
        text = result if isinstance(result, str) else render(result, cfg.format)
    except UsageError as exc:
        print(f"ehrhart-roots: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"ehrhart-roots: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ConsistencyError as exc:
        print(f"ehrhart-roots: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, PolytopeFormatError) as exc:
        print(f"ehrhart-roots: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
