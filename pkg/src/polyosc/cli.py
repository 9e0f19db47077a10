"""Command-line interface: dial, spectrum, verify, figure, det.

All fraction input and output is exact: energies and coefficients travel as 'p/q'
or finite-decimal strings (or JSON integers) and parse back to the same rationals.
Binary floats are refused at the boundary.  Output is deterministic byte for byte
for identical invocations.

Exit codes: 0 success, 2 malformed input, 3 singular stripped system,
4 verification failure, 5 eigensolver non-convergence, 6 unwritable output path.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .exactalg import (
    PolynomialHamiltonian,
    SingularMatrixError,
    SpectrumTarget,
    build_energy_matrix,
    determinant,
    determinant_closed_form,
    dial,
    dial_partial,
)
from .gridverify import EigensolverError, GridSpec, VerificationReport, verify_dialled
from .oscillator import eigenfunction_samples, oscillator_energy
from .spectrum import (
    LevelRecord,
    OrderingReport,
    classical_cross_section,
    evaluate_spectrum,
    ordering_report,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SINGULAR = 3
EXIT_VERIFY = 4
EXIT_EIGEN = 5
EXIT_WRITE = 6


# ---------------------------------------------------------------- wire parsing

def parse_rational(text: str) -> Fraction:
    """Exact rational from a 'p/q' or finite-decimal string."""
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as an exact rational") from None


def _parse_targets_inline(text: str) -> SpectrumTarget:
    pairs = []
    for chunk in text.split(","):
        level_text, sep, energy_text = chunk.partition(":")
        if not sep:
            raise ValueError(f"target {chunk!r} is not of the form level:energy")
        try:
            level = int(level_text)
        except ValueError:
            raise ValueError(f"level {level_text!r} is not an integer") from None
        pairs.append((level, parse_rational(energy_text)))
    return SpectrumTarget(tuple(pairs))


def _parse_request_payload(payload) -> tuple[SpectrumTarget, list[int] | None]:
    if not isinstance(payload, dict):
        raise ValueError("request must be a JSON object")
    raw_targets = payload.get("targets")
    if not isinstance(raw_targets, list) or not raw_targets:
        raise ValueError("request needs a non-empty 'targets' list")
    pairs = []
    for item in raw_targets:
        if not isinstance(item, dict) or "level" not in item or "energy" not in item:
            raise ValueError(f"target {item!r} needs 'level' and 'energy' fields")
        level = item["level"]
        if isinstance(level, bool) or not isinstance(level, int):
            raise ValueError(f"level {level!r} must be an integer")
        energy = item["energy"]
        if isinstance(energy, bool):
            raise ValueError(f"energy {energy!r} must be a rational string or integer")
        if isinstance(energy, int):
            value = Fraction(energy)
        elif isinstance(energy, str):
            value = parse_rational(energy)
        else:
            raise ValueError(
                f"energy {energy!r} must be a 'p/q' or decimal string or an integer; "
                "binary floats are not exact"
            )
        pairs.append((level, value))
    drop = payload.get("drop_powers")
    if drop is not None:
        if not isinstance(drop, list) or any(
            isinstance(p, bool) or not isinstance(p, int) for p in drop
        ):
            raise ValueError("'drop_powers' must be a list of integers")
    return SpectrumTarget(tuple(pairs)), drop


def _parse_coeffs(text: str) -> PolynomialHamiltonian:
    coeffs = [parse_rational(chunk) for chunk in text.split(",")]
    return PolynomialHamiltonian.from_dense(coeffs)


def _parse_drop_powers(text: str) -> list[int]:
    try:
        return [int(chunk) for chunk in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse {text!r} as a comma-separated integer list") from None


# ------------------------------------------------------------- output helpers

def _dec(value: Fraction) -> str:
    return repr(float(value))


def _spectrum_rows(records: tuple[LevelRecord, ...]) -> list[str]:
    rows = ["n,h_n,E_n,E_n_decimal,node_count"]
    for rec in records:
        h = oscillator_energy(rec.level)
        rows.append(f"{rec.level},{h},{rec.energy},{_dec(rec.energy)},{rec.node_count}")
    return rows


def _ordering_lines(report: OrderingReport) -> list[str]:
    perm = ",".join(str(n) for n in report.ascending_permutation)
    if report.violations:
        violations = ";".join(f"({a},{b})" for a, b in report.violations)
    else:
        violations = "none"
    return [
        f"# ascending_permutation = {perm}",
        f"# violations = {violations}",
        f"# sturm_liouville_ordered = {str(report.is_sturm_liouville_ordered).lower()}",
    ]


def _spectrum_json(records, report) -> dict:
    return {
        "spectrum": [
            {
                "level": rec.level,
                "oscillator_energy": str(oscillator_energy(rec.level)),
                "energy": str(rec.energy),
                "decimal": float(rec.energy),
                "node_count": rec.node_count,
            }
            for rec in records
        ],
        "ordering": {
            "ascending_permutation": list(report.ascending_permutation),
            "violations": [list(pair) for pair in report.violations],
            "is_sturm_liouville_ordered": report.is_sturm_liouville_ordered,
        },
    }


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


# ------------------------------------------------------------------- commands

def _default_levels(requested: int | None, n_dialled: int) -> int:
    if requested is None:
        return max(n_dialled, 9)
    if requested < 1:
        raise ValueError(f"--levels must be >= 1, got {requested}")
    return requested


def cmd_dial(args: argparse.Namespace) -> int:
    if args.request is not None:
        try:
            raw = Path(args.request).read_text()
        except OSError as err:
            raise ValueError(f"cannot read request file: {err}") from None
        target, drop = _parse_request_payload(json.loads(raw))
        if args.drop_powers is not None:
            drop = _parse_drop_powers(args.drop_powers)
    else:
        target = _parse_targets_inline(args.targets)
        drop = _parse_drop_powers(args.drop_powers) if args.drop_powers is not None else None

    contiguous = target.levels == tuple(range(len(target.pairs)))
    if drop is None and contiguous:
        ham = dial(target)
    else:
        ham = dial_partial(target, drop)

    count = _default_levels(args.levels, len(target.pairs))
    records = evaluate_spectrum(ham, count)
    report = ordering_report(records)

    if args.format == "json":
        body = {
            "coefficients": [
                {"power": p, "value": str(a), "decimal": float(a)} for p, a in ham.terms
            ],
            **_spectrum_json(records, report),
        }
        _emit(json.dumps(body, indent=2))
    else:
        lines = ["power,a_j,a_j_decimal"]
        lines += [f"{p},{a},{_dec(a)}" for p, a in ham.terms]
        lines.append("")
        lines += _spectrum_rows(records)
        lines += _ordering_lines(report)
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    ham = _parse_coeffs(args.coeffs)
    count = _default_levels(args.levels, len(ham.terms))
    records = evaluate_spectrum(ham, count)
    report = ordering_report(records)
    if args.format == "json":
        _emit(json.dumps(_spectrum_json(records, report), indent=2))
    else:
        _emit("\n".join(_spectrum_rows(records) + _ordering_lines(report)))
    return EXIT_OK


def _verify_lines(report: VerificationReport) -> list[str]:
    lines = [
        "k,grid_eigenvalue,node_count,matched_level,analytic_E_n,analytic_decimal,"
        "abs_error,rel_error,within_tolerance"
    ]
    for c in report.checks:
        rel = f"{c.rel_error:.3e}" if c.rel_error is not None else ""
        lines.append(
            f"{c.position},{c.grid_eigenvalue!r},{c.node_count},{c.matched_level},"
            f"{c.analytic_energy},{_dec(c.analytic_energy)},{c.abs_error:.3e},{rel},"
            f"{str(c.within_tolerance).lower()}"
        )
    lines += [
        f"# expected_sequence = {','.join(str(n) for n in report.expected_sequence)}",
        f"# node_sequence = {','.join(str(n) for n in report.node_sequence)}",
        f"# sequence_matches = {str(report.sequence_matches).lower()}",
        f"# degenerate = {str(report.degenerate).lower()}",
        f"# tolerance = {report.tolerance!r}",
        f"# warning = {report.warning if report.warning else 'none'}",
        f"# passed = {str(report.passed).lower()}",
    ]
    return lines


def _verify_json(report: VerificationReport) -> dict:
    return {
        "grid": {"half_width": report.spec.half_width, "points": report.spec.points},
        "tolerance": report.tolerance,
        "levels": [
            {
                "position": c.position,
                "grid_eigenvalue": c.grid_eigenvalue,
                "node_count": c.node_count,
                "matched_level": c.matched_level,
                "analytic_energy": str(c.analytic_energy),
                "analytic_decimal": float(c.analytic_energy),
                "abs_error": c.abs_error,
                "rel_error": c.rel_error,
                "within_tolerance": c.within_tolerance,
            }
            for c in report.checks
        ],
        "expected_sequence": list(report.expected_sequence),
        "node_sequence": list(report.node_sequence),
        "sequence_matches": report.sequence_matches,
        "degenerate": report.degenerate,
        "warning": report.warning,
        "passed": report.passed,
    }


def cmd_verify(args: argparse.Namespace) -> int:
    ham = _parse_coeffs(args.coeffs)
    spec = GridSpec(half_width=args.half_width, points=args.grid_points)
    count = args.levels if args.levels is not None else 9
    report = verify_dialled(ham, spec, levels_to_check=count)
    if args.format == "json":
        _emit(json.dumps(_verify_json(report), indent=2))
    else:
        _emit("\n".join(_verify_lines(report)))
    return EXIT_OK if report.passed else EXIT_VERIFY


def _display_scale(records: tuple[LevelRecord, ...]) -> float:
    distinct = sorted({rec.energy for rec in records})
    gaps = [float(b - a) for a, b in zip(distinct, distinct[1:])]
    return 0.9 * min(gaps) if gaps else 1.0


_PALETTE = ("#c0392b", "#27ae60", "#2a6fc2", "#b96310", "#7d3c98",
            "#0e8a7d", "#d4418e", "#5d6d11", "#34558b")


def _svg_figure(xs, cross, records, curves, scale, half_width) -> str:
    width, height = 720, 480
    ml, mr, mt, mb = 62, 16, 16, 42
    plot_w, plot_h = width - ml - mr, height - mt - mb
    energies = [float(rec.energy) for rec in records]
    span = (max(energies) - min(energies)) or 1.0
    pad = 0.8 * scale + 0.08 * span
    y_lo, y_hi = min(energies) - pad, max(energies) + pad

    def px(x: float) -> float:
        return ml + (x + half_width) / (2.0 * half_width) * plot_w

    def py(y: float) -> float:
        return mt + (y_hi - y) / (y_hi - y_lo) * plot_h

    def path(points) -> str:
        return " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in points)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<title>zero-momentum cross-section with eigenfunctions offset by their energies</title>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<clipPath id="plot"><rect x="{ml}" y="{mt}" width="{plot_w}" height="{plot_h}"/></clipPath>',
        f'<rect x="{ml}" y="{mt}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#444"/>',
    ]
    for tick in (-half_width, 0.0, half_width):
        parts.append(
            f'<text x="{px(tick):.2f}" y="{height - 14}" font-size="13" '
            f'text-anchor="middle" fill="#444">{tick:g}</text>'
        )
    parts.append(
        f'<text x="{px(0):.2f}" y="{height - 1}" font-size="13" text-anchor="middle" '
        'fill="#444">x</text>'
    )
    for tick in (y_lo, 0.0, y_hi):
        if y_lo <= tick <= y_hi:
            parts.append(
                f'<text x="{ml - 6}" y="{py(tick) + 4:.2f}" font-size="13" '
                f'text-anchor="end" fill="#444">{tick:.1f}</text>'
            )
    if y_lo <= 0.0 <= y_hi:
        parts.append(
            f'<line x1="{ml}" y1="{py(0.0):.2f}" x2="{ml + plot_w}" y2="{py(0.0):.2f}" '
            'stroke="#ccc" stroke-width="1"/>'
        )
    for rec in records:
        y = py(float(rec.energy))
        parts.append(
            f'<line x1="{ml}" y1="{y:.2f}" x2="{ml + plot_w}" y2="{y:.2f}" '
            'stroke="#bbb" stroke-width="0.7" stroke-dasharray="5,4"/>'
        )
    parts.append(
        f'<polyline clip-path="url(#plot)" fill="none" stroke="#222" stroke-width="2" '
        f'points="{path(zip(xs, cross))}"/>'
    )
    for rec, curve in zip(records, curves):
        color = _PALETTE[rec.level % len(_PALETTE)]
        parts.append(
            f'<polyline clip-path="url(#plot)" fill="none" stroke="{color}" '
            f'stroke-width="1.2" points="{path(zip(xs, curve))}"/>'
        )
        parts.append(
            f'<text x="{ml + plot_w - 8}" y="{py(float(rec.energy)) - 3:.2f}" font-size="11" '
            f'text-anchor="end" fill="{color}">n={rec.level}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_figure(args: argparse.Namespace) -> int:
    ham = _parse_coeffs(args.coeffs)
    count = _default_levels(args.levels, len(ham.terms))
    records = evaluate_spectrum(ham, count)
    scale = _display_scale(records)
    grid = GridSpec(half_width=args.half_width, points=args.grid_points)
    xs = grid.positions()
    cross = [classical_cross_section(ham, float(x)) for x in xs]
    curves = [
        float(rec.energy) + scale * eigenfunction_samples(rec.level, xs) for rec in records
    ]

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    spectrum_rows = ["n,h_n,E_n,E_n_decimal"] + [
        f"{rec.level},{oscillator_energy(rec.level)},{rec.energy},{_dec(rec.energy)}"
        for rec in records
    ]
    if args.format == "json":
        report = ordering_report(records)
        _write(out_dir / "spectrum.json", json.dumps(_spectrum_json(records, report), indent=2) + "\n")
        _write(
            out_dir / "cross_section.json",
            json.dumps({"x": [float(x) for x in xs], "energy": cross}, indent=2) + "\n",
        )
        _write(
            out_dir / "eigenfunctions.json",
            json.dumps(
                {
                    "display_scale": scale,
                    "x": [float(x) for x in xs],
                    "levels": {str(rec.level): [float(v) for v in curve]
                               for rec, curve in zip(records, curves)},
                },
                indent=2,
            ) + "\n",
        )
    else:
        _write(out_dir / "spectrum.csv", "\n".join(spectrum_rows) + "\n")
        cross_rows = ["x,energy"] + [f"{float(x)!r},{v!r}" for x, v in zip(xs, cross)]
        _write(out_dir / "cross_section.csv", "\n".join(cross_rows) + "\n")
        eig_rows = [f"# display_scale = {scale!r}"]
        eig_rows.append("x," + ",".join(f"level_{rec.level}" for rec in records))
        for i, x in enumerate(xs):
            eig_rows.append(f"{float(x)!r}," + ",".join(f"{float(c[i])!r}" for c in curves))
        _write(out_dir / "eigenfunctions.csv", "\n".join(eig_rows) + "\n")
    _write(out_dir / "figure.svg", _svg_figure(xs, cross, records, curves, scale, grid.half_width))
    return EXIT_OK


def _write(path: Path, text: str) -> None:
    path.write_text(text)


def cmd_det(args: argparse.Namespace) -> int:
    n = args.size
    if n < 1:
        raise ValueError(f"matrix size must be >= 1, got {n}")
    matrix = build_energy_matrix(range(n), range(1, n + 1))
    eliminated = determinant(matrix)
    closed = determinant_closed_form(n)
    if args.format == "json":
        body = {
            "n": n,
            "elimination": str(eliminated),
            "closed_form": str(closed),
            "agree": eliminated == closed,
        }
        _emit(json.dumps(body, indent=2))
    else:
        _emit(
            "N,elimination,closed_form,agree\n"
            f"{n},{eliminated},{closed},{str(eliminated == closed).lower()}"
        )
    return EXIT_OK


# -------------------------------------------------------------------- parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyosc",
        description="Dial the point spectrum of a polynomial oscillator Hamiltonian "
        "and verify it on a grid.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="output format (default csv)")

    p_dial = sub.add_parser("dial", help="solve for the polynomial hitting the target energies")
    group = p_dial.add_mutually_exclusive_group(required=True)
    group.add_argument("--targets", help="inline targets, e.g. '0:-3,1:-15/2'")
    group.add_argument("--request", help="path to a JSON request file")
    p_dial.add_argument("--drop-powers", help="comma-separated h-powers to strip, e.g. '3'")
    p_dial.add_argument("--levels", type=int, help="levels of induced spectrum to print")
    add_format(p_dial)
    p_dial.set_defaults(func=cmd_dial)

    p_spec = sub.add_parser("spectrum", help="exact spectrum and ordering of a polynomial")
    p_spec.add_argument("--coeffs", required=True, help="dense coefficients a_1,a_2,...")
    p_spec.add_argument("--levels", type=int, help="number of levels (default max(N, 9))")
    add_format(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_verify = sub.add_parser("verify", help="grid cross-check of spectrum and node ordering")
    p_verify.add_argument("--coeffs", required=True, help="dense coefficients a_1,a_2,...")
    p_verify.add_argument("--levels", type=int, help="levels to check (default 9)")
    p_verify.add_argument("--grid-points", type=int, default=1001, help="grid samples (default 1001)")
    p_verify.add_argument("--half-width", type=float, default=10.0,
                          help="grid half width (default 10)")
    add_format(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_fig = sub.add_parser("figure", help="emit spectrum, cross-section, and eigenfunction files")
    p_fig.add_argument("--coeffs", required=True, help="dense coefficients a_1,a_2,...")
    p_fig.add_argument("--levels", type=int, help="levels to draw (default max(N, 9))")
    p_fig.add_argument("--grid-points", type=int, default=601, help="x samples (default 601)")
    p_fig.add_argument("--half-width", type=float, default=6.0,
                       help="x range half width (default 6)")
    p_fig.add_argument("--out", default=".", help="output directory (default current)")
    add_format(p_fig)
    p_fig.set_defaults(func=cmd_figure)

    p_det = sub.add_parser("det", help="energy-matrix determinant vs the closed form")
    p_det.add_argument("size", type=int, help="matrix size N")
    add_format(p_det)
    p_det.set_defaults(func=cmd_det)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SingularMatrixError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_SINGULAR
    except EigensolverError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_EIGEN
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_WRITE


if __name__ == "__main__":
    sys.exit(main())
