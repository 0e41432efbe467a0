"""Command-line front end: build tables, simulate, verify, export.

Success prints a single-line JSON report on stdout and exits 0.  Domain
errors print ``ErrorName: message`` on stderr and exit 1; usage errors exit
2.  Output files depend only on the arguments, so identical invocations are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import io
from .billiard import PhaseState, orbit, rotation_number, verify_caustic
from .curves import SampledCurve
from .errors import CausticaError
from .geom import ConvexBody
from .stringtable import string_invariant, string_table
from .switched import (SwitchedConfig, build_gamma, build_phi, explicit_table,
                       smoothness_report)


@dataclass(frozen=True)
class ShapeSpec:
    """Parsed ``--caustic``/``--shape`` value: a primitive shape or a CSV path."""

    kind: str
    params: tuple

    def body(self, n: int) -> ConvexBody:
        if self.kind == "csv":
            return ConvexBody.from_curve(io.read_curve(self.params[0]))
        if self.kind == "point":
            return ConvexBody.point(complex(*self.params))
        if self.kind == "segment":
            x0, y0, x1, y1 = self.params
            return ConvexBody.segment(complex(x0, y0), complex(x1, y1))
        if self.kind == "polygon":
            return ConvexBody.polygon([complex(x, y) for x, y in self.params])
        if self.kind == "circle":
            r, cx, cy = self.params
            return ConvexBody.circle(r, complex(cx, cy), n=n)
        a, b, cx, cy = self.params
        return ConvexBody.ellipse(a, b, complex(cx, cy), n=n)

    def curve(self, n: int) -> SampledCurve:
        if self.kind == "csv":
            return io.read_curve(self.params[0])
        if self.kind == "circle":
            r, cx, cy = self.params
            return SampledCurve.circle(r, complex(cx, cy), n=n)
        if self.kind == "ellipse":
            a, b, cx, cy = self.params
            return SampledCurve.ellipse(a, b, complex(cx, cy), n=n)
        raise ValueError(f"shape {self.kind!r} is not a closed sampled curve")


def parse_shape(text: str) -> ShapeSpec:
    """circle:R[@cx,cy] | ellipse:a,b[@cx,cy] | segment:x0,y0,x1,y1 |
    point:x,y | polygon:x0,y0;x1,y1;... | <curve.csv>"""
    if ":" not in text:
        return ShapeSpec("csv", (text,))
    kind, _, rest = text.partition(":")
    try:
        if kind == "polygon":
            verts = tuple(tuple(float(v) for v in pair.split(","))
                          for pair in rest.split(";"))
            if any(len(p) != 2 for p in verts):
                raise ValueError
            return ShapeSpec(kind, verts)
        center = (0.0, 0.0)
        if "@" in rest:
            rest, _, ctext = rest.partition("@")
            center = tuple(float(v) for v in ctext.split(","))
            if len(center) != 2:
                raise ValueError
        nums = tuple(float(v) for v in rest.split(","))
        if kind == "circle" and len(nums) == 1:
            return ShapeSpec(kind, nums + center)
        if kind == "ellipse" and len(nums) == 2:
            return ShapeSpec(kind, nums + center)
        if kind in ("point", "segment") and len(nums) == (2 if kind == "point" else 4):
            return ShapeSpec(kind, nums)
    except ValueError:
        pass
    raise ValueError(f"bad shape spec {text!r}")


def _germ(text: str) -> tuple:
    parts = tuple(float(v) for v in text.split(","))
    if len(parts) != 2:
        raise ValueError(f"germ override needs two coefficients, got {text!r}")
    return parts


def _report(obj) -> int:
    print(json.dumps(obj))
    return 0


def _build_switched(args) -> int:
    config = SwitchedConfig.from_alpha(args.alpha)
    phi = build_phi(config, germ=args.germ) if args.germ else build_phi(config)
    gamma = build_gamma(phi, config, samples_per_quarter=args.samples_per_quarter)
    table = explicit_table(gamma, config, samples_per_piece=args.samples_per_piece)
    body = ConvexBody.from_curve(gamma)
    S_est, max_dev = string_invariant(table, body)
    corner_angles = np.angle(gamma.tangents[gamma.corner_indices]
                             / gamma.corner_in_tangents)
    if args.out:
        io.write_curve(args.out, table)
    if args.caustic:
        io.write_curve(args.caustic, gamma)
    return _report({
        "alpha": config.alpha,
        "string_parameter": S_est,
        "string_max_dev": max_dev,
        "corner_angles": [float(v) for v in corner_angles],
        "table_samples": table.n,
        "table_length": table.total_length,
        "caustic_samples": gamma.n,
        "caustic_length": gamma.total_length,
    })


def _string_table(args) -> int:
    body = args.caustic.body(args.caustic_samples)
    table = string_table(body, args.string, n_samples=args.samples)
    if args.out:
        io.write_curve(args.out, table)
    return _report({
        "string_parameter": args.string,
        "caustic_perimeter": body.perimeter,
        "samples": table.n,
        "length": table.total_length,
    })


def _simulate(args) -> int:
    table = io.read_curve(args.table)
    rec = orbit(table, PhaseState(args.sigma, args.theta), args.iters)
    if args.out:
        io.write_orbit(args.out, rec)
    return _report({
        "iters": rec.n_bounces,
        "rotation_estimate": rec.rotation_estimate(),
        "final_sigma": float(rec.sigma[-1]),
        "final_theta": float(rec.theta[-1]),
    })


def _verify_caustic(args) -> int:
    table = io.read_curve(args.table)
    body = args.caustic.body(args.caustic_samples)
    err, rho = verify_caustic(table, body, args.starts, args.iters)
    code = _report({"max_tangency_error": err, "rho": rho})
    if args.tol is not None and err > args.tol:
        return 1
    return code


def _rotation_number(args) -> int:
    table = io.read_curve(args.table)
    rho = rotation_number(table, PhaseState(args.sigma, args.theta), args.iters)
    return _report({"rho": rho, "iters": args.iters})


def _smoothness(args) -> int:
    config = SwitchedConfig.from_alpha(args.alpha)
    phi = build_phi(config, germ=args.germ) if args.germ else build_phi(config)
    gamma = build_gamma(phi, config, samples_per_quarter=args.samples_per_quarter)
    table = explicit_table(gamma, config, samples_per_piece=args.samples_per_piece)
    rows = smoothness_report(table, max_order=args.max_order, h=args.spacing)
    return _report({
        "alpha": config.alpha,
        "rows": [{"junction": r.junction, "kind": r.kind, "order": r.order,
                  "jump": r.jump, "jump_coarse": r.jump_coarse,
                  "ratio": r.ratio, "richardson": r.richardson} for r in rows],
    })


def _export(args) -> int:
    curve = args.shape.curve(args.samples)
    io.write_curve(args.out, curve)
    return _report({"samples": curve.n, "length": curve.total_length,
                    "out": args.out})


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caustica",
        description="String construction of billiard tables from convex "
                    "caustics, billiard simulation, and the switched table "
                    "with a four-corner caustic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-switched",
                       help="build the switched table and its caustic")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--samples-per-piece", type=int, default=1024)
    p.add_argument("--samples-per-quarter", type=int, default=1024)
    p.add_argument("--germ", type=_germ, default=None,
                   help="override germ coefficients 'p1,p2'")
    p.add_argument("--out", help="table curve CSV path")
    p.add_argument("--caustic", help="caustic curve CSV path")
    p.set_defaults(func=_build_switched)

    p = sub.add_parser("string-table",
                       help="build a table from a caustic and string length")
    p.add_argument("--caustic", type=parse_shape, required=True,
                   help=parse_shape.__doc__)
    p.add_argument("--string", type=float, required=True,
                   help="string parameter S (must exceed the caustic perimeter)")
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--caustic-samples", type=int, default=2048)
    p.add_argument("--out", help="table curve CSV path")
    p.set_defaults(func=_string_table)

    p = sub.add_parser("simulate", help="iterate the billiard map")
    p.add_argument("--table", required=True, help="table curve CSV path")
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--iters", type=int, required=True)
    p.add_argument("--out", help="orbit CSV path")
    p.set_defaults(func=_simulate)

    p = sub.add_parser("verify-caustic",
                       help="measure how far reflected chords drift off a caustic")
    p.add_argument("--table", required=True, help="table curve CSV path")
    p.add_argument("--caustic", type=parse_shape, required=True,
                   help=parse_shape.__doc__)
    p.add_argument("--starts", type=int, default=20)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--caustic-samples", type=int, default=2048)
    p.add_argument("--tol", type=float, default=None,
                   help="exit 1 if the max tangency error exceeds this")
    p.set_defaults(func=_verify_caustic)

    p = sub.add_parser("rotation-number", help="estimate the orbit rotation number")
    p.add_argument("--table", required=True, help="table curve CSV path")
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--iters", type=int, default=10000)
    p.set_defaults(func=_rotation_number)

    p = sub.add_parser("smoothness",
                       help="one-sided derivative jumps at the switching points")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--samples-per-piece", type=int, default=1024)
    p.add_argument("--samples-per-quarter", type=int, default=1024)
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--spacing", type=float, default=None,
                   help="stencil spacing in the construction parameter")
    p.add_argument("--germ", type=_germ, default=None,
                   help="override germ coefficients 'p1,p2'")
    p.set_defaults(func=_smoothness)

    p = sub.add_parser("export", help="write a built-in shape as a curve CSV")
    p.add_argument("--shape", type=parse_shape, required=True,
                   help=parse_shape.__doc__)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_export)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CausticaError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
