"""Curve and orbit serialization.

Curve CSV: one comment header ``# closed=<bool> length=<float>``, then rows
``s,x,y,tx,ty``.  A corner sample occupies two consecutive rows sharing the
same ``s`` and point: first the incoming tangent, then the outgoing one, so
the format stays five columns and the round trip loses nothing.

Orbit CSV: rows ``k,sigma,theta,lift``.

All floats are printed with 17 significant digits (lossless for doubles) in
the C locale, lines end with LF, and identical inputs produce byte-identical
files.
"""

from __future__ import annotations

import numpy as np

from .curves import SampledCurve

_FMT = "{:.17g}"


def _fmt(v: float) -> str:
    return _FMT.format(float(v))


def write_curve(path, curve: SampledCurve) -> None:
    corner = set(int(i) for i in curve.corner_indices)
    in_tan = {int(i): t for i, t in zip(curve.corner_indices, curve.corner_in_tangents)}
    lines = ["# closed={} length={}".format(
        "true" if curve.closed else "false", _fmt(curve.total_length))]
    for k in range(curve.n):
        s, p, t = curve.s[k], curve.points[k], curve.tangents[k]
        if k in corner:
            q = in_tan[k]
            lines.append(",".join(_fmt(v) for v in (s, p.real, p.imag, q.real, q.imag)))
        lines.append(",".join(_fmt(v) for v in (s, p.real, p.imag, t.real, t.imag)))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_curve(path) -> SampledCurve:
    with open(path, "r") as fh:
        raw = fh.read().splitlines()
    if not raw or not raw[0].startswith("#"):
        raise ValueError(f"{path}: missing curve header line")
    header = dict(item.split("=", 1) for item in raw[0][1:].split())
    try:
        closed = {"true": True, "false": False}[header["closed"]]
        length = float(header["length"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"{path}: bad curve header {raw[0]!r}") from exc
    rows = []
    for lineno, line in enumerate(raw[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise ValueError(f"{path}:{lineno}: expected 5 columns, got {len(parts)}")
        rows.append([float(v) for v in parts])
    if not rows:
        raise ValueError(f"{path}: no samples")
    s_vals, pts, tans = [], [], []
    corner_idx, corner_in = [], []
    for row in rows:
        s, x, y, tx, ty = row
        if s_vals and s == s_vals[-1]:
            # second row of a corner pair: previous tangent was the incoming one
            if (x, y) != (pts[-1].real, pts[-1].imag):
                raise ValueError(f"{path}: corner rows at s={s!r} disagree on the point")
            corner_idx.append(len(s_vals) - 1)
            corner_in.append(tans[-1])
            tans[-1] = complex(tx, ty)
            continue
        s_vals.append(s)
        pts.append(complex(x, y))
        tans.append(complex(tx, ty))
    kwargs = {}
    if corner_idx:
        kwargs = dict(corner_indices=np.array(corner_idx, dtype=np.intp),
                      corner_in_tangents=np.array(corner_in, dtype=np.complex128))
    return SampledCurve(np.array(s_vals), np.array(pts), np.array(tans),
                        length, closed=closed, **kwargs)


def write_orbit(path, record) -> None:
    lines = []
    for k in range(record.sigma.shape[0]):
        lines.append("{},{},{},{}".format(
            k, _fmt(record.sigma[k]), _fmt(record.theta[k]), _fmt(record.lift[k])))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_orbit(path):
    """(sigma, theta, lift) arrays; the row index must run 0,1,2,..."""
    data = np.loadtxt(path, delimiter=",", ndmin=2)
    if data.shape[1] != 4:
        raise ValueError(f"{path}: expected 4 orbit columns")
    if np.any(data[:, 0] != np.arange(data.shape[0])):
        raise ValueError(f"{path}: orbit rows are not consecutively indexed")
    return data[:, 1], data[:, 2], data[:, 3]
