"""Composite Gauss-Legendre rules on fixed panel decompositions.

The switched-table construction needs three things from a quadrature rule:
values of integrals over the whole interval, running integrals at the panel
edges, and running integrals at arbitrary interior points (for evaluating
phi(s) and gamma(s) between edges). A fixed panel layout shared by all of
these keeps every evaluation a plain dot product and makes refinement checks
(same layout, split panels) meaningful.
"""

from __future__ import annotations

import numpy as np

__all__ = ["PanelQuadrature", "zone_panels"]


class PanelQuadrature:
    """Gauss-Legendre rule of fixed order on a strictly increasing edge set."""

    def __init__(self, edges, order: int = 16):
        edges = np.asarray(edges, dtype=np.float64)
        if edges.ndim != 1 or edges.size < 2:
            raise ValueError("edges must be a 1-D array with at least 2 entries")
        if not np.all(np.isfinite(edges)):
            raise ValueError("edges must be finite")
        if not np.all(np.diff(edges) > 0.0):
            raise ValueError("edges must be strictly increasing")
        if order < 2:
            raise ValueError("order must be >= 2")
        x, w = np.polynomial.legendre.leggauss(order)
        half = 0.5 * np.diff(edges)
        # nodes[i, k] = k-th node of panel i
        self.nodes = edges[:-1, None] + half[:, None] * (x[None, :] + 1.0)
        self.weights = half[:, None] * w[None, :]
        self.edges = edges
        self.order = int(order)
        self._x = x
        self._w = w

    @property
    def npanels(self) -> int:
        return self.edges.size - 1

    @property
    def flat_nodes(self) -> np.ndarray:
        return self.nodes.reshape(-1)

    def integrate(self, vals) -> complex | float:
        """Integral over [edges[0], edges[-1]] from values at self.nodes."""
        vals = np.asarray(vals)
        if vals.shape[-2:] != self.nodes.shape:
            vals = vals.reshape(vals.shape[:-1] + self.nodes.shape)
        return np.einsum("...ik,ik->...", vals, self.weights)

    def prefix(self, vals) -> np.ndarray:
        """Running integral at every edge; prefix[0] = 0."""
        vals = np.asarray(vals)
        if vals.shape != self.nodes.shape:
            vals = vals.reshape(self.nodes.shape)
        per_panel = np.einsum("ik,ik->i", vals, self.weights)
        out = np.empty(self.npanels + 1, dtype=per_panel.dtype)
        out[0] = 0.0
        np.cumsum(per_panel, out=out[1:])
        return out

    def cumulative(self, f, s, prefix: np.ndarray | None = None):
        """Running integral of f at arbitrary points s in [edges[0], edges[-1]].

        f must accept an array of nodes and return values of matching shape.
        Passing a precomputed prefix (from values of the same f) avoids
        re-evaluating f on the full rule.
        """
        s = np.asarray(s, dtype=np.float64)
        scalar = s.ndim == 0
        shape = s.shape
        s = np.atleast_1d(s).ravel()
        lo, hi = self.edges[0], self.edges[-1]
        if np.any(s < lo - 1e-12) or np.any(s > hi + 1e-12):
            raise ValueError("cumulative points outside the panel range")
        s = np.clip(s, lo, hi)
        if prefix is None:
            prefix = self.prefix(f(self.nodes))
        j = np.searchsorted(self.edges, s, side="right") - 1
        np.clip(j, 0, self.npanels - 1, out=j)
        a = self.edges[j]
        half = 0.5 * (s - a)
        part_nodes = a[:, None] + half[:, None] * (self._x[None, :] + 1.0)
        part = np.einsum("ik,ik->i", np.asarray(f(part_nodes)),
                         half[:, None] * self._w[None, :])
        out = prefix[j] + part
        return out[0] if scalar else out.reshape(shape)

    def refined(self, k: int = 2) -> "PanelQuadrature":
        """Same span with every panel split into k equal parts."""
        if k < 2:
            raise ValueError("k must be >= 2")
        a = self.edges[:-1]
        steps = np.diff(self.edges) / k
        inner = a[:, None] + steps[:, None] * np.arange(k)[None, :]
        edges = np.append(inner.reshape(-1), self.edges[-1])
        return PanelQuadrature(edges, self.order)


def zone_panels(zone_edges, target_h: float, min_per_zone: int = 2) -> np.ndarray:
    """Panel edges subdividing each zone to width <= target_h.

    Zone boundaries always remain panel edges, so integrands that are smooth
    only piecewise across zones are never integrated across a breakpoint.
    """
    zone_edges = np.asarray(zone_edges, dtype=np.float64)
    if zone_edges.ndim != 1 or zone_edges.size < 2:
        raise ValueError("zone_edges must be a 1-D array with at least 2 entries")
    if not np.all(np.diff(zone_edges) > 0.0):
        raise ValueError("zone_edges must be strictly increasing")
    if not target_h > 0.0:
        raise ValueError("target_h must be positive")
    pieces = []
    for a, b in zip(zone_edges[:-1], zone_edges[1:]):
        n = max(int(np.ceil((b - a) / target_h)), int(min_per_zone))
        pieces.append(np.linspace(a, b, n + 1)[:-1])
    return np.append(np.concatenate(pieces), zone_edges[-1])
