"""Real phase portraits rendered to SVG.

The only floating-point module in the package: streamlines are integrated
with an embedded Runge-Kutta-Fehlberg 4(5) pair on the unit-normalized
direction field, arc-length parametrized, started from a seed grid and
stopped at the viewport boundary, near a singular point, or at the arc
budget.  Output is plain SVG 1.1 written with fixed number formatting, so
identical inputs produce identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .foliation import AVARS, Foliation
from .poly import Polynomial, squarefree_part


@dataclass(frozen=True)
class PortraitConfig:
    xmin: float = -2.0
    xmax: float = 2.0
    ymin: float = -2.0
    ymax: float = 2.0
    seed_density: int = 9
    min_step: float = 1e-10
    max_step: float = 0.02
    tolerance: float = 1e-9
    max_arc_length: float = 10.0
    stop_radius: float = 0.02
    width: int = 480
    height: int = 480

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("empty viewport")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.seed_density < 1:
            raise ValueError("seed density must be at least 1")

    @classmethod
    def from_dict(cls, d: Dict) -> "PortraitConfig":
        known = {f for f in cls.__dataclass_fields__}
        bad = set(d) - known
        if bad:
            raise ValueError("unknown portrait config keys: %s"
                             % ", ".join(sorted(bad)))
        return cls(**d)


@dataclass
class Polyline:
    points: List[Tuple[float, float]]
    truncated: bool = False  # step underflow near a degenerate locus


def orthogonal_foliation(F: Foliation, chart: str = "Z") -> Foliation:
    """(P dx + Q dy) -> (-Q dx + P dy); the degree is recomputed."""
    aff = F.affine(chart)
    return Foliation.from_affine(-aff.Q, aff.P, chart)


def _compile(p: Polynomial):
    terms = [(i, j, float(c)) for (i, j), c in sorted(p.terms.items())]

    def ev(x: float, y: float) -> float:
        s = 0.0
        for i, j, c in terms:
            s += c * (x ** i) * (y ** j)
        return s

    return ev


def _real_singular_points(F: Foliation, cfg: PortraitConfig):
    """Float positions of the real singular points inside the viewport."""
    from .singular import singular_points
    pts = []
    for o in singular_points(F):
        if o.chart != "Z":
            continue
        roots = _real_roots(o.minpoly)
        for xs in roots:
            ys = _y_above(o, xs)
            for yv in ys:
                x0 = xs - o.shear * yv
                pts.append((x0, yv))
    return pts


def _real_roots(p: Polynomial) -> List[float]:
    """Real roots of a univariate rational polynomial by sign bisection."""
    p = squarefree_part(p)
    var = [v for v in p.vars if p.degree_in(v) > 0]
    if not var:
        return []
    var = var[0]
    coeffs = [float(c.constant_value()) for c in p.as_univariate(var)]

    def ev(t):
        s = 0.0
        for c in reversed(coeffs):
            s = s * t + c
        return s

    bound = 1.0 + max(abs(c) for c in coeffs[:-1]) / abs(coeffs[-1]) \
        if len(coeffs) > 1 else 1.0
    grid = 4096
    roots = []
    prev_t, prev_v = -bound, ev(-bound)
    for k in range(1, grid + 1):
        t = -bound + 2 * bound * k / grid
        v = ev(t)
        if v == 0.0:
            roots.append(t)
        elif prev_v * v < 0:
            a, b = prev_t, t
            fa = prev_v
            for _ in range(80):
                m = 0.5 * (a + b)
                fm = ev(m)
                if fa * fm <= 0:
                    b = m
                else:
                    a, fa = m, fm
            roots.append(0.5 * (a + b))
        prev_t, prev_v = t, v
    return roots


def _y_above(orbit, xs: float) -> List[float]:
    y = orbit.y_expr
    if isinstance(y, Fraction):
        return [float(y)]
    # y is a polynomial expression in the x-root
    vals = 0.0
    acc = 0.0
    power = 1.0
    for c in y.coeffs:
        acc += float(c) * power
        power *= xs
    return [acc]


def integrate_streamlines(F: Foliation, cfg: PortraitConfig) -> List[Polyline]:
    """Deterministic streamline set for the chart Z = 1 direction field."""
    aff = F.affine("Z")
    fP = _compile(aff.P)
    fQ = _compile(aff.Q)
    sing = _real_singular_points(F, cfg)

    def direction(x, y):
        u, v = fQ(x, y), -fP(x, y)
        n = math.hypot(u, v)
        if n == 0.0:
            return None
        return (u / n, v / n)

    w = cfg.xmax - cfg.xmin
    h = cfg.ymax - cfg.ymin
    margin = 0.02
    seeds = []
    n = cfg.seed_density
    for i in range(n):
        for j in range(n):
            seeds.append((cfg.xmin + w * (i + 0.5) / n,
                          cfg.ymin + h * (j + 0.5) / n))
    out = []
    for seed in seeds:
        for sign in (1.0, -1.0):
            pl = _integrate_one(direction, seed, sign, cfg, sing,
                                (cfg.xmin - margin * w, cfg.xmax + margin * w,
                                 cfg.ymin - margin * h, cfg.ymax + margin * h))
            if pl is not None and len(pl.points) > 1:
                out.append(pl)
    return out


# Fehlberg 4(5) coefficients
_A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)
_B5 = (16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)
_B4 = (25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0)

# the public tolerance is a drift budget; the integrator runs two orders
# of magnitude tighter so conserved quantities stay within 10x tolerance
_SAFETY = 0.01


def _integrate_one(direction, seed, sign, cfg, sing, box):
    x, y = seed
    d0 = direction(x, y)
    if d0 is None:
        return None
    pts = [(x, y)]
    arc = 0.0
    hstep = cfg.max_step
    truncated = False
    budget = cfg.tolerance * _SAFETY
    guard = 0
    while arc < cfg.max_arc_length:
        guard += 1
        if guard > 200000:
            truncated = True
            break
        ks = []
        ok = True
        for stage in range(6):
            xs = x
            ys = y
            for coef, (kx, ky) in zip(_A[stage], ks):
                xs += hstep * coef * kx
                ys += hstep * coef * ky
            d = direction(xs, ys)
            if d is None:
                ok = False
                break
            ks.append((sign * d[0], sign * d[1]))
        if not ok:
            truncated = True
            break
        x5 = x + hstep * sum(b * k[0] for b, k in zip(_B5, ks))
        y5 = y + hstep * sum(b * k[1] for b, k in zip(_B5, ks))
        x4 = x + hstep * sum(b * k[0] for b, k in zip(_B4, ks))
        y4 = y + hstep * sum(b * k[1] for b, k in zip(_B4, ks))
        err = math.hypot(x5 - x4, y5 - y4)
        tol_here = budget * hstep
        if err > tol_here and hstep > cfg.min_step:
            hstep = max(cfg.min_step,
                        0.9 * hstep * (tol_here / err) ** 0.2)
            continue
        x, y = x5, y5
        arc += hstep
        pts.append((x, y))
        if err > 0:
            hstep = min(cfg.max_step,
                        max(cfg.min_step,
                            0.9 * hstep * (tol_here / err) ** 0.2))
        else:
            hstep = cfg.max_step
        if not (box[0] <= x <= box[1] and box[2] <= y <= box[3]):
            break
        if any(math.hypot(x - sx, y - sy) < cfg.stop_radius
               for sx, sy in sing):
            break
        if hstep <= cfg.min_step and err > tol_here:
            truncated = True
            break
    return Polyline(points=pts, truncated=truncated)


# -- SVG output --------------------------------------------------------------------


def _fmt(v: float) -> str:
    return "%.2f" % v


def render_svg(polylines: Sequence[Polyline], cfg: PortraitConfig,
               title: Optional[str] = None) -> str:
    """A standalone SVG 1.1 document; byte-deterministic for fixed input."""
    W, H = cfg.width, cfg.height
    w = cfg.xmax - cfg.xmin
    h = cfg.ymax - cfg.ymin

    def px(p):
        return ((p[0] - cfg.xmin) / w * W, (cfg.ymax - p[1]) / h * H)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%d" height="%d" viewBox="0 0 %d %d">' % (W, H, W, H),
        '<rect width="%d" height="%d" fill="white"/>' % (W, H),
    ]
    # axes when they cross the viewport
    if cfg.xmin < 0 < cfg.xmax:
        x0 = px((0.0, 0.0))[0]
        parts.append('<line x1="%s" y1="0" x2="%s" y2="%d" '
                     'stroke="#cccccc" stroke-width="1"/>'
                     % (_fmt(x0), _fmt(x0), H))
    if cfg.ymin < 0 < cfg.ymax:
        y0 = px((0.0, 0.0))[1]
        parts.append('<line x1="0" y1="%s" x2="%d" y2="%s" '
                     'stroke="#cccccc" stroke-width="1"/>'
                     % (_fmt(y0), W, _fmt(y0)))
    for pl in polylines:
        if len(pl.points) < 2:
            continue
        coords = [px(p) for p in pl.points]
        d = "M %s %s" % (_fmt(coords[0][0]), _fmt(coords[0][1]))
        last = coords[0]
        for c in coords[1:]:
            if abs(c[0] - last[0]) < 0.35 and abs(c[1] - last[1]) < 0.35:
                continue
            d += " L %s %s" % (_fmt(c[0]), _fmt(c[1]))
            last = c
        parts.append('<path d="%s" fill="none" stroke="black" '
                     'stroke-width="0.8"/>' % d)
    if title:
        parts.append('<text x="8" y="16" font-family="monospace" '
                     'font-size="12">%s</text>' % title)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_portrait(F: Foliation, cfg: PortraitConfig,
                    title: Optional[str] = None) -> str:
    return render_svg(integrate_streamlines(F, cfg), cfg, title)


def render_pair(F: Foliation, G: Foliation, cfg: PortraitConfig,
                titles: Tuple[str, str]) -> str:
    """Two portraits side by side in one document."""
    left = render_svg(integrate_streamlines(F, cfg), cfg, titles[0])
    right = render_svg(integrate_streamlines(G, cfg), cfg, titles[1])

    def body(doc):
        lines = doc.strip().split("\n")
        return "\n".join(lines[2:-1])

    W, H = cfg.width, cfg.height
    return "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%d" height="%d" viewBox="0 0 %d %d">' % (2 * W + 16, H,
                                                         2 * W + 16, H),
        '<g>%s</g>' % body(left),
        '<g transform="translate(%d,0)">%s</g>' % (W + 16, body(right)),
        "</svg>",
    ]) + "\n"


def polylines_json(polylines: Sequence[Polyline]) -> list:
    return [{"truncated": pl.truncated,
             "points": [[_fmt(x), _fmt(y)] for x, y in pl.points]}
            for pl in polylines]
