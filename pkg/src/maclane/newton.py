"""Newton polygons of expansions: exact lower hulls in Q x (Q^k, lex).

Slopes are group elements (ordinate differences scaled by exact rational
abscissa gaps), so all geometry is rational; nothing is floated except the
figure rendering, whose labels stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyval import Poly, PolyError, SupportError, Valuation, phi_expand
from .valuegroup import GroupElement, gmin


class PolygonError(ValueError):
    pass


Point = tuple[Fraction, GroupElement]


def _slope(p: Point, q: Point) -> GroupElement:
    dn = q[0] - p[0]
    if dn <= 0:
        raise PolygonError("slope needs strictly increasing abscissas")
    return (q[1] - p[1]).scale(Fraction(1, 1) / dn)


def lower_hull(points: list[Point]) -> list[Point]:
    """Vertices of the lower convex hull, no collinear interior vertices."""
    best: dict[Fraction, GroupElement] = {}
    for n, a in points:
        n = Fraction(n)
        if a.is_infinite:
            raise PolygonError("hull ordinates must be finite")
        if n not in best or a < best[n]:
            best[n] = a
    pts = sorted(best.items())
    hull: list[Point] = []
    for p in pts:
        while len(hull) >= 2 and not _slope(hull[-2], hull[-1]) < _slope(hull[-1], p):
            hull.pop()
        hull.append(p)
    return hull


@dataclass(frozen=True)
class NewtonPolygon:
    """Vertex list with strictly increasing abscissas and slopes."""

    vertices: tuple[Point, ...]

    @classmethod
    def from_points(cls, points) -> "NewtonPolygon":
        return cls(tuple(lower_hull(list(points))))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def left(self) -> Point:
        if self.is_empty:
            raise PolygonError("empty polygon has no endpoints")
        return self.vertices[0]

    @property
    def right(self) -> Point:
        if self.is_empty:
            raise PolygonError("empty polygon has no endpoints")
        return self.vertices[-1]

    @property
    def length(self) -> Fraction:
        """Abscissa of the right endpoint."""
        return self.right[0]

    def sides(self) -> list[tuple[GroupElement, Fraction]]:
        """(slope, horizontal length) per side, left to right."""
        vs = self.vertices
        return [(_slope(vs[i], vs[i + 1]), vs[i + 1][0] - vs[i][0])
                for i in range(len(vs) - 1)]

    def on_or_above(self, point: Point) -> bool:
        n, a = Fraction(point[0]), point[1]
        vs = self.vertices
        if n < vs[0][0] or n > vs[-1][0]:
            return False
        for p, q in zip(vs, vs[1:]):
            if p[0] <= n <= q[0]:
                span = q[0] - p[0]
                lhs = a.scale(span)
                rhs = p[1].scale(q[0] - n) + q[1].scale(n - p[0])
                return not lhs < rhs
        return a >= vs[0][1] if n == vs[0][0] else True

    def to_json(self):
        return {
            "vertices": [[str(n), a.to_json()] for n, a in self.vertices],
            "sides": [{"slope": s.to_json(), "length": str(l)}
                      for s, l in self.sides()],
        }

    def __str__(self):
        if self.is_empty:
            return "NewtonPolygon(empty)"
        body = " ".join(f"({n},{a})" for n, a in self.vertices)
        return f"NewtonPolygon[{body}]"


@dataclass(frozen=True)
class Component:
    lam: GroupElement
    n_lo: Fraction
    n_hi: Fraction
    intercept: GroupElement


def polygon(mu: Valuation, phi: Poly, g: Poly) -> NewtonPolygon:
    """Lower hull of (i, mu(a_i)) over the nonzero phi-expansion terms of g."""
    if g.is_zero:
        return NewtonPolygon(())
    if not phi.is_monic or phi.degree < 1:
        raise PolygonError("expansion pivot must be monic of degree >= 1")
    points = []
    for i, c in enumerate(phi_expand(g, phi)):
        if c.is_zero:
            continue
        val = mu.evaluate(c)
        if val.is_infinite:
            raise SupportError(
                f"expansion coefficient {c} lies in the support")
        points.append((Fraction(i), val))
    return NewtonPolygon.from_points(points)


def component(N: NewtonPolygon, lam: GroupElement) -> Component:
    """Where the line of slope -lam first touches the polygon from below."""
    if N.is_empty:
        raise PolygonError("component of an empty polygon")
    if lam.is_infinite:
        raise PolygonError("component slope must be finite")
    keyed = [(a + lam.scale(n) if n else a, n) for n, a in N.vertices]
    m = gmin(k for k, _ in keyed)
    touching = [n for k, n in keyed if k == m]
    return Component(lam, min(touching), max(touching), m)


def principal(N: NewtonPolygon, cutoff: GroupElement) -> NewtonPolygon:
    """Sub-polygon of sides with slope strictly below -cutoff.

    With no such side the result is the left endpoint alone.
    """
    if N.is_empty:
        raise PolygonError("principal part of an empty polygon")
    if cutoff.is_infinite:
        raise PolygonError("cutoff must be finite")
    keep = [N.vertices[0]]
    for (slope, _), v in zip(N.sides(), N.vertices[1:]):
        if slope < -cutoff:
            keep.append(v)
        else:
            break
    return NewtonPolygon(tuple(keep))


def polygon_add(N: NewtonPolygon, M: NewtonPolygon) -> NewtonPolygon:
    """Join of side multisets on the summed left endpoint, slopes increasing.

    Adding an empty polygon is an error, not an identity.
    """
    if N.is_empty or M.is_empty:
        raise PolygonError("polygon addition needs nonempty operands")
    n0 = N.left[0] + M.left[0]
    a0 = N.left[1] + M.left[1]
    sides = sorted(N.sides() + M.sides(), key=lambda s: s[0])
    vertices = [(n0, a0)]
    i = 0
    while i < len(sides):
        slope, length = sides[i]
        i += 1
        while i < len(sides) and sides[i][0] == slope:
            length += sides[i][1]
            i += 1
        n, a = vertices[-1]
        vertices.append((n + length, a + slope.scale(length)))
    return NewtonPolygon(tuple(vertices))


def is_one_sided(N: NewtonPolygon, lam: GroupElement) -> bool:
    """Single side of slope -lam spanning abscissas 0 to something positive."""
    if N.is_empty:
        raise PolygonError("one-sidedness of an empty polygon")
    comp = component(N, lam)
    return (comp.n_lo == N.left[0] and comp.n_hi == N.right[0]
            and comp.n_lo == 0 and comp.n_hi > 0)


# -- rendering ----------------------------------------------------------------


def _project(a: GroupElement, coord: int) -> Fraction:
    return a.coords[coord]


def render_ascii(N: NewtonPolygon, *, coord: int = 0, width: int = 57,
                 height: int = 17) -> str:
    """Deterministic character plot; rank >= 2 ordinates are projected."""
    if N.is_empty:
        return "(empty polygon)\n"
    pts = [(n, _project(a, coord)) for n, a in N.vertices]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = (x_hi - x_lo) or Fraction(1)
    y_span = (y_hi - y_lo) or Fraction(1)

    def cell(x, y):
        cx = int((x - x_lo) / x_span * (width - 1))
        cy = int((y - y_lo) / y_span * (height - 1))
        return (height - 1 - cy), cx

    grid = [[" "] * width for _ in range(height)]
    steps = width * 2
    for p, q in zip(pts, pts[1:]):
        for k in range(steps + 1):
            x = p[0] + (q[0] - p[0]) * k / steps
            y = p[1] + (q[1] - p[1]) * k / steps
            r, c = cell(x, y)
            if grid[r][c] == " ":
                grid[r][c] = "*"
    for x, y in pts:
        r, c = cell(x, y)
        grid[r][c] = "o"
    lines = ["".join(row).rstrip() for row in grid]
    labels = " ".join(f"({n},{a})" for n, a in N.vertices)
    slopes = ", ".join(str(s) for s, _ in N.sides()) or "none"
    note = "" if all(a.rank == 1 for _, a in N.vertices) else \
        f" [ordinates projected to coordinate {coord}]"
    lines.append(f"vertices: {labels}{note}")
    lines.append(f"slopes: {slopes}")
    return "\n".join(lines) + "\n"


def render_svg(N: NewtonPolygon, *, coord: int = 0, width: int = 440,
               height: int = 320) -> str:
    """Deterministic standalone SVG with exact vertex and slope labels."""
    if N.is_empty:
        return ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
                '<text x="10" y="20">empty polygon</text></svg>' % (width, height))
    pts = [(n, _project(a, coord)) for n, a in N.vertices]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = (x_hi - x_lo) or Fraction(1)
    y_span = (y_hi - y_lo) or Fraction(1)
    pad = 44

    def sx(x):
        return float(pad + (x - x_lo) / x_span * (width - 2 * pad))

    def sy(y):
        return float(height - pad - (y - y_lo) / y_span * (height - 2 * pad))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" '
        f'y2="{height - pad}" stroke="black" stroke-width="1"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" '
        'stroke="black" stroke-width="1"/>',
    ]
    path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
    if len(pts) > 1:
        out.append(f'<polyline points="{path}" fill="none" stroke="#1f4e9c" '
                   'stroke-width="2"/>')
    for (n, a), (x, y) in zip(N.vertices, pts):
        out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3.5" '
                   'fill="#1f4e9c"/>')
        out.append(f'<text x="{sx(x) + 6:.2f}" y="{sy(y) - 6:.2f}" '
                   f'font-size="11">({n},{a})</text>')
    for (slope, _), (p, q) in zip(N.sides(), zip(pts, pts[1:])):
        mx = (sx(p[0]) + sx(q[0])) / 2
        my = (sy(p[1]) + sy(q[1])) / 2
        out.append(f'<text x="{mx:.2f}" y="{my + 14:.2f}" font-size="11" '
                   f'fill="#444">slope {slope}</text>')
    if any(a.rank != 1 for _, a in N.vertices):
        out.append(f'<text x="{pad}" y="{pad - 18}" font-size="11" '
                   f'fill="#a00">ordinates projected to coordinate {coord}'
                   '</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(N: NewtonPolygon, fmt: str = "svg", **kw) -> str:
    if fmt == "svg":
        return render_svg(N, **kw)
    if fmt in ("ascii", "text"):
        return render_ascii(N, **kw)
    raise PolygonError(f"unknown render format {fmt!r}")
