"""
Integer coordinates for multicurves in the n-punctured disk and the
piecewise-linear action of half twists on them.

Punctures 1..n sit on a horizontal line. For a multicurve in minimal
position, let up_k / down_k count crossings with the vertical rays above and
below puncture k, and v_j the crossings with a vertical arc between punctures
j and j+1. The coordinates are

    a_i = (down_{i+1} - up_{i+1}) / 2,   b_i = (v_i - v_{i+1}) / 2,   i = 1..n-2,

stored as (a_1, ..., a_{n-2}, b_1, ..., b_{n-2}). Python ints keep everything
exact regardless of size.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .plat import PlatSpec, require_valid, row_layout


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _neg(x: int) -> int:
    return x if x < 0 else 0


@dataclass(frozen=True)
class CurveCoords:
    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least 3 punctures")
        if len(self.coords) != 2 * self.n - 4:
            raise ValueError(f"expected {2 * self.n - 4} coordinates, got {len(self.coords)}")

    @property
    def a(self) -> tuple[int, ...]:
        return self.coords[: self.n - 2]

    @property
    def b(self) -> tuple[int, ...]:
        return self.coords[self.n - 2:]

    @property
    def is_empty(self) -> bool:
        return not any(self.coords)


def coords(n: int, a: Sequence[int], b: Sequence[int]) -> CurveCoords:
    return CurveCoords(n, tuple(a) + tuple(b))


def empty(n: int) -> CurveCoords:
    return CurveCoords(n, (0,) * (2 * n - 4))


def seed_curve(b: int) -> CurveCoords:
    """Weight-one curve around punctures 2b-1 and 2b."""
    if b < 3:
        raise ValueError("b must be >= 3")
    n = 2 * b
    bs = [0] * (n - 2)
    bs[-1] = -1
    return coords(n, [0] * (n - 2), bs)


# -- generator action -----------------------------------------------------

def apply_generator(c: CurveCoords, i: int, sign: int = 1) -> CurveCoords:
    """Image of c under one half twist on punctures (i, i+1), counterclockwise for sign=+1."""
    n = c.n
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range 1..{n - 1}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    a, b = list(c.a), list(c.b)
    m = n - 2
    if sign > 0:
        _twist_ccw(a, b, i, m)
    else:
        _twist_cw(a, b, i, m)
    return coords(n, a, b)


def _twist_cw(a, b, i, m):
    if i == 1:
        a1, b1 = a[0], b[0]
        a[0] = -b1 + _pos(a1 + _pos(b1))
        b[0] = a1 + _pos(b1)
    elif i == m + 1:
        a1, b1 = a[m - 1], b[m - 1]
        a[m - 1] = -b1 + _neg(a1 + _neg(b1))
        b[m - 1] = a1 + _neg(b1)
    else:
        j = i - 2  # zero-based index of a_{i-1}
        a0, b0, a1, b1 = a[j], b[j], a[j + 1], b[j + 1]
        c = a0 - a1 - _pos(b1) + _neg(b0)
        a[j] = a0 - _pos(b0) - _pos(_pos(b1) + c)
        b[j] = b1 + _neg(c)
        a[j + 1] = a1 - _neg(b1) - _neg(_neg(b0) - c)
        b[j + 1] = b0 - _neg(c)


def _twist_ccw(a, b, i, m):
    if i == 1:
        a1, b1 = a[0], b[0]
        a[0] = b1 - _pos(_pos(b1) - a1)
        b[0] = _pos(b1) - a1
    elif i == m + 1:
        a1, b1 = a[m - 1], b[m - 1]
        a[m - 1] = b1 - _neg(_neg(b1) - a1)
        b[m - 1] = _neg(b1) - a1
    else:
        j = i - 2
        a0, b0, a1, b1 = a[j], b[j], a[j + 1], b[j + 1]
        d = a0 - a1 + _pos(b1) - _neg(b0)
        a[j] = a0 + _pos(b0) + _pos(_pos(b1) - d)
        b[j] = b1 - _pos(d)
        a[j + 1] = a1 + _neg(b1) + _neg(_neg(b0) + d)
        b[j + 1] = b0 + _pos(d)


BraidWord = list  # [(generator index, nonzero exponent), ...]


def check_word(word: Iterable[tuple[int, int]], n: int) -> list[tuple[int, int]]:
    out = []
    for i, e in word:
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range 1..{n - 1}")
        if e == 0:
            raise ValueError("braid word exponents must be nonzero")
        out.append((i, e))
    return out


def apply_word(c: CurveCoords, word: Iterable[tuple[int, int]]) -> CurveCoords:
    for i, e in check_word(word, c.n):
        s = 1 if e > 0 else -1
        for _ in range(abs(e)):
            c = apply_generator(c, i, s)
    return c


def row_word(spec: PlatSpec, r: int, order: Sequence[int] | None = None) -> list[tuple[int, int]]:
    """Generator powers of row r; ``order`` permutes the regions (columns, 0-based)."""
    pairs = row_layout(spec.b, r).pairs
    row = spec.twists[r - 1]
    cols = range(len(pairs)) if order is None else order
    return [(pairs[c][0], row[c]) for c in cols if row[c]]


def apply_row(c: CurveCoords, spec: PlatSpec, r: int, order: Sequence[int] | None = None) -> CurveCoords:
    """Push the curve through row r: |t| half twists of sign(t) on each region's pair."""
    require_valid(spec, strict=False)
    if not 1 <= r <= spec.rows:
        raise IndexError(f"row {r} out of range 1..{spec.rows}")
    if c.n != 2 * spec.b:
        raise ValueError(f"curve has {c.n} punctures but the plat has {2 * spec.b}")
    return apply_word(c, row_word(spec, r, order))


# -- arcs and intersection numbers ----------------------------------------

@dataclass(frozen=True)
class Arc:
    """A straight segment of the puncture line: beta^i joins 2i-1, 2i; gamma^i joins 2i, 2i+1."""
    kind: str
    index: int

    @property
    def piece(self) -> int:
        """Index j of the line piece between punctures j and j+1."""
        return 2 * self.index - 1 if self.kind == "beta" else 2 * self.index

    def __str__(self):
        return f"{self.kind}{self.index}"


def beta(i: int) -> Arc:
    return Arc("beta", i)


def gamma(i: int) -> Arc:
    return Arc("gamma", i)


def arc_system(b: int) -> list[Arc]:
    """beta^1, gamma^1, beta^2, ..., beta^b in order along the line."""
    out = []
    for i in range(1, b + 1):
        out.append(beta(i))
        if i < b:
            out.append(gamma(i))
    return out


@dataclass(frozen=True)
class StripData:
    """Minimal-position crossing counts recovered from coordinates."""
    verticals: tuple[int, ...]   # v_1..v_{n-1}
    above: tuple[int, ...]       # per puncture 1..n: arcs passing above
    below: tuple[int, ...]
    left_loops: tuple[int, ...]  # loops entering from the left wall, turning right of the puncture
    right_loops: tuple[int, ...]


def strip_data(c: CurveCoords) -> StripData:
    n, a, b = c.n, c.a, c.b
    m = n - 2
    partial = 0
    best = 0
    for i in range(m):
        best = max(best, abs(a[i]) + _pos(b[i]) + partial)
        partial += b[i]
    v = [2 * best]
    for i in range(m):
        v.append(v[-1] - 2 * b[i])
    above, below = [0], [0]
    left, right = [0], [v[0] // 2]
    for i in range(m):
        lf, rt = _pos(b[i]), _pos(-b[i])
        through = v[i] - 2 * lf
        above.append(through // 2 - a[i])
        below.append(through // 2 + a[i])
        left.append(lf)
        right.append(rt)
    above.append(0)
    below.append(0)
    left.append(v[-1] // 2)
    right.append(0)
    return StripData(tuple(v), tuple(above), tuple(below), tuple(left), tuple(right))


def _side_cost(h: int, v: int, up: int, down: int, loops: int) -> int:
    """
    Crossings of one half-segment next to a wall with v points when the line
    meets the wall below its first h points: through-arcs on the wrong side of
    the line must cross, and nested loops ending on this wall cross unless they
    straddle the line.
    """
    centre = up + loops
    return max(0, up - h) + max(0, h - (v - down)) + min(loops, abs(h - centre))


def line_intersections(c: CurveCoords) -> list[int]:
    """
    Minimal crossings with the line pieces 0..n (0 and n are the outer rays).

    Piece j meets only wall j, so its count is minimised independently over
    the height at which the line passes that wall.
    """
    s = strip_data(c)
    n = c.n
    out = [s.right_loops[0]]
    for j in range(1, n):
        v = s.verticals[j - 1]
        # strip of puncture j sees wall j on its right; strip of j+1 on its left
        left = (s.above[j - 1], s.below[j - 1], s.right_loops[j - 1], s.left_loops[j - 1])
        right = (s.above[j], s.below[j], s.left_loops[j], s.right_loops[j])
        candidates = {0, v}
        for up, down, loops, _ in (left, right):
            centre = up + loops
            candidates.update((up, v - down, centre, centre - loops, centre + loops))
        best = min(
            _side_cost(h, v, *left[:3]) + _side_cost(h, v, *right[:3])
            for h in candidates if 0 <= h <= v)
        out.append(best + left[3] + right[3])
    out.append(s.left_loops[n - 1])
    return out


def intersection_number(c: CurveCoords, arc: Arc) -> int:
    if not 1 <= arc.piece <= c.n - 1:
        raise ValueError(f"{arc} is not an arc between punctures for n={c.n}")
    return line_intersections(c)[arc.piece]


def vertical_intersections(c: CurveCoords):
    """(up, down, between) in the same layout as the oracle's measurement."""
    s = strip_data(c)
    up = [s.above[k] + s.left_loops[k] + s.right_loops[k] for k in range(c.n)]
    down = [s.below[k] + s.left_loops[k] + s.right_loops[k] for k in range(c.n)]
    return up, down, list(s.verticals)


def total_weight(c: CurveCoords, limit: int = 10_000_000) -> int:
    """Number of components, found by gluing the strip pieces along the vertical walls."""
    s = strip_data(c)
    n = c.n
    size = sum(s.verticals)
    if size > limit:
        raise OverflowError(f"curve has {size} wall crossings; raise limit to glue it explicitly")
    offsets = [0]
    for v in s.verticals:
        offsets.append(offsets[-1] + v)
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(x, y):
        parent[find(x)] = find(y)

    def node(wall, i):  # wall 1..n-1, position i from the top
        return offsets[wall - 1] + i

    def loops(wall, start, count):
        for t in range(count):
            join(node(wall, start + count - 1 - t), node(wall, start + count + t))

    loops(1, 0, s.right_loops[0])
    loops(n - 1, 0, s.left_loops[n - 1])
    for k in range(2, n):
        lw, rw = k - 1, k
        up, lf, rt = s.above[k - 1], s.left_loops[k - 1], s.right_loops[k - 1]
        for t in range(up):
            join(node(lw, t), node(rw, t))
        loops(lw, up, lf)
        loops(rw, up, rt)
        for t in range(s.below[k - 1]):
            join(node(lw, up + 2 * lf + t), node(rw, up + 2 * rt + t))
    return len({find(x) for x in range(size)})


# -- text dump ------------------------------------------------------------

def dumps(c: CurveCoords) -> str:
    return f"n={c.n}\n" + "".join(f"{x}\n" for x in c.coords)


def loads(text: str) -> CurveCoords:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("coordinate dump must start with 'n=<punctures>'")
    n = int(lines[0][2:])
    return CurveCoords(n, tuple(int(x) for x in lines[1:]))


def random_coords(n: int, rng: random.Random, bound: int = 5) -> CurveCoords:
    """Uniform integer vector; every nonzero vector is the coordinate of a multicurve."""
    return CurveCoords(n, tuple(rng.randint(-bound, bound) for _ in range(2 * n - 4)))
