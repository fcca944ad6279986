"""
Brute-force ground truth for curves in the n-punctured disk.

A multicurve is stored literally as an arc diagram on the horizontal line
through the punctures: an ordered list of tokens along the line (punctures and
crossing points), and two non-crossing perfect matchings of the crossing
points, one drawn in the upper half plane and one in the lower. The line
together with the vertical lines through the punctures cuts the disk into
puncture-free cells, so a diagram with no arc returning to the same segment
is in minimal position with respect to every segment of the line and every
vertical ray through a puncture.

Half twists are applied by explicit rerouting (rotate a disk around the two
punctures, then unwind the collar); ``reduce`` removes bigons one at a time.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

DEFAULT_BUDGET = 200_000


class OracleBudgetError(RuntimeError):
    pass


class TemplateMismatch(ValueError):
    """The explicit curve does not have the shape the chain template predicts."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def budget() -> int:
    return int(os.environ.get("PLATLAB_ORACLE_BUDGET", DEFAULT_BUDGET))


@dataclass
class OracleCurve:
    n: int
    line: list[int]            # punctures are -1..-n, crossing points are ids >= 0
    upper: dict[int, int]
    lower: dict[int, int]
    _ids: itertools.count = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._ids is None:
            start = max((t for t in self.line if t >= 0), default=-1) + 1
            self._ids = itertools.count(start)

    def new_id(self) -> int:
        return next(self._ids)

    def copy(self) -> "OracleCurve":
        c = OracleCurve(self.n, list(self.line), dict(self.upper), dict(self.lower))
        return c

    @property
    def points(self) -> list[int]:
        return [t for t in self.line if t >= 0]

    def crossing_count(self) -> int:
        return len(self.upper)

    def check(self):
        """Assert the diagram is a well-formed planar multicurve."""
        pts = self.points
        assert sorted(-t for t in self.line if t < 0) == list(range(1, self.n + 1))
        assert [t for t in self.line if t < 0] == [-k for k in range(1, self.n + 1)]
        for match in (self.upper, self.lower):
            assert set(match) == set(pts)
            pos = {}
            for i, t in enumerate(pts):
                pos[t] = i
            stack = []
            for t in pts:
                assert match[match[t]] == t and match[t] != t
                if pos[match[t]] > pos[t]:
                    stack.append(t)
                else:
                    assert stack and stack[-1] == match[t], "arcs cross"
                    stack.pop()

    def piece_of(self) -> dict[int, int]:
        """Point id -> index of the line piece it lies on (0 = left ray, n = right ray)."""
        out = {}
        seen = 0
        for t in self.line:
            if t < 0:
                seen += 1
            else:
                out[t] = seen
        return out

    def components(self) -> list[list[int]]:
        """Each component as the cyclic list of its points, leaving each along its upper arc."""
        seen = set()
        comps = []
        for start in self.points:
            if start in seen:
                continue
            comp = []
            p = start
            while True:
                comp.append(p)
                seen.add(p)
                q = self.upper[p]
                comp.append(q)
                seen.add(q)
                p = self.lower[q]
                if p == start:
                    break
            comps.append(comp)
        return comps

    def component_count(self) -> int:
        return len(self.components())


def empty(n: int) -> OracleCurve:
    return OracleCurve(n, [-k for k in range(1, n + 1)], {}, {})


def around(n: int, i: int, j: int) -> OracleCurve:
    """Round curve enclosing the consecutive punctures i..j."""
    if not (1 <= i < j <= n) or (i == 1 and j == n):
        raise ValueError("curve must enclose between 2 and n-1 consecutive punctures")
    line = []
    for k in range(1, n + 1):
        if k == i:
            line.append(0)
        line.append(-k)
        if k == j:
            line.append(1)
    return OracleCurve(n, line, {0: 1, 1: 0}, {0: 1, 1: 0})


def oracle_seed(b: int) -> OracleCurve:
    """The curve around the rightmost lower bridge (punctures 2b-1, 2b)."""
    if b < 3:
        raise ValueError("b must be >= 3")
    return around(2 * b, 2 * b - 1, 2 * b)


# -- reduction ------------------------------------------------------------

def reduce(c: OracleCurve, trace: list[int] | None = None) -> OracleCurve:
    """
    Remove bigons between the curve and the line until none remain. Each step
    deletes two crossing points. Inessential circles and circles parallel to
    the outer boundary are discarded. ``trace`` receives the crossing count
    after each step.
    """
    c = c.copy()
    line = c.line
    prev = {line[i]: line[i - 1] if i else None for i in range(len(line))}
    nxt = {line[i]: line[i + 1] if i + 1 < len(line) else None for i in range(len(line))}
    work = [(line[i], line[i + 1]) for i in range(len(line) - 1)]
    alive = set(line)

    def unlink(t):
        p, q = prev[t], nxt[t]
        if p is not None:
            nxt[p] = q
        if q is not None:
            prev[q] = p
        alive.discard(t)
        return p, q

    while work:
        a, b = work.pop()
        if a not in alive or b not in alive or a < 0 or b < 0 or nxt[a] != b:
            continue
        for same, other in ((c.upper, c.lower), (c.lower, c.upper)):
            if same.get(a) == b:
                break
        else:
            continue
        a2, b2 = other[a], other[b]
        for t in (a, b):
            del same[t], other[t]
        p, _ = unlink(a)
        _, q = unlink(b)
        touched = [p]
        if a2 != b:
            other[a2], other[b2] = b2, a2
            touched += [a2, b2]
        for t in touched:
            if t is None or t not in alive:
                continue
            if prev[t] is not None:
                work.append((prev[t], t))
            if nxt[t] is not None:
                work.append((t, nxt[t]))
        if trace is not None:
            trace.append(len(c.upper))

    head = next(t for t in line if prev.get(t) is None and t in alive)
    out = []
    t = head
    while t is not None:
        out.append(t)
        t = nxt[t]
    c.line = out
    _drop_peripheral(c)
    return c


def _drop_peripheral(c: OracleCurve):
    pieces = c.piece_of()
    for comp in c.components():
        if len(comp) == 2 and {pieces[comp[0]], pieces[comp[1]]} == {0, c.n}:
            for t in comp:
                del c.upper[t], c.lower[t]
            c.line = [t for t in c.line if t not in comp]


def insert_zigzag(c: OracleCurve, p: int) -> OracleCurve:
    """
    Push the upper arc leaving point p down across the line just to its
    right, adding two points and two bigons. The isotopy class is unchanged.
    """
    c = c.copy()
    x, y = c.new_id(), c.new_id()
    u = c.upper[p]
    i = c.line.index(p)
    c.line[i + 1:i + 1] = [x, y]
    c.upper[p], c.upper[x] = x, p
    c.upper[y], c.upper[u] = u, y
    c.lower[x], c.lower[y] = y, x
    return c


def is_reduced(c: OracleCurve) -> bool:
    for a, b in zip(c.line, c.line[1:]):
        if a >= 0 and b >= 0 and (c.upper[a] == b or c.lower[a] == b):
            return False
    return True


# -- half twists ----------------------------------------------------------

def _reflect(c: OracleCurve) -> OracleCurve:
    n = c.n
    line = [-(n + 1 + t) if t < 0 else t for t in reversed(c.line)]
    out = OracleCurve(n, line, dict(c.upper), dict(c.lower), c._ids)
    return out


def _twist_ccw(c: OracleCurve, k: int) -> OracleCurve:
    c = reduce(c)
    line = c.line
    i0, i1 = line.index(-k), line.index(-(k + 1))
    qs = line[i0 + 1:i1]
    ls = [c.new_id() for _ in qs]
    rs = [c.new_id() for _ in qs]
    upper, lower = c.upper, c.lower
    outer_up = [upper[q] for q in qs]
    outer_lo = [lower[q] for q in qs]
    for q, l, r, u, w in zip(qs, ls, rs, outer_up, outer_lo):
        upper[l], upper[u] = u, l
        upper[q], upper[r] = r, q
        lower[q], lower[l] = l, q
        lower[r], lower[w] = w, r
    c.line = line[:i0] + ls + [-k] + qs[::-1] + [-(k + 1)] + rs + line[i1 + 1:]
    return c


def oracle_twist(c: OracleCurve, k: int, t: int = 1) -> OracleCurve:
    """
    Apply t half twists on punctures (k, k+1). Positive t rotates the twist
    disk counterclockwise. The result is reduced.
    """
    if not 1 <= k < c.n:
        raise ValueError(f"pair ({k}, {k + 1}) out of range for n={c.n}")
    limit = budget()
    c = reduce(c)
    for _ in range(abs(t)):
        if t > 0:
            c = _twist_ccw(c, k)
        else:
            c = _reflect(_twist_ccw(_reflect(c), c.n - k))
        c = reduce(c)
        if c.crossing_count() > limit:
            raise OracleBudgetError(f"oracle curve exceeds {limit} crossings")
    return c


def oracle_word(c: OracleCurve, word) -> OracleCurve:
    for k, t in word:
        c = oracle_twist(c, k, t)
    return c


# -- measurements ---------------------------------------------------------

def _sweep(c: OracleCurve):
    """
    Walk the line left to right and yield (token, open_upper, open_lower)
    where the counts are arcs spanning the position just before the token.
    """
    pos = {t: i for i, t in enumerate(c.line)}
    up = lo = 0
    for t in c.line:
        yield t, up, lo
        if t >= 0:
            up += 1 if pos[c.upper[t]] > pos[t] else -1
            lo += 1 if pos[c.lower[t]] > pos[t] else -1


def line_intersections(c: OracleCurve) -> list[int]:
    """Crossings with each line piece 0..n (piece j lies between punctures j and j+1)."""
    counts = [0] * (c.n + 1)
    for piece in c.piece_of().values():
        counts[piece] += 1
    return counts


def vertical_intersections(c: OracleCurve):
    """
    (up, down, between): crossings with the vertical rays above and below
    each puncture 1..n, and the minimal crossing count with a vertical arc
    between punctures j and j+1 for j = 1..n-1.
    """
    up, down = [0] * (c.n + 1), [0] * (c.n + 1)
    between = [None] * c.n
    current = 0
    for t, ou, ol in _sweep(c):
        if t < 0:
            k = -t
            up[k], down[k] = ou, ol
            if k > 1:
                between[k - 1] = min(between[k - 1], ou + ol)
            current = k
            if k < c.n:
                between[k] = ou + ol
        elif 1 <= current < c.n:
            between[current] = min(between[current], ou + ol)
    return up[1:], down[1:], between[1:]


def extract_coords(c: OracleCurve) -> tuple[int, ...]:
    """Integer curve coordinates (a_1..a_{n-2}, b_1..b_{n-2}) of a reduced diagram."""
    c = reduce(c)
    up, down, between = vertical_intersections(c)
    a, b = [], []
    for i in range(1, c.n - 1):
        da = down[i] - up[i]
        db = between[i - 1] - between[i]
        if da % 2 or db % 2:
            raise ValueError("intersection numbers violate parity")
        a.append(da // 2)
        b.append(db // 2)
    return tuple(a + b)


def edge_words(c: OracleCurve) -> list[list[str]]:
    """Per component, the cyclic sequence of line pieces crossed, tagged by the arc taken next."""
    pieces = c.piece_of()
    out = []
    for comp in c.components():
        word = []
        for i, p in enumerate(comp):
            word.append(f"{pieces[p]}{'U' if i % 2 == 0 else 'L'}")
        out.append(word)
    return out


def dumps(c: OracleCurve) -> str:
    lines = [f"n={c.n}"]
    for i, word in enumerate(edge_words(c), start=1):
        lines.append(f"component {i}: " + " ".join(word))
    return "\n".join(lines) + "\n"


# -- censuses -------------------------------------------------------------

def parallel_family_census(c: OracleCurve, b: int, h: int) -> tuple[int, ...]:
    """
    Recover the chain multiplicities N^1..N^h from the explicit curve.

    Chain position j is the circle around punctures (q, q+1), q = j+2b-h-1. A circle around
    (q, q+1) crosses the line pieces q-1 and q+1, so the crossing counts of the
    pieces determine the multiplicities; every piece must be accounted for.
    """
    c = reduce(c)
    n = 2 * b
    if not 1 <= h <= n - 2:
        raise TemplateMismatch(f"no chain template of height {h} for b={b}")
    counts = line_intersections(c)
    N = [0] * (h + 2)  # N[0] and N[h+1] stay zero
    # piece q-1 is crossed by circles (q-2, q-1) and (q, q+1): positions j-2 and j
    for j in range(1, h + 1):
        q = j + 2 * b - h - 1
        if q + 1 > n:
            raise TemplateMismatch(f"chain position {j} lies beyond puncture {n}")
        N[j] = counts[q - 1] - (N[j - 2] if j >= 2 else 0)
        if N[j] < 0:
            raise TemplateMismatch(f"negative multiplicity at chain position {j}", counts)
    predicted = [0] * (n + 1)
    for j in range(1, h + 1):
        q = j + 2 * b - h - 1
        predicted[q - 1] += N[j]
        if q + 1 <= n:
            predicted[q + 1] += N[j]
    if predicted != counts:
        raise TemplateMismatch("line crossings do not match the chain template",
                               {"observed": counts, "predicted": predicted})
    return tuple(N[1:h + 1])


@dataclass(frozen=True)
class EmbeddedGate:
    color: int
    puncture: int
    side: str  # "upper" or "lower"


@dataclass
class Region:
    punctures: tuple[int, ...]
    boundaries: int
    petal_of: int | None = None

    @property
    def kind(self) -> str:
        p, d = len(self.punctures), self.boundaries
        if d == 1 and p == 1:
            return "once-punctured disk"
        if d == 1 and p == 2:
            return "twice-punctured disk"
        if d == 2 and p == 0:
            return "annulus"
        if d == 1 and p == 0:
            return "disk"
        return f"{p}-punctured surface with {d} boundary components"


@dataclass
class RegionReport:
    regions: list[Region]
    gates: list[EmbeddedGate]

    def kinds(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.regions:
            out[r.kind] = out.get(r.kind, 0) + 1
        return out


def _faces(c: OracleCurve, hole: tuple[int, ...]):
    """
    Faces of the complement of the curve. Returns (face_of_puncture, faces) where
    faces maps a face key to (punctures, adjacent component indices, has_hole).
    Arcs also report which face lies directly beneath them via ``under``.
    """
    pts = c.points
    pos = {t: i for i, t in enumerate(c.line)}
    comp_of = {}
    for ci, comp in enumerate(c.components()):
        for p in comp:
            comp_of[p] = ci

    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    adjacency: list[tuple[tuple, int]] = []
    interval_region = []
    stacks = {"U": [("U", None)], "L": [("L", None)]}
    matches = {"U": c.upper, "L": c.lower}
    for t in c.line:
        if t < 0:
            interval_region.append((t, stacks["U"][-1], stacks["L"][-1]))
            continue
        for side in ("U", "L"):
            st, m = stacks[side], matches[side]
            if pos[m[t]] > pos[t]:
                key = (side, min(t, m[t]))
                adjacency.append((st[-1], comp_of[t]))
                adjacency.append((key, comp_of[t]))
                st.append(key)
            else:
                st.pop()
        interval_region.append((None, stacks["U"][-1], stacks["L"][-1]))
    for _, u, l in interval_region:
        union(u, l)
    union(("U", None), ("L", None))

    faces: dict = {}

    def face(key):
        return faces.setdefault(find(key), {"punctures": [], "comps": set(), "hole": False})

    face_of_puncture = {}
    for t, u, _ in interval_region:
        if t is not None:
            k = -t
            face_of_puncture[k] = find(u)
            if k in hole:
                face(u)["hole"] = True
            else:
                face(u)["punctures"].append(k)
    for key, ci in adjacency:
        face(key)["comps"].add(ci)
    for key in list(parent):
        face(key)
    return face_of_puncture, faces


def lab_hole(b: int) -> tuple[int, ...]:
    """Punctures outside the labyrinth: the neighbourhood of the first bridge arc and first gap."""
    return (1, 2, 3)


def outside_punctures(c: OracleCurve, hole=(1, 2, 3)) -> list[int]:
    face_of, faces = _faces(reduce(c), hole)
    hole_faces = {k for k, f in faces.items() if f["hole"]}
    return [k for k in range(1, c.n + 1) if k not in hole and face_of[k] in hole_faces]


def template_gates(c: OracleCurve, b: int, h: int) -> list[EmbeddedGate]:
    """
    Embed the h-1 gates: gate i cuts off the i-th labyrinth puncture (left to
    right) lying outside the curve, by a thin loop around the vertical segment
    from the puncture to the nearest arc; odd colors use the lower side and
    even colors the upper side when that side has an arc over the puncture.
    """
    c = reduce(c)
    outs = outside_punctures(c, lab_hole(b))
    if len(outs) != h - 1:
        raise TemplateMismatch(f"{len(outs)} punctures outside the curve, expected {h - 1}", outs)
    up, down, _ = vertical_intersections(c)
    gates = []
    for color, k in enumerate(outs, start=1):
        side = "lower" if color % 2 else "upper"
        covered = {"upper": up[k - 1], "lower": down[k - 1]}
        if not covered[side]:
            side = "upper" if side == "lower" else "lower"
        if not covered[side]:
            raise TemplateMismatch(f"no arc over puncture {k} to attach gate {color}")
        gates.append(EmbeddedGate(color, k, side))
    return gates


def region_census(c: OracleCurve, gates: list[EmbeddedGate], hole=(1, 2, 3)) -> RegionReport:
    """
    Complementary regions of curve and gates inside the labyrinth (the disk
    minus a neighbourhood of the punctures in ``hole``), typed by puncture
    count and number of boundary components.
    """
    c = reduce(c)
    up, down, _ = vertical_intersections(c)
    face_of, faces = _faces(c, hole)
    regions = {}
    for key, f in faces.items():
        boundaries = len(f["comps"]) + (1 if f["hole"] else 0)
        if boundaries == 0:
            boundaries = 1  # empty curve: the labyrinth's own boundary
        regions[key] = Region(tuple(sorted(f["punctures"])), boundaries)
    petals = []
    used = set()
    for g in gates:
        if g.puncture in used or g.puncture in hole:
            raise ValueError(f"gate {g.color} reuses puncture {g.puncture}")
        if not (up if g.side == "upper" else down)[g.puncture - 1]:
            raise ValueError(f"gate {g.color} has no arc to attach to")
        used.add(g.puncture)
        home = regions[face_of[g.puncture]]
        home.punctures = tuple(p for p in home.punctures if p != g.puncture)
        petals.append(Region((g.puncture,), 1, petal_of=g.color))
    ordered = sorted(regions.values(), key=lambda r: (r.punctures, r.boundaries))
    return RegionReport(ordered + petals, list(gates))
