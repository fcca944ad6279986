"""
Plat links: the (h, b) twist-grid datum, its validation, serialization and
diagram-level invariants (bridge distance, component count, PD code).

Punctures/strand positions are numbered 1..2b from left to right. Rows of
twist regions are numbered 1..h-1 from the bottom. Odd rows act on the pairs
(2i, 2i+1), i = 1..b-1; even rows act on the pairs (2i+1, 2i+2), i = 1..b-2.
Row r carries the sign (-1)**(r+1) in the alternating (strict) setting, so the
bottom row is positive.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class InvalidSpecError(ValueError):
    """Raised when a PlatSpec fails validation; carries the report."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(report.violations) or "invalid plat spec")


@dataclass(frozen=True)
class PlatSpec:
    b: int
    h: int
    twists: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(tuple(int(t) for t in row) for row in self.twists))

    @property
    def rows(self) -> int:
        return len(self.twists)

    def entries(self) -> Iterable[tuple[int, int, int]]:
        """Yield (row, column, t) with 1-based row and column indices."""
        for r, row in enumerate(self.twists, start=1):
            for c, t in enumerate(row, start=1):
                yield r, c, t

    def crossing_count(self) -> int:
        return sum(abs(t) for _, _, t in self.entries())

    def spec_id(self) -> str:
        body = "_".join(".".join(str(t) for t in row) for row in self.twists)
        return f"b{self.b}h{self.h}:{body}"


def row_width(b: int, r: int) -> int:
    return b - 1 if r % 2 == 1 else b - 2


def row_sign(r: int) -> int:
    """Sign of the twist regions of row r in the alternating setting."""
    return 1 if r % 2 == 1 else -1


@dataclass(frozen=True)
class RowLayout:
    r: int
    pairs: tuple[tuple[int, int], ...]


def row_layout(b: int, r: int) -> RowLayout:
    if r % 2 == 1:
        pairs = tuple((2 * i, 2 * i + 1) for i in range(1, b))
    else:
        pairs = tuple((2 * i + 1, 2 * i + 2) for i in range(1, b - 1))
    return RowLayout(r, pairs)


@dataclass
class ValidationReport:
    strict: bool
    violations: list[str] = field(default_factory=list)
    shape_ok: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(spec: PlatSpec, strict: bool = True) -> ValidationReport:
    """
    Check a spec. Grid-shape problems are always reported; strict mode also
    requires the square, 2-twisted, alternating-sign hypotheses.
    """
    report = ValidationReport(strict=strict)
    v = report.violations
    if spec.b < 3:
        v.append(f"b must be >= 3 (got {spec.b})")
    if spec.h < 1:
        v.append(f"h must be >= 1 (got {spec.h})")
    if spec.rows != spec.h - 1:
        v.append(f"row count must be h-1={spec.h - 1} (got {spec.rows})")
    for r, row in enumerate(spec.twists, start=1):
        want = row_width(spec.b, r)
        if len(row) != want:
            v.append(f"row {r} must have width {want} (got {len(row)})")
    report.shape_ok = not v
    if not strict:
        return report

    if spec.h != 2 * spec.b - 4:
        v.append(f"not square: h={spec.h} but 2b-4={2 * spec.b - 4}")
    if spec.h % 2:
        v.append("h must be even so the top row is positive")
    for r, c, t in spec.entries():
        if abs(t) < 2:
            v.append(f"row {r} region {c}: |t|={abs(t)} < 2")
        elif (t > 0) != (row_sign(r) > 0):
            v.append(f"row {r} region {c}: sign of t={t} breaks alternation")
    return report


def require_valid(spec: PlatSpec, strict: bool = True) -> PlatSpec:
    report = validate(spec, strict)
    if not report.ok:
        raise InvalidSpecError(report)
    return spec


def bridge_distance(h: int, b: int) -> int:
    """Bridge distance ceil(h / (2b - 4)) of the canonical bridge sphere."""
    if b <= 2:
        raise ValueError(f"bridge distance needs b >= 3 (got b={b})")
    if h < 1:
        raise ValueError(f"height must be >= 1 (got h={h})")
    return -(-h // (2 * b - 4))


# -- permutations ---------------------------------------------------------
# A permutation of {1..n} is stored as a tuple p with p[x-1] = image of x.

def _identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def _compose(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """f after g."""
    return tuple(f[g[x] - 1] for x in range(len(g)))


def _inverse(f: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(f)
    for x, y in enumerate(f, start=1):
        inv[y - 1] = x
    return tuple(inv)


def cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x - 1]
        out.append(tuple(cyc))
    return out


def row_permutation(spec: PlatSpec, r: int) -> tuple[int, ...]:
    """Permutation of strand positions induced by row r (odd entries swap)."""
    require_valid(spec, strict=False)
    if not 1 <= r <= spec.rows:
        raise IndexError(f"row {r} out of range 1..{spec.rows}")
    perm = list(_identity(2 * spec.b))
    for (p, q), t in zip(row_layout(spec.b, r).pairs, spec.twists[r - 1]):
        if t % 2:
            perm[p - 1], perm[q - 1] = q, p
    return tuple(perm)


def strand_permutation(spec: PlatSpec) -> tuple[int, ...]:
    """Bottom position -> top position of each braid strand."""
    perm = _identity(2 * spec.b)
    for r in range(1, spec.rows + 1):
        perm = _compose(row_permutation(spec, r), perm)
    return perm


def _bridge_involution(b: int) -> tuple[int, ...]:
    return tuple(x + 1 if x % 2 else x - 1 for x in range(1, 2 * b + 1))


def closure_permutation(spec: PlatSpec) -> tuple[int, ...]:
    """T o (pi o B o pi^-1); its cycles pair up, two per link component."""
    pi = strand_permutation(spec)
    bridges = _bridge_involution(spec.b)
    p = _compose(pi, _compose(bridges, _inverse(pi)))
    return _compose(bridges, p)


def component_count(spec: PlatSpec) -> int:
    n = len(cycles(closure_permutation(spec)))
    assert n % 2 == 0, "closure permutation must have an even number of cycles"
    return n // 2


def family_for_k(b: int, k: int, base_t: int = 2) -> PlatSpec:
    """
    Square alternating spec with k components: b-k odd regions in the top row,
    every other region even.
    """
    if b < 3:
        raise ValueError(f"b must be >= 3 (got {b})")
    if not 1 <= k <= b:
        raise ValueError(f"k must lie in 1..{b} (got {k})")
    if base_t < 2:
        raise ValueError(f"base_t must be >= 2 (got {base_t})")
    even = base_t + base_t % 2
    odd = base_t if base_t % 2 else base_t + 1
    h = 2 * b - 4
    rows = []
    for r in range(1, h):
        width = row_width(b, r)
        mags = [even] * width
        if r == h - 1:
            for c in range(b - k):
                mags[c] = odd
        rows.append(tuple(row_sign(r) * m for m in mags))
    return PlatSpec(b, h, tuple(rows))


def uniform_square(b: int, t: int = 2) -> PlatSpec:
    """Square alternating spec with every region carrying |t| half twists."""
    h = 2 * b - 4
    return PlatSpec(b, h, tuple(
        tuple(row_sign(r) * abs(t) for _ in range(row_width(b, r))) for r in range(1, h)))


# -- PD code --------------------------------------------------------------

def braid_word(spec: PlatSpec) -> list[tuple[int, int]]:
    """(generator, exponent) per region, bottom row first; generator i swaps i, i+1."""
    word = []
    for r in range(1, spec.rows + 1):
        for (p, _), t in zip(row_layout(spec.b, r).pairs, spec.twists[r - 1]):
            if t:
                word.append((p, t))
    return word


def export_pd(spec: PlatSpec) -> list[tuple[int, int, int, int]]:
    """
    Planar diagram code of the plat closure, one 4-tuple per crossing.

    Each tuple starts at the incoming under-edge and lists edges
    counterclockwise. For a positive half twist the strand running from
    lower-left to upper-right passes over. Crossingless components are
    omitted.
    """
    require_valid(spec, strict=False)
    n = 2 * spec.b
    parent: dict[int, int] = {}

    def find(e: int) -> int:
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def new_edge() -> int:
        e = len(parent)
        parent[e] = e
        return e

    current = [0] * (n + 1)
    for i in range(1, spec.b + 1):
        e = new_edge()
        current[2 * i - 1] = current[2 * i] = e
    # slots: 0 bottom-left, 1 bottom-right, 2 top-left, 3 top-right
    crossings: list[tuple[list[int], int]] = []
    for p, t in braid_word(spec):
        sign = 1 if t > 0 else -1
        for _ in range(abs(t)):
            a, bb = current[p], current[p + 1]
            c, d = new_edge(), new_edge()
            crossings.append(([a, bb, c, d], sign))
            current[p], current[p + 1] = c, d
    for i in range(1, spec.b + 1):
        x, y = find(current[2 * i - 1]), find(current[2 * i])
        if x != y:
            parent[x] = y

    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, (slots, _) in enumerate(crossings):
        for s, e in enumerate(slots):
            ends.setdefault(find(e), []).append((ci, s))
    opposite = {0: 3, 3: 0, 1: 2, 2: 1}

    label: dict[int, int] = {}
    incoming: dict[tuple[int, int], bool] = {}
    next_label = 1
    for start in sorted(ends):
        if start in label:
            continue
        # enter the crossing at the first end of this edge
        ci, s = ends[start][0]
        e = start
        while e not in label:
            label[e] = next_label
            next_label += 1
            incoming[(ci, s)] = True
            s_out = opposite[s]
            incoming[(ci, s_out)] = False
            e = find(crossings[ci][0][s_out])
            a_end, b_end = ends[e]
            ci, s = b_end if a_end == (ci, s_out) else a_end

    pd = []
    for ci, (slots, sign) in enumerate(crossings):
        lab = [label[find(e)] for e in slots]
        a, bb, c, d = lab
        if sign > 0:  # under strand joins bottom-right and top-left
            tup = (bb, d, c, a) if incoming[(ci, 1)] else (c, a, bb, d)
        else:  # under strand joins bottom-left and top-right
            tup = (a, bb, d, c) if incoming[(ci, 0)] else (d, c, a, bb)
        pd.append(tup)
    return pd


def pd_component_count(pd: Sequence[Sequence[int]]) -> int:
    """Number of link components traced through a PD code."""
    parent = {e: e for x in pd for e in x}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for x in pd:
        for u, v in ((x[0], x[2]), (x[1], x[3])):
            parent[find(u)] = find(v)
    return len({find(e) for e in parent})


# -- serialization --------------------------------------------------------

def dumps(spec: PlatSpec) -> str:
    rows = ",\n".join("    [" + ", ".join(str(t) for t in row) + "]" for row in spec.twists)
    body = f"[\n{rows}\n  ]" if spec.twists else "[]"
    return f'{{\n  "b": {spec.b},\n  "h": {spec.h},\n  "twists": {body}\n}}\n'


def loads(text: str) -> PlatSpec:
    data = json.loads(text)
    try:
        b, h, twists = data["b"], data["h"], data["twists"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"spec document missing field: {exc}") from None
    if not (isinstance(b, int) and isinstance(h, int) and isinstance(twists, list)
            and all(isinstance(row, list) and all(isinstance(t, int) for t in row) for row in twists)):
        raise ValueError("spec fields have wrong types")
    return PlatSpec(b, h, tuple(tuple(row) for row in twists))


CSV_COLUMNS = ("spec-id", "b", "h", "components", "distance", "strict-valid")


def invariant_row(spec: PlatSpec) -> dict:
    shape = validate(spec, strict=False).ok
    return {
        "spec-id": spec.spec_id(),
        "b": spec.b,
        "h": spec.h,
        "components": component_count(spec) if shape else "",
        "distance": bridge_distance(spec.h, spec.b) if spec.b >= 3 and spec.h >= 1 else "",
        "strict-valid": validate(spec, strict=True).ok,
    }


def invariants_csv(specs: Iterable[PlatSpec]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for spec in specs:
        writer.writerow(invariant_row(spec))
    return buf.getvalue()
