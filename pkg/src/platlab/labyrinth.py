"""
The labyrinth: the propagated boundary curve at the top level, its chain
normal form N^1..N^h, the gates, and the colored-track signatures.

Chain position j (1 <= j <= h) is the circle family around punctures
(j+3, j+4) in a square spec; in general the template is shifted so that
position h sits on the last pair (2b-1, 2b). Odd positions sit on the gaps
gamma^2, gamma^3, ... and are undercircles; even positions sit on the
bridges beta^3, ..., beta^b.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import curves, oracle
from .plat import PlatSpec, require_valid, row_layout


class ChainTemplateError(ValueError):
    """A twist region feeds circles outside the chain template."""

    def __init__(self, row: int, pair: tuple[int, int], message: str):
        self.row = row
        self.pair = pair
        super().__init__(f"row {row}, pair {pair}: {message}")


def chain_offset(b: int | None = None, h: int | None = None) -> int:
    """Puncture index just left of position 1; the template ends at the pair (2b-1, 2b)."""
    if b is None or h is None:
        return 3
    return 2 * b - h - 1


def chain_position(pair: tuple[int, int], b: int | None = None, h: int | None = None) -> int:
    return pair[0] - chain_offset(b, h)


def position_pair(j: int, b: int | None = None, h: int | None = None) -> tuple[int, int]:
    k = chain_offset(b, h)
    return (j + k, j + k + 1)


@dataclass(frozen=True)
class ChainNormalForm:
    N: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "N", tuple(int(x) for x in self.N))
        if not self.N:
            raise ValueError("normal form needs at least one circle")
        if any(x < 1 for x in self.N):
            raise ValueError(f"multiplicities must be positive (got {self.N})")

    @property
    def h(self) -> int:
        return len(self.N)

    @property
    def gate_count(self) -> int:
        return self.h - 1

    @property
    def crossings(self) -> list[tuple[int, int]]:
        """(under, over) chain positions for each adjacent pair, 1-based."""
        out = []
        for j in range(1, self.h):
            out.append((j, j + 1) if j % 2 else (j + 1, j))
        return out

    def __getitem__(self, j: int) -> int:
        """1-based access, N[j] = N^j."""
        return self.N[j - 1]


@dataclass(frozen=True)
class Gate:
    color: int
    crossing: tuple[int, int]  # chain positions it sits between
    side: str                  # lower for odd colors, upper for even


def gates(h: int) -> list[Gate]:
    return [Gate(i, (i, i + 1), "lower" if i % 2 else "upper") for i in range(1, h)]


@dataclass
class CheckReport:
    check: str
    spec_id: str
    passed: bool
    witnesses: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_text(self) -> str:
        lines = [
            f"check: {self.check}",
            f"spec: {self.spec_id}",
            f"result: {'pass' if self.passed else 'fail'}",
        ]
        for w in self.witnesses:
            lines.append(f"witness: {w}")
        for k, v in self.detail.items():
            lines.append(f"{k}: {v}")
        return "\n".join(lines) + "\n"


# -- propagation ----------------------------------------------------------

def propagate(spec: PlatSpec, strict: bool = True) -> curves.CurveCoords:
    """Coordinates of the boundary curve after pushing it through every row."""
    require_valid(spec, strict)
    c = curves.seed_curve(spec.b)
    for r in range(1, spec.rows + 1):
        c = curves.apply_row(c, spec, r)
    return c


def oracle_propagate(spec: PlatSpec, strict: bool = True) -> oracle.OracleCurve:
    require_valid(spec, strict)
    c = oracle.oracle_seed(spec.b)
    for r in range(1, spec.rows + 1):
        c = oracle.oracle_word(c, curves.row_word(spec, r))
    return c


def local_rule(x: int, y: int, z: int, t: int) -> int:
    """Family around a twisted pair after |t| half twists, flanked by families x and z."""
    return y + abs(t) * (x + z)


def chain_recurrence(spec: PlatSpec, strict: bool = True) -> ChainNormalForm:
    """
    Fill the chain template row by row with the local rule. A region whose
    pair lies off the template but whose neighbours carry strands raises
    ChainTemplateError.
    """
    require_valid(spec, strict)
    h = spec.h
    N = [0] * (h + 2)  # N[0], N[h+1] are sentinels
    N[h] = 1
    for r in range(1, spec.rows + 1):
        updates = []
        for pair, t in zip(row_layout(spec.b, r).pairs, spec.twists[r - 1]):
            j = chain_position(pair, spec.b, h)
            if 1 <= j <= h:
                updates.append((j, local_rule(N[j - 1], N[j], N[j + 1], t)))
            else:
                near = [k for k in (j - 1, j + 1) if 1 <= k <= h and N[k]]
                if near and t:
                    raise ChainTemplateError(r, pair, f"feeds chain positions {near} from outside 1..{h}")
        for j, value in updates:
            N[j] = value
    for j in range(1, h + 1):
        if not N[j]:
            # row h-j is the one whose twists should first reach position j
            row = min(max(h - j, 1), max(spec.rows, 1))
            raise ChainTemplateError(row, position_pair(j, spec.b, h), f"chain position {j} never populated")
    return ChainNormalForm(tuple(N[1:h + 1]))


def oracle_census(spec: PlatSpec) -> tuple[int, ...]:
    return oracle.parallel_family_census(oracle_propagate(spec), spec.b, spec.h)


# -- verification ---------------------------------------------------------

def verify_N_inequalities(nf: ChainNormalForm, spec_id: str = "-") -> CheckReport:
    """N^1 > N^2, and N^j > N^(j-1), N^(j+1) for odd j >= 3."""
    bad = []
    N = nf.N
    h = nf.h
    if h >= 2 and not N[0] > N[1]:
        bad.append({"j": 1, "neighbour": 2, "values": (N[0], N[1])})
    for j in range(3, h + 1, 2):
        for k in (j - 1, j + 1):
            if 1 <= k <= h and not N[j - 1] > N[k - 1]:
                bad.append({"j": j, "neighbour": k, "values": (N[j - 1], N[k - 1])})
    return CheckReport("n-inequalities", spec_id, not bad, bad, {"N": N})


def verify_crossing_convention(nf: ChainNormalForm, spec_id: str = "-") -> CheckReport:
    """Every crossing of the chain shows more undercircle strands than overcircle strands."""
    bad = []
    for under, over in nf.crossings:
        if not nf[under] > nf[over]:
            bad.append({"under": under, "over": over, "values": (nf[under], nf[over])})
    return CheckReport("crossing-convention", spec_id, not bad, bad, {"N": nf.N})


def flower_census(spec: PlatSpec, strict: bool = True) -> oracle.RegionReport:
    """Regions cut from the labyrinth by the propagated curve and the h-1 gates."""
    c = oracle_propagate(spec, strict)
    g = oracle.template_gates(c, spec.b, spec.h)
    return oracle.region_census(c, g, oracle.lab_hole(spec.b))


def flower_expected(h: int) -> dict[str, int]:
    return {"once-punctured disk": h - 1, "annulus": 1, "twice-punctured disk": 1}


def verify_flower(spec: PlatSpec, strict: bool = True) -> CheckReport:
    try:
        report = flower_census(spec, strict)
    except oracle.TemplateMismatch as exc:
        return CheckReport("flower", spec.spec_id(), False, [str(exc)])
    kinds = report.kinds()
    ok = kinds == flower_expected(spec.h) and len(report.regions) == spec.h + 1
    return CheckReport("flower", spec.spec_id(), ok, [] if ok else [kinds],
                       {"regions": len(report.regions), "kinds": kinds})


# -- track signatures -----------------------------------------------------

@dataclass(frozen=True)
class TrackSignature:
    color: int
    first: int
    second: int


def track_signature(i: int, b: int) -> TrackSignature:
    """First and second numbered points met by an i-colored track."""
    h = 2 * b - 4
    if b < 3 or not 1 <= i <= h - 1:
        raise ValueError(f"color {i} out of range 1..{h - 1} for b={b}")
    if i % 2:
        j = (i + 5) // 2
        return TrackSignature(i, j, j - 1)
    j = (i + 4) // 2
    return TrackSignature(i, j, j + 1)


def signature_table(b: int) -> list[TrackSignature]:
    return [track_signature(i, b) for i in range(1, 2 * b - 4)]


def verify_signatures(b: int) -> CheckReport:
    table = signature_table(b)
    bad = []
    seen = {}
    for s in table:
        key = (s.first, s.second)
        if key in seen:
            bad.append({"colors": (seen[key], s.color), "signature": key})
        seen[key] = s.color
        if abs(s.first - s.second) != 1 or not (3 <= s.first <= b and 2 <= s.second <= b):
            bad.append({"color": s.color, "signature": key})
    return CheckReport("signatures", f"b={b}", not bad, bad, {"table": [(s.first, s.second) for s in table]})


def verify_oracle_agreement(spec: PlatSpec, strict: bool = True) -> CheckReport:
    """Coordinates, beta intersections and chain multiplicities computed both ways."""
    bad = []
    cc = propagate(spec, strict)
    oc = oracle_propagate(spec, strict)
    oracle_coords = oracle.extract_coords(oc)
    if oracle_coords != cc.coords:
        bad.append({"coords": cc.coords, "oracle": oracle_coords})
    eng_line = curves.line_intersections(cc)
    orc_line = oracle.line_intersections(oc)
    for i in range(2, spec.b + 1):
        arc = curves.beta(i)
        if eng_line[arc.piece] != orc_line[arc.piece]:
            bad.append({"arc": str(arc), "engine": eng_line[arc.piece], "oracle": orc_line[arc.piece]})
    nf = chain_recurrence(spec, strict)
    try:
        census = oracle.parallel_family_census(oc, spec.b, spec.h)
    except oracle.TemplateMismatch as exc:
        census = None
        bad.append({"census": str(exc), "witness": exc.witness})
    if census is not None and census != nf.N:
        bad.append({"recurrence": nf.N, "census": census})
    return CheckReport("oracle-compare", spec.spec_id(), not bad, bad, {"N": nf.N})
