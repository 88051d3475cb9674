"""Hexagonal cell lattices carrying orthogonal sets.

Cells use axial coordinates ``(q, r)``; the centre of ``(q, r)`` sits at
``x = q + r/2, y = r*sqrt(3)/2`` so adjacent centres are exactly 1 apart
and the squared centre distance ``dq^2 + dq*dr + dr^2`` is an integer.
An :class:`Assignment` is periodic: it lists one fundamental domain and
two translation vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from .bits import format_bits, parse_bits
from .constructions import (
    SetFamily, SetId, build_family, construction1, construction3, family_spec,
)
from .errors import (
    BadParameters, RuleFails, UnknownLayout, UnresolvedSetId,
)
from .ortho import closed_form_orthogonal, correlation_matrix


class HexCell(NamedTuple):
    q: int
    r: int

    def __add__(self, other):
        return HexCell(self.q + other[0], self.r + other[1])


DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


def neighbors(cell) -> list[HexCell]:
    q, r = cell
    return [HexCell(q + dq, r + dr) for dq, dr in DIRECTIONS]


def center(cell) -> tuple[float, float]:
    q, r = cell
    return q + r / 2, r * math.sqrt(3) / 2


def squared_distance(a, b) -> int:
    dq, dr = a[0] - b[0], a[1] - b[1]
    return dq * dq + dq * dr + dr * dr


def center_distance(a, b) -> float:
    return math.sqrt(squared_distance(a, b))


def hex_distance(a, b) -> int:
    """Number of cell steps between ``a`` and ``b``."""
    dq, dr = a[0] - b[0], a[1] - b[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def _hermite(p1, p2) -> tuple[int, int, int]:
    """Basis ``(A, 0), (B, D)`` of the lattice spanned by ``p1, p2``."""
    (q1, r1), (q2, r2) = p1, p2
    det = q1 * r2 - q2 * r1
    if det == 0:
        raise BadParameters(f"period vectors {p1}, {p2} are degenerate")
    g, x, y = _egcd(r1, r2)
    if g == 0:
        raise BadParameters(f"period vectors {p1}, {p2} are degenerate")
    bq = x * q1 + y * q2
    a = abs(det) // g
    return a, bq % a, g


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


@dataclass
class Assignment:
    cells: dict  # HexCell -> SetId over one fundamental domain
    period: tuple[tuple[int, int], tuple[int, int]]
    claimed_D: int
    family: dict = dc_field(default_factory=dict)  # family_spec of the bound family
    name: str = ""

    def __post_init__(self):
        self.cells = {HexCell(*k): v for k, v in self.cells.items()}
        self._A, self._B, self._D = _hermite(*self.period)
        self._by_residue = {}
        for cell, sid in self.cells.items():
            key = self.residue(cell)
            if key in self._by_residue:
                raise BadParameters(f"cells {cell} and another share a period class")
            self._by_residue[key] = sid
        if len(self._by_residue) != self._A * self._D:
            raise BadParameters(
                f"{len(self.cells)} cells do not cover a fundamental domain of size {self._A * self._D}")

    def residue(self, cell) -> tuple[int, int]:
        q, r = cell
        k = r // self._D
        return ((q - k * self._B) % self._A, r - k * self._D)

    def at(self, cell) -> SetId:
        return self._by_residue[self.residue(cell)]

    def set_ids(self) -> set:
        return set(self.cells.values())

    def window(self, reps: int = 1) -> dict:
        """The fundamental domain translated by ``a*p1 + b*p2`` for |a|, |b| <= reps."""
        (q1, r1), (q2, r2) = self.period
        out = {}
        for a in range(-reps, reps + 1):
            for b in range(-reps, reps + 1):
                for cell, sid in self.cells.items():
                    out[HexCell(cell.q + a * q1 + b * q2, cell.r + a * r1 + b * r2)] = sid
        return out

    def rebind(self, family: SetFamily) -> "Assignment":
        """The same placement of ``(c, alpha)`` labels over another family."""
        cells = {}
        for cell, sid in self.cells.items():
            new = SetId(family.construction, sid.c, sid.alpha)
            if new not in family:
                raise UnresolvedSetId(f"{sid} has no counterpart in {family!r}")
            cells[cell] = new
        return Assignment(cells, self.period, self.claimed_D, family_spec(family), self.name)

    # -- text format ----------------------------------------------------------

    def dumps(self) -> str:
        lines = []
        if self.name:
            lines.append(f"# name={self.name}")
        for key, val in self.family.items():
            lines.append(f"# {key}={val}")
        lines.append(f"# claimed_D={self.claimed_D}")
        (q1, r1), (q2, r2) = self.period
        lines.append(f"# period={q1},{r1};{q2},{r2}")
        for cell in sorted(self.cells, key=lambda c: (c.r, c.q)):
            sid = self.cells[cell]
            lines.append(f"{cell.q} {cell.r} {sid.c} {sid.alpha}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Assignment":
        header = {}
        rows = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                header[key.strip()] = val.strip()
                continue
            q, r, c, a = line.split()
            rows.append((HexCell(int(q), int(r)), c, a))
        if "construction" not in header or "period" not in header:
            raise BadParameters("assignment header needs construction and period")
        p1, p2 = (tuple(int(v) for v in part.split(",")) for part in header["period"].split(";"))
        cons = int(header["construction"])
        family = {}
        for key, val in header.items():
            if key in ("name", "claimed_D", "period"):
                continue
            family[key] = int(val) if val.lstrip("-").isdigit() else val
        cells = {cell: SetId(cons, c, a) for cell, c, a in rows}
        return cls(cells, (p1, p2), int(header.get("claimed_D", 0)), family,
                   header.get("name", ""))


@dataclass
class VerificationReport:
    adjacent_violations: list  # (cell, cell, witness correlation)
    measured_min_reuse_distance: float
    max_nonadjacent_correlation: int
    claimed_D: int
    min_reuse_hex_steps: int
    correlation_bound: int
    cells_checked: int
    metric: str = "euclidean centre distance, adjacent spacing 1"

    @property
    def passes(self) -> bool:
        return (not self.adjacent_violations
                and self.measured_min_reuse_distance >= self.claimed_D)

    def to_dict(self) -> dict:
        return {
            "passes": self.passes,
            "claimed_D": self.claimed_D,
            "measured_min_reuse_distance": self.measured_min_reuse_distance,
            "min_reuse_hex_steps": self.min_reuse_hex_steps,
            "metric": self.metric,
            "max_nonadjacent_correlation": self.max_nonadjacent_correlation,
            "correlation_bound": self.correlation_bound,
            "cells_checked": self.cells_checked,
            "adjacent_violations": [
                {"a": list(a), "b": list(b), "witness_correlation": w}
                for a, b, w in self.adjacent_violations
            ],
        }


def verify(assignment: Assignment, family: SetFamily, reps: int = 1) -> VerificationReport:
    """Brute-force check of adjacency orthogonality, re-use distance and correlation.

    Runs on a (2*reps+1) x (2*reps+1) block of periods so every adjacency
    of the infinite tiling, including those across the period boundary,
    is seen at least once.
    """
    for sid in assignment.set_ids():
        if sid not in family:
            raise UnresolvedSetId(f"{sid} is not in {family!r}")
    corr = correlation_matrix(family)
    win = assignment.window(reps)
    cells = list(win)
    ids = np.array([family.index_of(win[c]) for c in cells])
    qs = np.array([c.q for c in cells])
    rs = np.array([c.r for c in cells])
    self_corr = family.length

    violations = []
    seen = set()
    for cell in cells:
        i = family.index_of(win[cell])
        for nb in neighbors(cell):
            key = (min(cell, nb), max(cell, nb))
            if key in seen:
                continue
            seen.add(key)
            j = family.index_of(assignment.at(nb))
            w = self_corr if i == j else int(corr[i, j])
            if w:
                violations.append((key[0], key[1], w))

    dq = qs[:, None] - qs[None, :]
    dr = rs[:, None] - rs[None, :]
    d2 = dq * dq + dq * dr + dr * dr
    same = ids[:, None] == ids[None, :]
    off = ~np.eye(len(cells), dtype=bool)
    reuse = d2[same & off]
    min_d2 = int(reuse.min()) if reuse.size else 0
    steps = (np.abs(dq) + np.abs(dr) + np.abs(dq + dr)) // 2
    min_steps = int(steps[same & off].min()) if reuse.size else 0
    nonadj = (d2 > 1) & ~same
    pair_corr = corr[ids[:, None], ids[None, :]]
    max_nonadj = int(pair_corr[nonadj].max(initial=0))
    return VerificationReport(
        adjacent_violations=violations,
        measured_min_reuse_distance=math.sqrt(min_d2),
        max_nonadjacent_correlation=max_nonadj,
        claimed_D=assignment.claimed_D,
        min_reuse_hex_steps=min_steps,
        correlation_bound=1 << ((family.n + 2) // 2),
        cells_checked=len(cells),
    )


def sequences_per_cell(assignment: Assignment, family: SetFamily) -> dict:
    """Number of sequences carried by each cell of the fundamental domain."""
    return {cell: len(family.get(sid)) for cell, sid in assignment.cells.items()}


# -- layout generators ----------------------------------------------------------------

def cluster_layout_c1(family: SetFamily, neighbor_rule=None, budget: int = 500_000,
                      name: str = "") -> Assignment:
    """Clustered periodic layout for a construction-1 family.

    With ``P = 2^t`` the period is ``P x P`` cells and the re-use distance
    is ``P``.  Each cluster is a pair of adjacent lattice rows times ``P/2``
    cells and carries the ``P`` sets ``S_{c, alpha}`` of one ``c``.
    Walking from one row pair to the next adds the two offsets of
    ``neighbor_rule`` alternately; the second half of each row pair uses
    the lowest coset representative not yet visited.  Alphas inside each
    cluster are placed by a deterministic forward-checking search against
    the closed-form orthogonality test.
    """
    if family.construction != 1:
        raise BadParameters("cluster layouts are defined for construction-1 families")
    t = family.params["t"]
    P = 1 << t
    half = P // 2
    if neighbor_rule is None:
        neighbor_rule = default_offsets(t)
    offs = [parse_bits(o, t) for o in neighbor_rule]
    if len(offs) != 2 or 0 in offs:
        raise RuleFails("neighbor rule needs two nonzero offsets", witness=tuple(neighbor_rule))
    cseq = [0]
    for i in range(half - 1):
        cseq.append(cseq[-1] ^ offs[i % 2])
    closing = cseq[-1] ^ offs[(half - 1) % 2]
    if closing != 0 or len(set(cseq)) != len(cseq):
        raise RuleFails(
            "offsets do not walk a closed cycle of distinct c values across the period",
            witness=tuple(format_bits(c, t) for c in cseq + [closing]))
    coset = min(v for v in range(1 << t) if v not in cseq)

    cells = [HexCell(q, r) for r in range(P) for q in range(P)]
    cluster = {x: (x.r // 2, x.q // half) for x in cells}
    cval = {x: cseq[x.r // 2] ^ (coset if x.q >= half else 0) for x in cells}
    nbrs = {x: [HexCell((x.q + dq) % P, (x.r + dr) % P) for dq, dr in DIRECTIONS] for x in cells}
    members = {}
    for x in cells:
        members.setdefault(cluster[x], []).append(x)

    orth_cache = {}

    def orth(ca, aa, cb, ab):
        key = (ca ^ cb, aa ^ ab)
        if key == (0, 0):
            return False
        if key not in orth_cache:
            a = SetId(1, format_bits(ca, t), format_bits(aa, t))
            b = SetId(1, format_bits(cb, t), format_bits(ab, t))
            orth_cache[key] = closed_form_orthogonal(family, a, b)
        return orth_cache[key]

    domains = {x: set(range(P)) for x in cells}
    placed = {}
    nodes = 0

    def search() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise RuleFails("search budget exhausted", witness={"nodes": nodes})
        if len(placed) == len(cells):
            return True
        x = min((c for c in cells if c not in placed), key=lambda c: (len(domains[c]), c.r, c.q))
        for a in sorted(domains[x]):
            placed[x] = a
            pruned = []
            dead = False
            related = set(nbrs[x]) | set(members[cluster[x]])
            for y in sorted(related - {x}, key=lambda c: (c.r, c.q)):
                if y in placed:
                    continue
                same_cluster = cluster[y] == cluster[x]
                for b in list(domains[y]):
                    if (same_cluster and b == a) or (
                            y in nbrs[x] and not orth(cval[x], a, cval[y], b)):
                        domains[y].discard(b)
                        pruned.append((y, b))
                if not domains[y]:
                    dead = True
                    break
            if not dead and search():
                return True
            for y, b in pruned:
                domains[y].add(b)
            del placed[x]
        return False

    # a placed cell must also be consistent with already-placed neighbours;
    # forward checking guarantees that by pruning at placement time.
    if not search():
        raise RuleFails("no alpha placement satisfies adjacency orthogonality",
                        witness={"offsets": tuple(neighbor_rule), "nodes": nodes})
    assignment = {x: SetId(1, format_bits(cval[x], t), format_bits(placed[x], t)) for x in cells}
    return Assignment(assignment, ((P, 0), (0, P)), P, family_spec(family),
                      name or f"c1_m{family.params['m']}_D{P}")


def default_offsets(t: int) -> tuple[str, str]:
    if t == 2:
        return ("01", "01")
    if t == 3:
        return ("011", "110")
    raise BadParameters(f"no default neighbor rule for t={t}; pass one explicitly")


def c3_layout(family: SetFamily, name: str = "") -> Assignment:
    """D = 4 layout for a construction-3 family.

    The last two alpha coordinates follow ``(q + 2r) mod 4``, which differs
    between any two neighbours; the remaining label bits enumerate blocks
    of four so every set appears once per period.
    """
    if family.construction != 3:
        raise BadParameters("c3_layout expects a construction-3 family")
    k, d = family.params["k"], family.params["d"]
    blocks = 1 << (k + d - 4) if k + d >= 4 else 1
    width = 4 * blocks
    hi_bits = d - 2
    cells = {}
    for r in range(4):
        for q in range(width):
            low2 = (q + 2 * r) % 4
            h = (r % 4) + 4 * (q // 4)
            c = h >> hi_bits
            a = ((h & ((1 << hi_bits) - 1)) << 2) | low2
            cells[HexCell(q, r)] = SetId(3, format_bits(c, k), format_bits(a, d))
    return Assignment(cells, ((width, 0), (0, 4)), 4, family_spec(family),
                      name or f"c3_m{family.params['m']}_d{d}_D4")


BUILTIN_LAYOUTS = ("m3_D4", "m5_D8", "m6_D4")


def builtin_family(name: str) -> SetFamily:
    if name == "m3_D4":
        return construction1(3, 1, 2, "x^2+x+1")[1]
    if name == "m5_D8":
        return construction1(5, 2, 3, "x^3+x+1")[1]
    if name == "m6_D4":
        return construction3(6, 2, "x^2+x+1")[1]
    raise UnknownLayout(f"unknown layout {name!r}; choose from {', '.join(BUILTIN_LAYOUTS)}")


def builtin_layout(name: str) -> Assignment:
    family = builtin_family(name)
    if name == "m3_D4":
        return cluster_layout_c1(family, ("01", "01"), name=name)
    if name == "m5_D8":
        return cluster_layout_c1(family, ("011", "110"), name=name)
    return c3_layout(family, name=name)


def family_of(assignment: Assignment) -> SetFamily:
    return build_family(assignment.family)


def render_svg(assignment: Assignment, periods: int = 1, title: str | None = None) -> str:
    from .plotting import assignment_svg
    return assignment_svg(assignment, periods=periods, title=title)
