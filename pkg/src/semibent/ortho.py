"""Orthogonality between sequence sets: brute force, closed forms, tables."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import boolfun as bf
from .bits import BitsLike, format_bits, parse_bits
from .constructions import OrthogonalSet, SetFamily, SetId, index_ic
from .errors import BadParameters, LengthMismatch, SamePair, UnknownId
from .gf2field import Field, pi_inv, pow_gamma


@dataclass(frozen=True)
class OrthoReport:
    pair: tuple[SetId, SetId]
    orthogonal: bool
    max_abs_correlation: int
    method: str
    witness: tuple[int, int, int] | None = None  # (row in first, row in second, inner product)


def _gram(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[1]:
        raise LengthMismatch(f"sequence lengths {a.shape[1]} and {b.shape[1]} differ")
    return a.astype(np.int32) @ b.astype(np.int32).T


def sets_orthogonal_bruteforce(S1: OrthogonalSet, S2: OrthogonalSet) -> OrthoReport:
    g = _gram(S1.sequences, S2.sequences)
    if S1.id == S2.id:
        np.fill_diagonal(g, 0)  # compare distinct rows only
    nz = np.argwhere(g != 0)
    witness = None
    if nz.size:
        i, j = (int(v) for v in nz[0])
        witness = (i, j, int(g[i, j]))
    return OrthoReport((S1.id, S2.id), nz.size == 0, int(np.abs(g).max(initial=0)),
                       "brute_force", witness)


def max_cross_correlation(S1: OrthogonalSet, S2: OrthogonalSet) -> int:
    return int(np.abs(_gram(S1.sequences, S2.sequences)).max(initial=0))


# -- closed forms ------------------------------------------------------------------

def thm1_witness(field: Field, s: int, c: BitsLike, alpha: BitsLike, e: BitsLike,
                 delta: BitsLike, exponent_offset: int = 0) -> int | None:
    """The ``y`` with ``pi^-1(alpha+delta) = gamma^([y]+i_{c+e})``, if any.

    Returns None when the two sets are orthogonal.  Handles ``c == e`` too.
    """
    t = field.t
    cv, ev = parse_bits(c, t), parse_bits(e, t)
    av, dv = parse_bits(alpha, t), parse_bits(delta, t)
    if (cv, av) == (ev, dv):
        raise SamePair("a set is compared with itself")
    if cv == ev:
        return None
    diff = pi_inv(field, av ^ dv)
    if diff == 0:
        return None
    ic = index_ic(field, cv ^ ev)
    for y in range(1 << s):
        if pow_gamma(field, y + ic + exponent_offset) == diff:
            return y
    return None


def sets_orthogonal_thm1(field: Field, s: int, c: BitsLike, alpha: BitsLike,
                         e: BitsLike, delta: BitsLike, exponent_offset: int = 0) -> bool:
    """Closed-form orthogonality test for a construction-1 family.

    For ``c != e`` the sets are orthogonal unless ``pi^-1(alpha+delta)``
    lies in ``{gamma^([y]+i_{c+e})}``; for ``c == e`` they are orthogonal
    exactly when ``alpha != delta``.
    """
    return thm1_witness(field, s, c, alpha, e, delta, exponent_offset) is None


def sets_orthogonal_thm3(c: BitsLike, alpha: BitsLike, e: BitsLike, delta: BitsLike,
                         d: int) -> bool:
    if d not in (2, 3):
        raise BadParameters(f"d must be 2 or 3 (got {d})")
    av, dv = parse_bits(alpha, d), parse_bits(delta, d)
    if isinstance(c, str) and isinstance(e, str):
        same_c = c == e
    else:
        same_c = parse_bits(c) == parse_bits(e)
    if same_c:
        if av == dv:
            raise SamePair("a set is compared with itself")
        return True
    return (av & 0b11) != (dv & 0b11)


def closed_form_orthogonal(family: SetFamily, a: SetId, b: SetId) -> bool:
    """Dispatch to the matching closed form; construction 2 inherits its base pattern."""
    if family.construction in (1, 2):
        return sets_orthogonal_thm1(family.field, family.params["s"], a.c, a.alpha,
                                    b.c, b.alpha, family.extra.get("exponent_offset", 0))
    return sets_orthogonal_thm3(a.c, a.alpha, b.c, b.alpha, family.params["d"])


# -- family-wide matrices --------------------------------------------------------------

def correlation_matrix(family: SetFamily) -> np.ndarray:
    """``[i, j]`` = max |inner product| between sets i and j (id order).

    The diagonal holds the largest off-diagonal value inside a set, which
    is 0 for every genuine orthogonal set.
    """
    cached = getattr(family, "_corr_matrix", None)
    if cached is not None:
        return cached
    seqs = family.all_sequences()
    k = family.set_size
    n = family.n_sets
    g = np.abs(_gram(seqs, seqs))
    g[np.arange(g.shape[0]), np.arange(g.shape[0])] = 0
    corr = g.reshape(n, k, n, k).max(axis=(1, 3))
    corr.flags.writeable = False
    family._corr_matrix = corr
    return corr


def orthogonality_matrix(family: SetFamily, method: str = "brute_force") -> np.ndarray:
    """Boolean ``[i, j]``: set i is orthogonal to set j (diagonal False)."""
    n = family.n_sets
    if method == "brute_force":
        out = correlation_matrix(family) == 0
        np.fill_diagonal(out, False)
        return out
    if method != "closed_form":
        raise ValueError(f"unknown method {method!r}")
    ids = family.ids()
    out = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(ids):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = closed_form_orthogonal(family, a, ids[j])
    return out


def compare_pair(family: SetFamily, a: SetId, b: SetId) -> OrthoReport:
    """Both routes on one pair; raises if they disagree."""
    brute = sets_orthogonal_bruteforce(family.get(a), family.get(b))
    closed = closed_form_orthogonal(family, a, b)
    if closed != brute.orthogonal:
        raise AssertionError(f"closed form and brute force disagree on {a}, {b}: {brute}")
    return OrthoReport(brute.pair, brute.orthogonal, brute.max_abs_correlation, "both",
                       brute.witness)


def count_orthogonal(family: SetFamily, e: BitsLike, delta: BitsLike,
                     method: str = "brute_force") -> int:
    """Number of sets orthogonal to ``S_{e,delta}`` (itself excluded)."""
    sid = family.make_id(e, delta)
    if sid not in family:
        raise UnknownId(str(sid))
    return int(orthogonality_matrix(family, method)[family.index_of(sid)].sum())


def expected_count(family: SetFamily) -> int:
    """The closed-form number of sets orthogonal to any fixed set."""
    p = family.params
    if family.construction in (1, 2):
        s, t = p["s"], p["t"]
        return 2 ** (2 * t) - 2 ** (s + t) + 2 ** s - 1
    k, d = p["k"], p["d"]
    return 3 * 2 ** (k + d - 2) + 2 ** (d - 2) - 1


def count_decomposition(family: SetFamily, e: BitsLike, delta: BitsLike) -> dict:
    """Split the orthogonal sets into same-c, same-alpha and the remainder."""
    sid = family.make_id(e, delta)
    row = orthogonality_matrix(family)[family.index_of(sid)]
    out = {"same_c": 0, "same_alpha": 0, "rest": 0}
    for other, orth in zip(family.ids(), row):
        if not orth:
            continue
        if other.c == sid.c:
            out["same_c"] += 1
        elif other.alpha == sid.alpha:
            out["same_alpha"] += 1
        else:
            out["rest"] += 1
    return out


# -- tables ------------------------------------------------------------------------

def cyclic_order(family: SetFamily) -> tuple[list[str], list[str]]:
    """Row (c) and column (alpha) order following powers of gamma.

    Construction-1/2 tables list ``0, pi(1), pi(gamma), pi(gamma^2), ...``;
    construction-3 tables are lexicographic.
    """
    if family.construction in (1, 2):
        fld = family.field
        order = ["0" * fld.t] + [
            "".join(str((pow_gamma(fld, i) >> b) & 1) for b in range(fld.t))
            for i in range(fld.order)
        ]
        return order, list(order)
    return lex_order(family)


def lex_order(family: SetFamily) -> tuple[list[str], list[str]]:
    return ([format_bits(c, family.c_len) for c in range(1 << family.c_len)],
            [format_bits(a, family.alpha_len) for a in range(1 << family.alpha_len)])


@dataclass(frozen=True)
class OrthoTable:
    rows: list[str]
    cols: list[str]
    cell: dict  # (c, alpha) -> bool

    def __getitem__(self, key) -> bool:
        return self.cell[key]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["c"] + [f"H_{a}" for a in self.cols])
        for c in self.rows:
            w.writerow([f"f_{c}"] + [int(self.cell[c, a]) for a in self.cols])
        return buf.getvalue()

    def to_grid(self, ascii: bool = False) -> str:
        mark = "X" if ascii else "⊥"
        width = max(len(a) for a in self.cols) + 2
        head = " " * (len(self.rows[0]) + 2) + "|" + "|".join(
            f"H_{a}".center(width) for a in self.cols) + "|"
        lines = [head]
        for c in self.rows:
            cells = "|".join((mark if self.cell[c, a] else "").center(width) for a in self.cols)
            lines.append(f"f_{c}|{cells}|")
        return "\n".join(lines) + "\n"

    def as_array(self) -> np.ndarray:
        return np.array([[self.cell[c, a] for a in self.cols] for c in self.rows], dtype=bool)


def ortho_table(family: SetFamily, order: str = "lex") -> OrthoTable:
    """``cell[c][alpha]``: the sequence of f_c is orthogonal to every row of H_alpha."""
    rows, cols = cyclic_order(family) if order == "cyclic" else lex_order(family)
    cell = {}
    for c in rows:
        fc = bf.sequence_of(family.combination(c)).astype(np.int32)
        for a in cols:
            h = family.hadamard_part(a).sequences.astype(np.int32)
            cell[c, a] = not np.any(h @ fc)
    return OrthoTable(rows, cols, cell)


def reduction_holds(family: SetFamily, table: OrthoTable | None = None) -> bool:
    """Check ``S_{c,a} orth S_{c',a'}  <=>  cell[c+c'][a+a']`` over all pairs."""
    table = table or ortho_table(family)
    orth = orthogonality_matrix(family)
    ids = family.ids()
    for i, a in enumerate(ids):
        for j, b in enumerate(ids):
            if i == j:
                continue
            dc = format_bits(int(a.c, 2) ^ int(b.c, 2), family.c_len)
            da = format_bits(int(a.alpha, 2) ^ int(b.alpha, 2), family.alpha_len)
            if table[dc, da] != orth[i, j]:
                return False
    return True
