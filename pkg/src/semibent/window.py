"""Prefix restrictions and the semi-bent depth (window property) of codewords.

A restriction of order ``s`` fixes the first ``s`` variables, which is the
same as cutting the sequence into ``2^s`` contiguous blocks of length
``2^(m-s)``.  A function has semi-bent depth ``r`` when every block at
every order ``0..r`` is itself semi-bent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import boolfun as bf
from .bits import BitsLike, format_bits, parse_bits
from .constructions import SetFamily
from .errors import BadOrder


def restriction(f: bf.BooleanFunction, s: int, prefix: BitsLike) -> bf.BooleanFunction:
    """Fix ``x_1..x_s`` to ``prefix``; a function of the remaining ``m - s`` variables."""
    if not 0 <= s <= f.m - 1:
        raise BadOrder(f"restriction order {s} outside 0..{f.m - 1}")
    try:
        p = parse_bits(prefix, s) if s else 0
    except ValueError as exc:
        raise BadOrder(f"prefix {prefix!r} does not have {s} bits: {exc}") from None
    width = 1 << (f.m - s)
    return bf.BooleanFunction(f.m - s, f.tt[p * width:(p + 1) * width].copy())


def _block_spectra(seqs: np.ndarray, s: int) -> np.ndarray:
    """Walsh spectra of every order-``s`` block of each row: shape (rows, 2^s, 2^(m-s))."""
    rows, n = seqs.shape
    return bf.fwht(seqs.reshape(rows, 1 << s, n >> s))


def _semibent_blocks(spectra: np.ndarray, v: int) -> np.ndarray:
    """Boolean mask over blocks: spectrum values lie in {0, +-2^lam} with both present.

    Requiring a zero next to the nonzero magnitude rules out affine blocks
    (single spike of height ``2^v``), matching :func:`boolfun.classify`.
    """
    lam = bf.semibent_amplitude(v)
    mag = np.abs(spectra)
    allowed = np.all((mag == 0) | (mag == (1 << lam)), axis=-1)
    has_zero = np.any(mag == 0, axis=-1)
    not_affine = np.all(mag < (1 << v), axis=-1)
    return allowed & has_zero & not_affine


@dataclass
class OrderDetail:
    order: int
    restrictions: int
    semibent: int

    @property
    def all_semibent(self) -> bool:
        return self.restrictions == self.semibent


@dataclass
class DepthReport:
    function_id: str
    m: int
    depth: int  # -1 when the function itself is not semi-bent
    orders: list = dc_field(default_factory=list)
    first_failure: dict | None = None

    def to_dict(self) -> dict:
        return {
            "function": self.function_id,
            "m": self.m,
            "depth": self.depth,
            "orders": [{"order": o.order, "restrictions": o.restrictions,
                        "semibent": o.semibent} for o in self.orders],
            "first_failure": self.first_failure,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        lines = [f"function {self.function_id}  m={self.m}  depth={self.depth}",
                 "order  length  restrictions  semi-bent"]
        for o in self.orders:
            lines.append(f"{o.order:>5}  {1 << (self.m - o.order):>6}  "
                         f"{o.restrictions:>12}  {o.semibent:>9}")
        if self.first_failure:
            ff = self.first_failure
            lines.append(f"first failure: order {ff['order']} prefix {ff['prefix'] or '-'} "
                         f"({ff['kind']})")
        return "\n".join(lines)


def _depth_from_counts(orders: list) -> tuple[int, int | None]:
    depth = -1
    for o in orders:
        if not o.all_semibent:
            return depth, o.order
        depth = o.order
    return depth, None


def semibent_depth(f: bf.BooleanFunction, function_id: str = "f",
                   max_order: int | None = None) -> DepthReport:
    """Largest ``r`` with every restriction of order ``0..r`` semi-bent.

    All orders up to ``max_order`` (default ``m - 1``) are tabulated even
    past the first failure, so the report shows where blocks recover.
    """
    top = f.m - 1 if max_order is None else min(max_order, f.m - 1)
    seq = bf.sequence_of(f)[None, :]
    orders = []
    first = None
    for s in range(top + 1):
        ok = _semibent_blocks(_block_spectra(seq, s), f.m - s)[0]
        orders.append(OrderDetail(s, ok.size, int(ok.sum())))
        if first is None and not ok.all():
            p = int(np.argmin(ok))
            first = {"order": s, "prefix": format_bits(p, s) if s else "",
                     "kind": str(bf.classify(restriction(f, s, p)))}
    depth, _ = _depth_from_counts(orders)
    return DepthReport(function_id, f.m, depth, orders, first)


@dataclass
class FamilyDepth:
    """Order-by-order semi-bent counts over many codewords at once."""
    label: str
    n: int
    functions: int
    orders: list
    failures: dict  # order -> first (function index, prefix)

    def semibent_at(self, order: int) -> bool:
        return self.orders[order].all_semibent

    @property
    def failing_orders(self) -> list[int]:
        return [o.order for o in self.orders if not o.all_semibent]

    def to_dict(self) -> dict:
        return {
            "family": self.label,
            "n": self.n,
            "functions": self.functions,
            "orders": [{"order": o.order, "restrictions": o.restrictions,
                        "semibent": o.semibent} for o in self.orders],
            "failing_orders": self.failing_orders,
            "failures": {str(k): v for k, v in self.failures.items()},
        }

    def to_table(self) -> str:
        lines = [f"{self.label}: {self.functions} codewords of length {1 << self.n}",
                 "order  length  restrictions  semi-bent  status"]
        for o in self.orders:
            lines.append(f"{o.order:>5}  {1 << (self.n - o.order):>6}  {o.restrictions:>12}  "
                         f"{o.semibent:>9}  {'ok' if o.all_semibent else 'FAIL'}")
        return "\n".join(lines)


def depth_profile(seqs: np.ndarray, label: str = "", names: list | None = None) -> FamilyDepth:
    """Semi-bent counts at every order for a stack of +-1 sequences."""
    seqs = np.asarray(seqs)
    rows, length = seqs.shape
    n = length.bit_length() - 1
    orders, failures = [], {}
    for s in range(n):
        ok = _semibent_blocks(_block_spectra(seqs, s), n - s)
        orders.append(OrderDetail(s, ok.size, int(ok.sum())))
        if not ok.all():
            i, p = map(int, np.argwhere(~ok)[0])
            failures[s] = {"function": names[i] if names else i,
                           "prefix": format_bits(p, s) if s else ""}
    return FamilyDepth(label, n, rows, orders, failures)


def analyze_family_depth(family: SetFamily) -> FamilyDepth:
    """Depth profile of every codeword ``f_c + l`` with ``c != 0``.

    The zero combination only yields linear sequences, which are never
    semi-bent, so it is left out.
    """
    ids = [sid for sid in family.ids() if int(sid.c, 2)]
    seqs = np.concatenate([family.get(sid).sequences for sid in ids])
    names = [f"{sid}[{j}]" for sid in ids for j in range(family.set_size)]
    label = f"construction {family.construction} " + " ".join(
        f"{k}={v}" for k, v in family.params.items())
    return depth_profile(seqs, label, names)


def theta_min(v: int) -> int:
    """Target correlation for a length-``2^v`` window.

    ``2^(v/2)`` for even ``v``; for odd ``v`` the surrogate ``2^((v+1)/2)``,
    since the true covering radius is unknown in general.
    """
    return 1 << (v // 2) if v % 2 == 0 else 1 << ((v + 1) // 2)


@dataclass
class WindowProfile:
    v: int
    block_max: list  # max |W| per block
    target: int
    target_is_surrogate: bool

    @property
    def meets_target(self) -> bool:
        return max(self.block_max) <= self.target

    def to_dict(self) -> dict:
        return {"v": self.v, "block_max": self.block_max, "target": self.target,
                "target_is_surrogate": self.target_is_surrogate,
                "meets_target": self.meets_target}


def window_correlation_profile(f: bf.BooleanFunction, v: int) -> WindowProfile:
    """Worst correlation of each length-``2^v`` block against the linear sequences of length ``2^v``."""
    if not 2 <= v <= f.m:
        raise BadOrder(f"window exponent {v} outside 2..{f.m}")
    spectra = _block_spectra(bf.sequence_of(f)[None, :], f.m - v)[0]
    block_max = [int(x) for x in np.abs(spectra).max(axis=-1)]
    return WindowProfile(v, block_max, theta_min(v), v % 2 == 1)
