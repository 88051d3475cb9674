"""Vectorial functions and the orthogonal set families built from them.

Three families are supported:

* construction 1: ``f_i(y, x) = pi(gamma^([y]+i)) . x`` on ``m = s + t``
  variables, sets ``S_{c,alpha} = {f_c + (beta, alpha).(y, x)}``;
* construction 2: bent concatenation ``g_c(z, y, x) = h_c(z) + f_c(y, x)``
  over a construction-1 family, extending every set by a factor ``2^u``;
* construction 3: even ``m = 2k + 2`` with ``f_i(y, x) = (phi_i(y), 00) . x``
  and ``alpha`` ranging over the last ``d`` input coordinates.

``[y]`` is read big-endian (``y_1`` most significant), and the combination
index ``i_c`` satisfies ``gamma^(i_c) = sum_i c_i gamma^i``.  The reference
sequences in the test suite pin both conventions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator

import numpy as np

from . import boolfun as bf
from .bits import BitsLike, format_bits, parse_bits
from .errors import (
    BadParameters, BadPartition, ConstructionFailed, FieldMismatch, LengthMismatch,
    UnknownId, ZeroCombination,
)
from .gf2field import Field, format_poly, make_field, mul, pi_int, pow_gamma, dlog


@dataclass(frozen=True)
class VectorialFunction:
    """A map F_2^m -> F_2^t held as its t component truth tables."""

    m: int
    t: int
    components: tuple[bf.BooleanFunction, ...]
    split: tuple[int, ...]
    field: Field | None = None

    def __post_init__(self):
        if len(self.components) != self.t:
            raise LengthMismatch(f"{len(self.components)} components for t={self.t}")
        if any(f.m != self.m for f in self.components):
            raise LengthMismatch("component on the wrong number of variables")

    def combine(self, c: BitsLike) -> bf.BooleanFunction:
        """``c . F = c_1 f_1 + ... + c_t f_t``."""
        cv = parse_bits(c, self.t)
        tt = np.zeros(1 << self.m, dtype=np.uint8)
        for i, comp in enumerate(self.components):
            if cv >> (self.t - 1 - i) & 1:
                tt ^= comp.tt
        return bf.BooleanFunction(self.m, tt)

    def __call__(self, x: BitsLike) -> tuple[int, ...]:
        j = parse_bits(x, self.m)
        return tuple(int(f.tt[j]) for f in self.components)


def combine(F: VectorialFunction, c: BitsLike) -> bf.BooleanFunction:
    return F.combine(c)


@dataclass(frozen=True, order=True)
class SetId:
    construction: int
    c: str
    alpha: str

    def __str__(self):
        return f"S_{{{self.c},{self.alpha}}}"


@dataclass(frozen=True, eq=False)
class OrthogonalSet:
    id: SetId
    sequences: np.ndarray  # (cardinality, 2^n) int8
    omegas: tuple[int, ...] = dc_field(repr=False)  # linear parts l, one per row

    def __len__(self):
        return self.sequences.shape[0]

    def __iter__(self):
        return iter(self.sequences)

    @property
    def generators(self) -> list[bf.BooleanFunction]:
        """The functions ``f_c + l`` behind each sequence."""
        return [bf.function_of(row) for row in self.sequences]


def _linear_rows(n: int, omegas: np.ndarray) -> np.ndarray:
    par = bf._parity_table(n)
    return par[bf._indices(n)[None, :] & omegas[:, None]]


class SetFamily:
    """An indexed collection ``{S_{c,alpha}}`` with sets materialised on demand."""

    def __init__(self, construction: int, params: dict, F: VectorialFunction,
                 c_len: int, alpha_len: int, n: int, field: Field | None,
                 extra: dict | None = None):
        self.construction = construction
        self.params = dict(params)
        self.F = F
        self.c_len = c_len
        self.alpha_len = alpha_len
        self.n = n  # sequence length is 2^n
        self.field = field
        self.extra = dict(extra or {})
        self._cache: dict[SetId, OrthogonalSet] = {}
        self._combos: dict[int, bf.BooleanFunction] = {}

    def __repr__(self):
        p = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"SetFamily(construction={self.construction}, {p})"

    # -- indexing ---------------------------------------------------------

    @property
    def n_sets(self) -> int:
        return 1 << (self.c_len + self.alpha_len)

    @property
    def length(self) -> int:
        return 1 << self.n

    @property
    def set_size(self) -> int:
        return len(self.omegas(0))

    def make_id(self, c: BitsLike, alpha: BitsLike) -> SetId:
        try:
            cv = parse_bits(c, self.c_len)
            av = parse_bits(alpha, self.alpha_len)
        except ValueError as exc:
            raise UnknownId(f"({c}, {alpha}) is not an id of {self!r}: {exc}") from None
        return SetId(self.construction, format_bits(cv, self.c_len), format_bits(av, self.alpha_len))

    def ids(self) -> list[SetId]:
        return [SetId(self.construction, format_bits(c, self.c_len), format_bits(a, self.alpha_len))
                for c in range(1 << self.c_len) for a in range(1 << self.alpha_len)]

    def index_of(self, sid: SetId) -> int:
        self._check(sid)
        return (int(sid.c, 2) << self.alpha_len) | int(sid.alpha, 2)

    def _check(self, sid: SetId):
        if (sid.construction != self.construction or len(sid.c) != self.c_len
                or len(sid.alpha) != self.alpha_len):
            raise UnknownId(f"{sid!r} does not belong to {self!r}")

    def __contains__(self, sid) -> bool:
        try:
            self._check(sid)
        except UnknownId:
            return False
        return True

    def __iter__(self) -> Iterator[OrthogonalSet]:
        for sid in self.ids():
            yield self.get(sid)

    # -- materialisation --------------------------------------------------

    def combination(self, c: BitsLike) -> bf.BooleanFunction:
        cv = parse_bits(c, self.c_len)
        if cv not in self._combos:
            self._combos[cv] = self.F.combine(cv)
        return self._combos[cv]

    def omegas(self, alpha: BitsLike) -> np.ndarray:
        """Masks of the linear functions in ``L_alpha``, in set order."""
        av = parse_bits(alpha, self.alpha_len)
        free = self.n - self.alpha_len
        return (np.arange(1 << free, dtype=np.int64) << self.alpha_len) | av

    def get(self, sid: SetId) -> OrthogonalSet:
        self._check(sid)
        if sid not in self._cache:
            f = self.combination(sid.c)
            omegas = self.omegas(sid.alpha)
            bits = _linear_rows(self.n, omegas) ^ f.tt[None, :]
            seqs = (1 - 2 * bits.astype(np.int8)).astype(np.int8)
            seqs.flags.writeable = False
            self._cache[sid] = OrthogonalSet(sid, seqs, tuple(int(w) for w in omegas))
        return self._cache[sid]

    def set(self, c: BitsLike, alpha: BitsLike) -> OrthogonalSet:
        return self.get(self.make_id(c, alpha))

    def hadamard_part(self, alpha: BitsLike) -> OrthogonalSet:
        return self.set(0, alpha)

    def all_sequences(self) -> np.ndarray:
        """Every sequence of the family stacked in id order (c major)."""
        return np.concatenate([self.get(sid).sequences for sid in self.ids()])

    # -- export -----------------------------------------------------------

    def manifest(self) -> dict:
        out = {"construction": self.construction}
        out.update(self.params)
        if self.field is not None:
            out["prim_poly"] = hex(self.field.prim_poly)
            out["prim_poly_text"] = format_poly(self.field.prim_poly)
        out.update(self.extra)
        out["sequence_length"] = self.length
        out["set_size"] = self.set_size
        out["n_sets"] = self.n_sets
        out["sets"] = [{"c": sid.c, "alpha": sid.alpha} for sid in self.ids()]
        return out


# -- construction 1 ------------------------------------------------------------

def semibent_split(m: int) -> tuple[int, int]:
    """``(s, t) = (floor((m-1)/2), floor((m+2)/2))``."""
    return (m - 1) // 2, (m + 2) // 2


def _resolve_field(t: int, field) -> Field:
    if field is None or isinstance(field, (str, int)):
        return make_field(t, field)
    if field.t != t:
        raise FieldMismatch(f"field has dimension {field.t}, construction needs {t}")
    return field


def index_ic(field: Field, c: BitsLike) -> int:
    """``i_c`` with ``gamma^(i_c) = c_1 gamma + c_2 gamma^2 + ... + c_t gamma^t``."""
    cv = parse_bits(c, field.t)
    if cv == 0:
        raise ZeroCombination("i_c is undefined for c = 0")
    acc = 0
    for i in range(1, field.t + 1):
        if cv >> (field.t - i) & 1:
            acc ^= pow_gamma(field, i)
    return dlog(field, acc)


def _mm_components(field: Field, s: int, t: int, x_len: int, offset: int,
                   zero_fixed: bool) -> tuple[bf.BooleanFunction, ...]:
    m = s + x_len
    idx = bf._indices(m)
    y = idx >> x_len
    x = idx & ((1 << x_len) - 1)
    par = bf._parity_table(x_len)
    comps = []
    for i in range(1, t + 1):
        w = np.array([pi_int(field, pow_gamma(field, yy + i + offset)) for yy in range(1 << s)],
                     dtype=np.int64)
        w <<= x_len - field.t
        if zero_fixed:
            w[0] = 0
        comps.append(bf.BooleanFunction(m, par[w[y] & x]))
    return tuple(comps)


def construction1(m: int, s: int | None = None, t: int | None = None, field=None,
                  exponent_offset: int = 0) -> tuple[VectorialFunction, SetFamily]:
    if s is None and t is None:
        s, t = semibent_split(m)
    elif s is None:
        s = m - t
    elif t is None:
        t = m - s
    if s < 1 or t < 1 or s + t != m:
        raise BadPartition(f"need m = s + t with s, t >= 1 (got m={m}, s={s}, t={t})")
    if s >= t:
        raise BadPartition(f"need s < t (got s={s}, t={t})")
    field = _resolve_field(t, field)
    comps = _mm_components(field, s, t, t, exponent_offset, zero_fixed=False)
    F = VectorialFunction(m, t, comps, (s, t), field)
    params = {"m": m, "s": s, "t": t}
    extra = {"exponent_offset": exponent_offset}
    return F, SetFamily(1, params, F, t, t, m, field, extra)


def hadamard_partition(m: int, s: int, t: int) -> dict[str, OrthogonalSet]:
    """``H_alpha = {(beta, alpha).(y, x) : beta}`` for every alpha in F_2^t."""
    if s + t != m or s < 0 or t < 1:
        raise BadPartition(f"need m = s + t (got m={m}, s={s}, t={t})")
    parts = {}
    for a in range(1 << t):
        omegas = (np.arange(1 << s, dtype=np.int64) << t) | a
        rows = (1 - 2 * _linear_rows(m, omegas).astype(np.int8)).astype(np.int8)
        key = format_bits(a, t)
        parts[key] = OrthogonalSet(SetId(1, format_bits(0, t), key), rows,
                                   tuple(int(w) for w in omegas))
    return parts


# -- vectorial bent ------------------------------------------------------------

def vectorial_bent(u: int, t: int, field=None) -> VectorialFunction:
    """First ``t`` coordinates of ``pi(z_a * z_b)`` over GF(2^(u/2)).

    Every nonzero component combination is a Maiorana-McFarland bent
    function with a bijective linear map; bentness is audited on the spot.
    """
    if u % 2 or u < 2 * t or t < 1:
        raise BadParameters(f"vectorial bent needs even u >= 2t (got u={u}, t={t})")
    k = u // 2
    field = _resolve_field(k, field)
    idx = bf._indices(u)
    za = (idx >> k).tolist()
    zb = (idx & ((1 << k) - 1)).tolist()
    rev = [pi_int(field, a) for a in range(1 << k)]  # pi_int is an involution on k bits
    prod = np.array([mul(field, rev[a], rev[b]) for a, b in zip(za, zb)], dtype=np.int64)
    comps = tuple(bf.BooleanFunction(u, ((prod >> (i - 1)) & 1).astype(np.uint8))
                  for i in range(1, t + 1))
    H = VectorialFunction(u, t, comps, (k, k), field)
    for c in range(1, 1 << t):
        if not bf.is_bent(H.combine(c)):
            raise ConstructionFailed(f"combination {format_bits(c, t)} of H is not bent")
    return H


# -- construction 2 --------------------------------------------------------------

def construction2(base: SetFamily, u: int, bent: VectorialFunction | None = None,
                  bent_field=None) -> tuple[VectorialFunction, SetFamily]:
    if base.construction != 1:
        raise BadParameters("construction 2 extends a construction-1 family")
    t = base.params["t"]
    m = base.params["m"]
    if u % 2 or u < 2 * t:
        raise BadParameters(f"need even u >= 2t = {2 * t} (got u={u})")
    H = bent if bent is not None else vectorial_bent(u, t, bent_field)
    if H.m != u or H.t != t:
        raise BadParameters(f"bent function must map F_2^{u} to F_2^{t}")
    comps = tuple(bf.BooleanFunction(m + u, np.bitwise_xor.outer(h.tt, f.tt).ravel())
                  for h, f in zip(H.components, base.F.components))
    G = VectorialFunction(m + u, t, comps, (u, base.params["s"], t), base.field)
    params = {"m": m, "s": base.params["s"], "t": t, "u": u}
    extra = dict(base.extra)
    if H.field is not None:
        extra["bent_prim_poly"] = hex(H.field.prim_poly)
    fam = SetFamily(2, params, G, t, t, m + u, base.field, extra)
    fam.base = base
    fam.bent = H
    return G, fam


# -- construction 3 --------------------------------------------------------------

def construction3(m: int, d: int = 2, field=None,
                  exponent_offset: int = 0) -> tuple[VectorialFunction, SetFamily]:
    if m % 2 or m < 6:
        raise BadParameters(f"construction 3 needs even m = 2k + 2 with k >= 2 (got m={m})")
    if d not in (2, 3):
        raise BadParameters(f"d must be 2 or 3 (got {d})")
    k = (m - 2) // 2
    field = _resolve_field(k, field)
    comps = _mm_components(field, k, k, k + 2, exponent_offset, zero_fixed=True)
    F = VectorialFunction(m, k, comps, (k, k + 2), field)
    params = {"m": m, "k": k, "d": d}
    extra = {"exponent_offset": exponent_offset}
    return F, SetFamily(3, params, F, k, d, m, field, extra)


# -- rebuilding from parameters ----------------------------------------------------

def build_family(spec: dict) -> SetFamily:
    """Rebuild a family from a manifest-style dict."""
    cons = int(spec["construction"])
    poly = spec.get("prim_poly")
    offset = int(spec.get("exponent_offset", 0))
    if cons == 1:
        return construction1(int(spec["m"]), spec.get("s"), spec.get("t"),
                             field=poly, exponent_offset=offset)[1]
    if cons == 2:
        _, base = construction1(int(spec["m"]), spec.get("s"), spec.get("t"),
                                field=poly, exponent_offset=offset)
        return construction2(base, int(spec["u"]), bent_field=spec.get("bent_prim_poly"))[1]
    if cons == 3:
        return construction3(int(spec["m"]), int(spec.get("d", 2)), field=poly,
                             exponent_offset=offset)[1]
    raise BadParameters(f"unknown construction {cons}")


def family_spec(family: SetFamily) -> dict:
    """The parameter part of :meth:`SetFamily.manifest` (no set listing)."""
    man = family.manifest()
    for key in ("sets", "sequence_length", "set_size", "n_sets", "prim_poly_text"):
        man.pop(key, None)
    return man


def semibent_audit(family: SetFamily) -> dict:
    """Classify every nonzero combination; report kinds and Parseval."""
    kinds = {}
    parseval = True
    for c in range(1, 1 << family.c_len):
        f = family.combination(c)
        spec = bf.walsh_spectrum(f)
        parseval &= bf.parseval_holds(spec)
        kinds[format_bits(c, family.c_len)] = str(bf.classify_spectrum(f.m, spec))
    return {
        "all_semibent": all(v == bf.Kind.SEMI_BENT.value for v in kinds.values()),
        "parseval": parseval,
        "kinds": kinds,
    }
