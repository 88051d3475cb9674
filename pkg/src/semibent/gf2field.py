"""Arithmetic in GF(2^t) relative to a fixed primitive element.

Elements are plain ints in the polynomial basis: bit ``i`` holds the
coefficient of ``gamma**i``.  With that storage the isomorphism ``pi``
onto F_2^t is the identity on bits; only the printed vector order differs
(``b_1``, the coefficient of 1, is written first).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .bits import BitsLike, parse_bits, reverse_bits
from .errors import DlogOfZero, NonPrimitivePolynomial, UnsupportedDegree

MIN_DEGREE = 2
MAX_DEGREE = 16

# Lowest-weight primitive polynomial of each degree, ties broken by value.
DEFAULT_POLYS = {
    2: 0x7,      # x^2+x+1
    3: 0xB,      # x^3+x+1
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x402B,
    15: 0x8003,
    16: 0x1002D,
}


@dataclass(frozen=True)
class Field:
    t: int
    prim_poly: int
    antilog_table: tuple[int, ...] = dc_field(repr=False)
    log_table: tuple[int, ...] = dc_field(repr=False)

    @property
    def order(self) -> int:
        """Multiplicative order of gamma, ``2^t - 1``."""
        return (1 << self.t) - 1

    @property
    def size(self) -> int:
        return 1 << self.t

    def __str__(self) -> str:
        return f"GF(2^{self.t}) mod {format_poly(self.prim_poly)}"


def parse_poly(spec, t: int | None = None) -> int:
    """Read a polynomial given as an int, hex/binary literal or ``x^3+x+1``.

    ``"default"`` (or None) picks the built-in polynomial for degree ``t``.
    """
    if spec is None or (isinstance(spec, str) and spec.strip().lower() == "default"):
        if t is None:
            raise ValueError("degree required to select the default polynomial")
        if t not in DEFAULT_POLYS:
            raise UnsupportedDegree(f"no field support for t={t}; need {MIN_DEGREE}..{MAX_DEGREE}")
        return DEFAULT_POLYS[t]
    if isinstance(spec, int):
        return spec
    text = spec.replace(" ", "").lower()
    if re.fullmatch(r"0x[0-9a-f]+", text):
        return int(text, 16)
    if re.fullmatch(r"0b[01]+", text):
        return int(text, 2)
    if text.isdigit():
        return int(text)
    value = 0
    for term in text.split("+"):
        m = re.fullmatch(r"([a-z])(?:\^(\d+))?|1", term)
        if not m:
            raise ValueError(f"cannot parse polynomial term {term!r} in {spec!r}")
        if term == "1":
            exp = 0
        else:
            exp = int(m.group(2)) if m.group(2) else 1
        value ^= 1 << exp
    return value


def format_poly(poly: int, var: str = "x") -> str:
    terms = []
    for exp in range(poly.bit_length() - 1, -1, -1):
        if poly >> exp & 1:
            terms.append("1" if exp == 0 else var if exp == 1 else f"{var}^{exp}")
    return "+".join(terms) or "0"


def make_field(t: int, prim_poly=None) -> Field:
    if not MIN_DEGREE <= t <= MAX_DEGREE:
        raise UnsupportedDegree(f"t={t} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
    poly = parse_poly(prim_poly, t)
    if poly.bit_length() - 1 != t:
        raise NonPrimitivePolynomial(f"{format_poly(poly)} does not have degree {t}")
    n = (1 << t) - 1
    antilog = [0] * n
    log = [-1] * (1 << t)
    v = 1
    for k in range(n):
        if log[v] != -1:
            raise NonPrimitivePolynomial(
                f"{format_poly(poly)}: gamma has order {k}, not {n}")
        antilog[k] = v
        log[v] = k
        v <<= 1
        if v >> t & 1:
            v ^= poly
    if v != 1:
        raise NonPrimitivePolynomial(f"{format_poly(poly)} is not primitive")
    return Field(t, poly, tuple(antilog), tuple(log))


def pi(field: Field, a: int) -> tuple[int, ...]:
    """Coordinates ``(b_1, ..., b_t)`` of ``a = b_1 + b_2 gamma + ...``."""
    return tuple((a >> i) & 1 for i in range(field.t))


def pi_int(field: Field, a: int) -> int:
    """``pi(a)`` packed as a bit vector with ``b_1`` in the top bit."""
    return reverse_bits(a, field.t)


def pi_inv(field: Field, v: BitsLike) -> int:
    return reverse_bits(parse_bits(v, field.t), field.t)


def add(a: int, b: int) -> int:
    return a ^ b


def pow_gamma(field: Field, e: int) -> int:
    return field.antilog_table[e % field.order]


def dlog(field: Field, a: int) -> int:
    if a == 0:
        raise DlogOfZero("discrete log of 0 is undefined")
    return field.log_table[a]


def mul(field: Field, a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return field.antilog_table[(field.log_table[a] + field.log_table[b]) % field.order]


def element_str(field: Field, a: int) -> str:
    """Human form: ``0``, ``1``, ``g``, ``g^k``."""
    if a == 0:
        return "0"
    k = dlog(field, a)
    return "1" if k == 0 else "g" if k == 1 else f"g^{k}"


def pi_str(field: Field, a: int) -> str:
    return "".join(str(b) for b in pi(field, a))


__all__ = [
    "Field", "DEFAULT_POLYS", "make_field", "parse_poly", "format_poly",
    "pi", "pi_int", "pi_inv", "pi_str", "add", "mul", "pow_gamma", "dlog",
    "element_str",
]
