"""Bit-vector helpers.

A vector ``(v_1, ..., v_n)`` over F_2 is stored as an int whose most
significant bit (bit ``n-1``) is ``v_1``.  This matches the truth-table
index order, where ``x_1`` is the slowest-varying coordinate.
"""

from __future__ import annotations

from typing import Sequence, Union

BitsLike = Union[str, Sequence[int], int]


def parse_bits(value: BitsLike, n: int | None = None) -> int:
    """Convert ``"011"``, ``(0, 1, 1)`` or an int into the packed int form."""
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {value!r}")
        if n is not None and len(text) != n:
            raise ValueError(f"expected {n} bits, got {len(text)}: {value!r}")
        return int(text, 2)
    if isinstance(value, (int,)) and not isinstance(value, bool):
        if value < 0 or (n is not None and value >> n):
            raise ValueError(f"{value} does not fit in {n} bits")
        return value
    items = list(value)
    if n is not None and len(items) != n:
        raise ValueError(f"expected {n} bits, got {len(items)}")
    out = 0
    for b in items:
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        out = (out << 1) | int(b)
    return out


def format_bits(value: int, n: int) -> str:
    if n == 0:
        return ""
    return format(value, f"0{n}b")


def to_tuple(value: int, n: int) -> tuple[int, ...]:
    return tuple((value >> (n - 1 - i)) & 1 for i in range(n))


def reverse_bits(value: int, n: int) -> int:
    out = 0
    for _ in range(n):
        out = (out << 1) | (value & 1)
        value >>= 1
    return out


def parity(value: int) -> int:
    return bin(value).count("1") & 1
