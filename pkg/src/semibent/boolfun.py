"""Boolean functions on F_2^m, their +/-1 sequences and Walsh spectra.

Truth tables are numpy ``uint8`` arrays of length ``2**m``; index ``j``
encodes the input ``(x_1, ..., x_m)`` with ``x_1`` as the most significant
bit, so ``x_m`` varies fastest.  Sequences are ``int8`` arrays over {+1, -1}.
All spectral work is exact integer arithmetic.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bits import BitsLike, parse_bits
from .errors import IndexOutOfRange, LengthMismatch

MAX_VARS = 24


@lru_cache(maxsize=None)
def _parity_table(m: int) -> np.ndarray:
    p = np.zeros(1 << m, dtype=np.uint8)
    for k in range(m):
        p[1 << k: 2 << k] = p[: 1 << k] ^ 1
    p.flags.writeable = False
    return p


@lru_cache(maxsize=None)
def _indices(m: int) -> np.ndarray:
    idx = np.arange(1 << m, dtype=np.int64)
    idx.flags.writeable = False
    return idx


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    m: int
    tt: np.ndarray

    def __post_init__(self):
        if not 0 <= self.m <= MAX_VARS:
            raise ValueError(f"m={self.m} outside [0, {MAX_VARS}]")
        tt = np.ascontiguousarray(self.tt, dtype=np.uint8)
        if tt.shape != (1 << self.m,):
            raise LengthMismatch(f"truth table of length {tt.size} for m={self.m}")
        if tt.size and tt.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        tt.flags.writeable = False
        object.__setattr__(self, "tt", tt)

    def __call__(self, x: BitsLike) -> int:
        return int(self.tt[parse_bits(x, self.m)])

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        if other.m != self.m:
            raise LengthMismatch(f"cannot add functions on {self.m} and {other.m} variables")
        return BooleanFunction(self.m, self.tt ^ other.tt)

    __add__ = __xor__

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.tt, other.tt)

    def __hash__(self):
        return hash((self.m, self.tt.tobytes()))

    def __repr__(self):
        return f"BooleanFunction(m={self.m}, tt=0x{to_hex(self)})"

    @property
    def weight(self) -> int:
        return int(self.tt.sum())


def zero(m: int) -> BooleanFunction:
    return BooleanFunction(m, np.zeros(1 << m, dtype=np.uint8))


def linear(m: int, omega: BitsLike) -> BooleanFunction:
    """The linear function ``omega . x``."""
    w = parse_bits(omega, m)
    return BooleanFunction(m, _parity_table(m)[_indices(m) & w])


def from_callable(m: int, func) -> BooleanFunction:
    """Tabulate ``func(bits)`` where ``bits`` is the tuple ``(x_1, ..., x_m)``."""
    tt = np.empty(1 << m, dtype=np.uint8)
    for j in range(1 << m):
        bits = tuple((j >> (m - 1 - i)) & 1 for i in range(m))
        tt[j] = func(bits) & 1
    return BooleanFunction(m, tt)


def from_anf(m: int, anf: str) -> BooleanFunction:
    """Parse an ANF such as ``"x1x2 + x3 + 1"`` (variables x1..xm).

    Only a test convenience; ``*`` between factors and ``^`` for addition
    are also accepted.
    """
    idx = _indices(m)
    tt = np.zeros(1 << m, dtype=np.uint8)
    text = anf.replace("^", "+").replace(" ", "")
    if not text or text == "0":
        return BooleanFunction(m, tt)
    for term in text.split("+"):
        if term == "1":
            tt ^= 1
            continue
        factors = re.findall(r"x(\d+)", term.replace("*", ""))
        if not factors or "".join(f"x{f}" for f in factors) != term.replace("*", ""):
            raise ValueError(f"cannot parse ANF term {term!r}")
        mono = np.ones(1 << m, dtype=np.uint8)
        for f in factors:
            i = int(f)
            if not 1 <= i <= m:
                raise ValueError(f"variable x{i} out of range for m={m}")
            mono &= ((idx >> (m - i)) & 1).astype(np.uint8)
        tt ^= mono
    return BooleanFunction(m, tt)


def from_hex(m: int, text: str) -> BooleanFunction:
    """Inverse of :func:`to_hex`: the table read MSB-first, ``tt[0]`` leading."""
    n = 1 << m
    value = int(text, 16)
    if value >> n:
        raise LengthMismatch(f"hex string too long for m={m}")
    tt = np.array([(value >> (n - 1 - j)) & 1 for j in range(n)], dtype=np.uint8)
    return BooleanFunction(m, tt)


def to_hex(f: BooleanFunction) -> str:
    n = 1 << f.m
    digits = max(1, (n + 3) // 4)
    value = int("".join(map(str, f.tt.tolist())), 2) if n else 0
    return format(value, f"0{digits}x")


# -- sequences ---------------------------------------------------------------

def sequence_of(f: BooleanFunction) -> np.ndarray:
    """``((-1)^f(0..00), (-1)^f(0..01), ..., (-1)^f(1..11))``."""
    return (1 - 2 * f.tt.astype(np.int8)).astype(np.int8)


def function_of(seq: np.ndarray) -> BooleanFunction:
    seq = np.asarray(seq)
    n = seq.size
    m = n.bit_length() - 1
    if n != 1 << m:
        raise LengthMismatch(f"sequence length {n} is not a power of two")
    if not np.all((seq == 1) | (seq == -1)):
        raise ValueError("sequence entries must be +1 or -1")
    return BooleanFunction(m, (seq < 0).astype(np.uint8))


def format_sequence(seq: np.ndarray) -> str:
    return "".join("+" if v > 0 else "-" for v in np.asarray(seq).tolist())


def parse_sequence(text: str) -> np.ndarray:
    text = text.strip().strip("()")
    if any(ch not in "+-" for ch in text):
        raise ValueError(f"not a sign string: {text!r}")
    return np.array([1 if ch == "+" else -1 for ch in text], dtype=np.int8)


def inner_product(s1: np.ndarray, s2: np.ndarray) -> int:
    s1, s2 = np.asarray(s1), np.asarray(s2)
    if s1.shape != s2.shape:
        raise LengthMismatch(f"lengths {s1.shape} and {s2.shape} differ")
    return int(np.dot(s1.astype(np.int64), s2.astype(np.int64)))


def componentwise_product(s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
    s1, s2 = np.asarray(s1), np.asarray(s2)
    if s1.shape != s2.shape:
        raise LengthMismatch(f"lengths {s1.shape} and {s2.shape} differ")
    return (s1 * s2).astype(np.int8)


# -- Walsh-Hadamard transform ------------------------------------------------

def walsh_at(f: BooleanFunction, omega: BitsLike) -> int:
    """``W_f(omega) = sum_x (-1)^(f(x) + omega.x)``, straight from the definition."""
    w = parse_bits(omega, f.m)
    exponent = f.tt ^ _parity_table(f.m)[_indices(f.m) & w]
    return int((1 << f.m) - 2 * int(exponent.sum()))


def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalised butterfly along the last axis (length ``2^m``) of an integer array.

    Leading axes are treated as a batch, so a stack of sequences is
    transformed in one pass.
    """
    a = np.array(values, dtype=np.int32)
    shape = a.shape
    n = shape[-1]
    if n & (n - 1):
        raise LengthMismatch(f"transform length {n} is not a power of two")
    lead = shape[:-1]
    h = 1
    while h < n:
        a = a.reshape(*lead, -1, 2, h)
        a = np.stack((a[..., 0, :] + a[..., 1, :], a[..., 0, :] - a[..., 1, :]), axis=-2)
        h <<= 1
    return a.reshape(shape)


def walsh_spectrum(f: BooleanFunction) -> np.ndarray:
    """All ``2^m`` Walsh values, indexed by ``omega`` (m * 2^m additions)."""
    return fwht(sequence_of(f))


# -- classification ------------------------------------------------------------

class Kind(enum.Enum):
    BENT = "bent"
    SEMI_BENT = "semi-bent"
    PLATEAUED = "plateaued"
    FIVE_VALUED_OR_MORE = "five-valued-or-more"


@dataclass(frozen=True)
class SpectrumClass:
    kind: Kind
    balanced: bool
    spectrum_values: frozenset
    amplitude: int | None = None  # lambda for plateaued spectra {0, +-2^lambda}

    def __str__(self):
        if self.kind is Kind.PLATEAUED:
            return f"plateaued(lambda={self.amplitude})"
        return self.kind.value


def semibent_amplitude(m: int) -> int:
    """Exponent ``floor((m+2)/2)`` of the nonzero semi-bent Walsh magnitude."""
    return (m + 2) // 2


def classify_spectrum(m: int, spectrum: np.ndarray) -> SpectrumClass:
    values = frozenset(int(v) for v in np.unique(spectrum))
    balanced = int(spectrum[0]) == 0
    mags = {abs(v) for v in values} - {0}
    if len(mags) == 1:
        mag = mags.pop()
        lam = mag.bit_length() - 1
        if mag == 1 << lam:
            # affine functions have a single spike of height 2^m
            single_spike = lam == m
            if m % 2 == 0 and 0 not in values and 2 * lam == m:
                return SpectrumClass(Kind.BENT, balanced, values, lam)
            if lam == semibent_amplitude(m) and not single_spike:
                return SpectrumClass(Kind.SEMI_BENT, balanced, values, lam)
            return SpectrumClass(Kind.PLATEAUED, balanced, values, lam)
    return SpectrumClass(Kind.FIVE_VALUED_OR_MORE, balanced, values)


def classify(f: BooleanFunction) -> SpectrumClass:
    return classify_spectrum(f.m, walsh_spectrum(f))


def is_semibent(f: BooleanFunction) -> bool:
    return classify(f).kind is Kind.SEMI_BENT


def is_bent(f: BooleanFunction) -> bool:
    return classify(f).kind is Kind.BENT


def parseval_holds(spectrum: np.ndarray) -> bool:
    n = spectrum.size
    return int(np.sum(spectrum.astype(np.int64) ** 2)) == n * n


# -- Sylvester-Hadamard --------------------------------------------------------

def hadamard_row(m: int, j: int) -> np.ndarray:
    """Row ``j`` of H_m: the sequence of ``omega . x`` with omega = binary(j)."""
    if not 0 <= j < 1 << m:
        raise IndexOutOfRange(f"row {j} outside H_{m}")
    return sequence_of(linear(m, j))


def hadamard_set(m: int) -> list[np.ndarray]:
    return [hadamard_row(m, j) for j in range(1 << m)]


def sylvester_matrix(m: int) -> np.ndarray:
    """H_m by the 2x2 block recursion (independent of :func:`hadamard_row`)."""
    h = np.ones((1, 1), dtype=np.int8)
    for _ in range(m):
        h = np.block([[h, h], [h, -h]])
    return h
