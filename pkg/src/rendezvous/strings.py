"""Binary-string combinatorics behind the pair schedules.

Bit strings are plain ``str`` objects over the alphabet ``'0'``/``'1'``.
That keeps them hashable, printable and directly serializable; the helpers
here validate on entry and never mutate.

The async codeword pipeline is::

    encode_async(x) = make_two_maximal('1' + unique_encode(balance(x)) + '0')

and every codeword is balanced, strictly Catalan and 2-maximal, which is
what makes two cyclic codewords collide on every pair of rotations.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

__all__ = [
    "NotACodeword",
    "EncodingRecord",
    "log_sharp",
    "bin_encode",
    "weight",
    "complement",
    "graph_of",
    "is_balanced",
    "is_catalan",
    "is_strictly_catalan",
    "maximality_count",
    "minimality_count",
    "rotate",
    "diamond0",
    "diamond1",
    "black_diamond0",
    "black_diamond1",
    "encode_sync",
    "balance",
    "unbalance",
    "to_catalan_shift",
    "unique_encode",
    "unique_decode",
    "make_two_maximal",
    "undo_two_maximal",
    "encode_async",
    "encode_async_record",
    "decode_async",
    "async_length",
]


class NotACodeword(ValueError):
    """Raised by the decoders when a string lies outside the encoder's image."""


@dataclass(frozen=True)
class EncodingRecord:
    input: str
    output: str
    shift: int
    insertion_index: int


def _check(z: str) -> str:
    if not isinstance(z, str) or z.strip("01"):
        raise ValueError(f"not a bit string: {z!r}")
    return z


def _check_nonempty(z: str) -> str:
    _check(z)
    if not z:
        raise ValueError("empty bit string")
    return z


def log_sharp(n: int) -> int:
    """Return ceil(log2 n) for n >= 1."""
    if n < 1:
        raise ValueError(f"log_sharp needs n >= 1, got {n}")
    return (n - 1).bit_length()


def bin_encode(x: int, m: int) -> str:
    """Base-two encoding of ``x`` padded to ``max(1, log_sharp(m))`` bits.

    ``m`` is the largest value the caller expects. When ``m`` is a power of
    two, ``x == m`` does not fit the width and is rejected rather than
    silently widened, since callers rely on a fixed width per ``m``.
    """
    if m < 1:
        raise ValueError(f"bin_encode needs m >= 1, got {m}")
    if x < 0 or x > m:
        raise ValueError(f"value {x} outside [0, {m}]")
    width = max(1, log_sharp(m))
    if x.bit_length() > width:
        raise ValueError(f"value {x} does not fit in {width} bits")
    return format(x, f"0{width}b")


def weight(z: str) -> int:
    return _check(z).count("1")


def complement(z: str) -> str:
    return _check(z).translate(str.maketrans("01", "10"))


def graph_of(z: str) -> list[int]:
    """Prefix walk of ``z``: +1 for each '1', -1 for each '0', starting at 0."""
    _check(z)
    return list(accumulate((1 if c == "1" else -1 for c in z), initial=0))


def is_balanced(z: str) -> bool:
    return 2 * weight(z) == len(z)


def is_catalan(z: str) -> bool:
    return is_balanced(z) and min(graph_of(z)) >= 0


def is_strictly_catalan(z: str) -> bool:
    if not is_balanced(z) or not z:
        return False
    return all(h > 0 for h in graph_of(z)[1:-1])


def maximality_count(z: str) -> int:
    """Number of indices in 1..|z| where the walk attains its maximum."""
    g = graph_of(_check_nonempty(z))[1:]
    return g.count(max(g))


def minimality_count(z: str) -> int:
    """Number of indices in 0..|z|-1 where the walk attains its minimum.

    Both counts scan one full cycle of positions, so for balanced strings
    (where the walk ends where it starts) they are rotation-invariant.
    """
    g = graph_of(_check_nonempty(z))[:-1]
    return g.count(min(g))


def rotate(z: str, i: int) -> str:
    """Left rotation: the symbol at position ``i`` becomes the first."""
    _check_nonempty(z)
    i %= len(z)
    return z[i:] + z[:i]


def _pairs(r: str, s: str) -> set[tuple[str, str]]:
    _check(r)
    _check(s)
    if len(r) != len(s):
        raise ValueError(f"length mismatch: {len(r)} != {len(s)}")
    return set(zip(r, s))


def diamond0(r: str, s: str) -> bool:
    """Both (0,0) and (1,1) occur among the coordinate pairs."""
    p = _pairs(r, s)
    return ("0", "0") in p and ("1", "1") in p


def diamond1(r: str, s: str) -> bool:
    """Both (0,1) and (1,0) occur among the coordinate pairs."""
    p = _pairs(r, s)
    return ("0", "1") in p and ("1", "0") in p


def _all_rotations(pred, r: str, s: str) -> bool:
    _check_nonempty(r)
    if len(r) != len(s):
        raise ValueError(f"length mismatch: {len(r)} != {len(s)}")
    # S^i r vs S^j s depends only on j - i, so fixing i = 0 is exhaustive.
    return all(pred(r, rotate(s, j)) for j in range(len(s)))


def black_diamond0(r: str, s: str) -> bool:
    return _all_rotations(diamond0, r, s)


def black_diamond1(r: str, s: str) -> bool:
    return _all_rotations(diamond1, r, s)


def encode_sync(x: str) -> str:
    """Synchronous codeword ``01 + x + complement(weight bits)``.

    The weight ranges over 0..|x| inclusive, so it is written on
    ``max(1, log_sharp(|x| + 1))`` bits; with fewer bits the all-ones input
    would collide with a lighter one.
    """
    _check_nonempty(x)
    w = format(weight(x), f"0{max(1, log_sharp(len(x) + 1))}b")
    return "01" + x + complement(w)


def balance(x: str) -> str:
    """Balanced injective map ``x + complement(x)``."""
    return _check_nonempty(x) + complement(x)


def unbalance(z: str) -> str:
    _check(z)
    h = len(z) // 2
    if len(z) % 2 or h == 0 or z[h:] != complement(z[:h]):
        raise NotACodeword(f"{z!r} is not in the image of balance")
    return z[:h]


def to_catalan_shift(z: str) -> tuple[int, str]:
    """Return ``(c, rotate(z, c))`` with ``c`` the first index of the walk's minimum."""
    if not is_balanced(_check_nonempty(z)):
        raise ValueError(f"{z!r} is not balanced")
    g = graph_of(z)
    c = g.index(min(g))
    return c, rotate(z, c)


def _shift_width(length: int) -> int:
    return max(1, log_sharp(max(1, length - 1)))


def unique_encode(z: str) -> str:
    """Catalan string that records both ``z``'s Catalan rotation and the shift."""
    c, w = to_catalan_shift(z)
    if len(z) < 2:
        raise ValueError("need |z| >= 2")
    tag = balance(bin_encode(c, len(z) - 1))
    h = len(tag) // 2
    return w + "1" * h + tag + "0" * h


def unique_decode(u: str, length: int) -> str:
    """Invert :func:`unique_encode` for an input of known ``length``."""
    _check(u)
    h = 2 * _shift_width(length)
    if len(u) != length + 2 * h:
        raise NotACodeword(f"length {len(u)} does not match input length {length}")
    w, tail = u[:length], u[length:]
    if tail[: h // 2] != "1" * (h // 2) or tail[-(h // 2):] != "0" * (h // 2):
        raise NotACodeword("malformed shift tag")
    c = int(unbalance(tail[h // 2: -(h // 2)]), 2)
    if c >= length:
        raise NotACodeword(f"shift {c} out of range")
    z = rotate(w, -c)
    if unique_encode(z) != u:
        raise NotACodeword(f"{u!r} is not in the image of unique_encode")
    return z


def _leftmost_max(z: str) -> int:
    g = graph_of(z)
    return g.index(max(g))


def make_two_maximal(z: str) -> str:
    """Insert ``1010`` right after the leftmost maximum of a strictly Catalan walk."""
    if not is_strictly_catalan(z):
        raise ValueError(f"{z!r} is not strictly Catalan")
    i = _leftmost_max(z)
    return z[:i] + "1010" + z[i:]


def undo_two_maximal(w: str) -> str:
    _check(w)
    p = _leftmost_max(w)
    if p < 1 or w[p - 1: p + 3] != "1010":
        raise NotACodeword(f"{w!r} has no 1010 block at its first peak")
    z = w[: p - 1] + w[p + 3:]
    if not is_strictly_catalan(z) or make_two_maximal(z) != w:
        raise NotACodeword(f"{w!r} is not in the image of make_two_maximal")
    return z


def async_length(m: int) -> int:
    """Codeword length of :func:`encode_async` for inputs of length ``m``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return 2 * m + 4 * _shift_width(2 * m) + 6


def encode_async_record(x: str) -> EncodingRecord:
    b = balance(x)
    c, _ = to_catalan_shift(b)
    wrapped = "1" + unique_encode(b) + "0"
    i = _leftmost_max(wrapped)
    return EncodingRecord(input=x, output=make_two_maximal(wrapped), shift=c, insertion_index=i)


def encode_async(x: str) -> str:
    return encode_async_record(x).output


def decode_async(w: str) -> str:
    """Invert :func:`encode_async`; raise :class:`NotACodeword` off the image."""
    _check(w)
    m = 1
    while async_length(m) < len(w):
        m += 1
    if async_length(m) != len(w):
        raise NotACodeword(f"no input length produces a codeword of length {len(w)}")
    wrapped = undo_two_maximal(w)
    if wrapped[0] != "1" or wrapped[-1] != "0":
        raise NotACodeword("missing outer 1...0 frame")
    x = unbalance(unique_decode(wrapped[1:-1], 2 * m))
    if encode_async(x) != w:
        raise NotACodeword(f"{w!r} is not in the image of encode_async")
    return x
