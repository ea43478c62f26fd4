"""Index sets encoded as integer bitmasks.

Subsets of objects and of attributes are plain Python ints throughout the
toolkit: bit ``i`` set means index ``i`` is in the set.  Intersection,
union and subset tests are then single arithmetic operations, which keeps
the closure loops fast without any dependency.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Iterate over the set bit positions of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    """Build a bitmask from an iterable of indices."""
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def is_subset(a: int, b: int) -> bool:
    """True iff the set ``a`` is contained in the set ``b``."""
    return a & ~b == 0


def full_mask(n: int) -> int:
    """Mask with the ``n`` lowest bits set."""
    return (1 << n) - 1
