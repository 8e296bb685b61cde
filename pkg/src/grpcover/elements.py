"""Dense bit-vector sets of element indices."""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class ElementSet:
    """An immutable set of element indices backed by a Python int.

    Iteration is in increasing index order, which is also the canonical
    ordering used for sorting and for serialization.
    """

    __slots__ = ("mask",)

    def __init__(self, indices: Iterable[int] = ()):
        self.mask = mask_of(indices)

    @classmethod
    def from_mask(cls, mask: int) -> ElementSet:
        s = cls.__new__(cls)
        s.mask = mask
        return s

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and i >= 0 and (self.mask >> i) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter(members(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ElementSet):
            return self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            return self.mask == mask_of(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask)

    def __or__(self, other: ElementSet) -> ElementSet:
        return ElementSet.from_mask(self.mask | other.mask)

    def __and__(self, other: ElementSet) -> ElementSet:
        return ElementSet.from_mask(self.mask & other.mask)

    def __sub__(self, other: ElementSet) -> ElementSet:
        return ElementSet.from_mask(self.mask & ~other.mask)

    def __le__(self, other: ElementSet) -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: ElementSet) -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: ElementSet) -> bool:
        return other <= self

    def __gt__(self, other: ElementSet) -> bool:
        return other < self

    def sorted(self) -> list[int]:
        return members(self.mask)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Key ordering sets by size, then by their sorted member lists."""
        return (len(self), tuple(members(self.mask)))

    def __repr__(self) -> str:
        return f"ElementSet({members(self.mask)})"
