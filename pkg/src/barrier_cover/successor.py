"""Integer successor structures used to pick the leftmost pending sensor.

Both structures store a subset of ``[0, size)`` and support insert, discard,
membership, and minimum.  ``BitsetSuccessor`` is the default: a two-level
bitset whose word operations are fast Python int arithmetic.  ``VebSuccessor``
is a van-Emde-Boas-style layered tree kept for the benchmark harness; the two
are interchangeable.
"""

from __future__ import annotations

_WORD = 64


def _lsb(x: int) -> int:
    return (x & -x).bit_length() - 1


class BitsetSuccessor:
    """Two-level bitset over the universe ``[0, size)``."""

    def __init__(self, size: int):
        self.size = size
        self._buckets = [0] * ((size + _WORD - 1) // _WORD or 1)
        self._summary = 0
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def __contains__(self, key: int) -> bool:
        if not 0 <= key < self.size:
            return False
        return bool(self._buckets[key // _WORD] >> (key % _WORD) & 1)

    def insert(self, key: int) -> None:
        b, o = divmod(key, _WORD)
        word = self._buckets[b]
        bit = 1 << o
        if not word & bit:
            self._buckets[b] = word | bit
            self._summary |= 1 << b
            self._count += 1

    def discard(self, key: int) -> None:
        b, o = divmod(key, _WORD)
        word = self._buckets[b]
        bit = 1 << o
        if word & bit:
            word &= ~bit
            self._buckets[b] = word
            if not word:
                self._summary &= ~(1 << b)
            self._count -= 1

    def min(self) -> int | None:
        if not self._summary:
            return None
        b = _lsb(self._summary)
        return b * _WORD + _lsb(self._buckets[b])

    def successor(self, key: int) -> int | None:
        """Smallest stored value strictly greater than ``key``."""
        if key < -1:
            key = -1
        b, o = divmod(key + 1, _WORD)
        if b < len(self._buckets):
            word = self._buckets[b] >> o
            if word:
                return b * _WORD + o + _lsb(word)
        rest = self._summary >> (b + 1)
        if not rest:
            return None
        nb = b + 1 + _lsb(rest)
        return nb * _WORD + _lsb(self._buckets[nb])


class VebSuccessor:
    """Recursive van-Emde-Boas tree over a power-of-two universe."""

    def __init__(self, size: int):
        self.size = size
        bits = max(1, (size - 1).bit_length())
        self._root = _VebNode(bits)
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def __contains__(self, key: int) -> bool:
        return 0 <= key < self.size and self._root.member(key)

    def insert(self, key: int) -> None:
        if not self._root.member(key):
            self._root.insert(key)
            self._count += 1

    def discard(self, key: int) -> None:
        if self._root.member(key):
            self._root.delete(key)
            self._count -= 1

    def min(self) -> int | None:
        return self._root.min

    def successor(self, key: int) -> int | None:
        return self._root.successor(key)


class _VebNode:
    __slots__ = ("bits", "lo_bits", "min", "max", "summary", "clusters")

    def __init__(self, bits: int):
        self.bits = bits
        self.lo_bits = bits // 2
        self.min: int | None = None
        self.max: int | None = None
        self.summary: _VebNode | None = None
        self.clusters: dict[int, _VebNode] = {}

    def _split(self, key: int) -> tuple[int, int]:
        return key >> self.lo_bits, key & ((1 << self.lo_bits) - 1)

    def member(self, key: int) -> bool:
        if key == self.min or key == self.max:
            return True
        if self.bits <= 1 or self.min is None:
            return False
        hi, lo = self._split(key)
        child = self.clusters.get(hi)
        return child is not None and child.member(lo)

    def insert(self, key: int) -> None:
        if self.min is None:
            self.min = self.max = key
            return
        if key == self.min or key == self.max:
            return
        if key < self.min:
            key, self.min = self.min, key
        if key > self.max:
            self.max = key
        if self.bits <= 1:
            return
        hi, lo = self._split(key)
        child = self.clusters.get(hi)
        if child is None:
            child = self.clusters[hi] = _VebNode(self.lo_bits)
            if self.summary is None:
                self.summary = _VebNode(self.bits - self.lo_bits)
            self.summary.insert(hi)
        child.insert(lo)

    def delete(self, key: int) -> None:
        if self.min == self.max:
            if key == self.min:
                self.min = self.max = None
            return
        if self.bits <= 1:
            if key == self.min:
                self.min = self.max
            elif key == self.max:
                self.max = self.min
            return
        if key == self.min:
            hi = self.summary.min if self.summary else None
            if hi is None:
                self.min = self.max
                return
            child = self.clusters[hi]
            key = (hi << self.lo_bits) | child.min
            self.min = key
        hi, lo = self._split(key)
        child = self.clusters.get(hi)
        if child is not None:
            child.delete(lo)
            if child.min is None:
                del self.clusters[hi]
                if self.summary is not None:
                    self.summary.delete(hi)
        if key == self.max:
            top = self.summary.max if self.summary else None
            if top is None:
                self.max = self.min
            else:
                self.max = (top << self.lo_bits) | self.clusters[top].max

    def successor(self, key: int) -> int | None:
        if self.min is not None and key < self.min:
            return self.min
        if self.max is None or key >= self.max:
            return None
        if self.bits <= 1:
            return self.max if key < self.max else None
        hi, lo = self._split(key)
        child = self.clusters.get(hi)
        if child is not None and child.max is not None and lo < child.max:
            return (hi << self.lo_bits) | child.successor(lo)
        nxt = self.summary.successor(hi) if self.summary else None
        if nxt is None:
            return self.max if key < self.max else None
        return (nxt << self.lo_bits) | self.clusters[nxt].min
