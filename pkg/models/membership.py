"""
Word-packed group membership.

Each node owns a row of uint64 words; bit r of the row is set when the node
belongs to group r. Bit 0 is always set. The highest common group of two
nodes is the highest set bit of the AND of their rows.
"""

from typing import Iterable, List, Mapping, Optional
import numpy as np

WORD_BITS = 64
_BIT = [np.uint64(1 << b) for b in range(WORD_BITS)]
_SHIFTS = np.arange(WORD_BITS, dtype=np.uint64)
_LOW_MASK = np.uint64(0xFFFFFFFF)


def _words_for(k: int) -> int:
    return max(1, -(-k // WORD_BITS))


def _highest_bit64(x: np.ndarray) -> np.ndarray:
    # float64 is exact on 32-bit halves, so frexp gives the exact exponent
    hi = (x >> np.uint64(32)).astype(np.float64)
    lo = (x & _LOW_MASK).astype(np.float64)
    _, e_hi = np.frexp(hi)
    _, e_lo = np.frexp(lo)
    return np.where(hi > 0, e_hi + 31, e_lo - 1).astype(np.int64)


def highest_set_bit(words: np.ndarray) -> np.ndarray:
    """
    Index of the highest set bit of each row of a (rows, W) uint64 array.

    Args:
        words: Packed rows, least significant word first

    Returns:
        int64 array with -1 for all-zero rows
    """
    words = np.atleast_2d(words)
    result = np.full(words.shape[0], -1, dtype=np.int64)
    for w in range(words.shape[1] - 1, -1, -1):
        pending = result < 0
        if not pending.any():
            break
        hb = _highest_bit64(words[:, w])
        hit = pending & (hb >= 0)
        result[hit] = hb[hit] + w * WORD_BITS
    return result


def pack_bits(matrix: np.ndarray) -> np.ndarray:
    """Pack an (n, k) boolean matrix into (n, W) uint64 words."""
    n, k = matrix.shape
    width = _words_for(k) * WORD_BITS
    padded = np.zeros((n, width), dtype=np.uint64)
    padded[:, :k] = matrix
    padded = padded.reshape(n, -1, WORD_BITS) << _SHIFTS
    return np.bitwise_or.reduce(padded, axis=2)


def unpack_bits(words: np.ndarray, k: int) -> np.ndarray:
    """Inverse of pack_bits, returning the first k columns."""
    n = words.shape[0]
    bits = (words[:, :, None] >> _SHIFTS) & np.uint64(1)
    return bits.reshape(n, -1)[:, :k].astype(bool)


class Membership:
    """Per-node group sets over groups 0..k-1, group 0 universal."""

    __slots__ = ("n", "k", "words")

    def __init__(self, n: int, k: int = 1, words: Optional[np.ndarray] = None):
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        self.n = n
        self.k = k
        if words is None:
            words = np.zeros((n, _words_for(k)), dtype=np.uint64)
            words[:, 0] = _BIT[0]
        self.words = words

    @classmethod
    def from_groups(cls, n: int, k: int, groups: Mapping[int, Iterable[int]]) -> "Membership":
        """
        Build a membership from a group -> nodes mapping.

        Args:
            n: Node count
            k: Group count
            groups: Members of each group r >= 1; group 0 is implied

        Returns:
            Membership with the given groups
        """
        membership = cls(n, k)
        for group, nodes in groups.items():
            if group == 0:
                continue
            for node in nodes:
                membership.add(int(node), int(group))
        return membership

    @classmethod
    def from_bool_matrix(cls, matrix: np.ndarray) -> "Membership":
        matrix = np.asarray(matrix, dtype=bool).copy()
        n, k = matrix.shape
        matrix[:, 0] = True
        return cls(n, k, pack_bits(matrix))

    def to_bool_matrix(self) -> np.ndarray:
        return unpack_bits(self.words, self.k)

    def copy(self) -> "Membership":
        return Membership(self.n, self.k, self.words.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Membership):
            return NotImplemented
        return self.n == other.n and self.k == other.k and np.array_equal(self.words, other.words)

    def __repr__(self) -> str:
        return f"Membership(n={self.n}, k={self.k}, sizes={self.sizes().tolist()})"

    def key(self) -> bytes:
        """Hashable snapshot of the assignment, for tallying visited states."""
        return self.k.to_bytes(4, "little") + self.words.tobytes()

    def contains(self, u: int, s: int) -> bool:
        return bool(self.words[u, s // WORD_BITS] & _BIT[s % WORD_BITS])

    def add(self, u: int, s: int) -> None:
        self._check_group(s)
        self.words[u, s // WORD_BITS] |= _BIT[s % WORD_BITS]

    def discard(self, u: int, s: int) -> None:
        self._check_group(s)
        if s == 0:
            raise ValueError("Group 0 membership is permanent")
        self.words[u, s // WORD_BITS] &= ~_BIT[s % WORD_BITS]

    def column(self, s: int) -> np.ndarray:
        """Boolean membership vector of group s."""
        return (self.words[:, s // WORD_BITS] & _BIT[s % WORD_BITS]) != 0

    def members(self, s: int) -> np.ndarray:
        return np.flatnonzero(self.column(s))

    def non_members(self, s: int) -> np.ndarray:
        return np.flatnonzero(~self.column(s))

    def sizes(self) -> np.ndarray:
        return self.to_bool_matrix().sum(axis=0).astype(np.int64)

    def groups_of(self, u: int) -> List[int]:
        return [r for r in range(self.k) if self.contains(u, r)]

    def highest_group(self) -> np.ndarray:
        """Highest group of every node on its own."""
        return highest_set_bit(self.words)

    def highest_common_group(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError(f"highest_common_group needs two distinct nodes, got u=v={u}")
        for w in range(self.words.shape[1] - 1, -1, -1):
            common = int(self.words[u, w] & self.words[v, w])
            if common:
                return w * WORD_BITS + common.bit_length() - 1
        return -1

    def highest_common_with(self, u: int, row: Optional[np.ndarray] = None) -> np.ndarray:
        """
        h(u, v) for every v, in one pass over the packed rows.

        Args:
            u: Reference node
            row: Optional replacement row for u (used to evaluate a move before applying it)

        Returns:
            int64 array of length n; entry u is u's own highest group
        """
        if row is None:
            row = self.words[u]
        return highest_set_bit(self.words & row)

    def insert_group(self, s: int) -> None:
        """Insert an empty group at index s, shifting groups >= s up by one."""
        if not 1 <= s <= self.k:
            raise ValueError(f"Cannot insert group at {s} with k={self.k}")
        matrix = np.insert(self.to_bool_matrix(), s, False, axis=1)
        self.k += 1
        self.words = pack_bits(matrix)

    def delete_group(self, s: int) -> None:
        """Remove group s, shifting groups above it down by one."""
        if not 1 <= s < self.k:
            raise ValueError(f"Cannot delete group {s} with k={self.k}")
        matrix = np.delete(self.to_bool_matrix(), s, axis=1)
        self.k -= 1
        self.words = pack_bits(matrix)

    def _check_group(self, s: int) -> None:
        if not 0 <= s < self.k:
            raise ValueError(f"Group {s} out of range for k={self.k}")
