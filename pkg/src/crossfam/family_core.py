# crossfam/family_core.py
"""
Set families over a 0-based ground set, t-intersection predicates,
the plus/minus decomposition and the conflict graph used by every search.

Member sets are bit-encoded in Python ints; a family keeps its members
in ascending order of their encodings.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import MAX_GROUND_SIZE
from .errors import (
    DuplicateSetError,
    ElementRangeError,
    EmptyFamilyError,
    GroundSetTooLargeError,
    NotASubfamilyError,
)


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(elements: Iterable[int]) -> int:
    bits = 0
    for x in elements:
        bits |= 1 << x
    return bits


@dataclass(frozen=True, order=True)
class MemberSet:
    bits: int
    cardinality: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.bits < 0:
            raise ElementRangeError("member encoding must be non-negative")
        object.__setattr__(self, "cardinality", self.bits.bit_count())

    @classmethod
    def from_elements(cls, elements: Iterable[int]) -> "MemberSet":
        elements = list(elements)
        if any(x < 0 for x in elements):
            raise ElementRangeError(f"negative element in {elements}")
        return cls(bits_of(elements))

    def elements(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    def __len__(self) -> int:
        return self.cardinality


@dataclass(frozen=True)
class SetFamily:
    """An ordered family of distinct member sets over the ground set 0..ground_size-1."""

    ground_size: int
    members: Tuple[MemberSet, ...] = ()
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.ground_size < 0:
            raise ElementRangeError("ground size must be non-negative")
        if self.ground_size > MAX_GROUND_SIZE:
            raise GroundSetTooLargeError(
                f"ground size {self.ground_size} exceeds the supported width {MAX_GROUND_SIZE}"
            )
        limit = 1 << self.ground_size
        previous = -1
        for member in self.members:
            if member.bits >= limit:
                raise ElementRangeError(
                    f"member {list(member.elements())} does not fit in a ground set of size {self.ground_size}"
                )
            if member.bits == previous:
                raise DuplicateSetError(f"duplicate member {list(member.elements())}")
            if member.bits < previous:
                raise ValueError("members must be in canonical ascending order; use SetFamily.from_bits")
            previous = member.bits

    # --- constructors ---
    @classmethod
    def from_bits(
        cls,
        ground_size: int,
        bits: Iterable[int],
        metadata: Optional[Dict[str, Any]] = None,
        merge_duplicates: bool = False,
    ) -> "SetFamily":
        values = list(bits)
        unique = sorted(set(values))
        if len(unique) != len(values) and not merge_duplicates:
            seen = set()
            for b in values:
                if b in seen:
                    raise DuplicateSetError(f"duplicate member {list(iter_bits(b))}")
                seen.add(b)
        return cls(ground_size, tuple(MemberSet(b) for b in unique), dict(metadata or {}))

    @classmethod
    def from_sets(
        cls,
        ground_size: int,
        sets: Iterable[Iterable[int]],
        metadata: Optional[Dict[str, Any]] = None,
    ) -> "SetFamily":
        bits = []
        for s in sets:
            s = list(s)
            for x in s:
                if x < 0 or x >= ground_size:
                    raise ElementRangeError(f"element {x} outside ground set [0, {ground_size})")
            bits.append(bits_of(s))
        return cls.from_bits(ground_size, bits, metadata)

    # --- views ---
    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[MemberSet]:
        return iter(self.members)

    def __getitem__(self, index: int) -> MemberSet:
        return self.members[index]

    def __bool__(self) -> bool:
        return bool(self.members)

    @cached_property
    def bits(self) -> Tuple[int, ...]:
        return tuple(m.bits for m in self.members)

    @cached_property
    def _positions(self) -> Dict[int, int]:
        return {b: i for i, b in enumerate(self.bits)}

    @property
    def full_mask(self) -> int:
        return (1 << len(self.members)) - 1

    @property
    def labels(self) -> Optional[List[str]]:
        return self.metadata.get("labels")

    def as_lists(self) -> List[List[int]]:
        return [list(m.elements()) for m in self.members]

    def contains_bits(self, bits: int) -> bool:
        return bits in self._positions

    def index_of(self, member: Union[MemberSet, int]) -> int:
        bits = member.bits if isinstance(member, MemberSet) else member
        try:
            return self._positions[bits]
        except KeyError:
            raise NotASubfamilyError(f"{list(iter_bits(bits))} is not a member of the family") from None

    def mask_of(self, other: "SetFamily") -> int:
        """Index mask (over this family) of the members of ``other``."""
        mask = 0
        for member in other.members:
            mask |= 1 << self.index_of(member)
        return mask

    def subfamily(self, mask: int) -> "SetFamily":
        return SetFamily(self.ground_size, tuple(self.members[i] for i in iter_bits(mask)))

    def subfamily_of(self, indices: Iterable[int]) -> "SetFamily":
        mask = 0
        for i in indices:
            mask |= 1 << i
        return self.subfamily(mask)


@dataclass(frozen=True)
class Decomposition:
    plus: SetFamily
    minus: SetFamily
    t: int
    plus_mask: int = 0
    minus_mask: int = 0


@dataclass(frozen=True)
class ConflictGraph:
    """
    Vertices are member indices; i != j are adjacent iff |F_i ∩ F_j| < t.
    ``self_conflict`` flags members of size < t.
    """

    size: int
    t: int
    adjacency: Tuple[int, ...]
    self_conflict: int

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def is_self_conflicted(self, i: int) -> bool:
        return bool(self.self_conflict >> i & 1)

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    @cached_property
    def compatibility(self) -> Tuple[int, ...]:
        """Complement adjacency without the diagonal: the t-intersection relation."""
        full = (1 << self.size) - 1
        return tuple(full & ~a & ~(1 << i) for i, a in enumerate(self.adjacency))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for i in range(self.size):
            g.add_node(i, self_conflict=self.is_self_conflicted(i))
        for i, a in enumerate(self.adjacency):
            for j in iter_bits(a >> (i + 1)):
                g.add_edge(i, i + 1 + j)
        return g


def _check_t(t: int) -> None:
    if t < 1:
        raise ValueError(f"t must be at least 1, got {t}")


def meets(x: int, y: int, t: int) -> bool:
    return (x & y).bit_count() >= t


def t_intersects(a: MemberSet, b: MemberSet, t: int) -> bool:
    _check_t(t)
    return meets(a.bits, b.bits, t)


def alpha(f: SetFamily) -> int:
    if not f:
        raise EmptyFamilyError("α undefined on empty family")
    return max(m.cardinality for m in f)


def conflict_graph(f: SetFamily, t: int) -> ConflictGraph:
    _check_t(t)
    bits = f.bits
    n = len(bits)
    adjacency = [0] * n
    self_conflict = 0
    for i in range(n):
        bi = bits[i]
        if bi.bit_count() < t:
            self_conflict |= 1 << i
        for j in range(i + 1, n):
            if (bi & bits[j]).bit_count() < t:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    return ConflictGraph(n, t, tuple(adjacency), self_conflict)


def decompose(f: SetFamily, t: int) -> Decomposition:
    graph = conflict_graph(f, t)
    minus_mask = 0
    for i, a in enumerate(graph.adjacency):
        if a:
            minus_mask |= 1 << i
    plus_mask = f.full_mask & ~minus_mask
    return Decomposition(f.subfamily(plus_mask), f.subfamily(minus_mask), t, plus_mask, minus_mask)


def minus_mask_within(graph: ConflictGraph, mask: int) -> int:
    """Members of the subfamily ``mask`` that conflict with another member of it."""
    minus = 0
    for i in iter_bits(mask):
        if graph.adjacency[i] & mask:
            minus |= 1 << i
    return minus


def is_t_intersecting(f: SetFamily, t: int) -> bool:
    _check_t(t)
    bits = f.bits
    for i in range(len(bits)):
        for j in range(i + 1, len(bits)):
            if not meets(bits[i], bits[j], t):
                return False
    return True


def is_cross_t_intersecting(families: Sequence[SetFamily], t: int) -> bool:
    """
    Any set of one family t-intersects any set of another one.
    A set shared by two families must therefore have at least t elements.
    """
    _check_t(t)
    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            for x in families[i].bits:
                for y in families[j].bits:
                    if not meets(x, y, t):
                        return False
    return True


def union_family(families: Sequence[SetFamily]) -> SetFamily:
    ground = max((f.ground_size for f in families), default=0)
    bits = set()
    for f in families:
        bits.update(f.bits)
    return SetFamily.from_bits(ground, bits)


def iter_decompositions(graph: ConflictGraph) -> Iterator[Tuple[int, int]]:
    """
    Every subfamily mask with its minus mask, in lexicographic order of the sorted index tuples
    (the empty subfamily first).
    """
    n = graph.size
    adjacency = graph.adjacency
    stack = [(0, 0, 0)]
    while stack:
        mask, minus, start = stack.pop()
        yield mask, minus
        for j in range(n - 1, start - 1, -1):
            hit = adjacency[j] & mask
            child_minus = minus | hit | ((1 << j) if hit else 0)
            stack.append((mask | (1 << j), child_minus, j + 1))
