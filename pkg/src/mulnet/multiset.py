"""Finite multisets of positive integers and total orderings on them."""

from __future__ import annotations

import enum
from collections import Counter
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping


class Multiset:
    """Immutable multiset over positive integers.

    Stored as the non-decreasing tuple of its elements, so equality and
    hashing are structural and iteration is always in increasing order.
    """

    __slots__ = ("_elements", "_counts")

    def __init__(self, elements: Iterable[int] = ()):
        elems = tuple(sorted(int(x) for x in elements))
        if elems and elems[0] < 1:
            raise ValueError(f"multiset values must be positive integers, got {elems[0]}")
        self._elements = elems
        self._counts: dict[int, int] | None = None

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> Multiset:
        elems: list[int] = []
        for value in sorted(counts):
            mult = counts[value]
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for {value}")
            elems.extend([value] * mult)
        return cls(elems)

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    def counts(self) -> dict[int, int]:
        if self._counts is None:
            self._counts = dict(Counter(self._elements))
        return dict(self._counts)

    def __getitem__(self, value: int) -> int:
        if self._counts is None:
            self._counts = dict(Counter(self._elements))
        return self._counts.get(value, 0)

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __bool__(self) -> bool:
        return bool(self._elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._elements == other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self._elements)) + "}"

    def __str__(self) -> str:
        return " ".join(map(str, self._elements))

    def __add__(self, other: Multiset) -> Multiset:
        return Multiset(self._elements + other._elements)

    def __sub__(self, other: Multiset) -> Multiset:
        counts = Counter(self._elements)
        counts.subtract(other._elements)
        if any(c < 0 for c in counts.values()):
            raise ValueError(f"{other!r} is not contained in {self!r}")
        return Multiset(counts.elements())

    def issubset(self, other: Multiset) -> bool:
        return all(other[x] >= m for x, m in self.counts().items())

    def distinct(self) -> tuple[int, ...]:
        return tuple(sorted(set(self._elements)))

    def is_set(self) -> bool:
        return len(set(self._elements)) == len(self._elements)

    def max(self) -> int:
        if not self._elements:
            raise ValueError("max() of an empty multiset")
        return self._elements[-1]


def parse_multiset(text: str) -> Multiset:
    """Read the textual form ``1 1 3``."""
    try:
        return Multiset(int(tok) for tok in text.split())
    except ValueError as exc:
        raise ValueError(f"bad multiset {text!r}: {exc}") from None


class Ordering(enum.Enum):
    LEX_PAPER = "lex-paper"
    ANTILEX = "antilex"
    LEX_SORTED = "lex-sorted"

    @classmethod
    def from_name(cls, name: str) -> Ordering:
        try:
            return cls(name.lower().replace("_", "-"))
        except ValueError:
            raise ValueError(
                f"unknown ordering {name!r}; expected one of "
                + ", ".join(o.value for o in cls)
            ) from None


class Comparison(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def sort_key(ordering: Ordering, m: Multiset) -> tuple:
    """Key whose natural tuple order realises ``ordering`` on non-empty multisets.

    LEX_PAPER compares multiplicities from the smallest value upward;
    ANTILEX compares the maximum first, then multiplicities from the top down;
    LEX_SORTED compares the sorted element sequences.
    """
    if not m:
        raise ValueError("orderings are defined on non-empty multisets only")
    if ordering is Ordering.LEX_SORTED:
        return m.elements
    top = m.max()
    if ordering is Ordering.LEX_PAPER:
        return tuple(m[x] for x in range(1, top + 1))
    if ordering is Ordering.ANTILEX:
        return (top, tuple(m[x] for x in range(top, 0, -1)))
    raise TypeError(f"not an ordering: {ordering!r}")


def compare(ordering: Ordering, a: Multiset, b: Multiset) -> Comparison:
    ka, kb = sort_key(ordering, a), sort_key(ordering, b)
    if ka == kb:
        return Comparison.EQ
    return Comparison.LT if ka < kb else Comparison.GT


def is_gapless(m: Multiset) -> bool:
    if not m:
        raise ValueError("gap-lessness is defined on non-empty multisets only")
    return len(m.distinct()) == m.max()


def multiset_sum(parts: Iterable[Multiset]) -> Multiset:
    parts = list(parts)
    if not parts:
        raise ValueError("multiset_sum needs at least one multiset")
    elems: list[int] = []
    for p in parts:
        elems.extend(p.elements)
    return Multiset(elems)


def bounded_multisets(max_value: int, max_size: int) -> Iterator[Multiset]:
    """All non-empty multisets with values <= max_value and size <= max_size,
    ordered by size and then by sorted element sequence."""
    for size in range(1, max_size + 1):
        for combo in combinations_with_replacement(range(1, max_value + 1), size):
            yield Multiset(combo)


def is_labeling_consistent(
    ordering: Ordering, max_value: int, max_size: int
) -> tuple[Multiset, Multiset] | None:
    """Search for a pair with ``max(a) < max(b)`` but not ``a < b``.

    Returns the first violating pair in scan order, or ``None`` when the
    bounded domain contains no violation.
    """
    if max_value < 1 or max_size < 1:
        raise ValueError("bounds must be >= 1")
    domain = list(bounded_multisets(max_value, max_size))
    keys = [sort_key(ordering, m) for m in domain]
    for i, a in enumerate(domain):
        top_a = a.max()
        for j, b in enumerate(domain):
            if top_a < b.max() and not keys[i] < keys[j]:
                return a, b
    return None
