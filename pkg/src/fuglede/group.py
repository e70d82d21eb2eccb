"""Finite abelian groups Z_{n1} x ... x Z_{nd}.

Elements and characters share one representation: a tuple of coordinates,
coordinate ``i`` reduced mod ``n_i``.  Elements are numbered by a mixed-radix
code with coordinate 0 most significant, which is what the bitset-based
solvers index by.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, EnumerationCapError, FugledeError

DEFAULT_CAP = 1 << 24

Element = tuple[int, ...]


@dataclass(frozen=True)
class GroupSpec:
    moduli: tuple[int, ...]
    cap: int = DEFAULT_CAP
    order: int = field(init=False, compare=False)
    exponent: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(n) for n in self.moduli))
        if not self.moduli:
            raise FugledeError("group needs at least one modulus")
        if any(n < 1 for n in self.moduli):
            raise FugledeError(f"moduli must be positive, got {list(self.moduli)}")
        object.__setattr__(self, "order", math.prod(self.moduli))
        object.__setattr__(self, "exponent", math.lcm(*self.moduli))

    @property
    def dim(self) -> int:
        return len(self.moduli)

    @property
    def within_cap(self) -> bool:
        return self.order <= self.cap

    @property
    def is_cyclic_power(self) -> bool:
        """True for Z_N^d, where the pairing is symmetric."""
        return len(set(self.moduli)) == 1

    def require_enumerable(self) -> None:
        if not self.within_cap:
            raise EnumerationCapError(
                f"group of order {self.order} exceeds enumeration cap {self.cap}"
            )

    def element(self, coords: Iterable[int] | int) -> Element:
        """Reduce ``coords`` into a valid element (ints allowed for d = 1)."""
        if isinstance(coords, int):
            coords = (coords,)
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise DimensionMismatch(
                f"element of length {len(coords)} in group of dimension {self.dim}"
            )
        return tuple(int(c) % n for c, n in zip(coords, self.moduli))

    def is_valid(self, a: Sequence[int]) -> bool:
        return len(a) == self.dim and all(0 <= c < n for c, n in zip(a, self.moduli))

    def zero(self) -> Element:
        return (0,) * self.dim

    def add(self, a: Element, b: Element) -> Element:
        self._check(a, b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.moduli))

    def sub(self, a: Element, b: Element) -> Element:
        self._check(a, b)
        return tuple((x - y) % n for x, y, n in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        return tuple(-x % n for x, n in zip(a, self.moduli))

    def combine(self, a: Element, b: Element, op: str = "add") -> Element:
        if op == "add":
            return self.add(a, b)
        if op == "sub":
            return self.sub(a, b)
        raise FugledeError(f"unknown operation {op!r}")

    def index_of(self, a: Sequence[int]) -> int:
        if not self.is_valid(a):
            raise FugledeError(f"{tuple(a)} is not an element of Z{list(self.moduli)}")
        idx = 0
        for c, n in zip(a, self.moduli):
            idx = idx * n + c
        return idx

    def element_at(self, index: int) -> Element:
        if not 0 <= index < self.order:
            raise FugledeError(f"index {index} out of range [0, {self.order})")
        coords = []
        for n in reversed(self.moduli):
            index, c = divmod(index, n)
            coords.append(c)
        return tuple(reversed(coords))

    def elements(self) -> Iterator[Element]:
        """All elements in ascending index order."""
        self.require_enumerable()
        for i in range(self.order):
            yield self.element_at(i)

    def pairing_numerator(self, lam: Element, a: Element) -> int:
        """``exponent * pairing(lam, a)`` as an integer in [0, exponent)."""
        self._check(lam, a)
        M = self.exponent
        return sum(l * x * (M // n) for l, x, n in zip(lam, a, self.moduli)) % M

    def pairing(self, lam: Element, a: Element) -> Fraction:
        """Character value exponent: ``sum_i lam_i a_i / n_i`` mod 1."""
        return Fraction(self.pairing_numerator(lam, a), self.exponent)

    def _check(self, a: Sequence[int], b: Sequence[int]) -> None:
        if len(a) != self.dim or len(b) != self.dim:
            raise DimensionMismatch(
                f"dimension mismatch: {len(a)}, {len(b)} vs group dimension {self.dim}"
            )


def make_group(moduli: Sequence[int] | int, cap: int = DEFAULT_CAP) -> GroupSpec:
    if isinstance(moduli, int):
        moduli = [moduli]
    return GroupSpec(tuple(moduli), cap=cap)


def cyclic(n: int) -> GroupSpec:
    return make_group([n])


@dataclass(frozen=True)
class PointSet:
    """Ordered duplicate-free list of group elements.

    Doubles as an integer ``d x k`` matrix whose columns are the points.
    """

    group: GroupSpec
    points: tuple[Element, ...]

    def __post_init__(self):
        pts = tuple(self.group.element(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise FugledeError("point set contains duplicates")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_columns(cls, group: GroupSpec, rows: Sequence[Sequence[int]]) -> "PointSet":
        return cls(group, tuple(zip(*rows)))

    @classmethod
    def from_indices(cls, group: GroupSpec, indices: Iterable[int]) -> "PointSet":
        return cls(group, tuple(group.element_at(i) for i in indices))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.points)

    def __contains__(self, a) -> bool:
        return self.group.element(a) in set(self.points)

    def indices(self) -> list[int]:
        return [self.group.index_of(p) for p in self.points]

    def index_set(self) -> frozenset[int]:
        return frozenset(self.indices())

    def sorted(self) -> "PointSet":
        return PointSet.from_indices(self.group, sorted(self.indices()))

    def translate(self, t: Element) -> "PointSet":
        return PointSet(self.group, tuple(self.group.add(p, t) for p in self.points))

    def normalized(self) -> "PointSet":
        """Translate so the smallest-index point becomes 0."""
        if not self.points:
            return self
        low = self.group.element_at(min(self.indices()))
        return self.translate(self.group.neg(low))

    def differences(self) -> frozenset[Element]:
        g = self.group
        return frozenset(g.sub(a, b) for a in self.points for b in self.points)

    def as_rows(self) -> list[list[int]]:
        """The points as columns of a ``d x k`` matrix, returned row by row."""
        return [[p[i] for p in self.points] for i in range(self.group.dim)]
