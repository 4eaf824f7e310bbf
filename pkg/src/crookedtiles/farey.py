"""
crookedtiles/farey
~~~~~~~~~~~~~~~~~~

Exact combinatorics of primitive classes in the free group of rank two:
Farey fractions, Farey triples, reduced words, basic triples and the
trivalent superbasis tree.

Words are written over ``a, A, b, B`` where a capital letter is the inverse.
All arithmetic is on Python integers.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Deque, Dict, FrozenSet, List, Optional, Tuple

from .utilities import ConstructionError, DomainError

logger = logging.getLogger(__name__)

_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


class Mod2Class(Enum):
    INFINITY = "∞"
    ZERO = "0"
    ONE = "1"


#: Order of the classes in a canonically ordered triple.
CANONICAL_CLASSES = (Mod2Class.INFINITY, Mod2Class.ZERO, Mod2Class.ONE)


@dataclass(frozen=True)
class FareyFraction:
    """A point ``p/q`` of the rational projective line.

    Always construct through :meth:`create`, which normalizes the sign so
    that ``q > 0``, or ``q == 0`` and ``p == 1``.
    """

    p: int
    q: int

    @classmethod
    def create(cls, p: int, q: int) -> "FareyFraction":
        divisor = gcd(p, q)
        if divisor == 0:
            raise DomainError("0/0 is not a point of the projective line")
        p, q = p // divisor, q // divisor
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, text: str) -> "FareyFraction":
        numerator, _, denominator = text.partition("/")
        try:
            return cls.create(int(numerator), int(denominator) if denominator else 1)
        except ValueError:
            raise DomainError(f"Cannot parse fraction {text!r}")

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


INFINITY = FareyFraction(1, 0)


def _determinant(x: FareyFraction, y: FareyFraction) -> int:
    return x.p * y.q - y.p * x.q


def are_neighbors(x: FareyFraction, y: FareyFraction) -> bool:
    return abs(_determinant(x, y)) == 1


def intersection_number(x: FareyFraction, y: FareyFraction) -> int:
    return abs(_determinant(x, y))


def farey_children(
    x: FareyFraction, y: FareyFraction
) -> Tuple[FareyFraction, FareyFraction]:
    """The Farey sum and difference of two neighbors."""
    if not are_neighbors(x, y):
        raise DomainError(f"{x} and {y} are not Farey neighbors")
    return (
        FareyFraction.create(x.p + y.p, x.q + y.q),
        FareyFraction.create(x.p - y.p, x.q - y.q),
    )


def mod2_class(x: FareyFraction) -> Mod2Class:
    if x.q % 2 == 0:
        return Mod2Class.INFINITY
    if x.p % 2 == 0:
        return Mod2Class.ZERO
    return Mod2Class.ONE


@dataclass(frozen=True)
class FareyTriple:
    x1: FareyFraction
    x2: FareyFraction
    x3: FareyFraction

    def __post_init__(self) -> None:
        for x, y in ((self.x1, self.x2), (self.x1, self.x3), (self.x2, self.x3)):
            if not are_neighbors(x, y):
                raise DomainError(f"{x} and {y} are not Farey neighbors")

    def __iter__(self):  # type: ignore[no-untyped-def]
        return iter((self.x1, self.x2, self.x3))

    def __getitem__(self, index: int) -> FareyFraction:
        return (self.x1, self.x2, self.x3)[index]

    def __str__(self) -> str:
        return f"({self.x1}, {self.x2}, {self.x3})"

    def key(self) -> FrozenSet[FareyFraction]:
        return frozenset(self)

    def rotate(self) -> "FareyTriple":
        return FareyTriple(self.x2, self.x3, self.x1)

    def flipped(self, slot: int) -> "FareyTriple":
        """The neighboring triple in which the fraction in ``slot`` is replaced
        by its partner, the other Farey child of the remaining two fractions.
        Ordered like :func:`flip`.
        """
        triple = self
        for _ in range((slot + 1) % 3):
            triple = triple.rotate()
        x, y, z = triple
        total, difference = farey_children(x, y)
        if z not in (total, difference):
            raise DomainError(f"{z} is not a Farey child of {x} and {y}")
        flipped = FareyTriple(y, x, total if z == difference else difference)
        for _ in range(2 * (slot + 1) % 3):
            flipped = flipped.rotate()
        return flipped


def canonical_order(t: FareyTriple) -> FareyTriple:
    by_class = {mod2_class(x): x for x in t}
    if len(by_class) != 3:
        raise DomainError(f"Mod 2 classes of {t} are not distinct")
    return FareyTriple(*(by_class[c] for c in CANONICAL_CLASSES))


def _reduce(letters: str) -> str:
    stack: List[str] = []
    for letter in letters:
        if stack and stack[-1] == _INVERSE[letter]:
            stack.pop()
        else:
            stack.append(letter)
    return "".join(stack)


@dataclass(frozen=True)
class F2Word:
    """A freely reduced word in the generators ``a`` and ``b``."""

    letters: str = ""

    def __post_init__(self) -> None:
        invalid = set(self.letters) - set(_INVERSE)
        if invalid:
            raise DomainError(f"Invalid letters {sorted(invalid)} in {self.letters!r}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def parse(cls, text: str) -> "F2Word":
        return cls(text.strip())

    def __mul__(self, other: "F2Word") -> "F2Word":
        return F2Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters

    def inverse(self) -> "F2Word":
        return F2Word("".join(_INVERSE[letter] for letter in reversed(self.letters)))


def abelianize(w: F2Word) -> Tuple[int, int]:
    return (
        w.letters.count("a") - w.letters.count("A"),
        w.letters.count("b") - w.letters.count("B"),
    )


def word_fraction(w: F2Word) -> FareyFraction:
    return FareyFraction.create(*abelianize(w))


@dataclass(frozen=True)
class BasicTriple:
    """Words ``(A, B, C)`` with ``ABC = 1`` such that ``(A, B)`` is a free basis."""

    A: F2Word
    B: F2Word
    C: F2Word

    def __post_init__(self) -> None:
        if len(self.A * self.B * self.C):
            raise ConstructionError(f"{self} does not multiply to the identity")
        (a1, a2), (b1, b2) = abelianize(self.A), abelianize(self.B)
        if abs(a1 * b2 - a2 * b1) != 1:
            raise ConstructionError(f"{self} does not abelianize to a basis")

    @classmethod
    def parse(cls, text: str) -> "BasicTriple":
        pieces = [piece.strip() for piece in text.split(",")]
        if len(pieces) != 3:
            raise DomainError(f"Expected three words, got {text!r}")
        return cls(*(F2Word(piece) for piece in pieces))

    def __iter__(self):  # type: ignore[no-untyped-def]
        return iter((self.A, self.B, self.C))

    def __getitem__(self, index: int) -> F2Word:
        return (self.A, self.B, self.C)[index]

    def __str__(self) -> str:
        return f"({self.A}, {self.B}, {self.C})"

    def rotate(self) -> "BasicTriple":
        return BasicTriple(self.B, self.C, self.A)

    def label(self) -> FareyTriple:
        return FareyTriple(*(word_fraction(w) for w in self))

    def abelianizations(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(abelianize(w) for w in self)


BASE_TRIPLE = BasicTriple(F2Word("a"), F2Word("b"), F2Word("BA"))


def flip(t: BasicTriple, slot: int) -> BasicTriple:
    """Replace the word in ``slot`` by the other diagonal of the superbasis.

    For slot 2 this is ``(A, B, C) ↦ (B⁻¹, A, A⁻¹B)``; the other slots are
    conjugated by the cyclic rotation so that the new word always lands in
    ``slot``.
    """
    if slot not in (0, 1, 2):
        raise DomainError(f"Slot must be 0, 1 or 2, got {slot}")
    rotated = t
    for _ in range((slot + 1) % 3):
        rotated = rotated.rotate()
    A, B, _ = rotated
    flipped = BasicTriple(B.inverse(), A, A.inverse() * B)
    for _ in range(2 * (slot + 1) % 3):
        flipped = flipped.rotate()
    return flipped


@dataclass(frozen=True)
class TreeNode:
    """A vertex of the superbasis tree.

    .. attribute:: slot

       The slot flipped to reach this node from its parent, None at the root.
    """

    index: int
    depth: int
    label: FareyTriple
    triple: BasicTriple
    parent: Optional[int] = None
    slot: Optional[int] = None


def enumerate_tree(depth: int) -> List[TreeNode]:
    """Breadth-first ball of radius ``depth`` around the base superbasis.

    Labels are computed by Farey arithmetic, independently of the words.
    """
    if depth < 0:
        raise DomainError(f"Depth must be nonnegative, got {depth}")
    root = TreeNode(0, 0, BASE_TRIPLE.label(), BASE_TRIPLE)
    nodes = [root]
    seen = {root.label.key()}
    queue: Deque[TreeNode] = deque([root])
    while queue:
        node = queue.popleft()
        if node.depth == depth:
            continue
        for slot in range(3):
            if slot == node.slot:
                continue
            child = TreeNode(
                index=len(nodes),
                depth=node.depth + 1,
                label=node.label.flipped(slot),
                triple=flip(node.triple, slot),
                parent=node.index,
                slot=slot,
            )
            key = child.label.key()
            if key in seen:
                raise ConstructionError(f"Superbasis {child.label} reached twice")
            seen.add(key)
            nodes.append(child)
            queue.append(child)
    logger.debug("Enumerated %d superbases to depth %d", len(nodes), depth)
    return nodes


def primitive_words(depth: int) -> List[Tuple[FareyFraction, F2Word]]:
    """Distinct primitive classes appearing in the tree, in breadth-first order."""
    found: Dict[FareyFraction, F2Word] = {}
    for node in enumerate_tree(depth):
        for word in node.triple:
            found.setdefault(word_fraction(word), word)
    return list(found.items())
