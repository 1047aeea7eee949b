"""Exact dyadic rationals, standard dyadic intervals/partitions, and binary trees.

Everything here is integer arithmetic; no floats ever enter.  Partitions are
stored as sorted breakpoint lists, from which the interval view is derived.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import NotStandardDyadic

__all__ = [
    "DyadicRational",
    "StdDyadicInterval",
    "DyadicPartition",
    "TTree",
    "LEAF",
    "tree_to_partition",
    "partition_to_tree",
    "common_refinement",
    "refines",
]


@total_ordering
@dataclass(frozen=True)
class DyadicRational:
    """Exact value num / 2^exp, kept canonical (exp == 0 or num odd)."""

    num: int
    exp: int

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("exponent must be non-negative")
        num, exp = self.num, self.exp
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        e = max(self.exp, other.exp)
        return DyadicRational(
            self.num * 2 ** (e - self.exp) + other.num * 2 ** (e - other.exp), e
        )

    def __sub__(self, other: "DyadicRational") -> "DyadicRational":
        e = max(self.exp, other.exp)
        return DyadicRational(
            self.num * 2 ** (e - self.exp) - other.num * 2 ** (e - other.exp), e
        )

    def __mul__(self, other: "DyadicRational") -> "DyadicRational":
        return DyadicRational(self.num * other.num, self.exp + other.exp)

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.num, self.exp)

    def scale_pow2(self, k: int) -> "DyadicRational":
        """Multiply by 2^k (k may be negative)."""
        if k >= 0:
            return DyadicRational(self.num * 2**k, self.exp)
        return DyadicRational(self.num, self.exp - k)

    def mod1(self) -> "DyadicRational":
        """Reduce into [0, 1) as a circle point."""
        denom = 2**self.exp
        return DyadicRational(self.num % denom, self.exp)

    # -- comparisons --------------------------------------------------------

    def __lt__(self, other: "DyadicRational") -> bool:
        e = max(self.exp, other.exp)
        return self.num * 2 ** (e - self.exp) < other.num * 2 ** (e - other.exp)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 2**self.exp)

    def __float__(self) -> float:
        return self.num / 2**self.exp

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/2^{self.exp}"

    def __repr__(self) -> str:
        return f"DyadicRational({self})"

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        """Parse "a/2^n" or a bare integer, bit-exactly."""
        text = text.strip()
        m = re.fullmatch(r"(-?\d+)\s*/\s*2\^(\d+)", text)
        if m:
            return cls(int(m.group(1)), int(m.group(2)))
        m = re.fullmatch(r"(-?\d+)", text)
        if m:
            return cls(int(m.group(1)), 0)
        # tolerate a/b with b an explicit power of two
        m = re.fullmatch(r"(-?\d+)\s*/\s*(\d+)", text)
        if m:
            denom = int(m.group(2))
            if denom <= 0 or denom & (denom - 1):
                raise NotStandardDyadic(f"denominator {denom} is not a power of two")
            return cls(int(m.group(1)), denom.bit_length() - 1)
        raise ValueError(f"cannot parse dyadic rational: {text!r}")


ZERO = DyadicRational(0, 0)
ONE = DyadicRational(1, 0)
HALF = DyadicRational(1, 1)


@dataclass(frozen=True)
class StdDyadicInterval:
    """The interval [a/2^n, (a+1)/2^n] with 0 <= a < 2^n."""

    a: int
    n: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.a < 2**self.n:
            raise NotStandardDyadic(f"invalid standard dyadic interval a={self.a}, n={self.n}")

    @property
    def left(self) -> DyadicRational:
        return DyadicRational(self.a, self.n)

    @property
    def right(self) -> DyadicRational:
        return DyadicRational(self.a + 1, self.n)

    @property
    def length(self) -> DyadicRational:
        return DyadicRational(1, self.n)

    def halves(self) -> tuple["StdDyadicInterval", "StdDyadicInterval"]:
        return StdDyadicInterval(2 * self.a, self.n + 1), StdDyadicInterval(
            2 * self.a + 1, self.n + 1
        )

    @classmethod
    def from_endpoints(cls, left: DyadicRational, right: DyadicRational) -> "StdDyadicInterval":
        """Build from endpoints; raises NotStandardDyadic if not of a/2^n form."""
        width = right - left
        if width.num != 1:
            raise NotStandardDyadic(f"[{left}, {right}] is not standard dyadic")
        n = width.exp
        scaled = left.scale_pow2(n)
        if scaled.exp != 0:
            raise NotStandardDyadic(f"[{left}, {right}] is not standard dyadic")
        return cls(scaled.num, n)

    def __str__(self) -> str:
        return f"[{self.left}, {self.right}]"


class TTree:
    """Ordered rooted binary tree; every internal node has exactly two children.

    A leaf is TTree(); an internal node is TTree(left, right).
    """

    __slots__ = ("left", "right", "_leaves", "_hash")

    def __init__(self, left: "TTree | None" = None, right: "TTree | None" = None):
        if (left is None) != (right is None):
            raise ValueError("internal nodes need exactly two children")
        self.left = left
        self.right = right
        self._leaves = 1 if left is None else left.num_leaves + right.num_leaves
        self._hash = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def num_leaves(self) -> int:
        return self._leaves

    def __eq__(self, other) -> bool:
        if not isinstance(other, TTree):
            return NotImplemented
        if self.is_leaf or other.is_leaf:
            return self.is_leaf and other.is_leaf
        return self.left == other.left and self.right == other.right

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_leaf:
                self._hash = hash(".")
            else:
                self._hash = hash((hash(self.left), hash(self.right)))
        return self._hash

    def __str__(self) -> str:
        if self.is_leaf:
            return "."
        return f"({self.left}{self.right})"

    def __repr__(self) -> str:
        return f"TTree[{self}]"

    @classmethod
    def parse(cls, text: str) -> "TTree":
        tree, rest = cls._parse(text.strip())
        if rest:
            raise ValueError(f"trailing characters in tree text: {rest!r}")
        return tree

    @classmethod
    def _parse(cls, text: str) -> tuple["TTree", str]:
        if not text:
            raise ValueError("empty tree text")
        if text[0] == ".":
            return LEAF, text[1:]
        if text[0] != "(":
            raise ValueError(f"unexpected character {text[0]!r} in tree text")
        left, rest = cls._parse(text[1:])
        right, rest = cls._parse(rest)
        if not rest or rest[0] != ")":
            raise ValueError("unbalanced parentheses in tree text")
        return cls(left, right), rest[1:]

    def leaf_intervals(self) -> list[StdDyadicInterval]:
        """Intervals of the leaves, left to right, under dyadic subdivision of [0,1]."""
        out: list[StdDyadicInterval] = []

        def walk(node: "TTree", a: int, n: int):
            if node.is_leaf:
                out.append(StdDyadicInterval(a, n))
            else:
                walk(node.left, 2 * a, n + 1)
                walk(node.right, 2 * a + 1, n + 1)

        walk(self, 0, 0)
        return out

    def internal_intervals(self) -> list[StdDyadicInterval]:
        """Intervals of the internal nodes (including the root if internal)."""
        out: list[StdDyadicInterval] = []

        def walk(node: "TTree", a: int, n: int):
            if not node.is_leaf:
                out.append(StdDyadicInterval(a, n))
                walk(node.left, 2 * a, n + 1)
                walk(node.right, 2 * a + 1, n + 1)

        walk(self, 0, 0)
        return out


LEAF = TTree()


class DyadicPartition:
    """Standard dyadic partition of [0,1], stored as its sorted breakpoints.

    Invariant: every derived interval is standard dyadic, which also forces
    dyadic nesting of the breakpoints.
    """

    __slots__ = ("breakpoints",)

    def __init__(self, breakpoints):
        pts = sorted(set(breakpoints))
        if not pts or pts[0] != ZERO or pts[-1] != ONE:
            raise NotStandardDyadic("partition breakpoints must run from 0 to 1")
        self.breakpoints = tuple(pts)
        for left, right in zip(pts, pts[1:]):
            StdDyadicInterval.from_endpoints(left, right)

    @classmethod
    def from_intervals(cls, intervals) -> "DyadicPartition":
        pts = [iv.left for iv in intervals] + [intervals[-1].right]
        part = cls(pts)
        if len(part.intervals) != len(intervals):
            raise NotStandardDyadic("intervals overlap or leave gaps")
        return part

    @property
    def intervals(self) -> list[StdDyadicInterval]:
        return [
            StdDyadicInterval.from_endpoints(a, b)
            for a, b in zip(self.breakpoints, self.breakpoints[1:])
        ]

    def __len__(self) -> int:
        return len(self.breakpoints) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, DyadicPartition):
            return NotImplemented
        return self.breakpoints == other.breakpoints

    def __hash__(self) -> int:
        return hash(self.breakpoints)

    def __str__(self) -> str:
        return ", ".join(str(p) for p in self.breakpoints)

    def __repr__(self) -> str:
        return f"DyadicPartition({self})"

    @classmethod
    def parse(cls, text: str) -> "DyadicPartition":
        """Parse the comma-separated breakpoint form, e.g. "0, 1/2^1, 3/2^2, 1"."""
        return cls(DyadicRational.parse(part) for part in text.split(","))

    def interval_index(self, x: DyadicRational) -> int:
        """Index of the half-open interval [b_j, b_{j+1}) containing x in [0,1)."""
        x = x.mod1()
        lo, hi = 0, len(self)
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if self.breakpoints[mid] <= x:
                lo = mid
            else:
                hi = mid
        return lo


TRIVIAL_PARTITION = DyadicPartition([ZERO, ONE])


def tree_to_partition(t: TTree) -> DyadicPartition:
    """Partition whose j-th interval is the j-th leaf interval of t."""
    return DyadicPartition.from_intervals(t.leaf_intervals())


def partition_to_tree(p: DyadicPartition) -> TTree:
    """Inverse of tree_to_partition; raises NotStandardDyadic on bad nesting."""

    def build(lo: int, hi: int, a: int, n: int) -> TTree:
        # breakpoints[lo:hi+1] span the standard interval (a, n)
        if hi == lo + 1:
            return LEAF
        mid_point = DyadicRational(2 * a + 1, n + 1)
        mid = None
        for j in range(lo + 1, hi):
            if p.breakpoints[j] == mid_point:
                mid = j
                break
        if mid is None:
            raise NotStandardDyadic(
                f"breakpoints inside [{DyadicRational(a, n)}, {DyadicRational(a+1, n)}] "
                f"do not nest dyadically"
            )
        return TTree(
            build(lo, mid, 2 * a, n + 1),
            build(mid, hi, 2 * a + 1, n + 1),
        )

    return build(0, len(p), 0, 0)


def _coarsest_standard(points) -> DyadicPartition:
    """Coarsest standard dyadic partition whose breakpoints include `points`."""
    interior = sorted(x for x in set(points) if ZERO < x < ONE)
    bps = [ZERO]

    def refine(inner: list[DyadicRational], a: int, n: int):
        # inner: given breakpoints strictly inside (a/2^n, (a+1)/2^n)
        if not inner:
            bps.append(DyadicRational(a + 1, n))
            return
        mid = DyadicRational(2 * a + 1, n + 1)
        refine([x for x in inner if x < mid], 2 * a, n + 1)
        refine([x for x in inner if x > mid], 2 * a + 1, n + 1)

    refine(interior, 0, 0)
    return DyadicPartition(bps)


def common_refinement(p1: DyadicPartition, p2: DyadicPartition) -> DyadicPartition:
    """Coarsest standard dyadic partition refining both inputs."""
    return _coarsest_standard(set(p1.breakpoints) | set(p2.breakpoints))


def refines(coarse: DyadicPartition, fine: DyadicPartition) -> bool:
    """True iff every breakpoint of `coarse` is a breakpoint of `fine`."""
    return set(coarse.breakpoints) <= set(fine.breakpoints)
