"""Finite Abelian groups presented as direct products of cyclic groups.

A :class:`GroupSpec` keeps the factor orders exactly as the user wrote them
(``Z4xZ9`` and ``Z36`` are different presentations of isomorphic groups).
Elements are reduced residue tuples against that presentation.  Structural
questions (invariant factors, involutions, cyclicity) are answered from the
primary decomposition and do not depend on the presentation.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import InputError, ResourceError, StructuralError

ENUMERATION_CAP = 10**6

_SPEC_RE = re.compile(r"^[zZ](\d+)(?:x[zZ](\d+))*$")
_FACTOR_RE = re.compile(r"[zZ](\d+)")


def prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Combine residues modulo pairwise coprime moduli."""
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        # solve x + m*t == r (mod q)
        t = ((r - x) * pow(m, -1, q)) % q if q > 1 else 0
        x += m * t
        m *= q
    return x % m if m > 1 else 0


@dataclass(frozen=True)
class Component:
    """A cyclic prime-power component Z_{p^a} carved out of one factor."""

    factor: int
    prime: int
    order: int


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        for f in self.factors:
            if f < 2:
                raise InputError(f"cyclic factor orders must be >= 2, got {f}")

    # -- construction and I/O --------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``Z4xZ9`` style group specs; no surrounding whitespace."""
        if not _SPEC_RE.match(text):
            raise InputError(f"malformed group spec {text!r}; expected e.g. Z4xZ9")
        factors = tuple(int(k) for k in _FACTOR_RE.findall(text))
        for k in factors:
            if k < 2:
                raise InputError(f"malformed group spec {text!r}: factor Z{k} must have order >= 2")
        return cls(factors)

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        return cls((n,)) if n > 1 else cls(())

    def __str__(self) -> str:
        if not self.factors:
            return "trivial"
        return "x".join(f"Z{f}" for f in self.factors)

    def __repr__(self) -> str:
        return f"GroupSpec({str(self)!r})"

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def __len__(self) -> int:
        return self.order

    def element(self, residues: int | Iterable[int]) -> "GroupElement":
        if isinstance(residues, int):
            residues = (residues,)
        residues = tuple(residues)
        if len(residues) != len(self.factors):
            raise InputError(f"{residues} has the wrong arity for {self}")
        return GroupElement(self, tuple(r % f for r, f in zip(residues, self.factors)))

    def parse_element(self, text: str) -> "GroupElement":
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        try:
            residues = tuple(int(t) for t in s.split(",")) if s else ()
        except ValueError:
            raise InputError(f"malformed element {text!r}") from None
        if len(residues) != len(self.factors):
            raise InputError(f"element {text!r} does not match {self}")
        for r, f in zip(residues, self.factors):
            if not 0 <= r < f:
                raise InputError(f"element {text!r}: residue {r} out of range for Z{f}")
        return GroupElement(self, residues)

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.factors))

    # -- enumeration -------------------------------------------------------

    def elements(self, cap: int | None = None) -> list["GroupElement"]:
        """All elements in lexicographic residue order."""
        cap = ENUMERATION_CAP if cap is None else cap
        if self.order > cap:
            raise ResourceError(f"{self} has {self.order} elements, above the enumeration cap {cap}")
        return [GroupElement(self, r) for r in itertools.product(*(range(f) for f in self.factors))]

    def index(self, x: "GroupElement") -> int:
        """Position of ``x`` in :meth:`elements` order (mixed radix)."""
        i = 0
        for r, f in zip(x.residues, self.factors):
            i = i * f + r
        return i

    def from_index(self, i: int) -> "GroupElement":
        res = []
        for f in reversed(self.factors):
            i, r = divmod(i, f)
            res.append(r)
        return GroupElement(self, tuple(reversed(res)))

    # -- structure ---------------------------------------------------------

    @cached_property
    def components(self) -> tuple[Component, ...]:
        out = []
        for i, f in enumerate(self.factors):
            for p, a in sorted(prime_factorization(f).items()):
                out.append(Component(i, p, p**a))
        return tuple(out)

    def to_components(self, x: "GroupElement") -> tuple[int, ...]:
        return tuple(x.residues[c.factor] % c.order for c in self.components)

    def from_components(self, coords: Sequence[int]) -> "GroupElement":
        per_factor: list[list[tuple[int, int]]] = [[] for _ in self.factors]
        for c, r in zip(self.components, coords):
            per_factor[c.factor].append((r % c.order, c.order))
        residues = tuple(crt([r for r, _ in rs], [q for _, q in rs]) for rs in per_factor)
        return GroupElement(self, residues)

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        """Invariant factors d1 | d2 | ... | dk, each > 1."""
        by_prime: dict[int, list[int]] = {}
        for c in self.components:
            by_prime.setdefault(c.prime, []).append(c.order)
        width = max((len(v) for v in by_prime.values()), default=0)
        out = [1] * width
        for orders in by_prime.values():
            orders = sorted(orders)
            for j, q in enumerate(orders):
                out[width - len(orders) + j] *= q
        return tuple(out)

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def involutions(self) -> list["GroupElement"]:
        """All elements of order two, in lexicographic order."""
        choices = [(0, f // 2) if f % 2 == 0 else (0,) for f in self.factors]
        return [GroupElement(self, r) for r in itertools.product(*choices) if any(r)]

    @property
    def involution_count(self) -> int:
        return 2 ** sum(1 for f in self.factors if f % 2 == 0) - 1

    def group_sum(self) -> "GroupElement":
        """Sum of every element, computed factorwise in closed form."""
        n = self.order
        # each residue of Z_f occurs n/f times in its coordinate
        return GroupElement(
            self, tuple(((n // f) * (f * (f - 1) // 2)) % f for f in self.factors)
        )

    def the_involution(self) -> "GroupElement":
        invs = self.involutions()
        if len(invs) != 1:
            raise InputError(f"{self} has {len(invs)} involutions, expected exactly one")
        return invs[0]

    def generator(self) -> "GroupElement":
        """A generator of a cyclic group; factors are then pairwise coprime."""
        if not self.is_cyclic():
            raise InputError(f"{self} is not cyclic")
        return GroupElement(self, tuple(1 for _ in self.factors))

    def multiple(self, g: "GroupElement", k: int) -> "GroupElement":
        return GroupElement(self, tuple((k * r) % f for r, f in zip(g.residues, self.factors)))

    def factor_2_odd(self) -> "ProductSplit":
        comps = self.components
        left = tuple((i,) for i, c in enumerate(comps) if c.prime == 2)
        right = tuple((i,) for i, c in enumerate(comps) if c.prime != 2)
        return ProductSplit.from_blocks(self, left, right)


class GroupElement:
    """An element of a :class:`GroupSpec`, stored as reduced residues."""

    __slots__ = ("group", "residues")

    def __init__(self, group: GroupSpec, residues: tuple[int, ...]):
        self.group = group
        self.residues = residues

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group is not self.group and other.group.factors != self.group.factors:
            raise StructuralError(f"cannot combine elements of {self.group} and {other.group}")
        return None

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self._check(other) is NotImplemented:
            return NotImplemented
        return GroupElement(
            self.group,
            tuple((a + b) % f for a, b, f in zip(self.residues, other.residues, self.group.factors)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple((-a) % f for a, f in zip(self.residues, self.group.factors)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.residues == other.residues and self.group.factors == other.group.factors

    def __hash__(self) -> int:
        return hash(self.residues)

    def __lt__(self, other: "GroupElement") -> bool:
        return self.residues < other.residues

    def __bool__(self) -> bool:
        return any(self.residues)

    def __str__(self) -> str:
        if len(self.residues) == 1:
            return str(self.residues[0])
        return "(" + ",".join(str(r) for r in self.residues) + ")"

    def __repr__(self) -> str:
        return f"<{self.group} {self}>"


def element_sum(group: GroupSpec, xs: Iterable[GroupElement]) -> GroupElement:
    acc = [0] * len(group.factors)
    for x in xs:
        for i, r in enumerate(x.residues):
            acc[i] += r
    return group.element(acc)


@dataclass(frozen=True)
class ProductSplit:
    """An internal direct product Γ ≅ L × H with explicit embeddings.

    Each factor of ``L`` (and of ``H``) is a block of pairwise coprime primary
    components of Γ, so every factor is cyclic by the Chinese remainder theorem.
    ``factor_2_odd`` gives the split into the 2-part and the odd part; the
    regroupings used for groups with a single Z2 factor put one odd component
    next to the Z2 component to obtain a larger cyclic left factor.
    """

    group: GroupSpec
    L: GroupSpec
    H: GroupSpec
    left_blocks: tuple[tuple[int, ...], ...]
    right_blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, group, left_blocks, right_blocks) -> "ProductSplit":
        used = sorted(i for b in (*left_blocks, *right_blocks) for i in b)
        if used != list(range(len(group.components))):
            raise InputError("blocks must partition the primary components")
        comps = group.components
        sizes = lambda blocks: tuple(math.prod(comps[i].order for i in b) for b in blocks)
        return cls(group, GroupSpec(sizes(left_blocks)), GroupSpec(sizes(right_blocks)),
                   tuple(map(tuple, left_blocks)), tuple(map(tuple, right_blocks)))

    def embed(self, x: GroupElement, y: GroupElement) -> GroupElement:
        comps = self.group.components
        coords = [0] * len(comps)
        for blocks, elem in ((self.left_blocks, x), (self.right_blocks, y)):
            for b, r in zip(blocks, elem.residues):
                for ci in b:
                    coords[ci] = r % comps[ci].order
        return self.group.from_components(coords)

    def split(self, g: GroupElement) -> tuple[GroupElement, GroupElement]:
        comps = self.group.components
        coords = self.group.to_components(g)
        parts = []
        for spec, blocks in ((self.L, self.left_blocks), (self.H, self.right_blocks)):
            res = tuple(crt([coords[i] for i in b], [comps[i].order for i in b]) for b in blocks)
            parts.append(GroupElement(spec, res))
        return parts[0], parts[1]

    def pair(self, x: int | GroupElement, y: GroupElement) -> GroupElement:
        """Embed with ``x`` given as an integer of a cyclic ``L``."""
        if isinstance(x, int):
            x = self.L.element(x) if self.L.factors else self.L.zero
        return self.embed(x, y)


Factorization2Odd = ProductSplit


def factor_2_odd(group: GroupSpec) -> ProductSplit:
    return group.factor_2_odd()


@lru_cache(maxsize=None)
def presentations(max_order: int, min_order: int = 1) -> tuple[GroupSpec, ...]:
    """Every non-decreasing list of cyclic factors with product in range.

    Isomorphic groups appear once per distinct presentation.
    """
    out: list[GroupSpec] = []

    def rec(prod: int, lo: int, fs: list[int]):
        if fs and prod >= min_order:
            out.append(GroupSpec(tuple(fs)))
        for f in range(lo, max_order // prod + 1):
            rec(prod * f, f, fs + [f])

    rec(1, 2, [])
    return tuple(sorted(out, key=lambda g: (g.order, g.factors)))


def isomorphism_classes(max_order: int, min_order: int = 1) -> tuple[GroupSpec, ...]:
    """One presentation per isomorphism class, written by invariant factors."""
    seen = {}
    for g in presentations(max_order, min_order):
        seen.setdefault(g.invariant_factors, GroupSpec(g.invariant_factors))
    return tuple(sorted(seen.values(), key=lambda g: (g.order, g.factors)))

