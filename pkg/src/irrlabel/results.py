"""Partition results, size demands and the independent partition verifier."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .blocks import ZeroSumPart
from .errors import InputError
from .groups import GroupElement, GroupSpec

PATHS = ("theorem", "zeng", "oracle")


@dataclass(frozen=True)
class SizeDemand:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(r) for r in self.sizes)
        if any(r < 1 for r in sizes):
            raise InputError(f"part sizes must be positive, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def coerce(cls, demand: "SizeDemand | Iterable[int]") -> "SizeDemand":
        return demand if isinstance(demand, SizeDemand) else cls(tuple(demand))

    @classmethod
    def parse(cls, text: str) -> "SizeDemand":
        try:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        except ValueError:
            raise InputError(f"malformed size list {text!r}; expected e.g. 4,4,5") from None

    @property
    def odd_count(self) -> int:
        return sum(r % 2 for r in self.sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    def __iter__(self):
        return iter(self.sizes)


@dataclass(frozen=True)
class PartitionResult:
    group: GroupSpec
    demand: SizeDemand
    parts: tuple[ZeroSumPart, ...]
    excluded: tuple[GroupElement, ...]
    path: str
    certificate: dict = field(default_factory=dict, compare=False)
    pad_index: int | None = None
    case: str | None = None
    warnings: tuple[str, ...] = ()

    @property
    def exact(self) -> bool:
        return self.path != "oracle"

    def demanded_parts(self) -> list[ZeroSumPart]:
        """Parts excluding the synthetic pad part."""
        return [p for i, p in enumerate(self.parts) if i != self.pad_index]

    def certified(self) -> "PartitionResult":
        cert = verify_partition(self.group, self)
        cert["warnings"] = list(self.warnings)
        return replace(self, certificate=cert)

    def to_json(self) -> dict:
        return {
            "group": str(self.group),
            "path": self.path,
            "case": self.case,
            "demand": list(self.demand.sizes),
            "pad_index": self.pad_index,
            "excluded": [str(x) for x in self.excluded],
            "parts": [p.to_strings() for p in self.parts],
            "certificate": self.certificate,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PartitionResult":
        try:
            G = GroupSpec.parse(data["group"])
            parts = tuple(
                ZeroSumPart(tuple(G.parse_element(s) for s in p), "composite") for p in data["parts"]
            )
            demand = SizeDemand(tuple(data.get("demand") or [len(p) for p in parts]))
            return cls(
                group=G,
                demand=demand,
                parts=parts,
                excluded=tuple(G.parse_element(s) for s in data.get("excluded", [])),
                path=data.get("path", "oracle"),
                pad_index=data.get("pad_index"),
                case=data.get("case"),
                warnings=tuple(data.get("certificate", {}).get("warnings", [])),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed partition JSON: {exc}") from None


def _residue_sum(factors: Sequence[int], elems: Iterable[GroupElement]) -> tuple[int, ...]:
    acc = [0] * len(factors)
    for x in elems:
        for i, r in enumerate(x.residues):
            acc[i] += r
    return tuple(a % f for a, f in zip(acc, factors))


def _fmt(res: tuple[int, ...]) -> str:
    return str(res[0]) if len(res) == 1 else "(" + ",".join(map(str, res)) + ")"


def verify_partition(
    G: GroupSpec, result: PartitionResult, demand: SizeDemand | Sequence[int] | None = None
) -> dict:
    """Recheck a partition from its raw residues.

    Exact mode (theorem and zeng paths) also requires the parts and the
    excluded set to cover the group; oracle results are only checked for
    disjointness.
    """
    demand = result.demand if demand is None else SizeDemand.coerce(demand)
    return check_parts(G, result.parts, result.excluded, demand.sizes, exact=result.exact)


def check_parts(
    G: GroupSpec,
    parts: Sequence[ZeroSumPart],
    excluded: Sequence[GroupElement],
    sizes: Sequence[int] | None,
    *,
    exact: bool,
) -> dict:
    """Size, zero-sum, disjointness, exclusion and (if ``exact``) coverage checks."""
    factors = G.factors
    failures: list[dict] = []
    checks = {}

    def bound(x: GroupElement) -> bool:
        return x.group.factors == factors and all(0 <= r < f for r, f in zip(x.residues, factors))

    checks["group"] = all(bound(x) for p in parts for x in p) and all(map(bound, excluded))
    if not checks["group"]:
        failures.append({"check": "group", "detail": f"elements not reduced residues of {G}"})

    sizes_ok = True
    if sizes is not None:
        if len(parts) != len(sizes):
            sizes_ok = False
            failures.append({"check": "sizes", "detail": f"{len(parts)} parts for {len(sizes)} sizes"})
        for i, (p, r) in enumerate(zip(parts, sizes)):
            if len(p.elements) != r:
                sizes_ok = False
                failures.append({"check": "sizes", "part": i, "detail": f"size {len(p.elements)}, demanded {r}"})
    checks["sizes"] = sizes_ok

    zero = (0,) * len(factors)
    zs_ok = True
    for i, p in enumerate(parts):
        s = _residue_sum(factors, p.elements)
        if s != zero:
            zs_ok = False
            failures.append({"check": "zero_sum", "part": i, "sum": _fmt(s)})
    checks["zero_sum"] = zs_ok

    seen: dict[tuple[int, ...], int] = {}
    dis_ok = True
    for i, p in enumerate(parts):
        for x in p.elements:
            j = seen.get(x.residues)
            if j is not None:
                dis_ok = False
                where = "twice in part" if j == i else f"in parts {j} and"
                failures.append({"check": "disjoint", "part": i, "detail": f"{_fmt(x.residues)} {where} {i}"})
            else:
                seen[x.residues] = i
    checks["disjoint"] = dis_ok

    excl = {x.residues for x in excluded}
    hits = sorted(r for r in seen if r in excl)
    checks["excluded"] = not hits
    for r in hits:
        failures.append({"check": "excluded", "part": seen[r], "detail": f"{_fmt(r)} is excluded"})

    if exact:
        covered = len(set(seen) | excl)
        cov_ok = covered == G.order and len(seen) + len(excl) == G.order
        checks["coverage"] = cov_ok
        if not cov_ok:
            failures.append(
                {"check": "coverage", "detail": f"{covered} of {G.order} elements covered"}
            )
    else:
        checks["coverage"] = None

    return {
        "ok": not failures,
        "mode": "exact" if exact else "disjoint",
        "checks": checks,
        "failures": failures,
    }
