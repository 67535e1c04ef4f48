"""Digraphs, weak components, and Γ-irregular arc labelings.

A labeling ψ of the arcs induces φ(x) = Σ ψ(out-arcs of x) - Σ ψ(in-arcs of x),
and ψ is Γ-irregular when φ is injective.  Any injective φ whose values sum
to 0 on every weak component is induced by some ψ; :func:`realize` builds one
along a BFS spanning tree.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .errors import ConstructionError, InputError, StructuralError, UnsupportedClassError
from .groups import GroupElement, GroupSpec
from .oracle import SearchBudget
from .partition import MIN_THEOREM_PART, general_partition
from .results import PartitionResult


@dataclass(frozen=True)
class Digraph:
    """Vertices in declaration order and arcs in input order.

    Parallel arcs and 2-cycles are allowed; loops are not.
    """

    vertices: tuple[str, ...]
    arcs: tuple[tuple[str, str], ...]
    _pos: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arcs", tuple((t, h) for t, h in self.arcs))
        pos = {}
        for v in self.vertices:
            if not v or any(c.isspace() for c in v):
                raise StructuralError(f"bad vertex id {v!r}")
            if v in pos:
                raise StructuralError(f"vertex {v!r} declared twice")
            pos[v] = len(pos)
        for t, h in self.arcs:
            for end in (t, h):
                if end not in pos:
                    raise StructuralError(f"arc {t} -> {h} uses undeclared vertex {end!r}")
            if t == h:
                raise StructuralError(f"loop at {t!r}; loops carry no information and are rejected")
        object.__setattr__(self, "_pos", pos)

    @property
    def order(self) -> int:
        return len(self.vertices)

    def position(self, v: str) -> int:
        return self._pos[v]

    @classmethod
    def parse(cls, text: str, source: str = "<input>") -> "Digraph":
        """Read ``v <id>`` declarations and ``<tail> <head>`` arcs.

        A two-token line whose first token is ``v`` is always a declaration.
        Declarations may come after the arcs that use them.
        """
        vertices: list[str] = []
        declared: dict[str, int] = {}
        arcs: list[tuple[str, str]] = []
        arc_lines: list[int] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tok = line.split()
            if len(tok) != 2:
                raise InputError(f"{source}:{lineno}: expected 'v <id>' or '<tail> <head>', got {raw!r}")
            if tok[0] == "v":
                if tok[1] in declared:
                    raise InputError(
                        f"{source}:{lineno}: vertex {tok[1]!r} already declared on line {declared[tok[1]]}"
                    )
                declared[tok[1]] = lineno
                vertices.append(tok[1])
            else:
                if tok[0] == tok[1]:
                    raise InputError(f"{source}:{lineno}: loop at {tok[0]!r} is not allowed")
                arcs.append((tok[0], tok[1]))
                arc_lines.append(lineno)
        for (t, h), lineno in zip(arcs, arc_lines):
            for end in (t, h):
                if end not in declared:
                    raise InputError(f"{source}:{lineno}: vertex {end!r} is not declared")
        return cls(tuple(vertices), tuple(arcs))

    @classmethod
    def read(cls, path: str | Path) -> "Digraph":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"{path}: not UTF-8 ({exc})") from None
        return cls.parse(text, source=str(path))

    def to_text(self) -> str:
        lines = [f"v {v}" for v in self.vertices] + [f"{t} {h}" for t, h in self.arcs]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[tuple[str, ...], ...]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)


def _undirected_adjacency(D: Digraph) -> dict[str, list[tuple[str, int]]]:
    adj: dict[str, list[tuple[str, int]]] = {v: [] for v in D.vertices}
    for i, (t, h) in enumerate(D.arcs):
        adj[t].append((h, i))
        adj[h].append((t, i))
    return adj


def _bfs(adj, root: str, seen: set[str]) -> tuple[list[str], dict[str, int]]:
    order, parent_arc = [root], {}
    seen.add(root)
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w, arc in adj[u]:
            if w not in seen:
                seen.add(w)
                parent_arc[w] = arc
                order.append(w)
                queue.append(w)
    return order, parent_arc


def weak_components(D: Digraph) -> ComponentDecomposition:
    """Components ordered by their first-declared vertex; each listed in BFS order."""
    adj = _undirected_adjacency(D)
    seen: set[str] = set()
    comps = []
    for v in D.vertices:
        if v not in seen:
            order, _ = _bfs(adj, v, seen)
            comps.append(tuple(order))
    return ComponentDecomposition(tuple(comps))


@dataclass(frozen=True)
class Labeling:
    group: GroupSpec
    digraph: Digraph
    psi: tuple[GroupElement, ...]
    phi: dict = field(compare=False)
    certificate: dict = field(default_factory=dict, compare=False)
    partition: PartitionResult | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {
            "group": str(self.group),
            "arcs": [
                {"tail": t, "head": h, "label": str(x)} for (t, h), x in zip(self.digraph.arcs, self.psi)
            ],
            "phi": [{"vertex": v, "value": str(self.phi[v])} for v in self.digraph.vertices],
            "certificate": self.certificate,
        }
        if self.partition is not None:
            out["partition"] = self.partition.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Labeling":
        try:
            G = GroupSpec.parse(data["group"])
            vertices = [e["vertex"] for e in data["phi"]]
            D = Digraph(tuple(vertices), tuple((a["tail"], a["head"]) for a in data["arcs"]))
            psi = tuple(G.parse_element(a["label"]) for a in data["arcs"])
            phi = {e["vertex"]: G.parse_element(e["value"]) for e in data["phi"]}
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed labeling JSON: missing or bad field {exc}") from None
        return cls(G, D, psi, phi, data.get("certificate", {}))


def induced_phi(D: Digraph, G: GroupSpec, psi: Sequence[GroupElement]) -> dict[str, GroupElement]:
    acc = {v: [0] * len(G.factors) for v in D.vertices}
    for (t, h), x in zip(D.arcs, psi):
        for i, r in enumerate(x.residues):
            acc[t][i] += r
            acc[h][i] -= r
    return {v: G.element(tuple(a)) for v, a in acc.items()}


def realize(D: Digraph, G: GroupSpec, phi: Mapping[str, GroupElement]) -> Labeling:
    """Arc labels inducing exactly ``phi``; arcs off the BFS trees get 0."""
    missing = [v for v in D.vertices if v not in phi]
    if missing:
        raise InputError(f"phi has no value for vertices {missing}")
    owner: dict[GroupElement, str] = {}
    for v in D.vertices:
        x = phi[v]
        if x.group != G:
            raise InputError(f"phi({v}) = {x} is not an element of {G}")
        if x in owner:
            raise InputError(f"phi is not injective: phi({owner[x]}) = phi({v}) = {x}")
        owner[x] = v
    adj = _undirected_adjacency(D)
    psi = [G.zero] * len(D.arcs)
    net = {v: G.zero for v in D.vertices}
    seen: set[str] = set()
    for root in D.vertices:
        if root in seen:
            continue
        order, parent_arc = _bfs(adj, root, seen)
        if len(order) < 2:
            raise InputError(f"component {{{root}}} has order 1; it cannot carry a nonzero value")
        total = G.zero
        for v in order:
            total = total + phi[v]
        if total:
            raise InputError(f"phi sums to {total}, not 0, on the component of {root} ({len(order)} vertices)")
        for v in reversed(order[1:]):
            arc = parent_arc[v]
            t, h = D.arcs[arc]
            need = phi[v] - net[v]
            label = need if t == v else -need
            psi[arc] = label
            net[t] = net[t] + label
            net[h] = net[h] - label
    return Labeling(G, D, tuple(psi), dict(phi))


def verify_labeling(D: Digraph, G: GroupSpec, L: Labeling) -> dict:
    """Recompute φ from ψ and check it against the stored φ and for injectivity."""
    failures = []
    labels_ok = len(L.psi) == len(D.arcs) and all(
        x.group.factors == G.factors and all(0 <= r < f for r, f in zip(x.residues, G.factors))
        for x in L.psi
    )
    if not labels_ok:
        failures.append({"check": "labels", "detail": f"need {len(D.arcs)} labels in {G}"})
    phi = induced_phi(D, G, L.psi) if labels_ok else {}
    match_ok = labels_ok
    for v in D.vertices if labels_ok else ():
        stored = L.phi.get(v)
        if stored is None or stored.residues != phi[v].residues:
            match_ok = False
            failures.append(
                {"check": "phi_match", "vertex": v, "stored": str(stored), "recomputed": str(phi[v])}
            )
    inj_ok = labels_ok
    first: dict[tuple[int, ...], str] = {}
    for v in D.vertices if labels_ok else ():
        key = phi[v].residues
        if key in first:
            inj_ok = False
            failures.append(
                {"check": "injective", "vertices": [first[key], v], "value": str(phi[v])}
            )
        else:
            first[key] = v
    return {
        "ok": not failures,
        "checks": {"labels": labels_ok, "phi_match": match_ok, "injective": inj_ok},
        "failures": failures,
    }


def label_digraph(
    D: Digraph,
    G: GroupSpec,
    allow_oracle: bool = True,
    *,
    budget: SearchBudget | None = None,
) -> Labeling:
    """Γ-irregular labeling from a zero-sum partition sized by the weak components."""
    comps = weak_components(D)
    if not D.arcs and not D.vertices:
        raise InputError("empty digraph")
    isolated = [c[0] for c in comps.components if len(c) == 1]
    if isolated:
        raise StructuralError(f"isolated vertices {isolated} cannot be labeled irregularly")
    small = [len(c) for c in comps.components if len(c) < MIN_THEOREM_PART]
    if small and not allow_oracle:
        raise UnsupportedClassError(
            f"components of order {small} are below {MIN_THEOREM_PART}; enable the oracle to try them"
        )
    result = general_partition(G, comps.orders, allow_oracle, budget=budget)
    phi: dict[str, GroupElement] = {}
    for comp, part in zip(comps.components, result.parts):
        for v, x in zip(comp, sorted(part.elements)):
            phi[v] = x
    lab = realize(D, G, phi)
    cert = verify_labeling(D, G, lab)
    cert["path"] = result.path
    cert["case"] = result.case
    cert["component_orders"] = list(comps.orders)
    cert["warnings"] = list(result.warnings)
    if not cert["ok"]:
        raise ConstructionError(f"labeling failed verification: {cert['failures']}")
    return Labeling(G, D, lab.psi, lab.phi, cert, result)


def random_digraph(
    rng: random.Random,
    n: int,
    *,
    min_component: int = MIN_THEOREM_PART,
    extra_arcs: float = 0.5,
) -> Digraph:
    """Random digraph on ``n`` vertices whose weak components have order >= min_component.

    Each component is a random spanning tree with random orientations plus
    about ``extra_arcs`` * order further arcs, parallel and antiparallel
    ones included.
    """
    if n < min_component:
        raise InputError(f"n = {n} is below the component minimum {min_component}")
    sizes = []
    left = n
    while left:
        if left < 2 * min_component:
            sizes.append(left)
            break
        r = rng.randint(min_component, left - min_component)
        sizes.append(r)
        left -= r
    vertices = [str(i) for i in range(n)]
    arcs = []
    base = 0
    for r in sizes:
        vs = vertices[base : base + r]
        base += r
        for i in range(1, r):
            u, w = vs[i], vs[rng.randrange(i)]
            arcs.append((u, w) if rng.random() < 0.5 else (w, u))
        for _ in range(int(extra_arcs * r)):
            u, w = rng.sample(vs, 2)
            arcs.append((u, w))
    rng.shuffle(arcs)
    return Digraph(tuple(vertices), tuple(arcs))
