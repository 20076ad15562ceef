"""Brauer trees labelled by pi.

Vertices are characters plus one exceptional vertex.  Each non-exceptional
vertex is paired with the edge leading from it toward the exceptional
vertex (the leaf-stripping bijection), so pi on characters is pi on simple
modules.  Trees come from the classical combinatorics or from the bundled
fixtures for exceptional groups.
"""

import json
import math
import os
from dataclasses import dataclass, field, replace
from importlib import resources

from .cyclopoly import parse_d, parse_product
from .perversity import (
    Report,
    gl_branch,
    gu_branches,
    pi as block_pi,
    pi_of_degrees,
    symbol_branches,
)
from .unideg import BlockSpec

EXC = "exc"


class TreeError(ValueError):
    pass


class FixtureError(LookupError):
    pass


@dataclass(frozen=True)
class Vertex:
    name: str
    pi: int = None
    degree: str = None
    pos: tuple = None


@dataclass
class BrauerTree:
    """A tree with one exceptional vertex named `exc`.

    `adjacency[v]` lists neighbours in the cyclic (planar) order around v.
    """

    name: str
    vertices: dict
    adjacency: dict
    multiplicity: int = None
    psi_degree: str = None
    tags: tuple = ()
    _parent: dict = field(default=None, repr=False, compare=False)

    @classmethod
    def from_edges(cls, name, vertices, edges, **kw) -> "BrauerTree":
        verts = {v.name: v for v in vertices}
        if EXC not in verts:
            verts = {EXC: Vertex(EXC), **verts}
        adj = {v: [] for v in verts}
        for a, b in edges:
            if a not in verts or b not in verts:
                raise TreeError(f"edge {a} -- {b} names an unknown vertex")
            adj[a].append(b)
            adj[b].append(a)
        tree = cls(name, verts, adj, **kw)
        tree._order_by_position()
        tree.validate()
        return tree

    def _order_by_position(self):
        """Sort each neighbour list counterclockwise when every vertex has a
        printed position; otherwise keep the given order."""
        if any(v.pos is None for v in self.vertices.values()):
            return
        for v, nbrs in self.adjacency.items():
            x0, y0 = self.vertices[v].pos
            nbrs.sort(key=lambda w: math.atan2(self.vertices[w].pos[1] - y0, self.vertices[w].pos[0] - x0) % (2 * math.pi))

    # ---------------------------------------------------------- structure

    def validate(self):
        n_edges = sum(len(a) for a in self.adjacency.values()) // 2
        if n_edges != len(self.vertices) - 1:
            raise TreeError(f"{self.name}: {n_edges} edges on {len(self.vertices)} vertices is not a tree")
        if len(self.parents()) != len(self.vertices) - 1:
            raise TreeError(f"{self.name}: not connected")

    def parents(self) -> dict:
        """Each non-exceptional vertex's neighbour toward the exceptional one."""
        if self._parent is None:
            parent, todo = {}, [EXC]
            seen = {EXC}
            while todo:
                v = todo.pop(0)
                for w in self.adjacency[v]:
                    if w not in seen:
                        seen.add(w)
                        parent[w] = v
                        todo.append(w)
            self._parent = parent
        return self._parent

    @property
    def characters(self) -> list:
        return [v for v in self.vertices if v != EXC]

    @property
    def edges(self) -> list:
        """(character, neighbour toward exc) for each character."""
        par = self.parents()
        return [(v, par[v]) for v in self.characters]

    def depth(self, v: str) -> int:
        par, k = self.parents(), 0
        while v != EXC:
            v, k = par[v], k + 1
        return k

    def distance(self, v: str) -> int:
        """f of the edge paired with v: distance from exc to its nearer end."""
        return self.depth(v) - 1

    def leaves(self) -> list:
        return [v for v in self.characters if len(self.adjacency[v]) == 1]

    @property
    def pis(self) -> dict:
        return {v: self.vertices[v].pi for v in self.characters}

    def with_pis(self, pis: dict) -> "BrauerTree":
        verts = {k: (replace(v, pi=pis[k]) if k in pis else v) for k, v in self.vertices.items()}
        return BrauerTree(self.name, verts, {k: list(a) for k, a in self.adjacency.items()},
                          self.multiplicity, self.psi_degree, self.tags)

    def __str__(self):
        return f"{self.name}: " + ", ".join(f"{v}({self.vertices[v].pi})--{p}" for v, p in self.edges)


def leaf_stripping(tree: BrauerTree) -> list:
    """Repeatedly pair a degree-1 non-exceptional vertex with its only edge
    and delete both.  Returns [(vertex, (vertex, other end)), ...]."""
    adj = {v: set(a) for v, a in tree.adjacency.items()}
    out = []
    while True:
        leaf = next((v for v in tree.vertices if v != EXC and v in adj and len(adj[v]) == 1), None)
        if leaf is None:
            break
        (other,) = adj[leaf]
        out.append((leaf, (leaf, other)))
        adj[other].discard(leaf)
        del adj[leaf]
    return out


def canonical_pi(tree: BrauerTree, offset: int = None) -> tuple:
    """(pi_0 by character, offset): pi_0 = r - f + offset with r = max f.

    With no offset given it is picked so pi_0 and pi agree mod 2 on the first
    leaf carrying a pi label (0 when there is none)."""
    f = {v: tree.distance(v) for v in tree.characters}
    r = max(f.values(), default=0)
    if offset is None:
        offset = 0
        for v in tree.leaves():
            p = tree.vertices[v].pi
            if p is not None:
                offset = (p - (r - f[v])) % 2
                break
    return {v: r - f[v] + offset for v in tree.characters}, offset


def verify_perverse_conditions(tree: BrauerTree) -> Report:
    """Check the two conditions for pi to give a perverse equivalence.

    (i) pi strictly increases across every non-exceptional vertex toward
    the exceptional one; (ii) pi - pi_0 is even everywhere and
    non-negative on edges at a leaf."""
    rep = Report(f"perverse-conditions {tree.name}")
    stripped = leaf_stripping(tree)
    if sorted(v for v, _ in stripped) != sorted(tree.characters):
        rep.violations.append(f"{tree.name}: leaf stripping left {len(tree.characters) - len(stripped)} edges")
    par = tree.parents()
    if any(e != (v, par[v]) for v, e in stripped):
        rep.violations.append(f"{tree.name}: leaf stripping disagrees with the edge toward exc")
    pis = tree.pis
    missing = [v for v, p in pis.items() if p is None]
    if missing:
        rep.violations.append(f"{tree.name}: no pi on {', '.join(missing)}")
        return rep
    for v, p in par.items():
        rep.checked += 1
        if p != EXC and not pis[p] > pis[v]:
            rep.violations.append(f"{tree.name}: pi({p}) = {pis[p]} is not above pi({v}) = {pis[v]}")
    pi0, _ = canonical_pi(tree)
    leaves = set(tree.leaves())
    for v in tree.characters:
        diff = pis[v] - pi0[v]
        if diff % 2:
            rep.violations.append(f"{tree.name}: pi - pi_0 = {diff} at {v} is odd")
        elif diff < 0 and v in leaves:
            rep.violations.append(f"{tree.name}: pi - pi_0 = {diff} at leaf {v}")
        elif diff < 0:
            rep.skipped.append(f"{tree.name}: pi - pi_0 = {diff} at inner vertex {v}")
    return rep


# ---------------------------------------------------------------- builders

def _check_cyclic(block: BlockSpec):
    if block.weight != 1:
        raise TreeError(f"block with core {block.core} has weight {block.weight}; defect group is not cyclic")


def _arms_tree(block: BlockSpec, name: str, arms) -> BrauerTree:
    """Line-shaped tree from one or two arms, each listed far end first."""
    chars = {str(ch): ch for ch in block.characters}
    verts, edges = [Vertex(EXC, pos=(0.0, 0.0))], []
    for side, arm in zip((-1, 1), arms):
        prev = EXC
        for k, label in enumerate(reversed(arm.labels)):
            key = str(label)
            if key not in chars:
                raise TreeError(f"{key} is not a character of the block with core {block.core}")
            verts.append(Vertex(key, block_pi(block, chars[key]), str(chars[key].degree), (side * (k + 1.0), 0.0)))
            edges.append((prev, key))
            prev = key
    used = {v.name for v in verts}
    if used - {EXC} != set(chars):
        raise TreeError(f"arms cover {len(used) - 1} of {len(chars)} characters of the block with core {block.core}")
    return BrauerTree.from_edges(name, verts, edges, psi_degree=str(block.core_degree))


def _tree_name(block):
    return f"{block.family}{block.n} d={block.d} core={block.core}"


def build_tree_gl(block: BlockSpec) -> BrauerTree:
    """A line chi_1 ... chi_d with the exceptional vertex at the end."""
    _check_cyclic(block)
    _, br = gl_branch(block.core, block.d)
    return _arms_tree(block, _tree_name(block), [br])


def build_tree_gu(block: BlockSpec) -> BrauerTree:
    """Even free beads on one side of the exceptional vertex, odd on the other."""
    _check_cyclic(block)
    _, sig, tau = gu_branches(block.core, block.d)
    return _arms_tree(block, _tree_name(block), [sig, tau])


def build_tree_symbol(block: BlockSpec) -> BrauerTree:
    """BC and D blocks: hooks (d odd) or cohooks (d even) added from X on
    one side and from Y on the other.  A degenerate core gives one arm."""
    _check_cyclic(block)
    _, sig, tau = symbol_branches(block.family, block.core, block.d)
    if any(ch.tag for ch in block.characters):
        raise TreeError(f"block with core {block.core} contains a degenerate symbol")
    arms = [sig] if block.core.degenerate else [sig, tau]
    return _arms_tree(block, _tree_name(block), arms)


build_tree_bc = build_tree_symbol
build_tree_d = build_tree_symbol


def build_tree(block: BlockSpec) -> BrauerTree:
    if block.family == "GL":
        return build_tree_gl(block)
    if block.family == "GU":
        return build_tree_gu(block)
    return build_tree_symbol(block)


# ---------------------------------------------------------------- fixtures

UNKNOWN_TREES = ("E7", "E8")


@dataclass
class Fixture:
    group: str
    d: str
    order: str
    trees: list
    table: list
    degrees_printed: bool
    note: str = None


def fixture_dir():
    override = os.environ.get("PERVLAB_FIXTURES")
    if override:
        return override
    return resources.files("pervlab") / "fixtures"


def _open_fixture(name):
    base = fixture_dir()
    if isinstance(base, str):
        path = os.path.join(base, name)
        return open(path) if os.path.exists(path) else None
    res = base / name
    return res.open() if res.is_file() else None


def available_fixtures() -> list:
    base = fixture_dir()
    names = os.listdir(base) if isinstance(base, str) else [p.name for p in base.iterdir()]
    out = []
    for n in sorted(names):
        if n.endswith(".json") and "_d" in n:
            g, d = n[:-5].rsplit("_d", 1)
            out.append((g, d))
    return out


def _tree_from_json(obj, prefix="") -> BrauerTree:
    verts = [Vertex(v["name"], v.get("pi"), v.get("degree"), tuple(v["pos"]) if "pos" in v else None)
             for v in obj["vertices"]]
    return BrauerTree.from_edges(prefix + obj["name"], verts, [tuple(e) for e in obj["edges"]],
                                 psi_degree=obj.get("psi_degree"), tags=tuple(obj.get("tags", ())))


def load_fixture(group: str, d) -> Fixture:
    if group in UNKNOWN_TREES:
        raise FixtureError(f"tree unknown: the Brauer trees of {group} are not known")
    d = str(d)
    parse_d(d)
    fh = _open_fixture(f"{group}_d{d}.json")
    if fh is None:
        raise FixtureError(f"no fixture for {group}, d={d}")
    with fh:
        obj = json.load(fh)
    return Fixture(obj["group"], obj["d"], obj["order"], [_tree_from_json(t, f"{group} d={d} ") for t in obj["trees"]],
                   obj["table"], obj["degrees_printed"], obj.get("note"))


def either_variants(tree: BrauerTree) -> list:
    """The trees a validator must accept.  For an `either-variant` tree the
    second variant swaps the places of the non-real pair."""
    if "either-variant" not in tree.tags:
        return [tree]
    pair = [v for v in tree.characters if v.endswith("[theta]") or v.endswith("[theta^2]")]
    if len(pair) != 2:
        return [tree]
    a, b = pair
    swap = {a: b, b: a}
    adj = {swap.get(v, v): [swap.get(w, w) for w in nbrs] for v, nbrs in tree.adjacency.items()}
    verts = {}
    for k, v in tree.vertices.items():
        verts[swap.get(k, k)] = replace(tree.vertices[swap.get(k, k)], pos=v.pos)
    alt = BrauerTree(tree.name + " (swapped pair)", verts, adj, tree.multiplicity, tree.psi_degree, tree.tags)
    return [tree, alt]


def recompute_fixture(fx: Fixture) -> Report:
    """Recompute every pi label that has a degree next to it."""
    rep = Report(f"fixture {fx.group} d={fx.d}")
    for t in fx.trees:
        if t.psi_degree is None:
            rep.skipped.append(f"{t.name}: cuspidal degree not available")
            continue
        psi = parse_product(t.psi_degree)
        for v in t.characters:
            vert = t.vertices[v]
            if vert.degree is None:
                continue
            rep.checked += 1
            got = pi_of_degrees(fx.d, parse_product(vert.degree), psi)
            if got != vert.pi:
                rep.violations.append(f"{fx.group} d={fx.d} {t.name} {v}: label {vert.pi}, recomputed {got}")
    one = parse_product("1")
    for row in fx.table:
        if "degree" not in row or row.get("block"):
            continue
        rep.checked += 1
        got = pi_of_degrees(fx.d, parse_product(row["degree"]), one)
        if got != row["pi"]:
            rep.violations.append(f"{fx.group} d={fx.d} table {row['name']}: printed {row['pi']}, recomputed {got}")
    return rep


def fixture_rows(fx: Fixture) -> list:
    """(name, degree, pi, block) rows: the printed table when there is
    one, else the labelled tree vertices in order of first appearance."""
    if fx.table:
        return [(r["name"], r.get("degree"), r["pi"], r.get("block") or "principal") for r in fx.table]
    rows, seen = [], set()
    for t in fx.trees:
        for v in t.characters:
            if v not in seen:
                seen.add(v)
                rows.append((v, t.vertices[v].degree, t.vertices[v].pi, t.name.rsplit(" ", 1)[-1]))
    return rows


# ---------------------------------------------------------------- output

def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(tree: BrauerTree) -> str:
    """Graphviz text: filled exceptional vertex, each edge labelled
    'character | pi | pi_0'."""
    pi0, _ = canonical_pi(tree)
    ids = {v: f"v{k}" for k, v in enumerate(tree.vertices)}
    lines = [f"graph {_q(tree.name)} {{", "  node [shape=circle, width=0.15, fixedsize=true];"]
    m = "m" if tree.multiplicity is None else str(tree.multiplicity)
    for v in tree.vertices:
        if v == EXC:
            lines.append(f"  {ids[v]} [label=\"\", style=filled, fillcolor=black, xlabel={_q(m)}];")
        else:
            lines.append(f"  {ids[v]} [label=\"\", xlabel={_q(v)}];")
    for v, p in tree.edges:
        pi = tree.vertices[v].pi
        label = f"{v} | {'?' if pi is None else pi} | {pi0[v]}"
        lines.append(f"  {ids[v]} -- {ids[p]} [label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dict(tree: BrauerTree) -> dict:
    pi0, offset = canonical_pi(tree)
    return {
        "name": tree.name,
        "tags": list(tree.tags),
        "pi0_offset": offset,
        "edges": [{"character": v, "toward": p, "pi": tree.vertices[v].pi, "pi0": pi0[v],
                   "degree": tree.vertices[v].degree} for v, p in tree.edges],
        "cyclic_order": {v: list(a) for v, a in tree.adjacency.items()},
    }
