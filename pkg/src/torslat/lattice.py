"""The complete lattice of torsion classes with its brick-labeled Hasse quiver.

Nodes are masks; arrows point from the larger class of a covering pair to the
smaller and carry the unique brick of the gap as label.  The same builder
produces the dual lattice of torsion-free classes (``side="torf"``) and the
relative lattice inside a wide subcategory (``within=``); joins, meets,
perpendiculars and extension closures are taken on the chosen side and
ambient throughout.
"""

import json
from dataclasses import dataclass

from . import subcat
from .errors import (
    DualityMismatch,
    LabelNotBrick,
    LabelNotUnique,
    LatticeBlowup,
    NotAnInterval,
)


@dataclass(frozen=True)
class HasseArrow:
    src: int
    dst: int
    label: int


@dataclass(frozen=True)
class Interval:
    bottom: int
    top: int


class TorsLattice:
    def __init__(self, cat, side, within, nodes, arrows):
        self.cat = cat
        self.side = side
        self.within = within
        self.nodes = nodes
        self.arrows = arrows
        self.node_index = {m: i for i, m in enumerate(nodes)}
        out = {i: [] for i in range(len(nodes))}
        into = {i: [] for i in range(len(nodes))}
        for a in arrows:
            out[a.src].append(a)
            into[a.dst].append(a)
        self.out_of = {i: tuple(v) for i, v in out.items()}
        self.into = {i: tuple(v) for i, v in into.items()}

    def __len__(self):
        return len(self.nodes)

    @property
    def ambient(self):
        return self.cat.full_mask if self.within is None else self.within

    @property
    def bottom_index(self):
        return self.node_index[frozenset()]

    @property
    def top_index(self):
        return self.node_index[self.ambient]

    def _gen(self, mask):
        gen = subcat.tors_gen if self.side == "tors" else subcat.torf_gen
        return gen(self.cat, mask, self.within)

    def name(self, i):
        return self.cat.mask_name(self.nodes[i])

    def leq(self, i, j):
        return self.nodes[i] <= self.nodes[j]

    def join(self, node_ids):
        mask = frozenset().union(*(self.nodes[i] for i in node_ids)) if node_ids else frozenset()
        return self.node_index[self._gen(mask)]

    def meet(self, node_ids):
        mask = self.ambient
        for i in node_ids:
            mask = mask & self.nodes[i]
        hit = self.node_index.get(mask)
        assert hit is not None, "meet of nodes left the lattice"
        return hit

    def interval(self, bottom, top):
        if not self.leq(bottom, top):
            raise NotAnInterval(
                f"{self.name(bottom)} is not contained in {self.name(top)}"
            )
        return Interval(bottom, top)

    def interval_nodes(self, iv):
        b, t = self.nodes[iv.bottom], self.nodes[iv.top]
        return [i for i, m in enumerate(self.nodes) if b <= m <= t]

    def all_intervals(self):
        for t in range(len(self.nodes)):
            for b in range(len(self.nodes)):
                if self.nodes[b] <= self.nodes[t]:
                    yield Interval(b, t)

    def upper_set(self, iv):
        """The top of the interval plus the interval nodes it covers."""
        members = {iv.top}
        for a in self.out_of[iv.top]:
            if self.nodes[iv.bottom] <= self.nodes[a.dst]:
                members.add(a.dst)
        return frozenset(members)

    def lower_set(self, iv):
        """The bottom of the interval plus the interval nodes covering it."""
        members = {iv.bottom}
        for a in self.into[iv.bottom]:
            if self.nodes[a.src] <= self.nodes[iv.top]:
                members.add(a.src)
        return frozenset(members)

    def labels_of(self, node_ids):
        """Labels of arrows with both endpoints in the given node set."""
        return frozenset(
            a.label for a in self.arrows if a.src in node_ids and a.dst in node_ids
        )

    def out_labels(self, i):
        return frozenset(a.label for a in self.out_of[i])

    def in_labels(self, i):
        return frozenset(a.label for a in self.into[i])

    def to_dot(self):
        cat = self.cat
        lines = [f"digraph {self.side} {{"]
        for mask in self.nodes:
            lines.append(f'  "{cat.mask_name(mask)}";')
        for a in self.arrows:
            dims = "".join(str(d) for d in cat.ind[a.label].dims)
            lines.append(
                f'  "{self.name(a.src)}" -> "{self.name(a.dst)}"'
                f' [label="{dims} #{a.label}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        doc = {
            "side": self.side,
            "nodes": [sorted(m) for m in self.nodes],
            "arrows": [[a.src, a.dst, a.label] for a in self.arrows],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _enumerate_nodes(cat, side, within, cfg):
    gen = subcat.tors_gen if side == "tors" else subcat.torf_gen
    amb = cat.full_mask if within is None else within
    nodes = {frozenset()}
    nodes.update(gen(cat, frozenset((i,)), within) for i in amb)
    frontier = list(nodes)
    while frontier:
        snapshot = sorted(nodes, key=lambda m: (len(m), sorted(m)))
        fresh = []
        for a in frontier:
            for b in snapshot:
                u = gen(cat, a | b, within)
                if u not in nodes:
                    nodes.add(u)
                    fresh.append(u)
                    if len(nodes) > cfg.node_budget:
                        raise LatticeBlowup(
                            f"more than {cfg.node_budget} classes"
                        )
        frontier = fresh
    return sorted(nodes, key=lambda m: (len(m), sorted(m)))


def _covers(nodes):
    n = len(nodes)
    pairs = []
    for t in range(n):
        below = [u for u in range(n) if nodes[u] < nodes[t]]
        for u in below:
            if not any(nodes[u] < nodes[z] for z in below if z != u):
                pairs.append((t, u))
    return pairs


def _label(cat, side, within, top_mask, bottom_mask):
    perp = subcat.perp_right if side == "tors" else subcat.perp_left
    gap = perp(cat, bottom_mask, within) & top_mask
    bricks = [s for s in sorted(gap) if cat.bricks[s]]
    if not bricks:
        raise LabelNotBrick(
            f"no brick between {cat.mask_name(bottom_mask)}"
            f" and {cat.mask_name(top_mask)}"
        )
    if len(bricks) > 1:
        raise LabelNotUnique(
            f"{len(bricks)} bricks between {cat.mask_name(bottom_mask)}"
            f" and {cat.mask_name(top_mask)}"
        )
    s = bricks[0]
    if subcat.filt(cat, frozenset((s,)), within) != gap:
        raise LabelNotBrick(
            f"brick {cat.names[s]} does not generate the gap over"
            f" {cat.mask_name(bottom_mask)}"
        )
    return s


def build_lattice(cat, side="tors", within=None, config=None):
    """Enumerate all classes of the chosen side and label the covering arrows.

    Completeness of the enumeration: every class is the join of the classes
    generated by its single members, so saturating pairwise joins of the
    single-generator seeds reaches everything.
    """
    cfg = config or cat.config
    nodes = _enumerate_nodes(cat, side, within, cfg)
    index = {m: i for i, m in enumerate(nodes)}
    arrows = []
    for t, u in _covers(nodes):
        s = _label(cat, side, within, nodes[t], nodes[u])
        arrows.append(HasseArrow(t, u, s))
    return TorsLattice(cat, side, within, tuple(nodes), tuple(sorted(
        arrows, key=lambda a: (a.src, a.dst)
    )))


def dual_correspondence(tors_lat, torf_lat):
    """Match each torsion class to its Hom-orthogonal torsion-free class.

    Returns (mapping, node_checks, arrow_checks): the node map as a list, and
    per-object (description, ok, witness) tuples for the bijection/order
    conditions and for every arrow's dual arrow with equal label.
    """
    cat = tors_lat.cat
    mapping = []
    node_checks = []
    for i, tmask in enumerate(tors_lat.nodes):
        fmask = subcat.perp_right(cat, tmask)
        hit = torf_lat.node_index.get(fmask)
        mapping.append(hit)
        ok = hit is not None
        node_checks.append(
            (
                f"node {tors_lat.name(i)}",
                ok,
                "" if ok else f"{cat.mask_name(fmask)} is not torsion-free",
            )
        )
    bijective = (
        sorted(x for x in mapping if x is not None) == list(range(len(torf_lat)))
        and len(mapping) == len(torf_lat)
    )
    node_checks.append(
        ("node bijection", bijective, "" if bijective else "map is not a bijection")
    )
    order_ok = all(
        (tors_lat.nodes[i] <= tors_lat.nodes[j])
        == (torf_lat.nodes[mapping[j]] <= torf_lat.nodes[mapping[i]])
        for i in range(len(tors_lat))
        for j in range(len(tors_lat))
        if mapping[i] is not None and mapping[j] is not None
    )
    node_checks.append(
        ("order reversal", order_ok, "" if order_ok else "inclusions not reversed")
    )
    torf_arrows = {(a.src, a.dst): a.label for a in torf_lat.arrows}
    arrow_checks = []
    for a in tors_lat.arrows:
        desc = f"arrow {tors_lat.name(a.src)}->{tors_lat.name(a.dst)}"
        if mapping[a.src] is None or mapping[a.dst] is None:
            arrow_checks.append((desc, False, "endpoint missing in dual"))
            continue
        dual = torf_arrows.get((mapping[a.dst], mapping[a.src]))
        if dual is None:
            arrow_checks.append((desc, False, "no dual arrow"))
        elif dual != a.label:
            arrow_checks.append(
                (desc, False, f"label {cat.names[dual]} != {cat.names[a.label]}")
            )
        else:
            arrow_checks.append((desc, True, ""))
    counts_ok = len(tors_lat.arrows) == len(torf_lat.arrows)
    arrow_checks.append(
        (
            "arrow count",
            counts_ok,
            "" if counts_ok else f"{len(tors_lat.arrows)} != {len(torf_lat.arrows)}",
        )
    )
    return mapping, node_checks, arrow_checks


def check_duality(tors_lat, torf_lat):
    """Raise DualityMismatch unless the label-preserving anti-isomorphism holds."""
    mapping, node_checks, arrow_checks = dual_correspondence(tors_lat, torf_lat)
    for desc, ok, witness in node_checks + arrow_checks:
        if not ok:
            raise DualityMismatch(f"{desc}: {witness}")
    return mapping
