"""Catalog of indecomposable modules with precomputed structure tables.

The catalog lists one representative per isomorphism class, certified closed
under quotients and pair extensions at the configured dimension bound.  The
tables (Hom dimensions, brick flags, subfactor pairs) turn every downstream
subcategory operator into finite index combinatorics on masks, where a mask
is a frozenset of catalog indices denoting the additive hull of its members.
"""

import itertools
import json
from collections import deque
from typing import NamedTuple

import numpy as np

from . import linalg, modrep
from .config import DEFAULT_CONFIG
from .errors import IsoSearchBlowup, NotClosed
from .quivalg import Arrow, Quiver, build_algebra, simple_module


def _letters(k):
    out = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        out = chr(ord("a") + r) + out
    return out


class HomProfile(NamedTuple):
    """Shape data of one nonzero morphism ray, scaling-invariant."""

    kernel: tuple
    image: tuple
    cokernel: tuple
    epi: bool
    mono: bool


class Catalog:
    """Immutable once built; all tables are index-based."""

    def __init__(self, algebra, config):
        self.algebra = algebra
        self.config = config
        self.ind = ()
        self.names = ()
        self.hom_dim = ()
        self.bricks = ()
        self.subfactors = ()
        self._key_index = {}
        self._decompose_cache = {}
        self._profile_cache = {}
        self._hom_elems_cache = {}
        self.op_cache = {}

    def __len__(self):
        return len(self.ind)

    @property
    def full_mask(self):
        return frozenset(range(len(self.ind)))

    @property
    def simple_indices(self):
        return tuple(i for i, m in enumerate(self.ind) if m.total_dim == 1)

    def hom_nonzero(self, i, j):
        return self.hom_dim[i][j] > 0

    def quotients(self, i):
        """Distinct decomposition multisets of all quotients of ind[i]."""
        return frozenset(q for _, q in self.subfactors[i])

    def index_of(self, module):
        key = module.key()
        hit = self._key_index.get(key)
        if hit is not None:
            return hit
        for i, rep in enumerate(self.ind):
            if rep.dims == module.dims and modrep.is_isomorphic(
                rep, module, self.config
            ):
                self._key_index[key] = i
                return i
        raise NotClosed(f"module with dims {module.dims} is not in the catalog")

    def decompose_indices(self, module):
        """Sorted index multiset of the indecomposable summands of a module."""
        key = module.key()
        hit = self._decompose_cache.get(key)
        if hit is None:
            parts = modrep.decompose(module, self.config)
            hit = tuple(sorted(self.index_of(s) for s in parts))
            self._decompose_cache[key] = hit
        return hit

    def hom_elements(self, i, j):
        """One morphism per ray of Hom(ind[i], ind[j]); empty when Hom vanishes."""
        hit = self._hom_elems_cache.get((i, j))
        if hit is None:
            x, y = self.ind[i], self.ind[j]
            p = self.algebra.prime
            basis = modrep.hom_basis(x, y)
            d = len(basis)
            hit = []
            if d:
                if linalg.ray_count(d, p) > self.config.iso_budget:
                    raise IsoSearchBlowup(
                        f"hom space ({i},{j}) has {p}^{d} elements,"
                        f" budget {self.config.iso_budget}"
                    )
                stacked = modrep._stack_basis([f.comps for f in basis], y.dims, x.dims)
                for coeffs in linalg.ray_representatives(d, p):
                    comps = modrep._comps_from_coeffs(coeffs, stacked, p)
                    hit.append(modrep.Morphism(x, y, comps, check=False))
            hit = tuple(hit)
            self._hom_elems_cache[(i, j)] = hit
        return hit

    def hom_profile(self, i, j):
        """HomProfile per nonzero ray of Hom(ind[i], ind[j]).

        Kernel/image/cokernel shapes are scaling-invariant, so one entry per
        ray covers the full punctured Hom space.
        """
        hit = self._profile_cache.get((i, j))
        if hit is None:
            entries = []
            for f in self.hom_elements(i, j):
                kic = modrep.kernel_image_cokernel(f)
                entries.append(
                    HomProfile(
                        kernel=self.decompose_indices(kic.kernel),
                        image=self.decompose_indices(kic.image),
                        cokernel=self.decompose_indices(kic.cokernel),
                        epi=kic.cokernel.total_dim == 0,
                        mono=kic.kernel.total_dim == 0,
                    )
                )
            hit = tuple(entries)
            self._profile_cache[(i, j)] = hit
        return hit

    def mask_name(self, mask):
        return "{" + ",".join(self.names[i] for i in sorted(mask)) + "}"


def enumerate_indecomposables(algebra, config=None):
    """Fixpoint closure from the simples under quotients and pair extensions.

    Raises NotClosed when a new isomorphism class appears above the dimension
    bound; for a representation-finite algebra with an adequate bound the
    closure stabilizes and is then re-verified from scratch.
    """
    cfg = config or DEFAULT_CONFIG
    reps = []
    buckets = {}

    def find(module):
        for i in buckets.get(module.dims, ()):
            if modrep.is_isomorphic(reps[i], module, cfg):
                return i
        return None

    def register(module):
        if module.is_zero or find(module) is not None:
            return False
        if module.total_dim > cfg.dim_bound:
            raise NotClosed(
                f"indecomposable with dims {module.dims} exceeds"
                f" dim_bound {cfg.dim_bound}"
            )
        reps.append(module)
        buckets.setdefault(module.dims, []).append(len(reps) - 1)
        return True

    pending = deque()

    def admit(module):
        for part in modrep.decompose(module, cfg):
            if register(part):
                k = len(reps) - 1
                pending.append(("quot", k))
                for other in range(len(reps)):
                    pending.append(("ext", k, other))
                    if other != k:
                        pending.append(("ext", other, k))

    for v in range(algebra.quiver.vertex_count):
        admit(simple_module(algebra, v))

    while pending:
        task = pending.popleft()
        if task[0] == "quot":
            x = reps[task[1]]
            for _, inc in modrep.submodules(x, cfg):
                admit(modrep.quotient_by(inc)[0])
        else:
            _, qi, ui = task
            for z in modrep.all_extensions(reps[qi], reps[ui], cfg):
                admit(z)

    order = sorted(
        range(len(reps)),
        key=lambda i: (reps[i].total_dim, reps[i].dims, reps[i].key()[1]),
    )
    cat = Catalog(algebra, cfg)
    cat.ind = tuple(reps[i] for i in order)
    for i, m in enumerate(cat.ind):
        cat._key_index[m.key()] = i

    counts = {}
    names = []
    for m in cat.ind:
        ds = "".join(str(d) for d in m.dims)
        names.append(ds + _letters(counts.get(ds, 0)))
        counts[ds] = counts.get(ds, 0) + 1
    cat.names = tuple(names)

    verify_closure(cat)
    return cat


def verify_closure(cat):
    """Re-derive every quotient and pair extension and demand catalog members."""
    cfg = cat.config
    for i, x in enumerate(cat.ind):
        for _, inc in modrep.submodules(x, cfg):
            cat.decompose_indices(modrep.quotient_by(inc)[0])
    for q, u in itertools.product(range(len(cat.ind)), repeat=2):
        for z in modrep.all_extensions(cat.ind[q], cat.ind[u], cfg):
            cat.decompose_indices(z)


def build_tables(cat):
    """Fill Hom dimensions, brick flags, and subfactor pairs; returns cat."""
    n = len(cat.ind)
    cat.hom_dim = tuple(
        tuple(len(modrep.hom_basis(cat.ind[i], cat.ind[j])) for j in range(n))
        for i in range(n)
    )
    cat.bricks = tuple(modrep.is_brick(m, cat.config) for m in cat.ind)
    table = []
    for i in range(n):
        pairs = set()
        for sub, inc in modrep.submodules(cat.ind[i], cat.config):
            u = cat.decompose_indices(sub)
            q = cat.decompose_indices(modrep.quotient_by(inc)[0])
            pairs.add((u, q))
        table.append(tuple(sorted(pairs)))
    cat.subfactors = tuple(table)
    return cat


def build_catalog(algebra, config=None):
    return build_tables(enumerate_indecomposables(algebra, config))


def to_json(cat):
    """Canonical JSON document; byte-exact round-trip with from_json."""
    q = cat.algebra.quiver
    doc = {
        "algebra": {
            "vertices": q.vertex_count,
            "arrows": [[a.name, a.source, a.target] for a in q.arrows],
            "relations": [list(r) for r in cat.algebra.relations],
            "prime": cat.algebra.prime,
        },
        "ind": [
            {"dims": list(m.dims), "mats": [mat.tolist() for mat in m.mats]}
            for m in cat.ind
        ],
        "names": list(cat.names),
        "tables": {
            "hom_dim": [list(row) for row in cat.hom_dim],
            "bricks": list(cat.bricks),
            "subfactors": [
                [[list(u), list(q)] for u, q in row] for row in cat.subfactors
            ],
        },
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def from_json(text, config=None):
    cfg = config or DEFAULT_CONFIG
    doc = json.loads(text)
    a = doc["algebra"]
    quiver = Quiver(
        a["vertices"], tuple(Arrow(n, s, t) for n, s, t in a["arrows"])
    )
    algebra = build_algebra(
        quiver, [tuple(r) for r in a["relations"]], a["prime"], cfg
    )
    cat = Catalog(algebra, cfg)

    def load_module(entry):
        dims = tuple(entry["dims"])
        mats = []
        for arrow, mat in zip(quiver.arrows, entry["mats"]):
            shape = (dims[arrow.target], dims[arrow.source])
            m = np.array(mat, dtype=np.int64).reshape(shape) if mat else linalg.zeros(*shape)
            mats.append(m)
        return modrep.Module(algebra, dims, tuple(mats))

    cat.ind = tuple(load_module(entry) for entry in doc["ind"])
    for i, m in enumerate(cat.ind):
        cat._key_index[m.key()] = i
    cat.names = tuple(doc["names"])
    t = doc["tables"]
    cat.hom_dim = tuple(tuple(row) for row in t["hom_dim"])
    cat.bricks = tuple(bool(b) for b in t["bricks"])
    cat.subfactors = tuple(
        tuple(sorted((tuple(u), tuple(q)) for u, q in row)) for row in t["subfactors"]
    )
    return cat
