"""Subcategory operators on catalog masks.

A mask (frozenset of catalog indices) denotes the additive hull of its
members.  Every operator takes the catalog first and admits an optional
``within`` mask restricting the ambient category to a wide subcategory: the
closure then only uses subobjects/quotients/extensions whose pieces stay
inside ``within``.  With ``within=None`` the ambient is the whole module
category.

The extension-closure operator ``filt`` works pairwise on the subfactor
table.  That computes the smallest extension-closed summand-closed class
containing the input, which agrees with iterated-extension closure on every
input this package feeds it (quotient-closed masks, subobject-closed masks,
semibricks); arbitrary masks may have a larger non-summand-closed closure
that masks cannot denote.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg, modrep
from .errors import NotWide


def _cached(cat, key, fn):
    hit = cat.op_cache.get(key)
    if hit is None:
        hit = fn()
        cat.op_cache[key] = hit
    return hit


def _ambient(cat, within):
    return cat.full_mask if within is None else within


def fac(cat, members, within=None):
    """Closure under quotients (within: quotients by subobjects of ``within``)."""

    def run():
        out = set(members)
        for i in members:
            for u, q in cat.subfactors[i]:
                if within is None or all(k in within for k in u):
                    out.update(q)
        return frozenset(out)

    return _cached(cat, ("fac", members, within), run)


def sub_cl(cat, members, within=None):
    """Closure under subobjects (within: subobjects lying in ``within``)."""

    def run():
        out = set(members)
        for i in members:
            for u, q in cat.subfactors[i]:
                if within is None or all(k in within for k in u):
                    out.update(u)
        return frozenset(out)

    return _cached(cat, ("sub", members, within), run)


def filt(cat, members, within=None):
    """Least summand-closed extension-closed mask containing the input."""

    def run():
        amb = _ambient(cat, within)
        cur = set(members)
        outside = [j for j in sorted(amb) if j not in cur]
        changed = True
        while changed:
            changed = False
            remaining = []
            for j in outside:
                hit = False
                for u, q in cat.subfactors[j]:
                    # (0, X) and (X, 0) encode trivial chains, not extensions
                    if not u or not q:
                        continue
                    if all(k in cur for k in u) and all(k in cur for k in q):
                        hit = True
                        break
                if hit:
                    cur.add(j)
                    changed = True
                else:
                    remaining.append(j)
            outside = remaining
        return frozenset(cur)

    return _cached(cat, ("filt", members, within), run)


def perp_right(cat, members, within=None):
    """Objects receiving no nonzero map from any member."""
    amb = _ambient(cat, within)
    return frozenset(
        j for j in amb if all(cat.hom_dim[i][j] == 0 for i in members)
    )


def perp_left(cat, members, within=None):
    """Objects sending no nonzero map to any member."""
    amb = _ambient(cat, within)
    return frozenset(
        j for j in amb if all(cat.hom_dim[j][i] == 0 for i in members)
    )


def tors_gen(cat, members, within=None):
    """Smallest torsion class containing the mask: filt after fac."""
    return filt(cat, fac(cat, members, within), within)


def torf_gen(cat, members, within=None):
    """Smallest torsion-free class containing the mask: filt after sub_cl."""
    return filt(cat, sub_cl(cat, members, within), within)


def star(cat, left, right):
    """Members that are an extension of a ``right`` part by a ``left`` part.

    Exact as a class comparison whenever the true extension class is
    summand-closed, which holds at every call site in this package (both
    sides are then torsion classes or wide subcategories).
    """

    def run():
        out = set()
        for j in range(len(cat.ind)):
            for u, q in cat.subfactors[j]:
                if all(k in left for k in u) and all(k in right for k in q):
                    out.add(j)
                    break
        return frozenset(out)

    return _cached(cat, ("star", left, right), run)


def is_torsion_class(cat, members, within=None):
    return (
        fac(cat, members, within) == members
        and filt(cat, members, within) == members
    )


def is_torsion_free_class(cat, members, within=None):
    return (
        sub_cl(cat, members, within) == members
        and filt(cat, members, within) == members
    )


def is_semibrick(cat, members):
    """All members bricks, pairwise Hom-orthogonal in both directions."""
    for i in members:
        if not cat.bricks[i]:
            return False
        for j in members:
            if i != j and cat.hom_dim[i][j] != 0:
                return False
    return True


def candidate_simples(cat, members):
    """Members with no nonzero proper subobject built from the mask."""
    out = set()
    for i in members:
        proper = any(
            u and q and all(k in members for k in u)
            for u, q in cat.subfactors[i]
        )
        if not proper:
            out.add(i)
    return frozenset(out)


def is_wide(cat, members):
    """Wide = abelian exact subcategory; tested via its simple objects.

    The candidate simples must form a semibrick whose extension closure
    recovers the mask; both directions of that bijection are what wideness
    amounts to for summand-closed classes.
    """

    def run():
        s = candidate_simples(cat, members)
        return is_semibrick(cat, s) and filt(cat, s) == members

    return _cached(cat, ("wide", members), run)


def simples_of_wide(cat, members):
    if not is_wide(cat, members):
        raise NotWide(f"{cat.mask_name(members)} is not wide")
    return candidate_simples(cat, members)


def serre_list(cat, members):
    """All Serre subcategories of a wide mask, one per subset of its simples.

    Deterministic order: by subset size, then sorted index tuple.
    """
    simples = sorted(simples_of_wide(cat, members))
    subsets = [
        frozenset(c)
        for r in range(len(simples) + 1)
        for c in itertools.combinations(simples, r)
    ]
    return [filt(cat, s, within=members) for s in subsets]


def canonical_sequence(cat, module, t_mask):
    """Split a module along a torsion class: (torsion part, torsion-free part).

    The torsion part is the sum of the images of all maps from members of the
    class; the quotient receives no nonzero map from the class.
    """
    if not is_torsion_class(cat, t_mask):
        raise ValueError("canonical_sequence needs a torsion class")
    algebra = module.algebra
    p = algebra.prime
    nv = algebra.quiver.vertex_count
    cols = [[] for _ in range(nv)]
    for i in sorted(t_mask):
        for f in modrep.hom_basis(cat.ind[i], module):
            for v in range(nv):
                cols[v].append(f.comps[v])
    bases = []
    for v in range(nv):
        if cols[v]:
            stacked = linalg.normalize(np.concatenate(cols[v], axis=1), p)
            bases.append(linalg.column_space(stacked, p))
        else:
            bases.append(linalg.zeros(module.dims[v], 0))
    mats = []
    for ai, a in enumerate(algebra.quiver.arrows):
        moved = linalg.matmul(module.mats[ai], bases[a.source], p)
        sol = linalg.solve(bases[a.target], moved, p)
        assert sol is not None, "trace must be arrow-stable"
        mats.append(sol)
    tpart = modrep.Module(
        algebra, tuple(b.shape[1] for b in bases), tuple(mats), check=False
    )
    inclusion = modrep.Morphism(tpart, module, tuple(bases), check=False)
    fpart, _ = modrep.quotient_by(inclusion)
    return tpart, fpart


@dataclass(frozen=True)
class TorsionPairWitness:
    """A torsion class with its Hom-orthogonal complement."""

    torsion: frozenset
    free: frozenset

    def valid(self, cat):
        return self.free == perp_right(cat, self.torsion) and (
            self.torsion == perp_left(cat, self.free)
        )
