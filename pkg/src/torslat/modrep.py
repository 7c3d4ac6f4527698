"""Finite-dimensional modules over a monomial path algebra, and their morphisms.

A Module stores one dimension per vertex and one matrix per arrow (shape
dims[target] x dims[source], entries in [0, p)).  A Morphism stores one matrix
per vertex intertwining the arrow actions.  All computations are exact over
F_p and deterministic.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .config import DEFAULT_CONFIG
from .errors import DecomposeBlowup, IsoSearchBlowup, SubspaceBlowup


class Module:
    def __init__(self, algebra, dims, mats, check=True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.mats = tuple(linalg.normalize(m, algebra.prime) for m in mats)
        if check:
            self._validate()

    def _validate(self):
        q = self.algebra.quiver
        if len(self.dims) != q.vertex_count or any(d < 0 for d in self.dims):
            raise ValueError("dimension vector does not match the quiver")
        if len(self.mats) != len(q.arrows):
            raise ValueError("need one matrix per arrow")
        for a, m in zip(q.arrows, self.mats):
            if m.shape != (self.dims[a.target], self.dims[a.source]):
                raise ValueError(f"matrix for arrow {a.name!r} has shape {m.shape}")
        for rel in self.algebra.relations:
            if np.any(self.evaluate_path(rel)):
                raise ValueError(f"relation {rel!r} does not annihilate the module")

    def evaluate_path(self, names):
        """The composite matrix of a path, first arrow applied first."""
        q = self.algebra.quiver
        idx = self.algebra.arrow_index
        m = self.mats[idx[names[0]]]
        for name in names[1:]:
            m = linalg.matmul(self.mats[idx[name]], m, self.algebra.prime)
        return m

    @property
    def total_dim(self):
        return sum(self.dims)

    @property
    def is_zero(self):
        return self.total_dim == 0

    def key(self):
        """Canonical bytes identity; equal keys mean equal modules on the nose."""
        return (self.dims, b"".join(m.tobytes() for m in self.mats))

    def __repr__(self):
        return f"Module(dims={self.dims})"


def zero_module(algebra):
    nv = algebra.quiver.vertex_count
    dims = (0,) * nv
    mats = tuple(linalg.zeros(0, 0) for _ in algebra.quiver.arrows)
    return Module(algebra, dims, mats, check=False)


def direct_sum(*modules):
    """Block-diagonal sum, summand coordinates in argument order."""
    algebra = modules[0].algebra
    dims = tuple(sum(m.dims[v] for m in modules) for v in range(algebra.quiver.vertex_count))
    mats = []
    for ai, a in enumerate(algebra.quiver.arrows):
        m = linalg.zeros(dims[a.target], dims[a.source])
        r = c = 0
        for mod in modules:
            rr, cc = mod.dims[a.target], mod.dims[a.source]
            m[r : r + rr, c : c + cc] = mod.mats[ai]
            r += rr
            c += cc
        mats.append(m)
    return Module(algebra, dims, tuple(mats), check=False)


class Morphism:
    def __init__(self, source, target, comps, check=True):
        self.source = source
        self.target = target
        self.comps = tuple(linalg.normalize(c, source.algebra.prime) for c in comps)
        if check:
            self._validate()

    def _validate(self):
        if self.source.algebra is not self.target.algebra:
            raise ValueError("source and target live over different algebras")
        q = self.source.algebra.quiver
        p = self.source.algebra.prime
        for v in range(q.vertex_count):
            if self.comps[v].shape != (self.target.dims[v], self.source.dims[v]):
                raise ValueError(f"component at vertex {v} has shape {self.comps[v].shape}")
        for ai, a in enumerate(q.arrows):
            lhs = linalg.matmul(self.target.mats[ai], self.comps[a.source], p)
            rhs = linalg.matmul(self.comps[a.target], self.source.mats[ai], p)
            if np.any(lhs != rhs):
                raise ValueError(f"components do not intertwine arrow {a.name!r}")

    @property
    def is_zero(self):
        return all(not c.size or not np.any(c) for c in self.comps)

    def compose(self, other):
        """self after other."""
        p = self.source.algebra.prime
        comps = tuple(
            linalg.matmul(s, o, p) for s, o in zip(self.comps, other.comps)
        )
        return Morphism(other.source, self.target, comps, check=False)

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"


def identity_morphism(module):
    comps = tuple(linalg.eye(d) for d in module.dims)
    return Morphism(module, module, comps, check=False)


def _comps_from_coeffs(coeffs, stacked, p):
    return tuple(
        (np.tensordot(coeffs, s, axes=1) % p) if s.shape[0] else np.zeros(s.shape[1:], dtype=np.int64)
        for s in stacked
    )


def _stack_basis(basis_comps, dims_t, dims_s):
    """Per-vertex (d, rows, cols) stacks of a hom-space basis for fast combination."""
    nv = len(dims_t)
    out = []
    for v in range(nv):
        if basis_comps:
            out.append(np.stack([b[v] for b in basis_comps]))
        else:
            out.append(np.zeros((0, dims_t[v], dims_s[v]), dtype=np.int64))
    return out


def hom_basis(x, y):
    """Deterministic basis of Hom(x, y), solved from the intertwining equations.

    Unknowns are the entries of the per-vertex components in row-major order;
    each arrow a: u -> v contributes the equation Y_a f_u = f_v X_a.
    """
    algebra = x.algebra
    p = algebra.prime
    q = algebra.quiver
    nv = q.vertex_count
    sizes = [y.dims[v] * x.dims[v] for v in range(nv)]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    ncols = offsets[-1]
    rows = []
    for ai, a in enumerate(q.arrows):
        u, v = a.source, a.target
        nrows = y.dims[v] * x.dims[u]
        if nrows == 0:
            continue
        block = linalg.zeros(nrows, ncols)
        if sizes[u]:
            # vec(Y_a f_u) = (Y_a kron I) vec(f_u), row-major vec
            block[:, offsets[u] : offsets[u + 1]] = np.kron(
                y.mats[ai], linalg.eye(x.dims[u])
            ) % p
        if sizes[v]:
            block[:, offsets[v] : offsets[v + 1]] = (
                block[:, offsets[v] : offsets[v + 1]]
                - np.kron(linalg.eye(y.dims[v]), x.mats[ai].T)
            ) % p
        rows.append(block)
    if rows:
        system = np.concatenate(rows, axis=0)
    else:
        system = linalg.zeros(0, ncols)
    null = linalg.nullspace(system, p)
    out = []
    for k in range(null.shape[1]):
        vec = null[:, k]
        comps = tuple(
            vec[offsets[v] : offsets[v + 1]].reshape(y.dims[v], x.dims[v])
            for v in range(nv)
        )
        out.append(Morphism(x, y, comps, check=False))
    return out


@dataclass
class KernelImageCokernel:
    kernel: Module
    kernel_inclusion: Morphism
    image: Module
    image_inclusion: Morphism
    image_projection: Morphism
    cokernel: Module
    cokernel_projection: Morphism


def kernel_image_cokernel(f):
    """Vertex-wise kernel, image, and cokernel with their induced arrow actions.

    Per vertex, dim kernel + dim image equals the source dimension, and the
    cokernel dimension is the target dimension minus the image dimension.
    """
    x, y = f.source, f.target
    algebra = x.algebra
    p = algebra.prime
    q = algebra.quiver
    nv = q.vertex_count

    kbases = [linalg.nullspace(f.comps[v], p) for v in range(nv)]
    ibases = [linalg.column_space(f.comps[v], p) for v in range(nv)]
    projs, sects = zip(*(linalg.complement_projection(ibases[v], p) for v in range(nv)))

    for v in range(nv):
        assert kbases[v].shape[1] + ibases[v].shape[1] == x.dims[v]

    kdims = tuple(b.shape[1] for b in kbases)
    idims = tuple(b.shape[1] for b in ibases)
    cdims = tuple(y.dims[v] - idims[v] for v in range(nv))

    kmats, imats, cmats = [], [], []
    for ai, a in enumerate(q.arrows):
        u, v = a.source, a.target
        km = linalg.solve(kbases[v], linalg.matmul(x.mats[ai], kbases[u], p), p)
        assert km is not None, "kernel is not arrow-stable"
        kmats.append(km)
        im = linalg.solve(ibases[v], linalg.matmul(y.mats[ai], ibases[u], p), p)
        assert im is not None, "image is not arrow-stable"
        imats.append(im)
        cm = linalg.matmul(projs[v], linalg.matmul(y.mats[ai], sects[u], p), p)
        cmats.append(cm)

    kernel = Module(algebra, kdims, tuple(kmats), check=False)
    image = Module(algebra, idims, tuple(imats), check=False)
    cokernel = Module(algebra, cdims, tuple(cmats), check=False)

    k_in = Morphism(kernel, x, tuple(kbases), check=False)
    i_in = Morphism(image, y, tuple(ibases), check=False)
    iproj_comps = []
    for v in range(nv):
        c = linalg.solve(ibases[v], f.comps[v], p)
        assert c is not None
        iproj_comps.append(c)
    i_pr = Morphism(x, image, tuple(iproj_comps), check=False)
    c_pr = Morphism(y, cokernel, tuple(projs), check=False)
    return KernelImageCokernel(kernel, k_in, image, i_in, i_pr, cokernel, c_pr)


def quotient_by(inclusion):
    """Cokernel of a submodule inclusion, with its projection."""
    kic = kernel_image_cokernel(inclusion)
    return kic.cokernel, kic.cokernel_projection


def morphism_power(f, n):
    g = f
    for _ in range(n - 1):
        g = g.compose(f)
    return g


def _is_idempotent(comps, p):
    return all(
        not c.size or not np.any((c @ c) % p != c) for c in comps
    )


def _is_identity(comps):
    return all(
        c.shape[0] == c.shape[1] and np.array_equal(c, linalg.eye(c.shape[0]))
        for c in comps
    )


def decompose(x, config=None):
    """Split x into indecomposable summands (empty list for the zero module).

    Strategy: a one-dimensional endomorphism ring proves indecomposability at
    once.  Otherwise high powers of the endomorphism basis elements are tried
    for a kernel/image splitting, and if none splits, the full endomorphism
    space is enumerated for a nontrivial idempotent; finding none proves
    indecomposability.  Raises DecomposeBlowup when that enumeration would
    pass the iso budget.
    """
    cfg = config or DEFAULT_CONFIG
    if x.is_zero:
        return []
    p = x.algebra.prime
    end = hom_basis(x, x)
    d = len(end)
    if d == 1:
        return [x]
    n = x.total_dim

    for f in end:
        g = morphism_power(f, n)
        kic = kernel_image_cokernel(g)
        kd = kic.kernel.total_dim
        if 0 < kd < n:
            return decompose(kic.kernel, cfg) + decompose(kic.image, cfg)

    if p ** d > cfg.iso_budget:
        raise DecomposeBlowup(
            f"endomorphism space has {p}^{d} elements, budget {cfg.iso_budget}"
        )
    stacked = _stack_basis([f.comps for f in end], x.dims, x.dims)
    for coeffs in itertools.product(range(p), repeat=d):
        if not any(coeffs):
            continue
        cvec = np.array(coeffs, dtype=np.int64)
        comps = _comps_from_coeffs(cvec, stacked, p)
        if _is_identity(comps):
            continue
        if not _is_idempotent(comps, p):
            continue
        e = Morphism(x, x, comps, check=False)
        kic = kernel_image_cokernel(e)
        assert 0 < kic.kernel.total_dim < n
        return decompose(kic.kernel, cfg) + decompose(kic.image, cfg)
    return [x]


def is_isomorphic(x, y, config=None):
    """Exhaustive search for an invertible morphism, one candidate per ray."""
    cfg = config or DEFAULT_CONFIG
    if x.dims != y.dims:
        return False
    if x.total_dim == 0:
        return True
    p = x.algebra.prime
    hom = hom_basis(x, y)
    d = len(hom)
    if d == 0:
        return False
    if linalg.ray_count(d, p) > cfg.iso_budget:
        raise IsoSearchBlowup(
            f"hom space has {p}^{d} elements, budget {cfg.iso_budget}"
        )
    stacked = _stack_basis([f.comps for f in hom], y.dims, x.dims)
    for coeffs in linalg.ray_representatives(d, p):
        comps = _comps_from_coeffs(coeffs, stacked, p)
        if all(linalg.is_invertible(c, p) for c in comps):
            return True
    return False


def is_brick(x, config=None):
    """True when every nonzero endomorphism is invertible."""
    cfg = config or DEFAULT_CONFIG
    if x.is_zero:
        raise ValueError("the zero module is not a brick candidate")
    p = x.algebra.prime
    end = hom_basis(x, x)
    d = len(end)
    if d == 1:
        return True
    if linalg.ray_count(d, p) > cfg.iso_budget:
        raise IsoSearchBlowup(
            f"endomorphism space has {p}^{d} elements, budget {cfg.iso_budget}"
        )
    stacked = _stack_basis([f.comps for f in end], x.dims, x.dims)
    for coeffs in linalg.ray_representatives(d, p):
        comps = _comps_from_coeffs(coeffs, stacked, p)
        if not all(linalg.is_invertible(c, p) for c in comps):
            return False
    return True


def submodules(x, config=None):
    """All arrow-stable subspace tuples, as (submodule, inclusion) pairs.

    Enumerates the product of the per-vertex subspace lists (canonical RREF
    order) and keeps the stable combinations; includes zero and x itself.
    Raises SubspaceBlowup when the product would pass the subspace budget.
    """
    cfg = config or DEFAULT_CONFIG
    algebra = x.algebra
    p = algebra.prime
    q = algebra.quiver
    nv = q.vertex_count
    total = 1
    for d in x.dims:
        total *= linalg.subspace_count(d, p)
    if total > cfg.subspace_budget:
        raise SubspaceBlowup(
            f"{total} subspace tuples to scan, budget {cfg.subspace_budget}"
        )
    per_vertex = [linalg.all_subspace_row_bases(d, p) for d in x.dims]
    out = []
    for combo in itertools.product(*per_vertex):
        bases = [b.T for b in combo]
        mats = []
        ok = True
        for ai, a in enumerate(q.arrows):
            moved = linalg.matmul(x.mats[ai], bases[a.source], p)
            sol = linalg.solve(bases[a.target], moved, p)
            if sol is None:
                ok = False
                break
            mats.append(sol)
        if not ok:
            continue
        sub = Module(algebra, tuple(b.shape[1] for b in bases), tuple(mats), check=False)
        out.append((sub, Morphism(sub, x, tuple(bases), check=False)))
    return out


def all_extensions(q_mod, u_mod, config=None):
    """Middle terms Z of exact sequences 0 -> u_mod -> Z -> q_mod -> 0, up to iso.

    Z is assembled block upper-triangularly, u_mod coordinates first; the
    off-diagonal blocks form the solution space of the relation constraints
    and are enumerated exhaustively, then deduplicated by module isomorphism.
    The split extension is always first.  Raises SubspaceBlowup when the
    cocycle space would pass the ext budget.
    """
    cfg = config or DEFAULT_CONFIG
    algebra = q_mod.algebra
    p = algebra.prime
    qv = algebra.quiver
    arrow_sizes = [
        u_mod.dims[a.target] * q_mod.dims[a.source] for a in qv.arrows
    ]
    offsets = [0]
    for s in arrow_sizes:
        offsets.append(offsets[-1] + s)
    ncols = offsets[-1]

    rows = []
    idx = algebra.arrow_index
    for rel in algebra.relations:
        steps = [qv.arrow(n) for n in rel]
        nrows = u_mod.dims[steps[-1].target] * q_mod.dims[steps[0].source]
        if nrows == 0:
            continue
        block = linalg.zeros(nrows, ncols)
        for i, a in enumerate(steps):
            ai = idx[a.name]
            if arrow_sizes[ai] == 0:
                continue
            suffix = linalg.eye(u_mod.dims[a.target])
            for b in steps[i + 1 :]:
                suffix = linalg.matmul(u_mod.mats[idx[b.name]], suffix, p)
            prefix = linalg.eye(q_mod.dims[a.source])
            for b in reversed(steps[:i]):
                prefix = linalg.matmul(prefix, q_mod.mats[idx[b.name]], p)
            coeff = np.kron(suffix, prefix.T) % p
            block[:, offsets[ai] : offsets[ai + 1]] = (
                block[:, offsets[ai] : offsets[ai + 1]] + coeff
            ) % p
        rows.append(block)
    system = np.concatenate(rows, axis=0) if rows else linalg.zeros(0, ncols)
    null = linalg.nullspace(system, p)
    s = null.shape[1]
    if p ** s > cfg.ext_budget:
        raise SubspaceBlowup(f"{p}^{s} cocycles to scan, budget {cfg.ext_budget}")

    dims = tuple(u + q for u, q in zip(u_mod.dims, q_mod.dims))
    reps = []
    for coeffs in itertools.product(range(p), repeat=s):
        vec = (null @ np.array(coeffs, dtype=np.int64)) % p if s else linalg.zeros(ncols, 1)[:, 0]
        mats = []
        for ai, a in enumerate(qv.arrows):
            m = linalg.zeros(dims[a.target], dims[a.source])
            ud_t, ud_s = u_mod.dims[a.target], u_mod.dims[a.source]
            m[:ud_t, :ud_s] = u_mod.mats[ai]
            m[ud_t:, ud_s:] = q_mod.mats[ai]
            if arrow_sizes[ai]:
                cblock = vec[offsets[ai] : offsets[ai + 1]].reshape(
                    u_mod.dims[a.target], q_mod.dims[a.source]
                )
                m[:ud_t, ud_s:] = cblock
            mats.append(m)
        z = Module(algebra, dims, tuple(mats))
        if not any(is_isomorphic(z, r, cfg) for r in reps):
            reps.append(z)
    return reps
