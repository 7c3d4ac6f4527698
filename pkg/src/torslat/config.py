"""Budgets and bounds.

Every enumeration in the package is capped by one of these values.  Exceeding a
budget raises the matching ResourceError; results are never silently truncated.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Config:
    # largest total dimension admitted into the indecomposable catalog
    dim_bound: int = 8
    # cap on the number of basis paths of the algebra
    path_budget: int = 1024
    # cap on enumerated elements of a Hom or End space (iso tests, brick tests,
    # idempotent searches, morphism audits)
    iso_budget: int = 65536
    # cap on the product of per-vertex subspace counts in submodule enumeration
    subspace_budget: int = 1_000_000
    # cap on enumerated cocycles in all_extensions
    ext_budget: int = 65536
    # cap on lattice nodes
    node_budget: int = 20000
    # worker count for multi-algebra verification
    workers: int = 1

    def __post_init__(self):
        for name in ("dim_bound", "path_budget", "iso_budget", "subspace_budget",
                     "ext_budget", "node_budget", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def with_overrides(self, **kw):
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


DEFAULT_CONFIG = Config()
