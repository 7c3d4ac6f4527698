"""Structural verification harness over the bundled corpus.

Every identity the library promises is re-checked object by object: per
covering arrow, per node, per interval, per wide subcategory.  Output is one
line per checked object, PASS or FAIL with a witness, plus a two-line
summary.  Checks are read-only over immutable catalogs and lattices;
algebras can be verified in parallel and the report order is still fixed by
the input order.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

from . import subcat, widelab
from .catalog import build_catalog
from .errors import UnknownProperty, VerificationError, TheoremViolation, AuditFailed
from .lattice import build_lattice, dual_correspondence
from .quivalg import parse_algebra_text

CORPUS = ("a2", "a2r", "a3", "a3s", "a4", "ss2", "ppa2", "nak3")

PROPERTIES = (
    "brick-labels",
    "duality",
    "endpoint-arrows",
    "incident-semibricks",
    "reduction",
    "wide-detect",
    "lower-filt",
    "roundtrip",
    "hom-audit",
    "serre-mutation",
    "label-maps",
    "simples-out",
    "wide-serre",
    "serre-count",
    "widely-generated",
)


def corpus_text(name):
    return resources.files("torslat").joinpath(f"corpus/{name}.alg").read_text()


def load_corpus_algebra(name, config=None):
    return parse_algebra_text(corpus_text(name), config)


@dataclass(frozen=True)
class CheckResult:
    algebra: str
    prop: str
    obj: str
    ok: bool
    witness: str


class AlgebraContext:
    """Lazily built catalog, lattices and duality data for one algebra."""

    def __init__(self, name, algebra, config=None):
        self.name = name
        self.algebra = algebra
        self.config = config
        self._cat = None
        self._lat = None
        self._flat = None
        self._dual = None

    @property
    def cat(self):
        if self._cat is None:
            self._cat = build_catalog(self.algebra, self.config)
        return self._cat

    @property
    def lat(self):
        if self._lat is None:
            self._lat = build_lattice(self.cat, side="tors")
        return self._lat

    @property
    def flat(self):
        if self._flat is None:
            self._flat = build_lattice(self.cat, side="torf")
        return self._flat

    @property
    def dual(self):
        if self._dual is None:
            self._dual = dual_correspondence(self.lat, self.flat)
        return self._dual


def _interval_name(lat, iv):
    return f"[{lat.name(iv.bottom)},{lat.name(iv.top)}]"


def _require(cond, witness):
    if not cond:
        raise TheoremViolation(witness)


def _check_brick_labels(ctx):
    cat, lat = ctx.cat, ctx.lat
    for a in lat.arrows:
        def thunk(a=a):
            top, bottom = lat.nodes[a.src], lat.nodes[a.dst]
            gap = subcat.perp_right(cat, bottom) & top
            found = sorted(s for s in gap if cat.bricks[s])
            _require(found == [a.label], f"bricks in gap are {found}")
            _require(
                subcat.filt(cat, frozenset((a.label,))) == gap,
                "label does not build the gap",
            )
            _require(
                bottom == top & subcat.perp_left(cat, frozenset((a.label,))),
                "bottom is not the label's left orthogonal inside the top",
            )
            _require(
                top == subcat.tors_gen(cat, bottom | {a.label}),
                "bottom plus label does not regenerate the top",
            )
        yield f"{lat.name(a.src)}->{lat.name(a.dst)}", thunk


def _check_duality(ctx):
    _, node_checks, arrow_checks = ctx.dual
    for desc, ok, witness in node_checks + arrow_checks:
        def thunk(ok=ok, witness=witness):
            _require(ok, witness)
        yield desc.replace(" ", ":"), thunk


def _check_endpoint_arrows(ctx):
    cat, lat = ctx.cat, ctx.lat

    def into_bottom():
        got = {
            (a.src, a.label) for a in lat.into[lat.bottom_index]
        }
        want = {
            (lat.node_index[subcat.filt(cat, frozenset((s,)))], s)
            for s in cat.simple_indices
        }
        _require(got == want, f"arrows into the zero class: {sorted(got)}")

    def out_of_top():
        labels = lat.out_labels(lat.top_index)
        _require(
            labels == frozenset(cat.simple_indices)
            and len(lat.out_of[lat.top_index]) == len(cat.simple_indices),
            f"labels out of the full class: {cat.mask_name(labels)}",
        )

    yield "into-bottom", into_bottom
    yield "out-of-top", out_of_top


def _check_incident_semibricks(ctx):
    cat, lat = ctx.cat, ctx.lat
    for i in range(len(lat)):
        def thunk(i=i):
            for labels in (lat.in_labels(i), lat.out_labels(i)):
                _require(
                    subcat.is_semibrick(cat, labels),
                    f"{cat.mask_name(labels)} is not a semibrick",
                )
        yield lat.name(i), thunk


def _check_wide_detect(ctx):
    lat = ctx.lat
    for iv in lat.all_intervals():
        def thunk(iv=iv):
            widelab.is_wide_interval(lat, iv, "all")
        yield _interval_name(lat, iv), thunk


def _check_lower_filt(ctx):
    cat, lat = ctx.cat, ctx.lat
    for iv in lat.all_intervals():
        def thunk(iv=iv):
            report = widelab.is_wide_interval(lat, iv, "all")
            if not report.join:
                return
            rebuilt = subcat.filt(cat, lat.labels_of(lat.lower_set(iv)))
            _require(
                rebuilt == report.wide_mask,
                f"lower labels build {cat.mask_name(rebuilt)} instead of"
                f" {cat.mask_name(report.wide_mask)}",
            )
        yield _interval_name(lat, iv), thunk


def _check_reduction(ctx):
    lat = ctx.lat
    for iv in lat.all_intervals():
        if not widelab.is_wide_interval(lat, iv, "direct").wide:
            continue
        def thunk(iv=iv):
            widelab.reduce_interval(lat, iv)
        yield _interval_name(lat, iv), thunk


def _check_roundtrip(ctx):
    cat, lat = ctx.cat, ctx.lat
    for w in widelab.enumerate_wide_subcats(cat):
        def thunk(w=w):
            node = lat.node_index.get(subcat.tors_gen(cat, w))
            _require(node is not None, "generated class is not a torsion class")
            got = widelab.left_wide(lat, node)
            _require(got == w, f"came back as {cat.mask_name(got)}")
        yield cat.mask_name(w), thunk


def _check_hom_audit(ctx):
    cat, lat = ctx.cat, ctx.lat
    for t in range(len(lat)):
        wl = widelab.left_wide(lat, t)
        t_mask = lat.nodes[t]
        for w in subcat.serre_list(cat, wl):
            def thunk(t_mask=t_mask, w=w):
                fw = subcat.torf_gen(cat, w)
                for x in sorted(t_mask):
                    for y in sorted(fw):
                        for prof in cat.hom_profile(x, y):
                            if set(prof.image) - w:
                                raise AuditFailed(
                                    f"image of a map {cat.names[x]}->"
                                    f"{cat.names[y]} leaves {cat.mask_name(w)}"
                                )
                            if set(prof.kernel) - t_mask:
                                raise AuditFailed(
                                    f"kernel of a map {cat.names[x]}->"
                                    f"{cat.names[y]} leaves the class"
                                )
            yield f"{cat.mask_name(t_mask)}|{cat.mask_name(w)}", thunk


def _check_serre_mutation(ctx):
    cat, lat = ctx.cat, ctx.lat
    for t in range(len(lat)):
        for w in subcat.serre_list(cat, widelab.left_wide(lat, t)):
            def thunk(t=t, w=w):
                widelab.serre_mutation(lat, t, w)
            yield f"{lat.name(t)}|{cat.mask_name(w)}", thunk


def _check_label_maps(ctx):
    cat, lat = ctx.cat, ctx.lat
    for a in lat.arrows:
        def thunk(a=a):
            t_mask = lat.nodes[a.src]
            for x in sorted(t_mask):
                for prof in cat.hom_profile(x, a.label):
                    if not prof.epi:
                        raise AuditFailed(
                            f"a nonzero map {cat.names[x]}->"
                            f"{cat.names[a.label]} is not epic"
                        )
                    if set(prof.kernel) - t_mask:
                        raise AuditFailed(
                            f"kernel of a map {cat.names[x]}->"
                            f"{cat.names[a.label]} leaves the class"
                        )
        yield f"{lat.name(a.src)}->{lat.name(a.dst)}", thunk


def _check_simples_out(ctx):
    cat, lat = ctx.cat, ctx.lat
    for t in range(len(lat)):
        def thunk(t=t):
            got = subcat.simples_of_wide(cat, widelab.left_wide(lat, t))
            _require(
                got == lat.out_labels(t),
                f"wide simples {cat.mask_name(got)} against labels"
                f" {cat.mask_name(lat.out_labels(t))}",
            )
        yield lat.name(t), thunk


def _check_wide_serre(ctx):
    cat, lat, flat = ctx.cat, ctx.lat, ctx.flat
    for iv in lat.all_intervals():
        def thunk(iv=iv):
            report = widelab.is_wide_interval(lat, iv, "all")
            w = report.wide_mask
            via_serre = w in subcat.serre_list(cat, widelab.left_wide(lat, iv.top))
            fnode = flat.node_index[subcat.perp_right(cat, lat.nodes[iv.bottom])]
            via_sides = w == (
                widelab.right_wide(flat, fnode) & widelab.left_wide(lat, iv.top)
            )
            _require(
                report.wide == via_serre == via_sides,
                f"wide={report.wide} serre={via_serre} sides={via_sides}",
            )
        yield _interval_name(lat, iv), thunk


def _check_serre_count(ctx):
    lat = ctx.lat
    for t in range(len(lat)):
        def thunk(t=t):
            widelab.wide_intervals_with_top(lat, t)
        yield lat.name(t), thunk


def _check_widely_generated(ctx):
    lat = ctx.lat
    for t in range(len(lat)):
        def thunk(t=t):
            report = widelab.is_widely_generated(lat, t)
            _require(report.holds, "node is not widely generated")
        yield lat.name(t), thunk


PROPERTY_FUNCS = {
    "brick-labels": _check_brick_labels,
    "duality": _check_duality,
    "endpoint-arrows": _check_endpoint_arrows,
    "incident-semibricks": _check_incident_semibricks,
    "reduction": _check_reduction,
    "wide-detect": _check_wide_detect,
    "lower-filt": _check_lower_filt,
    "roundtrip": _check_roundtrip,
    "hom-audit": _check_hom_audit,
    "serre-mutation": _check_serre_mutation,
    "label-maps": _check_label_maps,
    "simples-out": _check_simples_out,
    "wide-serre": _check_wide_serre,
    "serre-count": _check_serre_count,
    "widely-generated": _check_widely_generated,
}

assert set(PROPERTY_FUNCS) == set(PROPERTIES)


def validate_props(props):
    if props is None:
        return PROPERTIES
    chosen = tuple(props)
    for p in chosen:
        if p not in PROPERTY_FUNCS:
            raise UnknownProperty(
                f"unknown property {p!r}; valid: {', '.join(PROPERTIES)}"
            )
    return chosen


def verify_algebra(name, algebra, props=None, config=None):
    """All requested property checks for one algebra, in property order."""
    chosen = validate_props(props)
    ctx = AlgebraContext(name, algebra, config)
    results = []
    for prop in chosen:
        try:
            for obj, thunk in PROPERTY_FUNCS[prop](ctx):
                try:
                    thunk()
                    results.append(CheckResult(name, prop, obj, True, ""))
                except VerificationError as exc:
                    results.append(CheckResult(name, prop, obj, False, str(exc)))
        except VerificationError as exc:
            results.append(CheckResult(name, prop, "(setup)", False, str(exc)))
    return results


def run_verify(named_algebras, props=None, config=None, workers=1):
    """Verify several algebras, optionally in parallel, in input order."""
    chosen = validate_props(props)
    named_algebras = list(named_algebras)
    if workers > 1 and len(named_algebras) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(verify_algebra, name, alg, chosen, config)
                for name, alg in named_algebras
            ]
            batches = [f.result() for f in futures]
    else:
        batches = [
            verify_algebra(name, alg, chosen, config)
            for name, alg in named_algebras
        ]
    results = [r for batch in batches for r in batch]
    return results


def format_report(results):
    lines = []
    failures = 0
    for r in results:
        if r.ok:
            lines.append(f"PASS {r.algebra} {r.prop} {r.obj}")
        else:
            failures += 1
            lines.append(f"FAIL {r.algebra} {r.prop} {r.obj} :: {r.witness}")
    lines.append(f"checks run: {len(results)}")
    lines.append(f"failures: {failures}")
    return "\n".join(lines) + "\n", failures
