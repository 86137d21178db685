"""Executable checks for the minor-operation lemmas and the graph duality bound.

Every ``check_*`` function validates its preconditions (raising
:class:`PreconditionError` when they fail), measures the quantities the
statement talks about, and returns a :class:`VerificationReport`.  A report
with ``passed=False`` on a precondition-satisfying instance is a
counterexample to the statement or, far more likely, a bug here.

``F`` arguments may be any iterable of edge ids or an :class:`EdgeSubset`.
Dual edges keep the primal edge id, so ``F*`` is ``F`` read in the dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import formats
from .decomposition import dual_decomposition, splits, width
from .embedding import EmbeddedGraph, dual, euler_genus
from .errors import PreconditionError
from .graph import Multigraph, component_count, edge_set_connected, is_bridge
from .measures import border, circuit_rank, cycle_basis, delta_measure, mu, mu_measure, rank
from .report import VerificationReport
from .solver import exact_bw, exact_connected_bw

CONTRACT_BRIDGE_DUAL = "contract-bridge-dual"
CONTRACT_CYCLE_DUAL = "contract-cycle-dual"
CONTRACT_TO_POINT = "contract-to-point"
DELETE_LOOP = "delete-loop"


def _members(F) -> frozenset:
    return frozenset(F.members if hasattr(F, "members") else F)


def _digest(G) -> str:
    return formats.digest(G) if isinstance(G, EmbeddedGraph) else ""


def _require(cond, msg):
    if not cond:
        raise PreconditionError(msg)


def _connected(G) -> bool:
    return component_count(G.vertices, G.ends) == 1


def _rest(G, F) -> frozenset:
    return frozenset(G.ends) - F


def _in_border(G, F, e) -> bool:
    """Both endpoints of ``e`` lie in the border of ``F``."""
    return set(G.ends[e]) <= border(G, F)


def _dual_graph(G, corr=None):
    corr = corr if corr is not None else dual(G)
    return corr, corr.dual_graph


def _dual_subset(corr, F) -> frozenset:
    return frozenset(corr.edge_bijection[e] for e in F)


# -- minor-operation lemmas -------------------------------------------------


def check_obs_conn(G, e) -> VerificationReport:
    """Contracting a non-loop edge of a connected graph lowers r(E) by one."""
    _require(_connected(G), "G must be connected")
    _require(e in G.ends and not G.skeleton().is_loop(e), "e must be a non-loop edge")
    H = G.skeleton().contract(e)
    before, after = rank(G, G.ends), rank(H, H.ends)
    return VerificationReport(
        "obs-conn", after == before - 1, {"rank_before": before, "rank_after": after}, _digest(G)
    )


def check_lemma_remove_loops(G, F, e) -> VerificationReport:
    """mu_G(F) - 1 <= mu_{G/e}(F/e) <= mu_G(F) for a non-loop e in F."""
    F = _members(F)
    _require(_connected(G), "G must be connected")
    _require(F and edge_set_connected(G.ends, F), "G[F] must be connected")
    _require(e in F, "e must belong to F")
    _require(not G.skeleton().is_loop(e), "contraction is applied to non-loop edges only")
    H = G.skeleton().contract(e)
    before, after = mu(G, F), mu(H, F - {e})
    return VerificationReport(
        "remove-loops",
        before - 1 <= after <= before,
        {"mu_before": before, "mu_after": after},
        _digest(G),
    )


def check_lemma_contract(G, F, e) -> VerificationReport:
    """Contracting non-loop e in F drops mu by one iff both ends lie in the border."""
    F = _members(F)
    _require(_connected(G), "G must be connected")
    _require(F and edge_set_connected(G.ends, F), "G[F] must be connected")
    _require(edge_set_connected(G.ends, _rest(G, F)), "G minus F must be connected")
    _require(e in F and not G.skeleton().is_loop(e), "e must be a non-loop edge of F")
    both = _in_border(G, F, e)
    H = G.skeleton().contract(e)
    before, after = mu(G, F), mu(H, F - {e})
    expected = before - 1 if both else before
    return VerificationReport(
        "contract",
        after == expected,
        {"mu_before": before, "mu_after": after, "endpoints_in_border": both},
        _digest(G),
    )


def check_lemma_remove(G, F, e) -> VerificationReport:
    """Deleting a non-bridge e in F drops mu by one iff e bridges G[F]."""
    F = _members(F)
    _require(e in F, "e must belong to F")
    _require(not is_bridge(G.ends, e), "e must not be a bridge of G")
    bridges_F = is_bridge(G.ends, e, F)
    H = G.skeleton().delete(e)
    before, after = mu(G, F), mu(H, F - {e})
    expected = before - 1 if bridges_F else before
    return VerificationReport(
        "remove",
        after == expected,
        {"mu_before": before, "mu_after": after, "bridge_of_G_F": bridges_F},
        _digest(G),
    )


# -- bridges versus borders -------------------------------------------------


def check_bridge_sep(G: EmbeddedGraph, F, e, corr=None) -> VerificationReport:
    """If e* bridges G*[F*] (e non-loop), both ends of e are in the border of F."""
    F = _members(F)
    _require(e in F and not G.skeleton().is_loop(e), "e must be a non-loop edge of F")
    corr, D = _dual_graph(G, corr)
    Fs = _dual_subset(corr, F)
    es = corr.edge_bijection[e]
    _require(is_bridge(D.ends, es, Fs), "e* must be a bridge of G*[F*]")
    ok = _in_border(G, F, e)
    return VerificationReport(
        "bridge-sep-genus", ok, {"endpoints_in_border": ok}, _digest(G)
    )


def sep_bridge_witnesses(G, F, D, Fs) -> list:
    """Edges e of F with e* on a fundamental cycle of D[F*] and e not inside the border."""
    basis = cycle_basis(D, Fs)
    on_cycle = basis.edges()
    return sorted(e for e in F if e in on_cycle and not _in_border(G, F, e))


def check_sep_bridge(G: EmbeddedGraph, F, corr=None) -> VerificationReport:
    """If G minus F is connected and G*[F*] has circuit rank above g, a witness exists."""
    F = _members(F)
    _require(edge_set_connected(G.ends, _rest(G, F)), "G minus F must be connected")
    corr, D = _dual_graph(G, corr)
    Fs = _dual_subset(corr, F)
    g = euler_genus(G)
    c = circuit_rank(D, Fs)
    _require(c > g, "circuit rank of G*[F*] must exceed the Euler genus")
    wit = sep_bridge_witnesses(G, F, D, Fs)
    return VerificationReport(
        "sep-bridge-genus",
        bool(wit),
        {"genus": g, "circuit_rank": c, "witness": wit[0] if wit else None},
        _digest(G),
    )


def check_no_bridge_dual(G: EmbeddedGraph, corr=None) -> VerificationReport:
    """A connected loopless embedded graph has a bridgeless dual."""
    _require(_connected(G), "G must be connected")
    _require(not any(u == v for u, v in G.ends.values()), "G must be loopless")
    corr, D = _dual_graph(G, corr)
    bridges = sorted(e for e in D.ends if is_bridge(D.ends, e))
    return VerificationReport(
        "no-bridge-dual", not bridges, {"dual_bridges": bridges}, _digest(G)
    )


# -- the reduction pipeline -------------------------------------------------


@dataclass(frozen=True)
class Stage:
    action: str
    edge: int
    primal: Multigraph  # graph after the step
    dual: Multigraph
    subset: frozenset
    mu_primal: int  # values after the step
    mu_dual: int
    drop_primal: int
    drop_dual: int


@dataclass
class ReductionTrace:
    """Record of one run of the four-phase reduction.

    ``failures`` lists ``(stage index, message)`` for the step equations and
    the final bound.  ``claim_failures`` holds the counting claims l <= c and
    l + r <= g separately: they can fail while every mu equation and the
    final bound hold (see the regression test on the 4-edge projective
    instance).
    """

    genus: int
    mu_primal: int
    mu_dual: int
    stages: list = field(default_factory=list)
    r_count: int = 0
    ell_count: int = 0
    c_count: int = 0
    failures: list = field(default_factory=list)
    claim_failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def gap(self) -> int:
        return self.mu_primal - self.mu_dual

    @property
    def sound(self) -> bool:
        """Every mu equation and the final |gap| <= g held."""
        return not self.failures

    @property
    def ok(self) -> bool:
        return not self.failures and not self.claim_failures

    @property
    def abs_lr_bound_holds(self) -> bool:
        """Whether |gap| <= |l - r| happened to hold (informational only)."""
        return abs(self.gap) <= abs(self.ell_count - self.r_count)

    def actions(self) -> list:
        return [s.action for s in self.stages]


def reduction_trace(G: EmbeddedGraph, F, corr=None) -> ReductionTrace:
    """Reduce (G, F) to an empty set while tracking mu on both sides.

    Works on the abstract primal and a maintained abstract dual.  Contracting
    a primal edge deletes its dual edge; deleting a primal loop contracts its
    dual edge.  Assertions are collected in ``failures`` rather than raised.
    """
    F = _members(F)
    _require(_connected(G), "G must be connected")
    _require(not any(u == v for u, v in G.ends.values()), "G must be loopless")
    _require(not any(is_bridge(G.ends, e) for e in G.ends), "G must be bridgeless")
    _require(edge_set_connected(G.ends, F), "G[F] must be connected")
    _require(edge_set_connected(G.ends, _rest(G, F)), "G minus F must be connected")

    corr, Dg = _dual_graph(G, corr)
    g = euler_genus(G)
    P = G.skeleton()
    D = Multigraph(Dg.vertices, {e: Dg.ends[corr.edge_bijection[e]] for e in G.ends})
    mp, md = mu(P, F), mu(D, F)
    trace = ReductionTrace(g, mp, md)

    def fail(msg):
        trace.failures.append((len(trace.stages), msg))

    def claim(msg):
        trace.claim_failures.append((len(trace.stages), msg))

    def record(action, e, P2, D2, F2):
        nonlocal P, D, F, mp, md
        np_, nd = mu(P2, F2), mu(D2, F2)
        trace.stages.append(Stage(action, e, P2, D2, F2, np_, nd, mp - np_, md - nd))
        P, D, F, mp, md = P2, D2, F2, np_, nd
        return trace.stages[-1]

    def bridge_step(e, tag):
        if not _in_border(P, F, e):
            fail(f"{tag}: edge {e} has an endpoint outside the border")
        st = record(CONTRACT_BRIDGE_DUAL, e, P.contract(e), D.delete(e), F - {e})
        if st.drop_primal != 1 or st.drop_dual != 1:
            fail(f"{tag}: edge {e} changed mu by ({st.drop_primal}, {st.drop_dual}), expected (1, 1)")

    def bridge_candidates():
        return [e for e in sorted(F) if not P.is_loop(e) and is_bridge(D.ends, e, F)]

    # phase 1: dual bridges
    while True:
        cand = bridge_candidates()
        if not cand:
            break
        bridge_step(cand[0], "phase 1")

    # phase 2: shrink the dual cycle space down to the genus
    while circuit_rank(D, F) > g:
        wit = sep_bridge_witnesses(P, F, D, F)
        if not wit:
            fail("phase 2: no witness although the circuit rank exceeds the genus")
            break
        e = wit[0]
        if P.is_loop(e):
            trace.notes.append(f"phase 2 witness {e} is a primal loop")
        c0 = circuit_rank(D, F)
        st = record(CONTRACT_CYCLE_DUAL, e, P.contract(e), D.delete(e), F - {e})
        if st.drop_primal or st.drop_dual:
            fail(f"phase 2: edge {e} changed mu by ({st.drop_primal}, {st.drop_dual})")
        if circuit_rank(D, F) != c0 - 1:
            fail(f"phase 2: edge {e} did not lower the dual circuit rank by one")

    # phase 3: contract F to a single vertex
    while True:
        non_loops = [e for e in sorted(F) if not P.is_loop(e)]
        if not non_loops:
            break
        cand = [e for e in non_loops if not is_bridge(D.ends, e, F)]
        if not cand:
            trace.notes.append(f"phase 3 fell back to a dual-bridge step on edge {non_loops[0]}")
            bridge_step(non_loops[0], "phase 3")
            continue
        e = cand[0]
        both = _in_border(P, F, e)
        c0 = circuit_rank(D, F)
        st = record(CONTRACT_TO_POINT, e, P.contract(e), D.delete(e), F - {e})
        trace.r_count += 1
        if st.drop_dual:
            fail(f"phase 3: edge {e} changed the dual mu")
        if st.drop_primal != (1 if both else 0):
            fail(f"phase 3: edge {e} dropped primal mu by {st.drop_primal}")
        if circuit_rank(D, F) != c0 - 1:
            fail(f"phase 3: edge {e} did not lower the dual circuit rank by one")

    trace.c_count = circuit_rank(D, F)
    if trace.c_count + trace.r_count > g:
        claim(f"c + r = {trace.c_count + trace.r_count} exceeds the genus {g}")

    # phase 4: delete the remaining primal loops
    for e in sorted(F):
        st = record(DELETE_LOOP, e, P.delete(e), D.contract(e), F - {e})
        trace.ell_count += st.drop_dual
        if st.drop_primal:
            fail(f"phase 4: deleting loop {e} changed the primal mu")
        if st.drop_dual not in (0, 1):
            fail(f"phase 4: contracting {e}* dropped the dual mu by {st.drop_dual}")

    ell, r = trace.ell_count, trace.r_count
    if ell > trace.c_count:
        claim(f"l = {ell} exceeds c = {trace.c_count}")
    if ell + r > g:
        claim(f"l + r = {ell + r} exceeds the genus {g}")
    if mp != 1 or md != 1:
        fail(f"final mu values ({mp}, {md}) are not (1, 1)")
    if not -ell <= trace.gap <= r:
        fail(f"gap {trace.gap} lies outside [-l, r] = [{-ell}, {r}]")
    if abs(trace.gap) > g:
        fail(f"|gap| = {abs(trace.gap)} exceeds the genus {g}")
    return trace


def check_reduction(G: EmbeddedGraph, F, corr=None) -> VerificationReport:
    t = reduction_trace(G, F, corr)
    return VerificationReport(
        "reduction",
        t.ok,
        {
            "sound": t.sound,
            "genus": t.genus,
            "gap": t.gap,
            "r": t.r_count,
            "ell": t.ell_count,
            "c": t.c_count,
            "stages": len(t.stages),
            "abs_l_minus_r_bound": t.abs_lr_bound_holds,
        },
        _digest(G),
        note="; ".join(msg for _, msg in t.failures + t.claim_failures),
    )


# -- the end-to-end check ---------------------------------------------------


def theorem1_check(G: EmbeddedGraph, *, reduction: bool = False, cap=None) -> VerificationReport:
    """Exact bw(G*) <= bw(G) + g, plus the mu-level inequality along an
    optimal connected decomposition and the swapped bound when it applies.
    """
    _require(_connected(G), "G must be connected")
    _require(not any(u == v for u, v in G.ends.values()), "G must be loopless")
    _require(not any(is_bridge(G.ends, e) for e in G.ends), "G must be bridgeless")
    corr = dual(G)
    D = corr.dual_graph
    g = euler_genus(G)

    bw_g = exact_bw(G, cap=cap).value
    bw_d = exact_bw(D, cap=cap).value
    mu_bw = exact_bw(G, "mu", cap=cap).value
    conn = exact_connected_bw(G, cap=cap)
    T = conn.tree

    mu_g, mu_d = mu_measure(G), mu_measure(D)
    Ts = dual_decomposition(T, corr)
    side_gaps = []
    traces_ok = True
    claim_misses = 0
    trace_notes = []
    for _, A, _B in splits(T):
        As = _dual_subset(corr, A)
        side_gaps.append(abs(mu_g(A) - mu_d(As)))
        if reduction:
            t = reduction_trace(G, A, corr)
            claim_misses += bool(t.claim_failures)
            if not t.sound:
                traces_ok = False
                trace_notes.extend(msg for _, msg in t.failures)
    mu_gap = max(side_gaps, default=0)
    mu_width = width(T, mu_g)
    mu_width_dual = width(Ts, mu_d)

    swapped_applicable = not any(u == v for u, v in D.ends.values())
    swapped = bw_g <= bw_d + g

    checks = {
        "bound": bw_d <= bw_g + g,
        "swapped": swapped or not swapped_applicable,
        "mu_level": mu_gap <= g,
        "mu_width": mu_width_dual <= mu_width + g,
        "reduction": traces_ok,
    }
    measured = {
        "edges": len(G.ends),
        "genus": g,
        "bw": bw_g,
        "bw_dual": bw_d,
        "mu_bw": mu_bw,
        "connected_bw": conn.value,
        "connected_width_delta": width(T, delta_measure(G)),
        "mu_level_max_gap": mu_gap,
        "mu_width": mu_width,
        "mu_width_dual": mu_width_dual,
        "swapped_applicable": swapped_applicable,
        "swapped_holds": swapped,
    }
    if reduction:
        measured["reduction_claim_misses"] = claim_misses
    failed = [k for k, ok in checks.items() if not ok]
    return VerificationReport(
        "theorem1",
        not failed,
        measured,
        _digest(G),
        note="; ".join((["failed: " + ", ".join(failed)] if failed else []) + sorted(set(trace_notes))),
    )


# -- random instances for campaigns ----------------------------------------

LEMMA_NAMES = (
    "obs-conn",
    "remove-loops",
    "contract",
    "remove",
    "bridge-sep-genus",
    "sep-bridge-genus",
    "no-bridge-dual",
    "reduction",
)


def _random_subset(rng, edges):
    p = rng.uniform(0.2, 0.9)
    return frozenset(e for e in edges if rng.random() < p)


def sample_reports(name: str, G: EmbeddedGraph, rng, attempts: int = 20, corr=None) -> list:
    """Run checker ``name`` on random (F, e) drawn for ``G``.

    Draws whose preconditions fail are skipped, so the result may hold fewer
    than ``attempts`` reports.
    """
    if name not in LEMMA_NAMES:
        raise ValueError(f"unknown lemma {name!r}")
    edges = sorted(G.ends)
    if not edges:
        return []
    if name in ("bridge-sep-genus", "sep-bridge-genus", "reduction", "no-bridge-dual"):
        if component_count(G.vertices, G.ends) != 1:
            return []
        corr = corr if corr is not None else dual(G)
    out = []
    for _ in range(attempts):
        F = _random_subset(rng, edges)
        inside = sorted(F)
        e = inside[int(rng.integers(len(inside)))] if inside else edges[int(rng.integers(len(edges)))]
        try:
            if name == "obs-conn":
                rep = check_obs_conn(G, e)
            elif name == "remove-loops":
                rep = check_lemma_remove_loops(G, F, e)
            elif name == "contract":
                rep = check_lemma_contract(G, F, e)
            elif name == "remove":
                rep = check_lemma_remove(G, F, e)
            elif name == "bridge-sep-genus":
                rep = check_bridge_sep(G, F, e, corr)
            elif name == "sep-bridge-genus":
                rep = check_sep_bridge(G, F, corr)
            elif name == "no-bridge-dual":
                out.append(check_no_bridge_dual(G, corr))
                break
            else:
                rep = check_reduction(G, F, corr)
        except PreconditionError:
            continue
        out.append(rep)
    return out
