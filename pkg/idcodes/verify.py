import logging

import numpy as np

from config import Config
from idcodes.errors import BudgetExceededError, InternalError, PreconditionError
from idcodes.graph import HammingGraph
from idcodes.models import Property, TripleCover, VerificationReport

logger = logging.getLogger(__name__)


def _ensure_budget(graph):
    if graph.order > Config.VERIFY_BUDGET:
        raise BudgetExceededError(
            f"{graph!r} has {graph.order} vertices, above the verification budget {Config.VERIFY_BUDGET}",
            spent=graph.order,
            budget=Config.VERIFY_BUDGET,
        )


def _empty_report(code, prop):
    return VerificationReport(
        property=prop, holds=False, code_size=0, witness=[], witness_kind="empty code"
    )


def _pipe_sums(graph, values):
    """Per-axis pipe sums of a flat array, each broadcastable to the cube."""
    cube = values.reshape((graph.q,) * graph.n)
    return cube, [cube.sum(axis=axis, keepdims=True, dtype=cube.dtype) for axis in range(graph.n)]


def _closed_sums(graph, values):
    """For every vertex, the sum of ``values`` over its closed neighborhood."""
    cube, sums = _pipe_sums(graph, values)
    total = np.zeros_like(cube)
    for s in sums:
        total += s
    total -= cube * cube.dtype.type(graph.n - 1)
    return total.reshape(-1)


def cover_counts(code) -> np.ndarray:
    """|I(v)| for every vertex index (entries at deleted vertices are meaningless)."""
    graph = code.graph
    if isinstance(graph, HammingGraph):
        return _closed_sums(graph, code.mask().astype(np.int64))
    return np.array([len(code.i_set_indices(i)) for i in range(graph.order)], dtype=np.int64)


def _fingerprints(code) -> np.ndarray:
    graph = code.graph
    rng = np.random.default_rng(Config.FINGERPRINT_SEED)
    weights = rng.integers(
        0, np.iinfo(np.uint64).max, size=graph.order, dtype=np.uint64, endpoint=True
    )
    weighted = np.where(code.mask(), weights, np.uint64(0)).astype(np.uint64)
    return _closed_sums(graph, weighted)


def _vertices(graph, indices):
    return [graph.vertex(int(i)) for i in indices]


def _stats(counts, targets):
    if len(targets) == 0:
        return None, None
    selected = counts[targets]
    return int(selected.min()), int(selected.max())


def is_dominating(code) -> VerificationReport:
    graph = code.graph
    _ensure_budget(graph)
    if not code.indices:
        return _empty_report(code, Property.DOM)
    counts = cover_counts(code)
    alive = np.flatnonzero(graph.alive_mask())
    low, high = _stats(counts, alive)
    undominated = alive[counts[alive] == 0]
    report = VerificationReport(
        property=Property.DOM,
        holds=len(undominated) == 0,
        code_size=len(code),
        checked=len(alive),
        min_i_set=low,
        max_i_set=high,
    )
    if not report.holds:
        report.witness = _vertices(graph, undominated[:1])
        report.witness_kind = "undominated"
    return report


def _first_equal_pair(code, groups):
    """Among candidate groups of vertex indices, find two with equal I-sets."""
    for group in groups:
        seen = {}
        for i in group:
            key = code.i_set_indices(int(i))
            if key in seen:
                return seen[key], int(i)
            seen[key] = int(i)
    return None


def is_identifying(code) -> VerificationReport:
    graph = code.graph
    report = is_dominating(code)
    report.property = Property.ID
    if not report.holds:
        return report

    alive = np.flatnonzero(graph.alive_mask())
    if isinstance(graph, HammingGraph):
        prints = _fingerprints(code)[alive]
        order = np.argsort(prints, kind="stable")
        ordered = prints[order]
        equal = np.flatnonzero(ordered[1:] == ordered[:-1])
        groups = []
        start = None
        for position in equal:
            if start is None or position != end:
                if start is not None:
                    groups.append(alive[order[start : end + 1]])
                start = position
            end = position + 1
        if start is not None:
            groups.append(alive[order[start : end + 1]])
        if groups:
            logger.debug(f"{len(groups)} fingerprint collision groups, comparing I-sets explicitly")
    else:
        groups = [alive]

    pair = _first_equal_pair(code, groups)
    if pair is not None:
        report.holds = False
        report.witness = _vertices(graph, pair)
        report.witness_kind = "equal I-sets"
    return report


def _self_check(code, prop) -> VerificationReport:
    graph = code.graph
    _ensure_budget(graph)
    if not code.indices:
        return _empty_report(code, prop)

    counts = cover_counts(code)
    alive = np.flatnonzero(graph.alive_mask())
    if prop == Property.SLD:
        targets = np.array([i for i in alive if int(i) not in code.indices], dtype=np.int64)
    else:
        targets = alive
    low, high = _stats(counts, targets)
    report = VerificationReport(
        property=prop,
        holds=True,
        code_size=len(code),
        checked=len(targets),
        min_i_set=low,
        max_i_set=high,
    )

    undominated = [int(i) for i in targets if counts[i] == 0]
    if undominated:
        report.holds = False
        report.witness = _vertices(graph, undominated[:1])
        report.witness_kind = "undominated"
        return report

    for u in targets:
        u = int(u)
        covers = code.i_set_indices(u)

        common = None
        for c in covers:
            around = set(graph.neighborhood_indices(c))
            common = around if common is None else common & around
        located = common == {u}

        offender = None
        for v in graph.neighborhood_indices(min(covers)):
            if v != u and covers <= code.i_set_indices(v):
                offender = v
                break

        if located != (offender is None):
            raise InternalError(
                f"{prop.value}: intersection and containment checks disagree at {graph.vertex(u)}"
            )
        if offender is not None:
            report.holds = False
            report.witness = _vertices(graph, [u, offender])
            report.witness_kind = "I-set contained in another"
            return report
    return report


def is_self_identifying(code) -> VerificationReport:
    return _self_check(code, Property.SID)


def is_self_locating_dominating(code) -> VerificationReport:
    return _self_check(code, Property.SLD)


def hamming_sid_sld_check(code, mode) -> VerificationReport:
    """SID/SLD through covering structure: at least three covers, two of them at distance 2.

    Two covers of u are at distance 2 exactly when they differ from u on
    different axes, so the check reduces to per-axis pipe counts.
    """
    mode = Property(mode)
    if mode not in (Property.SID, Property.SLD):
        raise PreconditionError(f"mode must be sid or sld, got {mode.value}")
    graph = code.graph
    if not isinstance(graph, HammingGraph) or graph.deleted:
        raise PreconditionError("the covering characterization needs a full Hamming graph")
    _ensure_budget(graph)
    if not code.indices:
        return _empty_report(code, mode)

    mask = code.mask().astype(np.int64)
    cube, sums = _pipe_sums(graph, mask)
    counts = _closed_sums(graph, mask)
    axes_hit = np.zeros_like(cube)
    for s in sums:
        axes_hit += (s - cube) > 0
    axes_hit = axes_hit.reshape(-1)

    targets = np.ones(graph.order, dtype=bool)
    if mode == Property.SLD:
        targets &= ~code.mask()
    target_indices = np.flatnonzero(targets)
    low, high = _stats(counts, target_indices)
    report = VerificationReport(
        property=mode,
        holds=True,
        code_size=len(code),
        checked=len(target_indices),
        min_i_set=low,
        max_i_set=high,
        method="covering characterization",
    )

    few = np.flatnonzero(targets & (counts < 3))
    if len(few):
        report.holds = False
        report.witness = _vertices(graph, few[:1])
        report.witness_kind = "fewer than three covers"
        return report
    flat = np.flatnonzero(targets & (axes_hit < 2))
    if len(flat):
        report.holds = False
        report.witness = _vertices(graph, flat[:1])
        report.witness_kind = "no two covers at distance two"
    return report


def _common_pipe_axis(vertices):
    """Axis of a pipe holding all ``vertices``, or None."""
    n = len(vertices[0])
    for axis in range(n):
        rest = {v[:axis] + v[axis + 1 :] for v in vertices}
        if len(rest) == 1:
            return axis + 1
    return None


def triple_cover_structure(code, v) -> TripleCover:
    graph = code.graph
    if not isinstance(graph, HammingGraph) or graph.n != 3:
        raise PreconditionError("triple cover structure is defined on K_q^3 only")
    u = graph.index(v)
    covers = sorted(code.i_set_indices(u))
    words = _vertices(graph, covers)
    if not covers:
        return TripleCover(kind="empty", i_set=[])

    if _common_pipe_axis(words) is not None:
        others = [c for c in covers if c != u]
        if others:
            container = graph.vertex(others[0])
        else:
            container = graph.vertex(next(j for j in graph.neighborhood_indices(u) if j != u))
        return TripleCover(kind="pipe", i_set=words, container=container)

    if len(covers) == 2:
        shared = set(graph.neighborhood_indices(covers[0])) & set(graph.neighborhood_indices(covers[1]))
        shared.discard(u)
        partner = graph.vertex(min(shared)) if shared else None
        return TripleCover(kind="pair", i_set=words, partner=partner)

    return TripleCover(kind="unique", i_set=words)


_CHECKS = {
    Property.DOM: is_dominating,
    Property.ID: is_identifying,
    Property.SID: is_self_identifying,
    Property.SLD: is_self_locating_dominating,
}


def verify(code, prop) -> VerificationReport:
    prop = Property(prop)
    report = _CHECKS[prop](code)
    logger.info(
        f"{prop.value.upper()} on {code.graph!r} with {len(code)} codewords: "
        f"{'PASS' if report.holds else 'FAIL'}"
    )
    return report


def verify_all(code) -> dict:
    """All four verdicts, checked against SID => ID => DOM and SLD => DOM."""
    reports = {prop: _CHECKS[prop](code) for prop in Property}
    holds = {prop: report.holds for prop, report in reports.items()}
    if holds[Property.SID] and not holds[Property.ID]:
        raise InternalError("self-identifying code reported as not identifying")
    if (holds[Property.ID] or holds[Property.SLD]) and not holds[Property.DOM]:
        raise InternalError("code reported as locating but not dominating")
    return reports
