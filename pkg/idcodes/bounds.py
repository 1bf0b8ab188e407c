import itertools
import logging
import math
from fractions import Fraction

from idcodes.construct3 import best_known_upper
from idcodes.errors import InputError, InternalError, PreconditionError
from idcodes.graph import HammingGraph, pipes
from idcodes.linear import field_for
from idcodes.models import (
    BoundsRecord,
    CodewordRole,
    LayerAnalysis,
    LayerStats,
    LemmaCheck,
    LemmaReport,
    RatioReport,
)
from idcodes.verify import is_identifying

logger = logging.getLogger(__name__)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def lower_bounds(q: int, n: int) -> BoundsRecord:
    if q < 2:
        raise InputError(f"q must be at least 2, got {q}")
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    size = q ** n
    degree = n * (q - 1)
    record = BoundsRecord(
        q=q,
        n=n,
        karpovsky=_ceil_div(2 * size, n * q - n + 2),
        sphere=_ceil_div(size, degree + 1),
        sid_lower=_ceil_div(3 * size, degree + 1),
        sld_lower=_ceil_div(3 * size, degree + 3),
    )
    if n == 2:
        record.dom2 = q
    if n == 3:
        record.id3_new = q * q - (3 * q) // 2
        record.id3_old = q * q - math.isqrt(q ** 3)
        record.sld3 = q * q
        record.dom3 = _ceil_div(q * q, 2)
        record.id3_best_known_upper = best_known_upper(q)
    return record


def ratio_report(q: int, k: int) -> RatioReport:
    """Repeated-column SLD size against the Karpovsky identification bound at n = 3(q^k-1)/(q-1)."""
    field_for(q)
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    n = 3 * (q ** k - 1) // (q - 1)
    upper = q ** (n - k)
    lower = lower_bounds(q, n).karpovsky
    exact_lower = Fraction(2 * q ** n, 3 * q ** k - 1)
    report = RatioReport(
        q=q,
        k=k,
        n=n,
        upper=upper,
        lower=lower,
        ratio=upper / lower,
        within_three_halves=2 * upper <= 3 * lower,
        lower_at_least_two_thirds_upper=exact_lower >= Fraction(2, 3) * upper,
    )
    if not (report.within_three_halves and report.lower_at_least_two_thirds_upper):
        raise InternalError(f"q={q}, k={k}: lower bound {lower} is below 2/3 of {upper}")
    return report


def product_id_number(q: int, l: int, m: int) -> int:
    """Known value of the identification number of K_q x K_l x K_m for m > 2l, l > 2q."""
    if not (m > 2 * l and l > 2 * q):
        raise PreconditionError(f"formula needs m > 2l and l > 2q, got q={q}, l={l}, m={m}")
    return q * (m - 1)


def is_rook_dominating(q: int, cells) -> bool:
    rows = {s for s, _ in cells}
    columns = {t for _, t in cells}
    return len(rows) == q or len(columns) == q


def minimum_dominating_superset(q: int, cells) -> set:
    """Smallest dominating set of K_q x K_q containing ``cells``.

    A set dominates iff it meets every row or every column, so the
    empty lines of the better-covered direction are filled.
    """
    cells = set(cells)
    rows = {s for s, _ in cells}
    columns = {t for _, t in cells}
    result = set(cells)
    if len(rows) >= len(columns):
        result |= {(s, 1) for s in range(1, q + 1) if s not in rows}
    else:
        result |= {(1, t) for t in range(1, q + 1) if t not in columns}
    return result


def exhaustive_dominating_superset_size(q: int, cells) -> int:
    cells = set(cells)
    free = [v for v in itertools.product(range(1, q + 1), repeat=2) if v not in cells]
    for extra in range(len(free) + 1):
        for added in itertools.combinations(free, extra):
            if is_rook_dominating(q, cells | set(added)):
                return len(cells) + extra
    raise InputError("no dominating superset found")


def layer_stats_from_grid(q: int, n_rows: int, n_cols: int, cells, corners=()) -> LayerStats:
    """Layer arithmetic for a standalone drawn grid; corner roles are given, not derived."""
    cells = sorted(set(cells))
    rows = {s for s, _ in cells}
    columns = {t for _, t in cells}
    free_rows = n_rows - len(rows)
    free_columns = n_cols - len(columns)
    x_set = [
        (s, t)
        for s in range(1, n_rows + 1)
        for t in range(1, n_cols + 1)
        if s not in rows and t not in columns
    ]
    y_set = [
        (s, t)
        for s, t in cells
        if not any((s2 == s) != (t2 == t) for s2, t2 in cells)
    ]
    return LayerStats(
        axis=0,
        index=0,
        layer_code=cells,
        a=q - len(cells),
        f=len(cells) + min(free_rows, free_columns) - q,
        k=len(corners),
        x_set=x_set,
        y_set=y_set,
        corners=sorted(corners),
    )


class _Layers:
    """Every layer quantity of a code in K_q^3, kept as sets for the lemma checks."""

    def __init__(self, code):
        graph = code.graph
        if not isinstance(graph, HammingGraph) or graph.n != 3 or graph.deleted:
            raise PreconditionError("layer analysis needs a code in a full K_q^3")
        self.graph = graph
        self.q = graph.q
        self.code = code.words
        self.i_sets = {
            v: frozenset(graph.vertex(j) for j in code.i_set_indices(graph.index(v)))
            for v in graph.vertices()
        }
        self._compute()

    @staticmethod
    def _plane(v, axis):
        return tuple(c for position, c in enumerate(v) if position != axis)

    def _compute(self):
        q = self.q
        self.layers = {}
        self.x_set, self.y_set = set(), set()
        self.x_sizes = {}
        for axis in range(3):
            for i in range(1, q + 1):
                members = [v for v in self.i_sets if v[axis] == i]
                layer_code = sorted(v for v in members if v in self.code)
                x_layer, y_layer = [], []
                for v in members:
                    inside = {c for c in self.i_sets[v] if c[axis] == i}
                    if not inside:
                        x_layer.append(v)
                    elif inside == {v}:
                        y_layer.append(v)
                self.layers[(axis + 1, i)] = (members, layer_code, sorted(x_layer), sorted(y_layer))
                self.x_set.update(x_layer)
                self.y_set.update(y_layer)
                self.x_sizes[(axis + 1, i)] = len(x_layer)

        self.roles = {}
        for c in sorted(self.code):
            if c not in self.y_set:
                self.roles[c] = "corner"
            elif len(self.i_sets[c]) >= 2:
                self.roles[c] = "fellow"
            else:
                self.roles[c] = "plain"

        self.cornered = {c: [] for c in self.roles}
        for j, i in self.layers:
            for c, role in self.roles.items():
                if role != "corner":
                    continue
                inside = [w for w in self.i_sets[c] if w[j - 1] == i]
                for first, second in itertools.combinations(inside, 2):
                    if sum(1 for a, b in zip(first, second) if a != b) > 1:
                        self.cornered[c].append((j, i))
                        break

    def stats(self, j, i) -> LayerStats:
        members, layer_code, x_layer, y_layer = self.layers[(j, i)]
        axis = j - 1
        cells = {self._plane(c, axis) for c in layer_code}
        rows = {s for s, _ in cells}
        columns = {t for _, t in cells}
        m_cells = minimum_dominating_superset(self.q, cells)
        m_set = sorted(v for v in members if self._plane(v, axis) in m_cells)
        corners = [c for c, layers in self.cornered.items() if (j, i) in layers]
        fellows = [c for c in layer_code if self.roles[c] == "fellow"]
        return LayerStats(
            axis=j,
            index=i,
            layer_code=layer_code,
            a=self.q - len(layer_code),
            f=len(layer_code) - max(len(rows), len(columns)),
            k=len(corners),
            x_set=x_layer,
            y_set=y_layer,
            corners=corners,
            fellows=fellows,
            m_set=m_set,
        )


def layer_analysis(code) -> LayerAnalysis:
    layers = _Layers(code)
    stats = [layers.stats(j, i) for (j, i) in sorted(layers.layers)]
    roles = [
        CodewordRole(codeword=c, role=role, layers_cornered=layers.cornered[c])
        for c, role in layers.roles.items()
    ]
    return LayerAnalysis(
        q=layers.q, layers=stats, roles=roles, x_size=len(layers.x_set), y_size=len(layers.y_set)
    )


def _pipe_checks(layers):
    fellows = {c for c, role in layers.roles.items() if role == "fellow"}
    corners = {c for c, role in layers.roles.items() if role == "corner"}
    two_fellows = corner_fellow_x = codeword_two_x = None
    for axis, members in pipes(layers.graph):
        members = set(members)
        has_x = len(members & layers.x_set)
        if two_fellows is None and len(members & fellows) >= 2:
            two_fellows = (axis, sorted(members))
        if corner_fellow_x is None and members & corners and members & fellows and has_x:
            corner_fellow_x = (axis, sorted(members))
        if codeword_two_x is None and members & layers.code and has_x >= 2:
            codeword_two_x = (axis, sorted(members))

    def check(name, found):
        detail = None if found is None else f"pipe along axis {found[0]} through {found[1][0]}"
        return LemmaCheck(name=name, holds=found is None, detail=detail)

    return [
        check("no pipe holds two fellows", two_fellows),
        check("no pipe holds a corner, a fellow and an X-vertex", corner_fellow_x),
        check("no pipe holds a codeword and two X-vertices", codeword_two_x),
    ]


def _x_linked_to_corner(layers):
    for x in sorted(layers.x_set):
        linked = False
        for c in layers.i_sets[x]:
            role = layers.roles[c]
            if role == "corner":
                linked = True
            elif role == "fellow" and any(layers.roles[w] == "corner" for w in layers.i_sets[c]):
                linked = True
            if linked:
                break
        if not linked:
            return LemmaCheck(
                name="every X-vertex sees a corner or a fellow next to a corner",
                holds=False,
                detail=f"X-vertex {x}",
            )
    return LemmaCheck(name="every X-vertex sees a corner or a fellow next to a corner", holds=True)


def check_layer_claims(code) -> LemmaReport:
    """Evaluate the layer inequalities and pipe claims that hold for every identifying code of K_q^3."""
    report = is_identifying(code)
    if not report.holds:
        raise PreconditionError(
            f"code is not identifying: {report.witness_kind} at {report.witness}"
        )
    layers = _Layers(code)
    stats = [layers.stats(j, i) for (j, i) in sorted(layers.layers)]
    x_size = len(layers.x_set)
    sum_k = sum(s.k for s in stats)
    sum_f = sum(s.f for s in stats)
    square_sum = sum((s.a + s.f) ** 2 for s in stats if s.a + s.f >= 0)

    checks = _pipe_checks(layers)
    checks.append(_x_linked_to_corner(layers))
    checks.append(
        LemmaCheck(name="|X| <= 3 * sum of layer corners", holds=x_size <= 3 * sum_k, lhs=x_size, rhs=3 * sum_k)
    )

    weak = [s for s in stats if 2 * s.f < s.k]
    checks.append(
        LemmaCheck(
            name="2f >= k in every layer",
            holds=not weak,
            lhs=2 * weak[0].f if weak else 2 * sum_f,
            rhs=weak[0].k if weak else sum_k,
            detail=f"layer ({weak[0].axis}, {weak[0].index})" if weak else None,
        )
    )
    checks.append(
        LemmaCheck(name="|X| <= 6 * sum of f", holds=x_size <= 6 * sum_f, lhs=x_size, rhs=6 * sum_f)
    )

    negative = [s for s in stats if s.f < 0 or s.a + s.f < 0]
    thin = [s for s in stats if len(s.x_set) < (s.a + s.f) ** 2]
    holds = x_size >= square_sum and not negative and not thin
    bad = (negative or thin or [None])[0]
    checks.append(
        LemmaCheck(
            name="|X| >= sum of (a + f)^2",
            holds=holds,
            lhs=x_size,
            rhs=square_sum,
            detail=None if bad is None else f"layer ({bad.axis}, {bad.index})",
        )
    )

    undominating = []
    for s in stats:
        cells = {layers._plane(v, s.axis - 1) for v in s.m_set}
        code_cells = {layers._plane(v, s.axis - 1) for v in s.layer_code}
        if not is_rook_dominating(layers.q, cells) or not code_cells <= cells or len(cells) != layers.q + s.f:
            undominating.append(s)
    checks.append(
        LemmaCheck(
            name="M is a minimum dominating superset of each layer code",
            holds=not undominating,
            detail=f"layer ({undominating[0].axis}, {undominating[0].index})" if undominating else None,
        )
    )
    checks.append(
        LemmaCheck(
            name="layer X-sets are disjoint",
            holds=x_size == sum(layers.x_sizes.values()),
            lhs=x_size,
            rhs=sum(layers.x_sizes.values()),
        )
    )

    result = LemmaReport(q=layers.q, code_size=len(code), checks=checks)
    for failure in result.failures():
        logger.error(f"Layer check failed: {failure.name} ({failure.detail})")
    return result
