import functools
import json
import logging

from pydantic import BaseModel, model_validator

from constants import DIAGONAL_ORDER, LARGE_CUBE_Q, SPORADIC_CODES_PATH
from idcodes.errors import InputError, InternalError, PreconditionError
from idcodes.graph import Code, HammingGraph, closed_neighborhood
from idcodes.latin import cyclic_latin, extend_latin
from idcodes.verify import is_identifying

logger = logging.getLogger(__name__)


class SextupleView(BaseModel):
    """A vertex (x, y, z, a, b, c) of Ext(C1, C2): inner position and subcube index."""

    inner: tuple[int, int, int]
    outer: tuple[int, int, int]
    q: int
    m: int

    @model_validator(mode="after")
    def _in_range(self):
        if any(not 1 <= c <= self.q for c in self.inner):
            raise ValueError(f"inner coordinates {self.inner} outside 1..{self.q}")
        if any(not 1 <= c <= self.m for c in self.outer):
            raise ValueError(f"outer coordinates {self.outer} outside 1..{self.m}")
        return self

    def flatten(self) -> tuple:
        return tuple(x + self.q * (a - 1) for x, a in zip(self.inner, self.outer))

    @classmethod
    def split(cls, v, q: int, m: int):
        inner = tuple((c - 1) % q + 1 for c in v)
        outer = tuple((c - 1) // q + 1 for c in v)
        return cls(inner=inner, outer=outer, q=q, m=m)


class SporadicCodes:
    def __init__(self):
        self._load_assets()

    def _load_assets(self):
        with open(SPORADIC_CODES_PATH, "r") as f:
            self.catalog = json.load(f)

    def words(self, name: str) -> list:
        return [tuple(w) for w in self.catalog[name]["words"]]


@functools.lru_cache(maxsize=1)
def _sporadic() -> SporadicCodes:
    return SporadicCodes()


def _cube(graph):
    if not isinstance(graph, HammingGraph) or graph.n != 3:
        raise InputError(f"expected a code in some K_q^3, got {graph!r}")


def construct_cq(q: int) -> Code:
    """The q^2 triples with a + b + c = 0 (mod q)."""
    graph = HammingGraph(q, 3)
    words = [
        (a, b, c)
        for a in range(1, q + 1)
        for b in range(1, q + 1)
        for c in range(1, q + 1)
        if (a + b + c) % q == 0
    ]
    return Code(graph, words)


def construct_c1() -> Code:
    return Code(HammingGraph(4, 3), _sporadic().words("c1"))


def diagonal(q: int = DIAGONAL_ORDER) -> set:
    return {(j, j, j) for j in range(1, q + 1)}


def construct_cl() -> Code:
    """The 12-word code, living in K_4^3 with the diagonal deleted."""
    return Code(HammingGraph(4, 3, deleted=diagonal()), _sporadic().words("cl"))


def ext(inner: Code, outer: Code) -> Code:
    """Place a copy of ``inner`` in every subcube indexed by a word of ``outer``."""
    _cube(inner.graph)
    _cube(outer.graph)
    q, m = inner.graph.q, outer.graph.q
    words = [
        SextupleView(inner=x, outer=a, q=q, m=m).flatten()
        for a in outer.sorted_words()
        for x in inner.sorted_words()
    ]
    return Code(HammingGraph(q * m, 3), words)


def _assert_diagonal_separated():
    full = HammingGraph(4, 3)
    cl = construct_cl().words
    for v in diagonal():
        touching = closed_neighborhood(full, v) & cl
        if touching:
            raise InternalError(f"diagonal vertex {v} is next to {sorted(touching)}")


def construct_ct(t: int) -> Code:
    """Identifying code of size q^2 - q/4 in K_q^3, q = 4^t."""
    if t < 1:
        raise InputError(f"t must be at least 1, got {t}")
    if t == 1:
        return construct_c1()
    q = 4 ** t
    if q >= LARGE_CUBE_Q:
        logger.warning(f"K_{q}^3 has {q ** 3} vertices; construction is fine, verification is slow")

    _assert_diagonal_separated()
    previous = construct_ct(t - 1)
    first = ext(construct_cq(q // 4), construct_cl())
    second = ext(previous, Code(HammingGraph(4, 3), diagonal()))
    code = Code(HammingGraph(q, 3), first.words | second.words)

    expected = q * q - q // 4
    if len(code) != expected:
        raise InternalError(f"C^{t} has {len(code)} words, expected {expected}")
    logger.info(f"Constructed C^{t}: {len(code)} codewords in K_{q}^3")
    return code


def extend_identifying(code: Code, r: int, check: bool = True) -> Code:
    """Grow an identifying code of K_q^3 into one of K_r^3 of size r^2 - q^2 + |C|."""
    graph = code.graph
    _cube(graph)
    if graph.deleted:
        raise PreconditionError("the base code must live in a full K_q^3")
    q = graph.q
    if r < 2 * q:
        raise PreconditionError(f"extension needs r >= 2q, got q={q}, r={r}")
    if check:
        report = is_identifying(code)
        if not report.holds:
            raise PreconditionError(f"base code is not identifying: {report.witness_kind} at {report.witness}")

    square = extend_latin(cyclic_latin(q), r)
    added = {
        (x, y, square.value(x, y))
        for x in range(1, r + 1)
        for y in range(1, r + 1)
        if max(x, y) >= q + 1
    }
    result = Code(HammingGraph(r, 3), code.words | added)

    expected = r * r - q * q + len(code)
    if len(result) != expected:
        raise InternalError(f"extension has {len(result)} words, expected {expected}")
    logger.info(f"Extended {len(code)}-word code of K_{q}^3 to {len(result)} words in K_{r}^3")
    return result


def _power_of_four_exponent(q: int):
    t, power = 0, 1
    while power < q:
        t, power = t + 1, power * 4
    return t if power == q and t >= 1 else None


def _band_exponent(q: int):
    """Largest t >= 1 with 2 * 4^t <= q, or None."""
    t = None
    power = 4
    while 2 * power <= q:
        t = 1 if t is None else t + 1
        power *= 4
    return t


def best_known_upper(q: int) -> int:
    if q < 1:
        raise InputError(f"q must be at least 1, got {q}")
    candidates = [q * q]
    t = _power_of_four_exponent(q)
    if t is not None:
        candidates.append(q * q - q // 4)
    band = _band_exponent(q)
    if band is not None:
        candidates.append(q * q - 4 ** (band - 1))
    return min(candidates)


def best_known_code(q: int) -> Code:
    """An identifying code of K_q^3 of size best_known_upper(q)."""
    t = _power_of_four_exponent(q)
    if t is not None:
        return construct_ct(t)
    band = _band_exponent(q)
    if band is not None:
        return extend_identifying(construct_ct(band), q, check=False)
    return construct_cq(q)
