import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from networkx.algorithms.isomorphism import GraphMatcher
from pydantic import BaseModel, ConfigDict, model_validator

from config import Config
from idcodes.bounds import lower_bounds
from idcodes.errors import BudgetExceededError, InternalError
from idcodes.graph import Code, HammingGraph
from idcodes.models import Property, SearchResult
from idcodes.verify import verify

logger = logging.getLogger(__name__)


class SearchProblem(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    graph: Any
    property: Property
    size: int
    symmetry: bool = True

    @model_validator(mode="after")
    def _size_fits(self):
        if not 0 <= self.size <= self.graph.vertex_count:
            raise ValueError(f"size {self.size} outside 0..{self.graph.vertex_count}")
        return self


def _bit(i: int) -> int:
    return 1 << i


def constraint_family(graph, prop) -> list:
    """Bitmask sets that a code must all hit to have the property; minimal sets only.

    DOM needs every N[v]; ID adds every N[u] ^ N[v]; SID needs every N[u] - N[v];
    SLD needs every (N[u] - N[v]) | {u}, over ordered pairs of distinct vertices.
    """
    prop = Property(prop)
    alive = graph.indices()
    closed = {i: sum(_bit(j) for j in graph.neighborhood_indices(i)) for i in alive}
    family = set()
    if prop in (Property.DOM, Property.ID):
        family.update(closed.values())
    if prop == Property.ID:
        for position, u in enumerate(alive):
            for v in alive[position + 1 :]:
                family.add(closed[u] ^ closed[v])
    if prop in (Property.SID, Property.SLD):
        for u in alive:
            for v in alive:
                if u != v:
                    s = closed[u] & ~closed[v]
                    family.add(s | _bit(u) if prop == Property.SLD else s)

    minimal = []
    for s in sorted(family, key=lambda s: (s.bit_count(), s)):
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    logger.debug(f"{prop.value} constraint family on {graph!r}: {len(family)} sets, {len(minimal)} minimal")
    return minimal


class _Solver:
    """Depth-first exact-size hitting set search with a disjoint-packing bound."""

    def __init__(self, sets, budget):
        self.sets = sets
        self.budget = budget
        self.nodes = 0

    def expand(self, chosen, excluded, remaining):
        """A solution mask, None when pruned, or the ordered child states."""
        open_sets = []
        for s in self.sets:
            if s & chosen:
                continue
            available = s & ~excluded
            if not available:
                return None
            open_sets.append(available)
        if not open_sets:
            return chosen
        if remaining == 0:
            return None

        open_sets.sort(key=int.bit_count)
        used, packed = 0, 0
        for available in open_sets:
            if not available & used:
                used |= available
                packed += 1
                if packed > remaining:
                    return None

        children = []
        branch = open_sets[0]
        while branch:
            low = branch & -branch
            children.append((chosen | low, excluded, remaining - 1))
            excluded |= low
            branch ^= low
        return children

    def run(self, chosen, excluded, remaining):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(
                f"search exceeded its node budget of {self.budget}", spent=self.nodes, budget=self.budget
            )
        outcome = self.expand(chosen, excluded, remaining)
        if not isinstance(outcome, list):
            return outcome
        for child in outcome:
            found = self.run(*child)
            if found is not None:
                return found
        return None


def _run_task(sets, state, budget):
    solver = _Solver(sets, budget)
    return solver.run(*state), solver.nodes


def vertex_orbits(graph):
    """Automorphism orbits as sorted index lists, or None when not computed."""
    if isinstance(graph, HammingGraph):
        return None if graph.deleted else [graph.indices()]
    parent = list(range(graph.order))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for mapping in GraphMatcher(graph.graph, graph.graph).isomorphisms_iter():
        for a, b in mapping.items():
            ra, rb = find(graph.index(a)), find(graph.index(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    orbits = {}
    for i in range(graph.order):
        orbits.setdefault(find(i), []).append(i)
    return sorted(orbits.values())


def _roots(problem):
    """Top-level states: 'meets orbit j first, avoids orbits 1..j-1' under symmetry."""
    if not problem.symmetry or problem.size == 0:
        return [(0, 0, problem.size)]
    orbits = vertex_orbits(problem.graph)
    if orbits is None:
        return [(0, 0, problem.size)]
    roots, avoided = [], 0
    for orbit in orbits:
        roots.append((_bit(orbit[0]), avoided, problem.size - 1))
        avoided |= sum(_bit(i) for i in orbit)
    return roots


async def _run_parallel(sets, states, budget, workers):
    loop = asyncio.get_running_loop()
    semaphore = asyncio.Semaphore(workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:

        async def run(state):
            async with semaphore:
                return await loop.run_in_executor(pool, _run_task, sets, state, budget)

        return await asyncio.gather(*(run(state) for state in states))


def _pad(graph, mask, size):
    chosen = [i for i in graph.indices() if mask >> i & 1]
    extra = [i for i in graph.indices() if not mask >> i & 1]
    return sorted(chosen + extra[: size - len(chosen)])


def _lex_least(graph, sets, size, incumbent, budget):
    """Lower a known witness position by position to the lexicographically least one.

    A vertex ``v`` below the incumbent's entry is tried by asking for a hitting set that
    contains the prefix plus ``v`` and otherwise uses only indices above ``v``.
    """
    alive = graph.indices()
    alive_bits = sum(_bit(i) for i in alive)
    best, prefix, nodes = list(incumbent), [], 0
    for position in range(size):
        start = alive.index(prefix[-1]) + 1 if prefix else 0
        for offset, v in enumerate(alive[start:]):
            if v >= best[position]:
                break
            spare = alive[start + offset + 1 :]
            if position + 1 + len(spare) < size:
                break
            chosen = sum(_bit(i) for i in prefix) | _bit(v)
            excluded = alive_bits & (_bit(v + 1) - 1) & ~chosen
            solver = _Solver(sets, budget)
            found = solver.run(chosen, excluded, size - position - 1)
            nodes += solver.nodes
            if found is not None:
                words = [i for i in alive if found >> i & 1]
                extra = [i for i in spare if not found >> i & 1]
                best = sorted(words + extra[: size - len(words)])
                break
        prefix.append(best[position])
    return best, nodes


def _search(problem, budget=None, workers=None):
    budget = budget or Config.SEARCH_NODE_BUDGET
    workers = workers or Config.WORKERS
    sets = constraint_family(problem.graph, problem.property)
    roots = _roots(problem)
    solver = _Solver(sets, budget)

    found, nodes = None, 0
    if workers <= 1:
        for root in roots:
            found = solver.run(*root)
            if found is not None:
                break
        nodes = solver.nodes
    else:
        outcomes = []
        for root in roots:
            outcome = solver.expand(*root)
            if isinstance(outcome, list):
                outcomes.extend(("state", child) for child in outcome)
            else:
                outcomes.append(("done", outcome))
        states = [item for kind, item in outcomes if kind == "state"]
        logger.info(f"Splitting search into {len(states)} tasks over {workers} workers")
        results = iter(asyncio.run(_run_parallel(sets, states, budget, workers)))
        nodes = len(roots)
        for kind, item in outcomes:
            if kind == "done":
                candidate = item
            else:
                candidate, spent = next(results)
                nodes += spent
            if candidate is not None and found is None:
                found = candidate

    if found is None:
        return None, nodes
    incumbent = _pad(problem.graph, found, problem.size)
    witness, spent = _lex_least(problem.graph, sets, problem.size, incumbent, budget)
    nodes += spent
    code = Code.from_indices(problem.graph, witness)
    report = verify(code, problem.property)
    if not report.holds:
        raise InternalError(f"search witness fails {problem.property.value}: {report.witness}")
    return code, nodes


def exists_code(problem: SearchProblem, budget: int = None, workers: int = None):
    """The lexicographically least code of exactly ``problem.size`` words with the property, or None."""
    code, nodes = _search(problem, budget, workers)
    logger.info(
        f"{problem.property.value} size {problem.size} on {problem.graph!r}: "
        f"{'found' if code is not None else 'none'} after {nodes} nodes"
    )
    return code


def search(problem: SearchProblem, budget: int = None, workers: int = None) -> SearchResult:
    code, nodes = _search(problem, budget, workers)
    return SearchResult(
        graph=problem.graph.key,
        property=problem.property,
        size=problem.size,
        exists=code is not None,
        witness=code.sorted_words() if code is not None else None,
        nodes=nodes,
        symmetry=problem.symmetry,
    )


def starting_size(graph, prop) -> int:
    """A size below which no code with the property exists."""
    prop = Property(prop)
    if isinstance(graph, HammingGraph) and not graph.deleted and graph.q >= 2:
        bounds = lower_bounds(graph.q, graph.n)
        if prop == Property.DOM:
            return bounds.dom2 or bounds.dom3 or bounds.sphere
        if prop == Property.ID:
            return max(bounds.karpovsky, bounds.id3_new or 0)
        if prop == Property.SID:
            return bounds.sid_lower
        return bounds.sld3 or bounds.sld_lower
    if prop == Property.DOM:
        degree = max(len(graph.neighborhood_indices(i)) for i in graph.indices())
        return -(-graph.vertex_count // degree)
    if prop == Property.ID:
        size = 1
        while 2 ** size - 1 < graph.vertex_count:
            size += 1
        return size
    return 1


def optimal_size(problem: SearchProblem, budget: int = None, workers: int = None) -> SearchResult:
    """Smallest size with a code, scanning upward from the lower bound; ``problem.size`` is ignored."""
    graph = problem.graph
    everything = Code.from_indices(graph, graph.indices())
    if not verify(everything, problem.property).holds:
        return SearchResult(
            graph=graph.key,
            property=problem.property,
            size=graph.vertex_count,
            exists=False,
            optimal=True,
            symmetry=problem.symmetry,
        )
    total = 0
    for size in range(starting_size(graph, problem.property), graph.vertex_count + 1):
        attempt = problem.model_copy(update={"size": size})
        code, nodes = _search(attempt, budget, workers)
        total += nodes
        if code is not None:
            logger.info(f"Optimal {problem.property.value} size on {graph!r} is {size}")
            return SearchResult(
                graph=graph.key,
                property=problem.property,
                size=size,
                exists=True,
                witness=code.sorted_words(),
                nodes=total,
                optimal=True,
                symmetry=problem.symmetry,
            )
    raise InternalError("the full vertex set has the property but no size up to it was found")
