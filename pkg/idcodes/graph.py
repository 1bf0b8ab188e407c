import itertools
import logging

import networkx as nx
import numpy as np

from idcodes.errors import InputError

logger = logging.getLogger(__name__)


class HammingGraph:
    """The Hamming graph K_q^n, optionally with a set of deleted vertices.

    Vertices are n-tuples with coordinates in 1..q. Each vertex also has a dense
    mixed-radix index (first coordinate most significant), which is the layout
    of the numpy arrays used by the verifier. With ``field_mode`` set the graph
    is read as F_q^n and coordinates are displayed 0-based.
    """

    def __init__(self, q: int, n: int, deleted=(), field_mode: bool = False):
        if not isinstance(q, (int, np.integer)) or q < 1:
            raise InputError(f"alphabet size q must be a positive integer, got {q!r}")
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise InputError(f"dimension n must be a positive integer, got {n!r}")
        self.q = int(q)
        self.n = int(n)
        self.field_mode = field_mode
        self.order = self.q ** self.n
        self._strides = tuple(self.q ** (self.n - 1 - axis) for axis in range(self.n))

        deleted_vertices = set()
        for v in deleted:
            v = tuple(int(c) for c in v)
            self._check_coordinates(v)
            deleted_vertices.add(v)
        self.deleted = frozenset(deleted_vertices)
        self._deleted_indices = frozenset(self._raw_index(v) for v in self.deleted)

    def __repr__(self):
        suffix = f", deleted={len(self.deleted)}" if self.deleted else ""
        return f"HammingGraph(q={self.q}, n={self.n}{suffix})"

    def __eq__(self, other):
        return (
            isinstance(other, HammingGraph)
            and (self.q, self.n, self.deleted) == (other.q, other.n, other.deleted)
        )

    def __hash__(self):
        return hash((self.q, self.n, self.deleted))

    @property
    def vertex_count(self) -> int:
        return self.order - len(self.deleted)

    @property
    def is_complete_hamming(self) -> bool:
        return not self.deleted

    @property
    def key(self) -> str:
        """Short identifier used in cache keys and report headers."""
        mode = "f" if self.field_mode else "k"
        base = f"{mode}{self.q}^{self.n}"
        if self.deleted:
            base += "-del" + "_".join("".join(map(str, v)) for v in sorted(self.deleted))
        return base

    def _check_coordinates(self, v):
        if len(v) != self.n:
            raise InputError(f"vertex {v} has {len(v)} coordinates, expected {self.n}")
        for c in v:
            if not 1 <= c <= self.q:
                raise InputError(f"vertex {v} has a coordinate outside 1..{self.q}")

    def _raw_index(self, v) -> int:
        return sum((c - 1) * s for c, s in zip(v, self._strides))

    def check_vertex(self, v):
        v = tuple(v)
        self._check_coordinates(v)
        if v in self.deleted:
            raise InputError(f"vertex {v} is deleted from {self!r}")
        return v

    def __contains__(self, v) -> bool:
        try:
            self.check_vertex(v)
        except (InputError, TypeError):
            return False
        return True

    def index(self, v) -> int:
        return self._raw_index(self.check_vertex(v))

    def vertex(self, i: int) -> tuple:
        digits = []
        for s in self._strides:
            digits.append(i // s % self.q + 1)
        return tuple(digits)

    def is_alive_index(self, i: int) -> bool:
        return i not in self._deleted_indices

    def vertices(self):
        for v in itertools.product(range(1, self.q + 1), repeat=self.n):
            if v not in self.deleted:
                yield v

    def indices(self) -> list:
        return [i for i in range(self.order) if i not in self._deleted_indices]

    def alive_mask(self) -> np.ndarray:
        mask = np.ones(self.order, dtype=bool)
        if self._deleted_indices:
            mask[list(self._deleted_indices)] = False
        return mask

    def neighborhood_indices(self, i: int) -> list:
        """Indices of the closed neighborhood of vertex index ``i``."""
        result = [i] if i not in self._deleted_indices else []
        for s in self._strides:
            digit = i // s % self.q
            base = i - digit * s
            for symbol in range(self.q):
                if symbol != digit:
                    j = base + symbol * s
                    if j not in self._deleted_indices:
                        result.append(j)
        return result

    def is_closed_neighbor(self, u, v) -> bool:
        """Membership test u in N[v] in O(n), without building N[v]."""
        u = self.check_vertex(u)
        v = self.check_vertex(v)
        return hamming_distance(u, v) <= 1

    def display(self, v) -> tuple:
        if self.field_mode:
            return tuple(c - 1 for c in v)
        return tuple(v)


class GenericGraph:
    """A small explicit simple graph, used for hand-drawn fixtures.

    Labels keep the insertion order of the underlying networkx graph; that
    order defines the vertex indices.
    """

    is_complete_hamming = False
    field_mode = False

    def __init__(self, graph: nx.Graph):
        if graph.is_directed() or graph.is_multigraph():
            raise InputError("only simple undirected graphs are supported")
        if nx.number_of_selfloops(graph):
            raise InputError("graph has self-loops")
        self.graph = graph
        self.labels = list(graph.nodes)
        self._index = {label: i for i, label in enumerate(self.labels)}
        self._closed = [
            sorted([i] + [self._index[w] for w in graph.neighbors(label)])
            for i, label in enumerate(self.labels)
        ]
        self.order = len(self.labels)
        self.deleted = frozenset()

    @classmethod
    def from_edges(cls, edges, vertices=()):
        graph = nx.Graph()
        graph.add_nodes_from(vertices)
        graph.add_edges_from(edges)
        return cls(graph)

    def __repr__(self):
        return f"GenericGraph(|V|={self.order}, |E|={self.graph.number_of_edges()})"

    def __eq__(self, other):
        return (
            isinstance(other, GenericGraph)
            and self.labels == other.labels
            and self._closed == other._closed
        )

    def __hash__(self):
        return hash(tuple(self.labels))

    @property
    def vertex_count(self) -> int:
        return self.order

    @property
    def key(self) -> str:
        edges = sorted(tuple(sorted((self._index[a], self._index[b]))) for a, b in self.graph.edges)
        return f"g{self.order}-" + "_".join(f"{a}.{b}" for a, b in edges)

    def check_vertex(self, v):
        if v not in self._index:
            raise InputError(f"vertex {v!r} is not in {self!r}")
        return v

    def __contains__(self, v) -> bool:
        try:
            return v in self._index
        except TypeError:
            return False

    def index(self, v) -> int:
        return self._index[self.check_vertex(v)]

    def vertex(self, i: int):
        return self.labels[i]

    def is_alive_index(self, i: int) -> bool:
        return 0 <= i < self.order

    def vertices(self):
        return iter(self.labels)

    def indices(self) -> list:
        return list(range(self.order))

    def alive_mask(self) -> np.ndarray:
        return np.ones(self.order, dtype=bool)

    def neighborhood_indices(self, i: int) -> list:
        return list(self._closed[i])

    def is_closed_neighbor(self, u, v) -> bool:
        return self.index(u) in self._closed[self.index(v)]

    def display(self, v):
        return v


class Code:
    """A set of vertices of a graph."""

    def __init__(self, graph, words=()):
        self.graph = graph
        self.indices = frozenset(graph.index(w) for w in words)

    @classmethod
    def from_indices(cls, graph, indices):
        code = cls(graph)
        indices = frozenset(int(i) for i in indices)
        for i in indices:
            if not (0 <= i < graph.order and graph.is_alive_index(i)):
                raise InputError(f"index {i} is not a vertex of {graph!r}")
        code.indices = indices
        return code

    def __repr__(self):
        return f"Code({self.graph!r}, size={len(self)})"

    def __len__(self):
        return len(self.indices)

    def __contains__(self, v) -> bool:
        return v in self.graph and self.graph.index(v) in self.indices

    def __iter__(self):
        return iter(self.sorted_words())

    def __eq__(self, other):
        return isinstance(other, Code) and self.graph == other.graph and self.indices == other.indices

    def __hash__(self):
        return hash((self.graph, self.indices))

    @property
    def words(self) -> frozenset:
        return frozenset(self.graph.vertex(i) for i in self.indices)

    def sorted_words(self) -> list:
        return [self.graph.vertex(i) for i in sorted(self.indices)]

    def mask(self) -> np.ndarray:
        mask = np.zeros(self.graph.order, dtype=bool)
        if self.indices:
            mask[list(self.indices)] = True
        return mask

    def with_graph(self, graph):
        """The same words, read in another ambient graph (e.g. with deletions)."""
        return Code(graph, self.words)

    def i_set_indices(self, i: int) -> frozenset:
        return frozenset(j for j in self.graph.neighborhood_indices(i) if j in self.indices)


def hamming_distance(u, v) -> int:
    return sum(1 for a, b in zip(u, v) if a != b)


def closed_neighborhood(graph, v) -> set:
    i = graph.index(v)
    return {graph.vertex(j) for j in graph.neighborhood_indices(i)}


def i_set(code, v) -> set:
    """N[v] ∩ C; a vertex deleted from a Hamming graph still has coordinates and an empty I-set."""
    if isinstance(code.graph, HammingGraph) and tuple(v) in code.graph.deleted:
        return set()
    i = code.graph.index(v)
    return {code.graph.vertex(j) for j in code.i_set_indices(i)}


def i_set_of_set(code, vertices) -> set:
    result = set()
    for v in vertices:
        result |= i_set(code, v)
    return result


def pipe(graph, v, free_axis: int) -> set:
    """Vertices agreeing with ``v`` everywhere except on ``free_axis`` (1-based)."""
    if not isinstance(graph, HammingGraph):
        raise InputError("pipes are defined on Hamming graphs only")
    if graph.n < 2:
        raise InputError("pipes need dimension n >= 2")
    if not isinstance(free_axis, int) or not 1 <= free_axis <= graph.n:
        raise InputError(f"free axis must be in 1..{graph.n}, got {free_axis!r}")
    v = tuple(v)
    graph._check_coordinates(v)
    result = set()
    for symbol in range(1, graph.q + 1):
        w = v[: free_axis - 1] + (symbol,) + v[free_axis:]
        if w not in graph.deleted:
            result.add(w)
    return result


def pipes(graph):
    """Every pipe of a deletion-free Hamming graph, once, as sorted vertex lists."""
    for axis in range(1, graph.n + 1):
        for rest in itertools.product(range(1, graph.q + 1), repeat=graph.n - 1):
            anchor = rest[: axis - 1] + (1,) + rest[axis - 1 :]
            yield axis, sorted(pipe(graph, anchor, axis))


def example_graph() -> GenericGraph:
    """The six-vertex graph with optimal ID, SID and SLD codes of sizes 3, 6 and 4."""
    edges = [("a", "b"), ("a", "d"), ("b", "c"), ("b", "e"), ("c", "f"), ("d", "e"), ("e", "f")]
    return GenericGraph.from_edges(edges, vertices="abcdef")
