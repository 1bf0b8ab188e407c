import itertools
import logging

import numpy as np

from config import Config
from constants import IRREDUCIBLE_POLYNOMIALS
from idcodes.errors import BudgetExceededError, InputError, InternalError, PreconditionError
from idcodes.graph import Code, HammingGraph, closed_neighborhood, hamming_distance
from idcodes.verify import is_self_identifying

logger = logging.getLogger(__name__)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FiniteField:
    """F_q, q = p^m, with elements encoded as integers 0..q-1.

    The base-p digits of an element are the coefficients of its polynomial
    (lowest degree first) modulo the fixed irreducible polynomial of the field.
    Arithmetic goes through precomputed numpy tables, so every operation also
    works elementwise on arrays.
    """

    def __init__(self, p: int, m: int = 1):
        if not _is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        if m < 1:
            raise InputError(f"degree must be at least 1, got {m}")
        self.p = p
        self.m = m
        self.q = p ** m
        if m == 1:
            self.modulus = None
        elif self.q in IRREDUCIBLE_POLYNOMIALS:
            self.modulus = IRREDUCIBLE_POLYNOMIALS[self.q]
        else:
            raise InputError(f"F_{self.q} is not supported (non-prime fields up to 16 only)")
        self._build_tables()

    def __repr__(self):
        return f"FiniteField(q={self.q})"

    def _digits(self, a: int) -> list:
        return [a // self.p ** i % self.p for i in range(self.m)]

    def _number(self, digits) -> int:
        return sum(d * self.p ** i for i, d in enumerate(digits))

    def _poly_mul(self, a: int, b: int) -> int:
        x, y = self._digits(a), self._digits(b)
        product = [0] * (2 * self.m - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                product[i + j] = (product[i + j] + xi * yj) % self.p
        for degree in range(len(product) - 1, self.m - 1, -1):
            lead = product[degree]
            if lead:
                for i in range(self.m + 1):
                    position = degree - self.m + i
                    product[position] = (product[position] - lead * self.modulus[i]) % self.p
        return self._number(product[: self.m])

    def _build_tables(self):
        q = self.q
        elements = np.arange(q)
        if self.m == 1:
            self.add_table = (elements[:, None] + elements[None, :]) % q
            self.mul_table = (elements[:, None] * elements[None, :]) % q
        else:
            digits = np.array([self._digits(a) for a in range(q)])
            summed = (digits[:, None, :] + digits[None, :, :]) % self.p
            powers = self.p ** np.arange(self.m)
            self.add_table = (summed * powers).sum(axis=2)
            self.mul_table = np.array([[self._poly_mul(a, b) for b in range(q)] for a in range(q)])
        self.neg_table = np.argmin(self.add_table, axis=1)
        self.inv_table = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inverses = np.flatnonzero(self.mul_table[a] == 1)
            if len(inverses) != 1:
                raise InternalError(f"element {a} of F_{q} has no unique inverse")
            self.inv_table[a] = inverses[0]

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError(f"zero has no inverse in F_{self.q}")
        return self.inv_table[a]


def field_ops(p: int, m: int = 1) -> FiniteField:
    return FiniteField(p, m)


def field_for(q: int) -> FiniteField:
    """The field with q elements, for q a prime or a supported prime power."""
    if q < 2:
        raise InputError(f"no field has {q} elements")
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            rest = q
            while rest % p == 0:
                rest //= p
                m += 1
            if rest != 1:
                raise InputError(f"{q} is not a prime power")
            return FiniteField(p, m)
    raise InputError(f"{q} is not a prime power")


class ParityCheckMatrix:
    """A k x n matrix H over F_q; the code is {u : H u^T = 0}."""

    def __init__(self, field: FiniteField, rows, allow_zero_columns: bool = False):
        matrix = np.array(rows, dtype=np.int64)
        if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
            raise InputError("parity-check matrix must be a non-empty k x n array")
        if matrix.min() < 0 or matrix.max() >= field.q:
            raise InputError(f"parity-check entries must lie in 0..{field.q - 1}")
        if not allow_zero_columns and np.any(np.all(matrix == 0, axis=0)):
            raise InputError("parity-check matrix has a zero column")
        self.field = field
        self.matrix = matrix

    def __repr__(self):
        return f"ParityCheckMatrix(q={self.q}, k={self.k}, n={self.n})"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def k(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    def syndromes(self, words: np.ndarray) -> np.ndarray:
        """Syndromes of a (count x n) array of 0-based words, shape (count x k)."""
        words = np.atleast_2d(np.asarray(words, dtype=np.int64))
        if words.shape[1] != self.n:
            raise InputError(f"words must have length {self.n}")
        result = np.zeros((words.shape[0], self.k), dtype=np.int64)
        for row in range(self.k):
            acc = np.zeros(words.shape[0], dtype=np.int64)
            for col in range(self.n):
                acc = self.field.add(acc, self.field.mul(self.matrix[row, col], words[:, col]))
            result[:, row] = acc
        return result

    def syndrome(self, word) -> tuple:
        return tuple(int(s) for s in self.syndromes([word])[0])

    def contains(self, word) -> bool:
        return not any(self.syndrome(word))

    def reduced(self):
        """Row-reduced echelon form over F_q and its pivot columns."""
        field = self.field
        a = self.matrix.copy()
        pivots = []
        row = 0
        for col in range(self.n):
            candidates = [r for r in range(row, self.k) if a[r, col] != 0]
            if not candidates:
                continue
            a[[row, candidates[0]]] = a[[candidates[0], row]]
            a[row] = field.mul(field.inv(a[row, col]), a[row])
            for r in range(self.k):
                if r != row and a[r, col] != 0:
                    a[r] = field.sub(a[r], field.mul(a[r, col], a[row]))
            pivots.append(col)
            row += 1
            if row == self.k:
                break
        return a[:row], pivots

    def rank(self) -> int:
        return len(self.reduced()[1])

    def codeword_array(self, budget: int = None) -> np.ndarray:
        """All codewords (0-based), enumerated from the kernel's free coordinates."""
        budget = budget or Config.ENUMERATION_BUDGET
        field = self.field
        reduced, pivots = self.reduced()
        free = [c for c in range(self.n) if c not in pivots]
        count = self.q ** len(free)
        if count > budget:
            raise BudgetExceededError(
                f"code has {count} codewords, above the enumeration budget {budget}",
                spent=count,
                budget=budget,
            )
        words = np.zeros((count, self.n), dtype=np.int64)
        if free:
            assignments = np.indices((self.q,) * len(free)).reshape(len(free), -1).T
            words[:, free] = assignments
        for i, col in enumerate(pivots):
            acc = np.zeros(count, dtype=np.int64)
            for f in free:
                acc = field.add(acc, field.mul(reduced[i, f], words[:, f]))
            words[:, col] = field.neg(acc)
        return words


def _to_vertices(words: np.ndarray) -> list:
    return [tuple(int(c) + 1 for c in w) for w in words]


def hamming_parity_check(q: int, k: int) -> ParityCheckMatrix:
    """Columns: one representative (leading nonzero = 1) of every projective point, in lexicographic order."""
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    field = field_for(q)
    columns = []
    for vector in itertools.product(range(q), repeat=k):
        nonzero = [c for c in vector if c]
        if nonzero and nonzero[0] == 1:
            columns.append(vector)
    return ParityCheckMatrix(field, np.array(columns, dtype=np.int64).T)


def code_from_parity_check(matrix: ParityCheckMatrix, budget: int = None) -> Code:
    words = matrix.codeword_array(budget)
    graph = HammingGraph(matrix.q, matrix.n, field_mode=True)
    return Code(graph, _to_vertices(words))


def _unit(n: int, position: int) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    e[position] = 1
    return e


def _warn_if_unverifiable(graph):
    if graph.order > Config.VERIFY_BUDGET:
        logger.warning(f"{graph!r} exceeds the verification budget; the code is returned unverified")


def sid_coset_construction(q: int, k: int, budget: int = None) -> Code:
    """C + (C + e1) + (C + e2) for the q-ary Hamming code C of redundancy k."""
    if k < 2:
        raise PreconditionError("the coset construction needs length n >= 2, i.e. k >= 2")
    matrix = hamming_parity_check(q, k)
    field = matrix.field
    n = matrix.n
    e1, e2 = _unit(n, 0), _unit(n, 1)
    for word, name in ((e1, "e1"), (e2, "e2"), (field.sub(e2, e1), "e2 - e1")):
        if matrix.contains(word):
            raise InternalError(f"{name} is a codeword; the cosets would not be distinct")

    base = matrix.codeword_array(budget)
    words = np.concatenate([base, field.add(base, e1), field.add(base, e2)])
    graph = HammingGraph(q, n, field_mode=True)
    code = Code(graph, _to_vertices(words))
    expected = 3 * q ** (n - k)
    if len(code) != expected:
        raise InternalError(f"coset union has {len(code)} words, expected {expected}")
    _warn_if_unverifiable(graph)
    logger.info(f"SID coset code: {len(code)} words in F_{q}^{n}")
    return code


def direct_sum_extend(code: Code, trusted: bool = False) -> Code:
    """C + F_q: every codeword followed by every symbol."""
    graph = code.graph
    if not isinstance(graph, HammingGraph) or graph.deleted:
        raise PreconditionError("direct sums need a code in a full Hamming graph")
    if not trusted:
        report = is_self_identifying(code)
        if not report.holds:
            raise PreconditionError(f"input is not self-identifying: {report.witness_kind} at {report.witness}")
    extended = HammingGraph(graph.q, graph.n + 1, field_mode=graph.field_mode)
    words = [c + (symbol,) for c in code.words for symbol in range(1, graph.q + 1)]
    return Code(extended, words)


def sld_repeated_column(q: int, k: int, l: int = 0, budget: int = None) -> Code:
    """Hamming check matrix with its first column repeated l + 3 times and the others 3 times."""
    if l < 0:
        raise InputError(f"l must be non-negative, got {l}")
    hamming = hamming_parity_check(q, k)
    columns = []
    for index in range(hamming.n):
        copies = l + 3 if index == 0 else 3
        columns.extend([hamming.matrix[:, index]] * copies)
    matrix = ParityCheckMatrix(hamming.field, np.array(columns).T)
    code = code_from_parity_check(matrix, budget)
    expected = q ** (matrix.n - k)
    if len(code) != expected:
        raise InternalError(f"repeated-column code has {len(code)} words, expected {expected}")
    _warn_if_unverifiable(code.graph)
    logger.info(f"SLD repeated-column code: {len(code)} words in F_{q}^{matrix.n}")
    return code


def pairwise_neighborhood_intersection(graph: HammingGraph, c1, c2) -> int:
    """|N[c1] & N[c2]|: q, 2 or 0 for distance 1, 2 or more."""
    c1, c2 = graph.check_vertex(c1), graph.check_vertex(c2)
    distance = hamming_distance(c1, c2)
    if distance == 0:
        size = graph.n * (graph.q - 1) + 1
    elif distance == 1:
        size = graph.q
    elif distance == 2:
        size = 2
    else:
        size = 0
    if not graph.deleted:
        actual = len(closed_neighborhood(graph, c1) & closed_neighborhood(graph, c2))
        if actual != size:
            raise InternalError(f"neighborhood intersection of {c1}, {c2} is {actual}, expected {size}")
    return size


def triple_neighborhood_intersection(graph: HammingGraph, c1, c2, c3, u) -> tuple:
    """The unique common neighbor u of three distinct covers of u, two at distance 2."""
    words = [graph.check_vertex(c) for c in (c1, c2, c3)]
    u = graph.check_vertex(u)
    if len(set(words)) != 3:
        raise PreconditionError("the three words must be distinct")
    if any(hamming_distance(c, u) > 1 for c in words):
        raise PreconditionError(f"every word must lie in N[{u}]")
    if not any(hamming_distance(a, b) == 2 for a, b in itertools.combinations(words, 2)):
        raise PreconditionError("no pair of the three words is at distance 2")
    common = closed_neighborhood(graph, words[0])
    for c in words[1:]:
        common &= closed_neighborhood(graph, c)
    if common != {u}:
        raise InternalError(f"common neighborhood is {sorted(common)}, expected {{{u}}}")
    return u
