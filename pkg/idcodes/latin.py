import logging
from typing import Optional

import networkx as nx
import numpy as np
from pydantic import BaseModel, model_validator

from idcodes.errors import InputError, InternalError, PreconditionError
from idcodes.graph import Code, HammingGraph
from idcodes.models import LatinCheck

logger = logging.getLogger(__name__)


def _check_shape(grid, allow_empty=False):
    if not isinstance(grid, (list, tuple)) or not grid:
        raise InputError("grid must be a non-empty list of rows")
    q = len(grid)
    for x, row in enumerate(grid, start=1):
        if not isinstance(row, (list, tuple)) or len(row) != q:
            raise InputError(f"row {x} does not have {q} entries")
        for value in row:
            if value is None and allow_empty:
                continue
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or not 1 <= value <= q:
                raise InputError(f"row {x} has entry {value!r} outside 1..{q}")
    return q


def _first_repeat(lines, label):
    for position, line in enumerate(lines, start=1):
        seen = set()
        for value in line:
            if value is None:
                continue
            if value in seen:
                return f"{label} {position} repeats {value}"
            seen.add(value)
    return None


def validate_latin(grid) -> LatinCheck:
    """Row/column uniqueness of a q x q grid over 1..q."""
    q = _check_shape(grid)
    columns = [[grid[x][y] for x in range(q)] for y in range(q)]
    violation = _first_repeat(grid, "row") or _first_repeat(columns, "column")
    return LatinCheck(valid=violation is None, violation=violation)


class LatinSquare(BaseModel):
    """grid[x-1][y-1] = z places the codeword (x, y, z) in tower (x, y)."""

    order: int
    grid: list[list[int]]

    @model_validator(mode="after")
    def _latin(self):
        if len(self.grid) != self.order:
            raise ValueError(f"grid has {len(self.grid)} rows, order is {self.order}")
        check = validate_latin(self.grid)
        if not check.valid:
            raise ValueError(f"not a Latin square: {check.violation}")
        return self

    def value(self, x: int, y: int) -> int:
        return self.grid[x - 1][y - 1]


class PartialLatinSquare(BaseModel):
    order: int
    grid: list[list[Optional[int]]]

    @model_validator(mode="after")
    def _no_repeats(self):
        if len(self.grid) != self.order:
            raise ValueError(f"grid has {len(self.grid)} rows, order is {self.order}")
        _check_shape(self.grid, allow_empty=True)
        columns = [[row[y] for row in self.grid] for y in range(self.order)]
        violation = _first_repeat(self.grid, "row") or _first_repeat(columns, "column")
        if violation:
            raise ValueError(f"partial Latin square repeats a value: {violation}")
        return self

    @classmethod
    def embed(cls, square: LatinSquare, r: int):
        grid = [[None] * r for _ in range(r)]
        for x in range(square.order):
            grid[x][: square.order] = list(square.grid[x])
        return cls(order=r, grid=grid)

    def column_values(self, y: int) -> set:
        return {row[y] for row in self.grid if row[y] is not None}

    def is_complete(self) -> bool:
        return all(value is not None for row in self.grid for value in row)

    def to_latin(self) -> LatinSquare:
        if not self.is_complete():
            raise InternalError("partial Latin square still has empty cells")
        return LatinSquare(order=self.order, grid=self.grid)


def cyclic_latin(q: int) -> LatinSquare:
    """grid[a][b] = c with a + b + c = 0 (mod q), values in 1..q."""
    if q < 1:
        raise InputError(f"order must be at least 1, got {q}")
    grid = [[(-(a + b)) % q or q for b in range(1, q + 1)] for a in range(1, q + 1)]
    return LatinSquare(order=q, grid=grid)


def latin_to_code(square: LatinSquare) -> Code:
    graph = HammingGraph(square.order, 3)
    words = [
        (x, y, square.value(x, y))
        for x in range(1, square.order + 1)
        for y in range(1, square.order + 1)
    ]
    return Code(graph, words)


def code_to_latin(code: Code) -> LatinSquare:
    """Inverse of latin_to_code; every pipe must hold exactly one codeword."""
    graph = code.graph
    if not isinstance(graph, HammingGraph) or graph.n != 3 or graph.deleted:
        raise InputError("only codes in a full K_q^3 correspond to Latin squares")
    q = graph.q
    cube = code.mask().reshape(q, q, q).astype(np.int64)
    names = ("(., y, z)", "(x, ., z)", "(x, y, .)")
    for axis, name in enumerate(names):
        counts = cube.sum(axis=axis)
        bad = np.argwhere(counts != 1)
        if len(bad):
            first = tuple(int(c) + 1 for c in bad[0])
            raise InputError(
                f"pipe {name} at {first} holds {int(counts[tuple(bad[0])])} codewords, expected 1"
            )
    grid = (np.argmax(cube, axis=2) + 1).tolist()
    return LatinSquare(order=q, grid=grid)


def extend_latin(square: LatinSquare, r: int) -> LatinSquare:
    """Extend a q x q Latin square to r x r (r >= 2q) keeping it in the top-left block.

    The right block of the first q rows is a cyclic Latin rectangle on q+1..r.
    The remaining rows are added one at a time as perfect matchings between
    columns and the values each column still misses.
    """
    q = square.order
    if r < 2 * q:
        raise PreconditionError(f"extension needs r >= 2q, got q={q}, r={r}")

    partial = PartialLatinSquare.embed(square, r)
    grid = partial.grid
    width = r - q
    for x in range(q):
        for y in range(q, r):
            grid[x][y] = q + 1 + (x + y - q) % width

    for x in range(q, r):
        graph = nx.Graph()
        columns = [("column", y) for y in range(r)]
        graph.add_nodes_from(columns)
        for y in range(r):
            used = partial.column_values(y)
            for value in range(1, r + 1):
                if value not in used:
                    graph.add_edge(("column", y), ("value", value))
        matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=columns)
        for y in range(r):
            match = matching.get(("column", y))
            if match is None:
                raise InternalError(f"row {x + 1} of the extension has no perfect matching")
            grid[x][y] = match[1]
        logger.debug(f"extension row {x + 1}/{r} filled")

    extended = partial.to_latin()
    for x in range(q):
        if extended.grid[x][:q] != square.grid[x]:
            raise InternalError("extension changed the embedded block")
    logger.info(f"Extended Latin square of order {q} to order {r}")
    return extended
