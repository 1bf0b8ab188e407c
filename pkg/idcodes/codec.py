import logging
import os

import networkx as nx

from idcodes.errors import FormatError, InputError
from idcodes.graph import Code, GenericGraph, HammingGraph
from idcodes.latin import LatinSquare, validate_latin
from idcodes.linear import ParityCheckMatrix, field_for

logger = logging.getLogger(__name__)


def _content_lines(text: str):
    """(line number, tokens) for every non-blank, non-comment line."""
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped.split()


def _integers(tokens, number):
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", number) from None


def _read_text(path: str) -> str:
    if not os.path.exists(path):
        raise FileNotFoundError(f"file not found: {path}")
    with open(path, "r") as f:
        return f.read()


def _write_text(path: str, text: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        f.write(text)
    logger.info(f"Wrote {path}")


def _comment(header) -> str:
    return "".join(f"# {line}\n" for line in (header or []))


def parse_code(text: str) -> Code:
    """Read the shared code format: ``q n [K|F]`` then one codeword per line."""
    lines = _content_lines(text)
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise FormatError("missing 'q n' header line") from None
    if len(tokens) not in (2, 3):
        raise FormatError(f"header must be 'q n [K|F]', got {' '.join(tokens)!r}", number)
    mode = tokens[2].upper() if len(tokens) == 3 else "K"
    if mode not in ("K", "F"):
        raise FormatError(f"coordinate mode must be K or F, got {tokens[2]!r}", number)
    q, n = _integers(tokens[:2], number)
    if q < 1 or n < 1:
        raise FormatError(f"q and n must be positive, got q={q}, n={n}", number)
    graph = HammingGraph(q, n, field_mode=mode == "F")
    offset = 1 if mode == "F" else 0

    words, seen = [], set()
    for number, tokens in lines:
        coordinates = _integers(tokens, number)
        if len(coordinates) != n:
            raise FormatError(f"codeword has {len(coordinates)} coordinates, expected {n}", number)
        word = tuple(c + offset for c in coordinates)
        if any(not 1 <= c <= q for c in word):
            low, high = (0, q - 1) if offset else (1, q)
            raise FormatError(f"coordinate outside {low}..{high}", number)
        if word in seen:
            raise FormatError(f"duplicate codeword {' '.join(tokens)}", number)
        seen.add(word)
        words.append(word)
    return Code(graph, words)


def format_code(code: Code, header=None) -> str:
    graph = code.graph
    if not isinstance(graph, HammingGraph):
        raise InputError("only codes in Hamming graphs have a file format")
    mode = " F" if graph.field_mode else ""
    lines = [f"{graph.q} {graph.n}{mode}"]
    lines.extend(" ".join(map(str, graph.display(w))) for w in code.sorted_words())
    return _comment(header) + "\n".join(lines) + "\n"


def read_code(path: str) -> Code:
    code = parse_code(_read_text(path))
    logger.info(f"Read {len(code)} codewords of {code.graph!r} from {path}")
    return code


def write_code(code: Code, path: str, header=None):
    _write_text(path, format_code(code, header))


def parse_latin(text: str) -> LatinSquare:
    """``q`` on the first line, then q rows of q values in 1..q."""
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("missing order line")
    number, tokens = lines[0]
    if len(tokens) != 1:
        raise FormatError("first line must hold the order q only", number)
    (q,) = _integers(tokens, number)
    rows = lines[1:]
    if len(rows) != q:
        raise FormatError(f"expected {q} rows, found {len(rows)}")
    grid = []
    for number, tokens in rows:
        row = _integers(tokens, number)
        if len(row) != q:
            raise FormatError(f"row has {len(row)} entries, expected {q}", number)
        grid.append(row)
    try:
        check = validate_latin(grid)
    except InputError as e:
        raise FormatError(str(e)) from None
    if not check.valid:
        raise FormatError(f"not a Latin square: {check.violation}")
    return LatinSquare(order=q, grid=grid)


def format_latin(square: LatinSquare, header=None) -> str:
    rows = "\n".join(" ".join(map(str, row)) for row in square.grid)
    return f"{_comment(header)}{square.order}\n{rows}\n"


def read_latin(path: str) -> LatinSquare:
    return parse_latin(_read_text(path))


def write_latin(square: LatinSquare, path: str, header=None):
    _write_text(path, format_latin(square, header))


def parse_parity_check(text: str) -> ParityCheckMatrix:
    """``q k n`` then k rows of n field elements in 0..q-1."""
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("missing 'q k n' header line")
    number, tokens = lines[0]
    if len(tokens) != 3:
        raise FormatError("header must be 'q k n'", number)
    q, k, n = _integers(tokens, number)
    rows = lines[1:]
    if len(rows) != k:
        raise FormatError(f"expected {k} rows, found {len(rows)}")
    matrix = []
    for number, tokens in rows:
        row = _integers(tokens, number)
        if len(row) != n:
            raise FormatError(f"row has {len(row)} entries, expected {n}", number)
        if any(not 0 <= entry < q for entry in row):
            raise FormatError(f"entry outside 0..{q - 1}", number)
        matrix.append(row)
    return ParityCheckMatrix(field_for(q), matrix)


def read_parity_check(path: str) -> ParityCheckMatrix:
    return parse_parity_check(_read_text(path))


def read_edgelist(path: str) -> GenericGraph:
    if not os.path.exists(path):
        raise FileNotFoundError(f"file not found: {path}")
    try:
        graph = nx.read_edgelist(path, comments="#", nodetype=str, data=False)
    except (TypeError, IndexError) as e:
        raise FormatError(f"unreadable edge list {path}: {e}") from None
    if graph.number_of_nodes() == 0:
        raise FormatError(f"edge list {path} has no edges")
    logger.info(f"Read graph with {graph.number_of_nodes()} vertices from {path}")
    return GenericGraph(graph)
