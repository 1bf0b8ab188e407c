import argparse
import json
import logging
import sys

from config import Config
from constants import (
    EXIT_BUDGET,
    EXIT_FAIL,
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL,
    EXIT_PASS,
    EXIT_PRECONDITION,
    PACKAGE_NAME,
    VERSION,
)
from idcodes.bounds import check_layer_claims, layer_analysis, lower_bounds, ratio_report
from idcodes.cache import ResultCache
from idcodes.codec import (
    format_code,
    format_latin,
    read_code,
    read_edgelist,
    read_latin,
    read_parity_check,
    write_code,
    write_latin,
)
from idcodes.construct3 import (
    best_known_code,
    construct_c1,
    construct_cl,
    construct_cq,
    construct_ct,
    diagonal,
    extend_identifying,
)
from idcodes.errors import BudgetExceededError, InputError, InternalError, PreconditionError
from idcodes.graph import Code, HammingGraph, example_graph
from idcodes.latin import code_to_latin, cyclic_latin, latin_to_code
from idcodes.linear import code_from_parity_check, direct_sum_extend, sid_coset_construction, sld_repeated_column
from idcodes.models import Property
from idcodes.report import ReportGenerator, to_key_value
from idcodes.search import SearchProblem, optimal_size, search
from idcodes.verify import hamming_sid_sld_check, verify, verify_all

logger = logging.getLogger(__name__)

FAMILIES = ("cq", "c1", "cl", "ct", "ext3", "sid-coset", "sld-repeat", "latin-sld", "parity", "best")
PROPERTIES = [p.value for p in Property]
HIDDEN_ARGS = ("handler", "command", "format", "verbose", "quiet")


def _header(args) -> str:
    params = " ".join(
        f"{key}={value}"
        for key, value in sorted(vars(args).items())
        if key not in HIDDEN_ARGS and value not in (None, False)
    )
    return f"# {PACKAGE_NAME} {VERSION} {args.command} {params}".rstrip()


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _require(args, *names):
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise InputError(f"{args.command} --family {args.family} needs {', '.join(missing)}")


def _output(args, model, text: str):
    if args.format == "json":
        data = model.model_dump(mode="json") if hasattr(model, "model_dump") else model
        _emit(json.dumps(data, indent=2))
    elif args.format == "kv":
        _emit(to_key_value(model))
    else:
        _emit(text)


def _build(args) -> Code:
    family = args.family
    if family == "cq":
        _require(args, "q")
        return construct_cq(args.q)
    if family == "c1":
        return construct_c1()
    if family == "cl":
        return construct_cl()
    if family == "ct":
        _require(args, "t")
        return construct_ct(args.t)
    if family == "ext3":
        _require(args, "r")
        base = read_code(args.input) if args.input else construct_c1()
        return extend_identifying(base, args.r)
    if family == "sid-coset":
        _require(args, "q", "k")
        code = sid_coset_construction(args.q, args.k)
        for _ in range(args.direct_sum):
            code = direct_sum_extend(code)
        return code
    if family == "sld-repeat":
        _require(args, "q", "k")
        return sld_repeated_column(args.q, args.k, args.l or 0)
    if family == "latin-sld":
        if args.latin:
            return latin_to_code(read_latin(args.latin))
        _require(args, "q")
        return latin_to_code(cyclic_latin(args.q))
    if family == "parity":
        if not args.input:
            raise InputError("construct --family parity needs --in PARITY_CHECK_FILE")
        return code_from_parity_check(read_parity_check(args.input))
    _require(args, "q")
    return best_known_code(args.q)


def cmd_construct(args) -> int:
    code = _build(args)
    header = _header(args)
    if code.graph.deleted:
        # the file format carries no deletions; readers use --delete-diagonal
        code = code.with_graph(HammingGraph(code.graph.q, code.graph.n))
    if args.out:
        write_code(code, args.out, header=[header[2:]])
        _emit(f"{header}\n# wrote {len(code)} codewords of K_{code.graph.q}^{code.graph.n} to {args.out}")
    else:
        _emit(f"{header}\n{format_code(code)}")
    return EXIT_PASS


def _ambient(args, code) -> Code:
    if not args.delete_diagonal:
        return code
    graph = code.graph
    if graph.n != 3:
        raise InputError("--delete-diagonal needs a code in some K_q^3")
    return code.with_graph(HammingGraph(graph.q, 3, deleted=diagonal(graph.q), field_mode=graph.field_mode))


def _verdict_line(report) -> str:
    line = f"{'PASS' if report.holds else 'FAIL'} {report.property.value} size={report.code_size} checked={report.checked}"
    if not report.holds:
        line += f" witness_kind={report.witness_kind!r} witness={report.witness}"
    return line


def cmd_verify(args) -> int:
    code = _ambient(args, read_code(args.input))
    header = _header(args)
    if args.property == "all":
        reports = verify_all(code)
        data = {prop.value: r.model_dump(mode="json") for prop, r in reports.items()}
        text = "\n".join(_verdict_line(r) for r in reports.values())
        _emit(header)
        _output(args, data, text)
        return EXIT_PASS if all(r.holds for r in reports.values()) else EXIT_FAIL

    prop = Property(args.property)
    if args.characterization:
        if prop not in (Property.SID, Property.SLD):
            raise InputError("--characterization applies to sid and sld only")
        report = hamming_sid_sld_check(code, prop)
    else:
        report = verify(code, prop)
    _emit(header)
    _output(args, report, _verdict_line(report))
    return EXIT_PASS if report.holds else EXIT_FAIL


def cmd_analyze(args) -> int:
    code = read_code(args.input)
    analysis = layer_analysis(code)
    lemmas = check_layer_claims(code)
    generator = ReportGenerator()
    text = generator.render_analysis(args.input, analysis, lemmas)
    if args.html:
        generator.generate_html(f"Layer analysis of {args.input}", text, args.html)
    _emit(_header(args))
    data = {"analysis": analysis.model_dump(mode="json"), "lemmas": lemmas.model_dump(mode="json")}
    _output(args, data, text)
    for failure in lemmas.failures():
        logger.error(f"Layer check failed on an identifying code: {failure.name} ({failure.detail})")
    return EXIT_PASS if lemmas.all_hold() else EXIT_FAIL


def cmd_bounds(args) -> int:
    record = lower_bounds(args.q, args.n)
    ratio = ratio_report(args.q, args.k) if args.k is not None else None
    text = ReportGenerator().render_bounds(record, ratio)
    data = {"bounds": record.model_dump(mode="json")}
    if ratio is not None:
        data["ratio"] = ratio.model_dump(mode="json")
    _emit(_header(args))
    _output(args, data, text)
    return EXIT_PASS


def _search_graph(args):
    kind = args.graph
    if kind == "example":
        return example_graph()
    if kind == "file":
        if not args.input:
            raise InputError("search --graph file needs --in EDGELIST")
        return read_edgelist(args.input)
    if args.q is None:
        raise InputError(f"search --graph {kind} needs --q")
    if kind == "kq3":
        return HammingGraph(args.q, 3)
    if args.n is None:
        raise InputError(f"search --graph {kind} needs --n")
    return HammingGraph(args.q, args.n, field_mode=kind == "fq")


def _witness_text(graph, result) -> str:
    summary = f"# SAT size={result.size} nodes={result.nodes}" + (" optimal" if result.optimal else "")
    if isinstance(graph, HammingGraph):
        code = Code(graph, [tuple(w) for w in result.witness])
        return f"{summary}\n{format_code(code)}"
    return summary + "\n" + "\n".join(str(label) for label in result.witness)


def cmd_search(args) -> int:
    if args.size is None and not args.optimal:
        raise InputError("search needs --size S or --optimal")
    graph = _search_graph(args)
    prop = Property(args.property)
    problem = SearchProblem(graph=graph, property=prop, size=args.size or 0, symmetry=not args.no_symmetry)

    cache = None
    if not args.no_cache:
        cache = ResultCache(Config.CACHE_DIR)
        if args.clear_cache:
            logger.info("Clearing cache...")
            cache.clear()
    label = "optimal" if args.optimal else args.size

    result = cache.get_search(graph.key, prop.value, label) if cache else None
    if result is None:
        if args.optimal:
            result = optimal_size(problem, budget=args.budget, workers=args.workers)
        else:
            result = search(problem, budget=args.budget, workers=args.workers)
        if cache:
            cache.set_search(result, size_label=label)

    _emit(_header(args))
    if result.exists:
        _output(args, result, _witness_text(graph, result))
        return EXIT_PASS
    text = f"UNSAT size={result.size}" if not args.optimal else "UNSAT no code with this property exists"
    _output(args, result, text)
    return EXIT_FAIL


def cmd_convert(args) -> int:
    header = _header(args)
    if args.to == "latin":
        square = code_to_latin(read_code(args.input))
        if args.out:
            write_latin(square, args.out, header=[header[2:]])
        else:
            _emit(f"{header}\n{format_latin(square)}")
    else:
        if args.to == "code":
            code = latin_to_code(read_latin(args.input))
        else:
            code = read_code(args.input)
            code = code.with_graph(HammingGraph(code.graph.q, code.graph.n, field_mode=args.to == "f"))
        if args.out:
            write_code(code, args.out, header=[header[2:]])
        else:
            _emit(f"{header}\n{format_code(code)}")
    if args.out:
        _emit(f"{header}\n# wrote {args.out}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PACKAGE_NAME, description="Identifying, self-identifying and self-locating-dominating codes in Hamming graphs")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", action="store_true", help="Warnings and errors only")
    commands = parser.add_subparsers(dest="command", required=True)

    formatted = argparse.ArgumentParser(add_help=False)
    formatted.add_argument("--format", choices=("text", "kv", "json"), default="text", help="Result format")

    construct = commands.add_parser("construct", help="Build a code and write it in the code file format")
    construct.add_argument("--family", choices=FAMILIES, required=True)
    construct.add_argument("--q", type=int)
    construct.add_argument("--t", type=int)
    construct.add_argument("--k", type=int)
    construct.add_argument("--l", type=int)
    construct.add_argument("--r", type=int)
    construct.add_argument("--in", dest="input", help="Base code for ext3 (default: the 15-word K_4^3 code), or the parity-check matrix for parity")
    construct.add_argument("--latin", help="Latin square file for latin-sld")
    construct.add_argument("--direct-sum", type=int, default=0, help="Apply the direct sum with F_q this many times (sid-coset)")
    construct.add_argument("--out", help="Output code file")
    construct.set_defaults(handler=cmd_construct, format="text")

    verify_parser = commands.add_parser("verify", parents=[formatted], help="Check a code file for a property")
    verify_parser.add_argument("--property", choices=PROPERTIES + ["all"], required=True)
    verify_parser.add_argument("--in", dest="input", required=True)
    verify_parser.add_argument("--delete-diagonal", action="store_true", help="Read the code in K_q^3 minus {(j,j,j)}")
    verify_parser.add_argument("--characterization", action="store_true", help="Use the Hamming covering characterization (sid/sld)")
    verify_parser.set_defaults(handler=cmd_verify)

    analyze = commands.add_parser("analyze", parents=[formatted], help="Layer statistics and layer checks of an identifying code in K_q^3")
    analyze.add_argument("--in", dest="input", required=True)
    analyze.add_argument("--html", help="Also write an HTML report here")
    analyze.set_defaults(handler=cmd_analyze)

    bounds = commands.add_parser("bounds", parents=[formatted], help="Lower bounds and best known upper bound")
    bounds.add_argument("--q", type=int, required=True)
    bounds.add_argument("--n", type=int, default=3)
    bounds.add_argument("--k", type=int, help="Also compare the repeated-column SLD code of redundancy k")
    bounds.set_defaults(handler=cmd_bounds)

    search_parser = commands.add_parser("search", parents=[formatted], help="Exact search for a code of a given size")
    search_parser.add_argument("--graph", choices=("kq3", "kqn", "fq", "file", "example"), required=True)
    search_parser.add_argument("--q", type=int)
    search_parser.add_argument("--n", type=int)
    search_parser.add_argument("--in", dest="input", help="Edge list for --graph file")
    search_parser.add_argument("--property", choices=PROPERTIES, required=True)
    search_parser.add_argument("--size", type=int)
    search_parser.add_argument("--optimal", action="store_true", help="Find the smallest size")
    search_parser.add_argument("--workers", type=int)
    search_parser.add_argument("--budget", type=int, help="Node budget per search task")
    search_parser.add_argument("--no-symmetry", action="store_true")
    search_parser.add_argument("--no-cache", action="store_true")
    search_parser.add_argument("--clear-cache", action="store_true", help="Clear the cache before running")
    search_parser.set_defaults(handler=cmd_search)

    convert = commands.add_parser("convert", help="Switch coordinate mode, or map Latin squares to and from codes")
    convert.add_argument("--in", dest="input", required=True)
    convert.add_argument("--to", choices=("k", "f", "latin", "code"), required=True)
    convert.add_argument("--out")
    convert.set_defaults(handler=cmd_convert, format="text")
    return parser


def _configure_logging(args):
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.getLogger().setLevel(level)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT_ERROR
    _configure_logging(args)

    try:
        return args.handler(args)
    except FileNotFoundError as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT_ERROR
    except PreconditionError as e:
        logger.error(f"Precondition not met: {e}")
        return EXIT_PRECONDITION
    except InputError as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT_ERROR
    except BudgetExceededError as e:
        logger.error(f"Refused: {e}")
        return EXIT_BUDGET
    except InternalError as e:
        logger.error(f"Internal error: {e}")
        return EXIT_INTERNAL
    except ValueError as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT_ERROR
