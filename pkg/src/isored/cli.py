"""``isored`` command line.

Exit codes: 0 success, 1 spectrum contains numeric (non-exact) roots,
2 parse/validation error, 3 criterion not satisfied (a finding, not an
error), 4 numeric failure, 5 internal error.
"""

from __future__ import annotations

import argparse
import sys

from . import errors
from .equivalence import (
    keep_listed,
    keep_loops,
    matrix_spectrally_equivalent,
    min_cycle_cover,
    spectrally_equivalent,
)
from .fileformats import (
    dumps,
    load_matrix,
    load_network,
    matrix_to_doc,
    network_to_doc,
    parse_network_or_matrix,
    read_text,
)
from .linalg import RatMatrix
from .literals import format_gauss, format_ratfunc, format_vector, parse_gauss, parse_vector
from .netgraph import Network, structural_sets, validate_lambda0, validate_structural
from .preservation import check_all, check_entrywise
from .reconstruct import reconstruct_vector, vertex_depths
from .reduction import Partition, reduce_graph, reduce_matrix, reduce_onto, reduce_sequence
from .spectra import char_function, eigenvectors_at, generalized_chain, multiplicities, spectrum

EXIT_OK = 0
EXIT_NUMERIC_ROOTS = 1
EXIT_INVALID = 2
EXIT_FINDING = 3
EXIT_NUMERIC = 4
EXIT_INTERNAL = 5


class CrossValidationFailed(Exception):
    """The two reduction engines produced different matrices."""


class Finding(Exception):
    """Carries a report whose outcome is "criterion not satisfied"."""

    def __init__(self, report):
        self.report = report


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def _int_set(text):
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise errors.ParseError(f"bad vertex list {text!r}") from None
    if not out:
        raise errors.EmptySet("empty vertex list")
    return out


def _gauss(text):
    return parse_gauss(text)


def _vec(v):
    return [format_gauss(x) for x in v]


def _spectrum_doc(sp):
    out = []
    for e in sp:
        item = {"value": e.literal() if e.exact else None, "multiplicity": e.multiplicity, "exact": e.exact}
        if not e.exact:
            z = complex(e.value)
            item["approx"] = [z.real, z.imag]
            item["residual"] = e.residual
        out.append(item)
    return out


def _spectrum_table(sp):
    lines = ["eigenvalue            mult  exact"]
    for e in sp:
        lines.append(f"{e.literal():<22}{e.multiplicity:>4}  {'yes' if e.exact else 'no'}")
    return "\n".join(lines)


def _load_any(path):
    obj = parse_network_or_matrix(read_text(path))
    return obj


def _as_matrix(obj):
    return obj.adjacency() if isinstance(obj, Network) else obj


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_reduce(args):
    obj = _load_any(args.input)
    keep = _int_set(args.keep)
    if isinstance(obj, RatMatrix):
        R = reduce_matrix(obj, Partition(obj.dim, keep))
        return {"matrix": matrix_to_doc(R), "char_function": format_ratfunc(char_function(R))}, R.table()
    net = obj
    for k in keep:
        if not 1 <= k <= net.n:
            raise errors.BadVertexIndex(f"vertex {k} is not in 1..{net.n}")
    labels = [net.labels[v - 1] for v in sorted(set(keep))]
    if args.via:
        if args.method != "graph":
            raise errors.ValidationError("--via works with --method graph only")
        chain = [[net.labels[v - 1] for v in _int_set(s)] for s in args.via]
        chain.append(labels)
        red = reduce_sequence(net, chain)
    elif args.method == "block":
        if not args.allow_nonstructural:
            validate_structural(net, keep)
        red = Network.from_matrix(reduce_matrix(net.adjacency(), Partition(net.n, keep)), labels)
    elif args.allow_nonstructural:
        red = reduce_onto(net, keep)
    else:
        red = reduce_graph(net, validate_structural(net, keep))
    if args.method == "both":
        by_block = reduce_matrix(net.adjacency(), Partition(net.n, keep))
        if by_block != red.adjacency():
            raise CrossValidationFailed("branch sums and block elimination disagree")
    R = red.adjacency()
    doc = {"network": network_to_doc(red), "char_function": format_ratfunc(char_function(R))}
    table = f"kept: {list(red.labels)}\n{R.table()}\nchar: {doc['char_function']}"
    return doc, table


def cmd_spectrum(args):
    obj = _load_any(args.input)
    M = _as_matrix(obj)
    cands = [_gauss(x) for x in args.candidates.split(",")] if args.candidates else ()
    sp = spectrum(M, cands)
    doc = {"char_function": format_ratfunc(char_function(M)), "spectrum": _spectrum_doc(sp), "exact": sp.is_exact}
    lines = [f"char: {doc['char_function']}", _spectrum_table(sp)]
    if args.at:
        z = _gauss(args.at)
        rep = multiplicities(M, z)
        basis = eigenvectors_at(M, z)
        doc["at"] = {**rep.as_dict(), "eigenvectors": [_vec(b) for b in basis]}
        lines.append(f"at {z}: a={rep.algebraic} g={rep.geometric} d={rep.defect}")
        lines.extend("  eigenvector " + format_vector(b) for b in basis)
        if args.chains:
            try:
                ch = generalized_chain(M, z, args.depth)
            except errors.ChainTerminated as exc:
                doc["at"]["chain"] = None
                doc["at"]["chain_error"] = str(exc)
                lines.append(f"  chain: {exc}")
                raise Finding((doc, "\n".join(lines)))
            doc["at"]["chain"] = [_vec(v) for v in ch.vectors]
            lines.extend(f"  chain[{k + 1}] " + format_vector(v) for k, v in enumerate(ch.vectors))
    code = EXIT_OK if sp.is_exact else EXIT_NUMERIC_ROOTS
    return doc, "\n".join(lines), code


def _verdict_line(keep, v):
    c = "" if v.c is None else f" c={format_gauss(v.c) if v.exact else v.c}"
    chain = "" if v.chain_verified is None else f" chain={'ok' if v.chain_verified else 'FAILED'}"
    return f"{{{','.join(map(str, keep))}}}: {v.status}{c}{chain}"


def cmd_check_preserve(args):
    net = load_network(args.input)
    z = _gauss(args.at)
    M = net.adjacency()
    v = None
    if args.vector:
        u = parse_vector(args.vector)
    elif args.chain_depth and args.chain_depth >= 2:
        ch = generalized_chain(M, z, args.chain_depth)
        u, v = list(ch.vectors[-2]), list(ch.vectors[-1])
    else:
        u = eigenvectors_at(M, z)[0]
    if args.chain_depth and args.chain_depth >= 2 and args.vector and v is None:
        ch = generalized_chain(M, z, args.chain_depth, u=u)
        u, v = list(ch.vectors[-2]), list(ch.vectors[-1])
    if args.all_sets:
        if not args.size:
            raise errors.ValidationError("--all-sets needs --size")
        sets = [S for S in structural_sets(net, args.size) if validate_lambda0(net, S, z)]
    else:
        if not args.keep:
            raise errors.ValidationError("give --keep or --all-sets")
        sets = [validate_structural(net, _int_set(args.keep))]
    results, lines, all_ok = [], [f"u = ({format_vector(u)})"], True
    for S in sets:
        verdicts, agree = check_all(net, S, z, u)
        ver = check_entrywise(net, S, z, u, v) if v is not None else verdicts["entrywise"]
        all_ok &= ver.preserved
        item = ver.as_dict()
        item["keep"] = list(S.keep)
        item["criteria_agree"] = agree
        item["criteria"] = {k: x.status for k, x in verdicts.items()}
        results.append(item)
        lines.append(_verdict_line(S.keep, ver) + ("" if agree else "  (criteria disagree)"))
    doc = {"at": format_gauss(z), "u": _vec(u), "results": results}
    if v is not None:
        doc["v"] = _vec(v)
    if not all_ok:
        raise Finding((doc, "\n".join(lines)))
    return doc, "\n".join(lines)


def cmd_reconstruct(args):
    red = load_network(args.input)
    net = load_network(args.original_topology)
    if args.keep:
        keep = _int_set(args.keep)
    else:
        keep = [net.index_of(lab) for lab in red.labels]
    S = validate_structural(net, keep)
    z = _gauss(args.at)
    if not validate_lambda0(net, S, z):
        raise errors.NotLambda0Structural(f"the kept set is not {z}-structural")
    known = parse_vector(args.vector)
    prev = parse_vector(args.prev) if args.prev else None
    v = reconstruct_vector(net, S, z, known, prev)
    depths = vertex_depths(net, S)
    doc = {"vector": _vec(v), "depths": {str(k): d for k, d in depths.depth.items()}}
    return doc, format_vector(v)


def _rule(text):
    if text.startswith("keep:"):
        return keep_listed(_int_set(text[5:]))
    if text == "loops":
        return keep_loops()
    if text == "mincover":
        return min_cycle_cover()
    raise errors.ValidationError(f"unknown rule {text!r} (use keep:1,2 | loops | mincover)")


def cmd_equiv(args):
    G, H = load_network(args.a), load_network(args.b)
    rule = _rule(args.rule)
    w = spectrally_equivalent(G, H, rule, args.max_steps, args.max_steps, include_zero=not args.exclude_zero)
    if w is None:
        raise Finding(({"equivalent": False, "rule": rule.name}, f"not equivalent under {rule.name}"))
    doc = {"equivalent": True, "rule": rule.name, "m": w.m, "k": w.k,
           "iso": {str(a): b for a, b in w.iso.items()}}
    return doc, f"equivalent under {rule.name}: m={w.m} k={w.k} iso={w.iso}"


def cmd_equiv_matrix(args):
    A, B = load_matrix(args.a), load_matrix(args.b)
    res = matrix_spectrally_equivalent(A, B, args.dim)
    doc = {
        "equivalent": res.equivalent,
        "reductions_a": {",".join(map(str, k)): m.literals() for k, m in res.reductions_a.items()},
        "reductions_b": {",".join(map(str, k)): m.literals() for k, m in res.reductions_b.items()},
    }
    lines = []
    for name, red in (("a", res.reductions_a), ("b", res.reductions_b)):
        for k, m in red.items():
            lines.append(f"{name} keep {{{','.join(map(str, k))}}}:\n{m.table()}")
    if res.witness:
        s1, s2, perm = res.witness
        doc["witness"] = {"keep_a": list(s1), "keep_b": list(s2), "perm": list(perm)}
        lines.append(f"equivalent: {s1} ~ {s2} via {perm}")
        return doc, "\n".join(lines)
    lines.append("not equivalent")
    raise Finding((doc, "\n".join(lines)))


def cmd_validate_set(args):
    net = load_network(args.input)
    S = validate_structural(net, _int_set(args.keep))
    doc = {"keep": list(S.keep), "complement": list(S.complement), "topo_order": list(S.topo_order)}
    line = f"structural: keep {list(S.keep)}, complement order {list(S.topo_order)}"
    if args.at:
        z = _gauss(args.at)
        if not validate_lambda0(net, S, z):
            raise errors.NotLambda0Structural(f"the set is structural but not {z}-structural")
        doc["lambda0"] = format_gauss(z)
        line += f"; {z}-structural"
    return doc, line


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isored", description="Isospectral reductions of weighted networks.")
    p.add_argument("--output", choices=("table", "json"), default="table")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", help="reduce a network or matrix onto a vertex set")
    s.add_argument("--input", required=True)
    s.add_argument("--keep", required=True)
    s.add_argument("--via", action="append", help="intermediate set (repeatable), in original numbering")
    s.add_argument("--method", choices=("graph", "block", "both"), default="graph",
                   help="branch sums, block elimination, or both with a cross-check")
    s.add_argument("--allow-nonstructural", action="store_true")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("spectrum", help="eigenvalues, eigenvectors and chains")
    s.add_argument("--input", required=True)
    s.add_argument("--at")
    s.add_argument("--chains", action="store_true")
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--candidates", help="comma-separated values to try as exact roots first")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("check-preserve", help="preservation criteria for a generalized eigenvector")
    s.add_argument("--input", required=True)
    s.add_argument("--keep")
    s.add_argument("--at", required=True)
    s.add_argument("--vector", help="eigenvector (default: first canonical eigenvector)")
    s.add_argument("--chain-depth", type=int, default=0)
    s.add_argument("--all-sets", action="store_true")
    s.add_argument("--size", type=int)
    s.set_defaults(func=cmd_check_preserve)

    s = sub.add_parser("reconstruct", help="rebuild a full vector from reduced data")
    s.add_argument("--input", required=True, help="reduced network (its labels give the kept set)")
    s.add_argument("--original-topology", required=True)
    s.add_argument("--keep", help="kept set, when the reduced network carries no labels")
    s.add_argument("--at", required=True)
    s.add_argument("--vector", required=True)
    s.add_argument("--prev")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("equiv", help="spectral equivalence of two networks under a rule")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--rule", required=True, help="keep:1,4 | loops | mincover")
    s.add_argument("--max-steps", type=int, default=3)
    s.add_argument("--exclude-zero", action="store_true", help="require at least one reduction on each side")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("equiv-matrix", help="spectral equivalence of two constant matrices")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--dim", type=int, default=2)
    s.set_defaults(func=cmd_equiv_matrix)

    s = sub.add_parser("validate-set", help="check that a vertex set is structural")
    s.add_argument("--input", required=True)
    s.add_argument("--keep", required=True)
    s.add_argument("--at")
    s.set_defaults(func=cmd_validate_set)
    for s in sub.choices.values():
        s.add_argument("--output", choices=("table", "json"), default=argparse.SUPPRESS)
    return p


def _emit(args, doc, table, out):
    if args.output == "json":
        out.write(dumps(doc) + "\n")
    else:
        out.write(table + "\n")


_INVALID = (
    errors.ValidationError,
    errors.PoleError,
    errors.DivisionByZeroFunction,
    errors.SingularComplement,
    errors.SingularComplementAtLambda0,
    errors.LoopWeightEqualsLambda0,
    errors.SingularBasis,
)
_HINTS = (
    (errors.ParseError, "check the JSON document and the literal syntax (lambda is written l)"),
    (errors.DuplicateEdge, "list each edge once"),
    (errors.BadVertexIndex, "vertices are numbered 1..n"),
    (errors.CycleInComplement, "add a vertex of the reported cycle to --keep"),
    (errors.LoopWeightIsLambda, "keep the vertex whose loop weight is l"),
    (errors.NotLambda0Structural, "keep the vertex whose loop weight equals the eigenvalue there"),
    (errors.EmptySet, "give at least one vertex"),
    (errors.SingularComplement, "choose a different set to keep"),
    (errors.SingularComplementAtLambda0, "the eliminated block has this eigenvalue; keep more vertices"),
    (errors.PoleError, "a weight has a pole at this point; choose another point or set"),
)


def _hint(exc):
    for cls, hint in _HINTS:
        if isinstance(exc, cls):
            return f"\nhint: {hint}"
    return ""


_FINDINGS = (errors.NotAnEigenvalue, errors.ChainTerminated, errors.HypothesisNotMet, errors.RuleInapplicable)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        result = args.func(args)
    except Finding as f:
        doc, table = f.report
        _emit(args, doc, table, out)
        return EXIT_FINDING
    except _INVALID as exc:
        err.write(f"error: {type(exc).__name__}: {exc}{_hint(exc)}\n")
        return EXIT_INVALID
    except _FINDINGS as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_FINDING
    except CrossValidationFailed as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except errors.NumericFailure as exc:
        err.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except Exception as exc:  # pragma: no cover - last resort
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    doc, table, *code = result
    _emit(args, doc, table, out)
    return code[0] if code else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
