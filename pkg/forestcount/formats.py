"""
Output Formats
JSON, newline-delimited JSON, CSV, DOT and plain renderers for the CLI

JSON documents are written compactly (no insignificant whitespace) with
keys in schema order, so every rendering is byte-stable across runs.
"""

import csv
import io
import json
import sys
from typing import Any, Dict, Iterator, List, Optional, TextIO

from forestcount.errors import DomainError
from forestcount.exactmath import takacs_terms
from forestcount.forest_model import (
    ROOT,
    PPRForest,
    RootedForest,
    UnrootedForest,
    child_lists,
    tree_vertices,
)

FORMATS = ('json', 'csv', 'dot', 'plain')

TERMS_HEADER = ['j', 'A', 'B', 'sign', 'term', 'partial_sum']


# ============================================================================
# JSON
# ============================================================================

def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(',', ':'))


def write_json_line(obj: Any, stream: Optional[TextIO] = None):
    """Write obj as one compact JSON line, then flush"""
    out = stream or sys.stdout
    out.write(dumps(obj))
    out.write("\n")
    out.flush()


def read_json_lines(stream: Optional[TextIO] = None) -> Iterator[Any]:
    """Parse newline-delimited JSON, skipping blank lines"""
    for number, line in enumerate(stream or sys.stdin, 1):
        if not line.strip():
            continue
        try:
            yield json.loads(line)
        except json.JSONDecodeError as e:
            raise DomainError(f"line {number}: not valid JSON ({e.msg})") from e
        except RecursionError as e:
            raise DomainError(f"line {number}: JSON nested too deeply") from e


def ppr_to_json(f: PPRForest) -> Dict[str, Any]:
    return {
        'n': f.n,
        'parent': list(f.parent),
        'pairs': [list(pair) for pair in f.pairs],
    }


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def ppr_from_json(doc: Any) -> PPRForest:
    """
    Build a PPRForest from its JSON document

    Only the document shape is checked here; invariants are left to
    validate_ppr so that callers can report them separately.
    """
    if not isinstance(doc, dict):
        raise DomainError("PPR forest JSON must be an object")
    missing = [key for key in ('n', 'parent', 'pairs') if key not in doc]
    if missing:
        raise DomainError(f"PPR forest JSON is missing {', '.join(missing)}")

    n, parent, pairs = doc['n'], doc['parent'], doc['pairs']
    if not _is_int(n) or n < 0:
        raise DomainError(f"'n' must be a nonnegative integer, got {n!r}")
    if not isinstance(parent, list) or not all(p is None or _is_int(p) for p in parent):
        raise DomainError("'parent' must be a list of integers and nulls")
    if not isinstance(pairs, list) or not all(
        isinstance(pair, list) and len(pair) == 2 and all(_is_int(x) for x in pair)
        for pair in pairs
    ):
        raise DomainError("'pairs' must be a list of two-integer lists")

    return PPRForest(n, tuple(parent), tuple(tuple(pair) for pair in pairs))


def unrooted_to_json(g: UnrootedForest) -> Dict[str, Any]:
    return {'n': g.n, 'edges': [list(edge) for edge in g.edges]}


def unrooted_from_json(doc: Any) -> UnrootedForest:
    if not isinstance(doc, dict) or 'n' not in doc or 'edges' not in doc:
        raise DomainError("unrooted forest JSON must be an object with 'n' and 'edges'")
    n, edges = doc['n'], doc['edges']
    if not _is_int(n) or n < 0:
        raise DomainError(f"'n' must be a nonnegative integer, got {n!r}")
    if not isinstance(edges, list) or not all(
        isinstance(edge, list) and len(edge) == 2 and all(_is_int(x) for x in edge)
        for edge in edges
    ):
        raise DomainError("'edges' must be a list of two-integer lists")
    return UnrootedForest(n, tuple(tuple(edge) for edge in edges))


def rooted_to_json(f: RootedForest) -> Dict[str, Any]:
    # entry 0 is the unused placeholder and is always null
    return {'n': f.n_vertices, 'parent': list(f.parent)}


def forest_to_json(structure) -> Dict[str, Any]:
    if isinstance(structure, PPRForest):
        return ppr_to_json(structure)
    if isinstance(structure, UnrootedForest):
        return unrooted_to_json(structure)
    if isinstance(structure, RootedForest):
        return rooted_to_json(structure)
    raise DomainError(f"cannot serialize {type(structure).__name__}")


# ============================================================================
# Terms Table
# ============================================================================

def terms_rows(n: int) -> List[Dict[str, Any]]:
    """Rows j, A, B, sign, term, partial_sum of the alternating sum"""
    return [
        {
            'j': row.j,
            'A': row.a,
            'B': row.b,
            'sign': row.term.sign_symbol,
            'term': row.term.magnitude,
            'partial_sum': row.partial_sum,
        }
        for row in takacs_terms(n)
    ]


def render_terms(rows: List[Dict[str, Any]], fmt: str) -> str:
    if fmt == 'json':
        return ''.join(dumps(row) + "\n" for row in rows)

    if fmt == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(TERMS_HEADER)
        for row in rows:
            writer.writerow([row[key] for key in TERMS_HEADER])
        return buffer.getvalue()

    if fmt == 'plain':
        lines = [' '.join(TERMS_HEADER)]
        lines.extend(' '.join(str(row[key]) for key in TERMS_HEADER) for row in rows)
        return "\n".join(lines) + "\n"

    raise DomainError(f"format '{fmt}' is not available for the terms table (use json, csv or plain)")


# ============================================================================
# DOT
# ============================================================================

def _ppr_dot(f: PPRForest) -> str:
    kids = child_lists(f.parent)
    lines = ["digraph PPRForest {", "  node [shape=circle];"]

    lines.append('  0 [shape=doublecircle, style=filled, fillcolor=lightgrey];')
    for v in sorted(tree_vertices(f, 0) - {0}):
        lines.append(f"  {v};")

    for r, s in f.pairs:
        members = sorted(tree_vertices(f, r) | tree_vertices(f, s))
        lines.append(f"  subgraph cluster_pair_{r}_{s} {{")
        lines.append("    style=dashed;")
        lines.append(f'    label="pair {r},{s}";')
        for v in members:
            shape = ' [shape=doublecircle]' if v in (r, s) else ''
            lines.append(f"    {v}{shape};")
        lines.append("  }")

    for p in range(f.n + 1):
        for w in kids[p]:
            lines.append(f"  {p} -> {w};")

    lines.append("}")
    return "\n".join(lines) + "\n"


def _unrooted_dot(g: UnrootedForest) -> str:
    lines = ["graph UnrootedForest {", "  node [shape=circle];"]
    lines.extend(f"  {v};" for v in range(1, g.n + 1))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _rooted_dot(f: RootedForest) -> str:
    lines = ["digraph RootedForest {", "  node [shape=circle];"]
    for v in range(1, f.n_vertices + 1):
        lines.append(f"  {v} [shape=doublecircle];" if f.parent[v] is ROOT else f"  {v};")
    for v in range(1, f.n_vertices + 1):
        if f.parent[v] is not ROOT:
            lines.append(f"  {f.parent[v]} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def forest_to_dot(structure) -> str:
    """Graphviz text; directed edges run parent -> child"""
    if isinstance(structure, PPRForest):
        return _ppr_dot(structure)
    if isinstance(structure, UnrootedForest):
        return _unrooted_dot(structure)
    if isinstance(structure, RootedForest):
        return _rooted_dot(structure)
    raise DomainError(f"cannot render {type(structure).__name__} as DOT")
