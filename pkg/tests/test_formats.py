"""
Test Output Formats

JSON documents, the terms table renderers and DOT output.
"""

import io

import pytest

from forestcount.errors import DomainError
from forestcount.forest_model import ROOT, PPRForest, RootedForest, UnrootedForest
from forestcount.formats import (
    dumps,
    forest_to_dot,
    forest_to_json,
    ppr_from_json,
    ppr_to_json,
    read_json_lines,
    render_terms,
    terms_rows,
    unrooted_from_json,
    write_json_line,
)


# ============================================================================
# JSON
# ============================================================================

class TestJSON:
    """Compact, schema-ordered documents"""

    def test_ppr_document(self, paired_n2):
        assert dumps(ppr_to_json(paired_n2)) == '{"n":2,"parent":[null,null,null],"pairs":[[1,2]]}'

    def test_ppr_from_json(self, paired_n2):
        doc = {"n": 2, "parent": [None, None, None], "pairs": [[2, 1]]}
        assert ppr_from_json(doc) == paired_n2

    def test_ppr_from_json_leaves_invariants_to_the_validator(self):
        # shape is fine, pairing is not
        f = ppr_from_json({"n": 2, "parent": [None, None, 0], "pairs": []})
        assert f.parent == (ROOT, ROOT, 0)

    @pytest.mark.parametrize("doc", [
        [],
        {"n": 2, "parent": [None, 0, 0]},
        {"n": -1, "parent": [], "pairs": []},
        {"n": True, "parent": [None], "pairs": []},
        {"n": 1, "parent": [None, "0"], "pairs": []},
        {"n": 2, "parent": [None, None, None], "pairs": [[1, 2, 3]]},
    ])
    def test_ppr_from_json_rejects_bad_shapes(self, doc):
        with pytest.raises(DomainError):
            ppr_from_json(doc)

    def test_other_documents(self):
        assert forest_to_json(UnrootedForest(3, ((2, 3),))) == {'n': 3, 'edges': [[2, 3]]}
        assert forest_to_json(RootedForest(2, (ROOT, ROOT, 1))) == {'n': 2, 'parent': [None, None, 1]}
        assert unrooted_from_json({'n': 3, 'edges': [[3, 2]]}) == UnrootedForest(3, ((2, 3),))

    def test_json_lines(self):
        # Arrange
        out = io.StringIO()

        # Act
        write_json_line({"a": 1}, out)
        write_json_line({"b": [1, None]}, out)
        parsed = list(read_json_lines(io.StringIO(out.getvalue() + "\n")))

        # Assert
        assert out.getvalue() == '{"a":1}\n{"b":[1,null]}\n'
        assert parsed == [{"a": 1}, {"b": [1, None]}]

    def test_bad_json_line(self):
        with pytest.raises(DomainError, match="line 2"):
            list(read_json_lines(io.StringIO('{"n":1}\n{oops\n')))

    def test_deeply_nested_line(self):
        # Arrange
        line = "[" * 100000 + "]" * 100000 + "\n"

        # Act & Assert
        with pytest.raises(DomainError, match="line 1"):
            list(read_json_lines(io.StringIO(line)))


# ============================================================================
# Terms Table
# ============================================================================

class TestTermsTable:
    """One renderer per format"""

    def test_rows(self):
        assert terms_rows(2) == [
            {'j': 0, 'A': 1, 'B': 3, 'sign': '+', 'term': 3, 'partial_sum': 3},
            {'j': 1, 'A': 1, 'B': 1, 'sign': '-', 'term': 1, 'partial_sum': 2},
        ]
        assert terms_rows(0) == [{'j': 0, 'A': 1, 'B': 1, 'sign': '+', 'term': 1, 'partial_sum': 1}]

    def test_csv(self):
        assert render_terms(terms_rows(3), 'csv') == (
            "j,A,B,sign,term,partial_sum\n"
            "0,1,16,+,16,16\n"
            "1,3,3,-,9,7\n"
        )

    def test_json(self):
        assert render_terms(terms_rows(2), 'json').splitlines()[1] == (
            '{"j":1,"A":1,"B":1,"sign":"-","term":1,"partial_sum":2}'
        )

    def test_plain(self):
        assert render_terms(terms_rows(2), 'plain') == (
            "j A B sign term partial_sum\n"
            "0 1 3 + 3 3\n"
            "1 1 1 - 1 2\n"
        )

    def test_dot_is_not_a_table_format(self):
        with pytest.raises(DomainError):
            render_terms(terms_rows(2), 'dot')


# ============================================================================
# DOT
# ============================================================================

class TestDOT:
    """Graphviz text with parent -> child edges"""

    def test_ppr(self):
        # Arrange
        f = PPRForest(4, (ROOT, 0, ROOT, ROOT, 2), ((2, 3),))

        # Act
        text = forest_to_dot(f)

        # Assert
        assert text.startswith("digraph PPRForest {\n")
        assert "  0 [shape=doublecircle, style=filled, fillcolor=lightgrey];" in text
        assert "  subgraph cluster_pair_2_3 {" in text
        assert "    2 [shape=doublecircle];" in text
        assert "    4;" in text
        assert "  0 -> 1;" in text
        assert "  2 -> 4;" in text
        assert text.endswith("}\n")

    def test_unrooted(self):
        text = forest_to_dot(UnrootedForest(3, ((1, 3),)))
        assert text.startswith("graph UnrootedForest {")
        assert "  1 -- 3;" in text
        assert "  2;" in text

    def test_rooted(self):
        text = forest_to_dot(RootedForest(2, (ROOT, ROOT, 1)))
        assert "  1 [shape=doublecircle];" in text
        assert "  1 -> 2;" in text

    def test_unknown_structure(self):
        with pytest.raises(DomainError):
            forest_to_dot("not a forest")
