"""Prefix-code machinery: construction, verification, file I/O."""
import itertools
from fractions import Fraction

import pytest

from dymatch import (CodeFormatError, DyadicPmf, PrefixCode, SymbolAlphabet,
                     canonical_code, huffman, load_code, parse_code_table,
                     save_code, verify_kraft)
from dymatch.facade import matcher_code, source_code

ABC = SymbolAlphabet(("a", "b", "c"))


class TestSymbolAlphabet:
    def test_ordering_and_lookup(self):
        assert ABC.index("b") == 1
        assert "c" in ABC and "z" not in ABC
        assert list(ABC) == ["a", "b", "c"]

    def test_space_allowed(self):
        alpha = SymbolAlphabet(("a", " "))
        assert alpha.index(" ") == 1

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            SymbolAlphabet(("a", "a"))

    def test_rejects_comment_char(self):
        with pytest.raises(ValueError):
            SymbolAlphabet(("a", "#"))


class TestPrefixCode:
    def test_basic_lookup(self):
        code = PrefixCode([("a", "0"), ("b", "10"), ("c", "11")])
        assert code.bits_for("b") == "10"
        assert code.symbols == ("a", "b", "c")
        assert code.max_length == 2
        assert code.is_complete

    def test_rejects_prefix_violation(self):
        with pytest.raises(ValueError):
            PrefixCode([("a", "0"), ("b", "01")])

    def test_rejects_duplicate_symbol(self):
        with pytest.raises(ValueError):
            PrefixCode([("a", "0"), ("a", "1")])

    def test_rejects_bad_bits(self):
        with pytest.raises(ValueError):
            PrefixCode([("a", "0x1")])

    def test_incomplete_allowed_but_flagged(self):
        code = PrefixCode([("a", "0"), ("b", "10")])
        assert not code.is_complete
        assert verify_kraft(code) == Fraction(3, 4)

    def test_immutable(self):
        code = PrefixCode([("a", "0"), ("b", "1")])
        with pytest.raises(AttributeError):
            code.direction = "matcher"

    def test_direction_validated(self):
        with pytest.raises(ValueError):
            PrefixCode([("a", "0"), ("b", "1")], direction="sideways")


class TestCanonicalCode:
    def test_three_symbols(self):
        code = canonical_code(DyadicPmf((1, 2, 2)), ABC)
        assert dict(code.entries) == {"a": "0", "b": "10", "c": "11"}

    def test_four_equal(self):
        code = canonical_code(DyadicPmf((2, 2, 2, 2)),
                              SymbolAlphabet(("a", "b", "c", "d")))
        assert [b for _, b in code.entries] == ["00", "01", "10", "11"]

    def test_lengths_survive(self):
        d = DyadicPmf((3, 3, 2, 2, 3, 3))
        code = canonical_code(d, SymbolAlphabet(tuple("abcdef")))
        assert sorted(len(b) for _, b in code.entries) == sorted(
            l for l in d.lengths)
        assert code.is_complete

    def test_dropped_symbols_get_no_codeword(self):
        code = canonical_code(DyadicPmf((1, None, 1)), ABC)
        assert code.symbols == ("a", "c")

    def test_alphabet_index_breaks_length_ties(self):
        # b and c share length 2; b comes first in the alphabet
        code = canonical_code(DyadicPmf((2, 2, 1)), ABC)
        assert dict(code.entries) == {"c": "0", "a": "10", "b": "11"}

    def test_rejects_empty_codeword(self):
        with pytest.raises(ValueError):
            canonical_code(DyadicPmf((0, None)), SymbolAlphabet(("a", "b")))

    def test_matcher_length_multiset(self):
        # same multiset as the shipped table; bit patterns are canonical,
        # not the shipped ones
        shipped = matcher_code()
        lengths = tuple(len(b) for _, b in shipped.entries)
        blocks = SymbolAlphabet(tuple("".join(p) for p in
                                      itertools.product("lrm", repeat=3)))
        rebuilt = canonical_code(DyadicPmf(lengths), blocks)
        assert sorted(len(b) for _, b in rebuilt.entries) == sorted(lengths)
        assert rebuilt.is_complete


def _min_expected_length(freqs) -> float:
    """Brute-force optimum over all complete codes of len(freqs) symbols."""
    n = len(freqs)
    best = float("inf")
    for lengths in itertools.product(range(1, 7), repeat=n):
        if sum(Fraction(1, 2 ** l) for l in lengths) != 1:
            continue
        # optimal assignment pairs short lengths with heavy symbols
        cost = sum(f * l for f, l in zip(sorted(freqs, reverse=True),
                                         sorted(lengths)))
        best = min(best, cost)
    return best / sum(freqs)


class TestHuffman:
    def test_two_symbols(self):
        code = huffman((1, 1), SymbolAlphabet(("a", "b")))
        assert dict(code.entries) == {"a": "0", "b": "1"}

    def test_textbook_case(self):
        code = huffman((4, 2, 1, 1), SymbolAlphabet(tuple("abcd")))
        assert [len(code.bits_for(s)) for s in "abcd"] == [1, 2, 3, 3]
        expected = sum(f * len(code.bits_for(s))
                       for f, s in zip((4, 2, 1, 1), "abcd")) / 8
        assert expected == 1.75

    def test_optimal_on_small_alphabets(self):
        cases = [(5, 3, 2, 1), (1, 1, 1, 1, 1), (8, 4, 2, 1, 1),
                 (3, 3, 2, 2, 1, 1)]
        for freqs in cases:
            alpha = SymbolAlphabet(tuple("abcdef"[:len(freqs)]))
            code = huffman(freqs, alpha)
            got = sum(f * len(code.bits_for(s))
                      for f, s in zip(freqs, alpha)) / sum(freqs)
            assert got == pytest.approx(_min_expected_length(freqs),
                                        abs=1e-12), freqs

    def test_deterministic_ties(self):
        a = huffman((1, 1, 1, 1), SymbolAlphabet(tuple("abcd")))
        b = huffman((1, 1, 1, 1), SymbolAlphabet(tuple("abcd")))
        assert a == b

    def test_rejects_zero_frequency(self):
        with pytest.raises(ValueError):
            huffman((1, 0), SymbolAlphabet(("a", "b")))

    def test_complete_always(self):
        code = huffman((7, 5, 2, 1, 1), SymbolAlphabet(tuple("abcde")))
        assert code.is_complete


class TestShippedTables:
    def test_source_kraft_exactly_one(self):
        assert verify_kraft(source_code()) == 1

    def test_matcher_kraft_exactly_one(self):
        assert verify_kraft(matcher_code()) == 1

    def test_source_shape(self):
        code = source_code()
        assert len(code) == 27
        assert code.bits_for("e") == "110"
        assert code.bits_for(" ") == "000"
        lengths = sorted(len(b) for _, b in code.entries)
        assert lengths == [3, 3, 4, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 5,
                           6, 6, 6, 6, 6, 8, 8, 9, 9, 9, 9]

    def test_matcher_shape(self):
        code = matcher_code()
        assert len(code) == 27
        assert code.bits_for("lll") == "0010"
        counts = {}
        for _, b in code.entries:
            counts[len(b)] = counts.get(len(b), 0) + 1
        assert counts == {4: 9, 5: 11, 6: 5, 7: 2}


class TestCodeTableIO:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "code.tsv"
        save_code(source_code(), path, header="round trip check")
        again = load_code(path, direction="source")
        assert again == source_code()

    def test_space_symbol_round_trip(self, tmp_path):
        code = PrefixCode([(" ", "0"), ("a", "1")])
        path = tmp_path / "space.tsv"
        save_code(code, path)
        assert load_code(path).bits_for(" ") == "0"
        assert "_\t0" in path.read_text()

    def test_underscore_symbol_rejected_on_save(self, tmp_path):
        code = PrefixCode([("x_y", "0"), ("a", "1")])
        with pytest.raises(ValueError):
            save_code(code, tmp_path / "bad.tsv")

    def test_parse_reports_line_and_column(self):
        with pytest.raises(CodeFormatError) as err:
            parse_code_table("a\t010\nb\t01x\n")
        assert err.value.line == 2
        assert err.value.column == 5
        assert "line 2" in str(err.value)

    def test_parse_rejects_missing_tab(self):
        with pytest.raises(CodeFormatError) as err:
            parse_code_table("a 010\n")
        assert err.value.line == 1

    def test_parse_rejects_duplicates(self):
        with pytest.raises(CodeFormatError):
            parse_code_table("a\t0\na\t1\n")
        with pytest.raises(CodeFormatError):
            parse_code_table("a\t0\nb\t0\n")

    def test_parse_rejects_empty(self):
        with pytest.raises(CodeFormatError):
            parse_code_table("# only a comment\n")

    def test_load_rejects_prefix_violation(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("a\t0\nb\t01\n")
        with pytest.raises(CodeFormatError):
            load_code(path)

    def test_comments_and_blanks_ignored(self):
        pairs = parse_code_table("# header\n\na\t0\n  # indented\nb\t1\n")
        assert pairs == [("a", "0"), ("b", "1")]
