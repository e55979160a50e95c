import io

import pytest
from hypothesis import given, strategies as st

from softaug.errors import DataError
from softaug.textops import (
    SynonymLexicon,
    detokenize,
    is_stopword,
    load_bundled_lexicon,
    load_lexicon,
    tokenize,
)


def lex_from(text: str) -> SynonymLexicon:
    return load_lexicon(io.BytesIO(text.encode("utf-8")))


class TestTokenize:
    def test_whitespace_split(self):
        assert tokenize("a good movie") == ["a", "good", "movie"]

    def test_empty(self):
        assert tokenize("") == []
        assert tokenize("   \t ") == []

    def test_preserves_internal_punctuation(self):
        assert tokenize("well-made , fun") == ["well-made", ",", "fun"]


class TestDetokenize:
    def test_join(self):
        assert detokenize(["a", "good", "movie"]) == "a good movie"

    def test_empty(self):
        assert detokenize([]) == ""

    def test_singleton(self):
        assert detokenize(["x"]) == "x"


@given(st.lists(st.text(alphabet=st.characters(blacklist_categories=("Zs", "Cc")), min_size=1)))
def test_round_trip(tokens):
    s = " ".join(tokens)
    assert detokenize(tokenize(s)) == s


class TestLoadLexicon:
    def test_direct_parse(self):
        lex = lex_from("good\tgreat,fine")
        assert lex.synonyms("good") == ["great", "fine"]

    def test_duplicate_headwords_merge(self):
        lex = lex_from("good\tgreat\ngood\tfine")
        assert lex.synonyms("good") == ["great", "fine"]

    def test_self_synonym_dropped(self):
        lex = lex_from("good\tgood,great")
        assert lex.synonyms("good") == ["great"]

    def test_comments_and_blanks_ignored(self):
        lex = lex_from("# a comment\n\ngood\tgreat\n")
        assert lex.synonyms("good") == ["great"]

    def test_missing_tab_names_line(self):
        with pytest.raises(DataError, match="line 2"):
            lex_from("good\tgreat\nbadline")

    def test_empty_synonym_field_names_line(self):
        with pytest.raises(DataError, match="line 1"):
            lex_from("good\t")

    def test_empty_synonym_in_list(self):
        with pytest.raises(DataError, match="line 1"):
            lex_from("good\tgreat,,fine")


class TestSynonyms:
    def test_case_insensitive(self):
        lex = lex_from("good\tgreat")
        assert lex.synonyms("Good") == ["great"]

    def test_absent_word_returns_empty(self):
        lex = lex_from("good\tgreat")
        assert lex.synonyms("zzyzx") == []

    def test_file_order_preserved(self):
        lex = lex_from("big\thuge,vast,giant")
        assert lex.synonyms("big") == ["huge", "vast", "giant"]


def test_bundled_lexicon_loads_and_excludes_self():
    lex = load_bundled_lexicon()
    assert len(lex) > 500
    for word in ("good", "terrible", "movie"):
        syns = lex.synonyms(word)
        assert syns and word not in syns


class TestStopwords:
    def test_canonical_stopword(self):
        assert is_stopword("the")

    def test_content_word(self):
        assert not is_stopword("movie")

    def test_case_insensitive(self):
        assert is_stopword("The")
