"""Cleaning, tokenizing, stop-words, lemmatization, vocabulary."""

import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sentibench import (
    ConfigError,
    Lemmatizer,
    StopWordList,
    build_vocabulary,
    clean_text,
    load_dataset,
    load_lemma_exceptions,
    load_stopwords,
    preprocess_tweet,
    remove_stopwords,
    tokenize,
)
from helpers import (
    EXAMPLE_TOKENS_1,
    EXAMPLE_TOKENS_2,
    EXAMPLE_TWEET_1,
    EXAMPLE_TWEET_2,
    EXAMPLE_VOCAB,
    FIXTURE_CSV,
)


class TestCleanText:
    def test_symbols_and_case(self):
        assert clean_text("#Late Service @McDonald") == "late service mcdonald"

    def test_empty(self):
        assert clean_text("") == ""

    def test_character_rules_by_hand(self):
        assert clean_text("A1b2-C3!") == "a b c"

    def test_non_ascii_letters_kept_emoji_dropped(self):
        assert clean_text("Café ☕ was réservé 4 us!") == "café was réservé us"

    def test_underscore_is_not_a_letter(self):
        assert clean_text("snake_case") == "snake case"

    @given(st.text(max_size=200))
    def test_idempotent(self, raw):
        once = clean_text(raw)
        assert clean_text(once) == once

    @given(st.text(max_size=200))
    def test_no_digits_punctuation_or_uppercase(self, raw):
        cleaned = clean_text(raw)
        assert cleaned == cleaned.lower()
        assert not any(ch.isdigit() for ch in cleaned)
        assert not any(ch in string.punctuation for ch in cleaned)


class TestTokenize:
    def test_simple_split(self):
        assert tokenize("late service mcdonald") == ["late", "service", "mcdonald"]

    def test_whitespace_only(self):
        assert tokenize("  ") == []

    def test_hand_split(self):
        tokens = tokenize("delicious hamburger but slow service")
        assert tokens == ["delicious", "hamburger", "but", "slow", "service"]


class TestStopWords:
    def test_default_list_has_required_words(self):
        stoplist = load_stopwords()
        for word in ("he", "she", "the", "is", "that", "but", "and"):
            assert word in stoplist

    def test_removal_keeps_order(self):
        stoplist = load_stopwords()
        tokens = ["delicious", "hamburger", "but", "slow", "service"]
        assert remove_stopwords(tokens, stoplist) == [
            "delicious",
            "hamburger",
            "slow",
            "service",
        ]

    def test_all_stopwords_removed(self):
        assert remove_stopwords(["the", "is", "that"], load_stopwords()) == []

    def test_no_stopwords_is_identity(self):
        tokens = ["flight", "delayed", "badly"]
        assert remove_stopwords(tokens, load_stopwords()) == tokens

    def test_custom_file_with_comments(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text(
            "# tiny list\nhe\nshe\nthe\nis\nthat\nbut  # trailing comment\n\n"
        )
        stoplist = load_stopwords(str(path))
        assert "but" in stoplist
        assert len(stoplist) == 6

    def test_missing_required_words_rejected(self):
        with pytest.raises(ConfigError, match="required"):
            StopWordList(words=frozenset({"the", "is"}))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_stopwords(str(tmp_path / "none.txt"))


class TestLemmatizer:
    def test_ing_with_stem_repair(self):
        assert Lemmatizer().lemmatize("testing") == "test"

    def test_no_rule_matches(self):
        assert Lemmatizer().lemmatize("burger") == "burger"

    def test_plural_strip(self):
        assert Lemmatizer().lemmatize("services") == "service"

    @pytest.mark.parametrize(
        "word,lemma",
        [
            ("running", "run"),
            ("taking", "take"),
            ("delayed", "delay"),
            ("loved", "love"),
            ("classes", "class"),
            ("cities", "city"),
            ("boxes", "box"),
            ("meetings", "meet"),  # stacked suffixes reduce fully
            ("delicious", "delicious"),  # -us guard
            ("miss", "miss"),
            ("need", "need"),  # measure guard
            ("king", "king"),
        ],
    )
    def test_rule_table(self, word, lemma):
        assert Lemmatizer().lemmatize(word) == lemma

    def test_exceptions_consulted_first(self):
        lem = Lemmatizer({"testing": "taste"})
        assert lem.lemmatize("testing") == "taste"
        assert lem.lemmatize("resting") == "rest"

    def test_idempotent_on_fixture_corpus(self):
        lem = Lemmatizer()
        stoplist = load_stopwords()
        for record in load_dataset(FIXTURE_CSV):
            for token in preprocess_tweet(record.text, stoplist, lem):
                assert lem.lemmatize(token) == token

    def test_idempotent_on_common_words(self):
        lem = Lemmatizer()
        words = (
            "flights booking cancelled delayed waiting hours bags thanks "
            "amazing crews landings services runnings used tries tried"
        ).split()
        for word in words:
            once = lem.lemmatize(word)
            assert lem.lemmatize(once) == once


class TestLemmaExceptionsFile:
    def test_two_column_format(self, tmp_path):
        path = tmp_path / "exc.txt"
        path.write_text("# overrides\ntesting taste\nGeese goose\n")
        exceptions = load_lemma_exceptions(str(path))
        assert exceptions == {"testing": "taste", "geese": "goose"}

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / "exc.txt"
        path.write_text("one two three\n")
        with pytest.raises(ConfigError, match="line 1"):
            load_lemma_exceptions(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_lemma_exceptions(str(tmp_path / "none.txt"))


class TestPreprocessTweet:
    def test_worked_example_tweet_two_keeps_duplicates(self):
        tokens = preprocess_tweet(EXAMPLE_TWEET_2, load_stopwords(), Lemmatizer())
        assert tokens == [
            "late", "service", "mcdonald", "delicious", "hamburger", "slow", "service",
        ]

    def test_worked_example_tweet_one_with_exception(self):
        lem = Lemmatizer({"testing": "taste"})
        assert preprocess_tweet(EXAMPLE_TWEET_1, load_stopwords(), lem) == EXAMPLE_TOKENS_1

    def test_empty_input(self):
        assert preprocess_tweet("", load_stopwords(), Lemmatizer()) == []

    def test_all_stopwords_yield_empty(self):
        assert preprocess_tweet("The is that!!", load_stopwords(), Lemmatizer()) == []

    @given(st.text(max_size=200))
    @settings(max_examples=60)
    def test_output_is_clean(self, raw):
        stoplist = load_stopwords()
        tokens = preprocess_tweet(raw, stoplist, Lemmatizer())
        for token in tokens:
            assert token not in stoplist
            assert token == token.lower()
            assert not any(ch.isdigit() for ch in token)
            assert " " not in token
            assert not any(ch in string.punctuation for ch in token)


class TestVocabulary:
    def test_worked_example_eleven_terms(self):
        lem = Lemmatizer({"testing": "taste"})
        stoplist = load_stopwords()
        docs = [
            preprocess_tweet(EXAMPLE_TWEET_1, stoplist, lem),
            preprocess_tweet(EXAMPLE_TWEET_2, stoplist, lem),
        ]
        vocab = build_vocabulary(docs)
        assert vocab.terms == EXAMPLE_VOCAB
        assert len(vocab) == 11

    def test_no_docs(self):
        assert len(build_vocabulary([])) == 0

    def test_duplicate_docs_add_nothing(self):
        doc = EXAMPLE_TOKENS_2
        assert build_vocabulary([doc, doc]).terms == build_vocabulary([doc]).terms

    def test_size_bounded_and_terms_occur(self):
        docs = [EXAMPLE_TOKENS_1, EXAMPLE_TOKENS_2, EXAMPLE_TOKENS_2]
        vocab = build_vocabulary(docs)
        assert len(vocab) <= sum(len(d) for d in docs)
        everything = {t for d in docs for t in d}
        assert set(vocab.terms) == everything

    def test_index_is_bijection(self):
        vocab = build_vocabulary([EXAMPLE_TOKENS_1])
        assert sorted(vocab.index.values()) == list(range(len(vocab)))
        for term, idx in vocab.index.items():
            assert vocab.terms[idx] == term
