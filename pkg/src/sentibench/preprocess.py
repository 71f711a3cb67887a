"""Raw tweet text to cleaned, lemmatized tokens, and vocabulary building.

Pipeline: clean_text -> tokenize -> remove_stopwords -> lemmatize.
All steps are pure; Lemmatizer and StopWordList are immutable after
construction, so documents can be preprocessed concurrently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .errors import ConfigError

TokenList = list[str]

_VOWELS = set("aeiou")

# Fast path for the overwhelmingly common ASCII junk; anything exotic
# (superscripts, roman numerals, emoji) falls through to isalpha below.
_ASCII_NON_LETTER = re.compile(r"[\x00-\x40\x5b-\x60\x7b-\x7f]+")


def _keep_letters(text: str) -> str:
    return "".join(ch if ch.isalpha() else " " for ch in text)


def clean_text(raw: str) -> str:
    """Lowercase and strip every character that is not a letter.

    '#', '@', digits and other symbols turn into spaces; whitespace runs
    collapse to single spaces. Non-ASCII letters survive (lowercased);
    emoji and numeric glyphs of any script do not. Idempotent.
    """
    text = _ASCII_NON_LETTER.sub(" ", raw.lower())
    if not text.isascii():
        text = _keep_letters(text)
    return " ".join(text.split())


def tokenize(cleaned: str) -> TokenList:
    """Split cleaned text on whitespace runs, preserving order."""
    return cleaned.split()


@dataclass(frozen=True)
class StopWordList:
    """Immutable set of lowercase stop-words.

    The canonical examples (he, she, the, is, that) must always be
    present; a list without them is rejected as misconfigured.
    """

    words: frozenset[str]

    REQUIRED = frozenset({"he", "she", "the", "is", "that"})

    def __post_init__(self) -> None:
        missing = self.REQUIRED - self.words
        if missing:
            raise ConfigError(
                f"stop-word list is missing required words: {sorted(missing)}"
            )

    def __contains__(self, token: str) -> bool:
        return token in self.words

    def __len__(self) -> int:
        return len(self.words)


def _read_word_lines(text: str) -> list[str]:
    words = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.append(line.lower())
    return words


def load_stopwords(path: str | None = None) -> StopWordList:
    """Load a stop-word file (one word per line, '#' comments allowed).

    With no path, the packaged standard English list is used.
    """
    if path is None:
        text = (
            resources.files("sentibench").joinpath("data/stopwords.txt").read_text("utf-8")
        )
    else:
        try:
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ConfigError(f"cannot read stop-word file {path!r}: {exc}") from exc
    return StopWordList(words=frozenset(_read_word_lines(text)))


def remove_stopwords(tokens: Sequence[str], stoplist: StopWordList) -> TokenList:
    """Drop stop-list members, preserving the order of the rest."""
    return [t for t in tokens if t not in stoplist]


def load_lemma_exceptions(path: str) -> dict[str, str]:
    """Load a two-column ``word lemma`` exceptions file ('#' comments allowed)."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read lemma exceptions file {path!r}: {exc}") from exc
    exceptions: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ConfigError(
                f"{path}: line {lineno}: expected two columns 'word lemma', got {line!r}"
            )
        exceptions[parts[0].lower()] = parts[1].lower()
    return exceptions


def _is_vowel(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return True
    # y acts as a vowel when it follows a consonant ("fly", "city").
    return ch == "y" and i > 0 and not _is_vowel(word, i - 1)


def _measure(stem: str) -> int:
    """Number of vowel-to-consonant transitions (the [VC] count)."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        vowel = _is_vowel(stem, i)
        if prev_vowel and not vowel:
            m += 1
        prev_vowel = vowel
    return m


def _has_vowel(stem: str) -> bool:
    return any(_is_vowel(stem, i) for i in range(len(stem)))


def _ends_cvc(stem: str) -> bool:
    if len(stem) < 3:
        return False
    c1 = not _is_vowel(stem, len(stem) - 3)
    v = _is_vowel(stem, len(stem) - 2)
    c2 = not _is_vowel(stem, len(stem) - 1)
    return c1 and v and c2 and stem[-1] not in "wxy"


class Lemmatizer:
    """Rule-based suffix stripper with a loadable exceptions map.

    Handles plural -s/-es and participle -ing/-ed with doubled-consonant
    and silent-e stem repair. Per token the first matching rule is
    applied, repeatedly, until no rule matches, which makes the output a
    fixed point: lemmatize(lemmatize(t)) == lemmatize(t).
    """

    def __init__(self, exceptions: Mapping[str, str] | None = None):
        self.exceptions = dict(exceptions or {})
        self._cache: dict[str, str] = {}

    def lemmatize(self, token: str) -> str:
        if token in self.exceptions:
            return self.exceptions[token]
        cached = self._cache.get(token)
        if cached is not None:
            return cached
        word = token
        while True:
            reduced = self._apply_first_rule(word)
            if reduced == word:
                break
            word = reduced
        self._cache[token] = word
        return word

    def _apply_first_rule(self, word: str) -> str:
        # Plural family first, so stacked suffixes ("meetings") reduce
        # through the singular on the way to the base form.
        if word.endswith("sses"):
            return word[:-2]
        if word.endswith("ies") and len(word) > 4:
            return word[:-3] + "y"
        if word.endswith(("xes", "zes", "ches", "shes")):
            return word[:-2]
        if word.endswith(("ss", "us", "is")):
            return word
        if word.endswith("s") and len(word) >= 4:
            return word[:-1]
        if word.endswith("ing") and len(word) > 4:
            return self._strip_participle(word, 3)
        if word.endswith("ed") and len(word) > 3:
            return self._strip_participle(word, 2)
        return word

    def _strip_participle(self, word: str, suffix_len: int) -> str:
        stem = word[:-suffix_len]
        if not _has_vowel(stem) or _measure(stem) < 1:
            return word
        # Doubled final consonant: running -> run (but fall/miss/buzz keep).
        if (
            len(stem) >= 2
            and stem[-1] == stem[-2]
            and not _is_vowel(stem, len(stem) - 1)
            and stem[-1] not in "lsz"
        ):
            return stem[:-1]
        # Silent-e repair: tak(ing) -> take, lov(ed) -> love.
        if _measure(stem) == 1 and _ends_cvc(stem):
            return stem + "e"
        return stem


def preprocess_tweet(
    raw: str, stoplist: StopWordList, lemmatizer: Lemmatizer
) -> TokenList:
    """Full pipeline for one tweet; duplicates are kept, order preserved.

    May return an empty list (such tweets stay in the dataset as
    all-zero vectors downstream).
    """
    tokens = remove_stopwords(tokenize(clean_text(raw)), stoplist)
    return [lemmatizer.lemmatize(t) for t in tokens]


@dataclass(frozen=True)
class Vocabulary:
    """Unique lemmas in first-occurrence order; defines vector dimensions."""

    terms: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {}
        for i, term in enumerate(self.terms):
            if term in index:
                raise ValueError(f"duplicate vocabulary term {term!r}")
            index[term] = i
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index


def build_vocabulary(docs: Iterable[Sequence[str]]) -> Vocabulary:
    """Collect unique lemmas across docs in first-occurrence order."""
    seen: dict[str, None] = {}
    for doc in docs:
        for token in doc:
            seen.setdefault(token, None)
    return Vocabulary(terms=tuple(seen))


class TweetPreprocessor:
    """Bundles a stop-word list and lemmatizer into one callable."""

    def __init__(
        self,
        stoplist: StopWordList | None = None,
        lemmatizer: Lemmatizer | None = None,
    ):
        self.stoplist = stoplist if stoplist is not None else load_stopwords()
        self.lemmatizer = lemmatizer if lemmatizer is not None else Lemmatizer()

    def __call__(self, raw: str) -> TokenList:
        return preprocess_tweet(raw, self.stoplist, self.lemmatizer)

    def preprocess_corpus(self, texts: Iterable[str]) -> list[TokenList]:
        return [self(text) for text in texts]
