"""Shared test utilities: fixture paths, vector builders, reference data."""

from __future__ import annotations

import os
from pathlib import Path

from sentibench import Corpus, SparseVector, TweetRecord

DATA_DIR = Path(__file__).parent / "data"
FIXTURE_CSV = str(DATA_DIR / "fixture_tweets.csv")

# Hand-read from the fixture file, row by row.
FIXTURE_LABELS = [
    "negative", "positive", "neutral", "negative", "positive",
    "neutral", "negative", "positive", "neutral", "negative",
]
FIXTURE_COUNTS = {"negative": 4, "neutral": 3, "positive": 3}


def sv(dims: int, pairs) -> SparseVector:
    """Build a SparseVector from unsorted (index, weight) pairs."""
    pairs = sorted(pairs)
    return SparseVector(
        dims=dims,
        indices=tuple(i for i, _ in pairs),
        values=tuple(float(v) for _, v in pairs),
    )


def make_corpus(texts_labels, source="synthetic") -> Corpus:
    records = tuple(
        TweetRecord(id=str(i + 1), text=text, label=label)
        for i, (text, label) in enumerate(texts_labels)
    )
    return Corpus(records=records, source=source)


def full_dataset_path() -> str | None:
    """Path of the user-downloaded full dataset, if available."""
    candidates = [os.environ.get("SENTIBENCH_DATASET")]
    here = Path(__file__).resolve().parent.parent
    candidates += [str(here / "data" / "Tweets.csv"), str(here / "Tweets.csv")]
    for candidate in candidates:
        if candidate and Path(candidate).is_file():
            return candidate
    return None


# The two-tweet worked example exercised throughout the vectorizer tests.
EXAMPLE_TWEET_1 = (
    "#Delicious #Beef #Cheese #Burger @McDonald Testing CheeseBurger and Hamburger"
)
EXAMPLE_TWEET_2 = "#Late Service @McDonald Delicious Hamburger but slow service"

# Reference token lists for the numeric examples (tweet 2 carries "service"
# once here; the preprocessing pipeline keeps the duplicate).
EXAMPLE_TOKENS_1 = [
    "delicious", "beef", "cheese", "burger", "mcdonald", "taste",
    "cheeseburger", "hamburger",
]
EXAMPLE_TOKENS_2 = ["late", "service", "mcdonald", "delicious", "hamburger", "slow"]

EXAMPLE_VOCAB = (
    "delicious", "beef", "cheese", "burger", "mcdonald", "taste",
    "cheeseburger", "hamburger", "late", "service", "slow",
)
