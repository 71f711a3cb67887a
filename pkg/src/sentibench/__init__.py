"""sentibench: tweet sentiment classification toolkit and benchmark harness.

Built from scratch end to end: CSV ingestion and a seeded, portable
train/test split; tweet cleaning, stop-word removal, and rule-based
lemmatization; binary bag-of-words and tf-idf vectorizers; multinomial
naive Bayes, softmax logistic regression, one-vs-rest linear SVM, and a
random forest; weighted precision/recall/F1 evaluation; and a CLI that
reproduces the full model-by-vectorizer comparison grid.
"""

from .corpus import (
    Corpus,
    POLARITIES,
    SplitConfig,
    TweetRecord,
    label_frequencies,
    load_dataset,
    parse_polarity,
    seeded_permutation,
    train_test_split,
)
from .errors import (
    ArtifactError,
    ConfigError,
    DatasetError,
    DimensionMismatchError,
    SentibenchError,
    TrainingError,
)
from .metrics import (
    ClassMetrics,
    ConfusionMatrix,
    MetricsReport,
    WeightedMetrics,
    accuracy,
    confusion_matrix,
    evaluate,
    per_class_metrics,
    weighted_metrics,
)
from .models import (
    LabeledMatrix,
    LinearSvm,
    MODEL_KINDS,
    MultinomialNaiveBayes,
    RandomForest,
    SoftmaxRegression,
    load_model,
    make_model,
    model_from_dict,
    model_to_dict,
    save_model,
)
from .preprocess import (
    Lemmatizer,
    StopWordList,
    TweetPreprocessor,
    Vocabulary,
    build_vocabulary,
    clean_text,
    load_lemma_exceptions,
    load_stopwords,
    preprocess_tweet,
    remove_stopwords,
    tokenize,
)
from .vectorize import (
    BowVectorizer,
    IdfTable,
    SparseVector,
    TermFrequencies,
    TfidfVectorizer,
    VECTORIZER_KINDS,
    load_vectorizer,
    make_vectorizer,
    save_vectorizer,
    term_frequency,
    vectors_to_csr,
)

__version__ = "0.1.0"
