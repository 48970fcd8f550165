"""Word vector storage and text-format I/O.

Vectors live in a single float64 matrix indexed by a word -> row dict. A
read-only snapshot of the matrix taken at construction time is kept around so
later training steps can measure how far each vector has drifted from its
starting point.
"""

import warnings

import numpy as np


class VectorStore:
    """A vocabulary plus an (n, d) float64 matrix of word vectors."""

    def __init__(self, words, matrix, initial_matrix=None):
        matrix = np.array(matrix, dtype=np.float64)
        if matrix.ndim != 2:
            raise ValueError("matrix must be 2-dimensional")
        if matrix.shape[1] == 0:
            raise ValueError("vector dimensionality must be positive")
        words = list(words)
        if len(words) != matrix.shape[0]:
            raise ValueError(
                f"{len(words)} words for {matrix.shape[0]} matrix rows")
        self.vocab = {}
        for w in words:
            if w in self.vocab:
                raise ValueError(f"duplicate word in store: {w!r}")
            self.vocab[w] = len(self.vocab)
        self.matrix = matrix
        if initial_matrix is None:
            initial_matrix = matrix.copy()
            initial_matrix.flags.writeable = False
        self.initial_matrix = initial_matrix

    @property
    def dim(self):
        return self.matrix.shape[1]

    def __len__(self):
        return self.matrix.shape[0]

    def __contains__(self, word):
        return word in self.vocab

    def words(self):
        """Words in row order."""
        return list(self.vocab)

    def index(self, word):
        try:
            return self.vocab[word]
        except KeyError:
            raise ValueError(f"out of vocabulary: {word!r}") from None

    def vector(self, word):
        return self.matrix[self.index(word)]

    def copy(self):
        """Independent store with a fresh matrix; the initial snapshot is
        shared (it is immutable)."""
        return VectorStore(self.vocab, self.matrix.copy(),
                           initial_matrix=self.initial_matrix)


def _is_header(tokens):
    if len(tokens) != 2:
        return False
    try:
        int(tokens[0])
        int(tokens[1])
    except ValueError:
        return False
    return True


def load(path, normalize=False, lowercase=False):
    """Read whitespace-separated word vectors from a text file.

    Each line is a word followed by d numbers. An optional first line holding
    just two integers (a count/dimensionality header, as some distribution
    formats have) is detected and skipped; its values are not trusted.
    Duplicate words keep their first occurrence and emit a warning. With
    normalize=True every vector is scaled to unit length (zero vectors are an
    error). lowercase=True folds words to lower case before insertion.
    """
    words = []
    rows = []
    seen = {}
    dim = None
    first_line = True
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            tokens = raw.split()
            if not tokens:
                continue
            if first_line and _is_header(tokens):
                first_line = False
                continue
            first_line = False
            word = tokens[0].lower() if lowercase else tokens[0]
            values = tokens[1:]
            if not values:
                raise ValueError(f"{path}:{lineno}: word with no values")
            if dim is None:
                dim = len(values)
            elif len(values) != dim:
                raise ValueError(
                    f"{path}:{lineno}: expected {dim} values, got {len(values)}")
            try:
                vec = np.array([float(t) for t in values], dtype=np.float64)
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: non-numeric vector entry") from None
            if not np.all(np.isfinite(vec)):
                raise ValueError(f"{path}:{lineno}: non-finite vector entry")
            if word in seen:
                warnings.warn(
                    f"duplicate word {word!r} at {path}:{lineno}; keeping the "
                    f"first occurrence")
                continue
            seen[word] = True
            words.append(word)
            rows.append(vec)
    if not rows:
        raise ValueError(f"{path}: no vectors found")
    matrix = np.vstack(rows)
    if normalize:
        norms = np.linalg.norm(matrix, axis=1)
        bad = np.nonzero(norms == 0.0)[0]
        if bad.size:
            raise ValueError(
                f"cannot normalize zero vector for word {words[bad[0]]!r}")
        matrix = matrix / norms[:, None]
    return VectorStore(words, matrix)


def save(store, path):
    """Write a store in the same text format (word then values, one word per
    line, no header). Values keep 10 significant digits, enough to round-trip
    through load with error below 1e-8."""
    if len(store) == 0:
        raise ValueError("refusing to save an empty store")
    with open(path, "w", encoding="utf-8") as fh:
        for word, idx in store.vocab.items():
            values = " ".join(f"{v:.10g}" for v in store.matrix[idx])
            fh.write(f"{word} {values}\n")


def cosine(store, word1, word2):
    """Cosine similarity between two stored words. Errors on unknown words
    and on zero vectors."""
    v1 = store.vector(word1)
    v2 = store.vector(word2)
    n1 = float(np.linalg.norm(v1))
    n2 = float(np.linalg.norm(v2))
    if n1 == 0.0 or n2 == 0.0:
        zero = word1 if n1 == 0.0 else word2
        raise ValueError(f"cosine undefined for zero vector: {zero!r}")
    value = float(np.dot(v1, v2) / (n1 * n2))
    return max(-1.0, min(1.0, value))
