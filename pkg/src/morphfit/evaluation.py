"""Intrinsic evaluation: rank correlation against a gold similarity dataset,
plus nearest-neighbour queries.
"""

import math

import numpy as np


def average_ranks(values):
    """1-based ranks with ties sharing the average of their positions."""
    arr = np.asarray(values, dtype=np.float64)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(arr.shape[0], dtype=np.float64)
    i = 0
    while i < arr.shape[0]:
        j = i
        while j + 1 < arr.shape[0] and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(xs, ys):
    """Spearman's rank correlation: Pearson correlation of average ranks.

    Errors on length mismatch, fewer than two points, or a constant list
    (rank variance zero) rather than returning NaN.
    """
    xs = list(xs)
    ys = list(ys)
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise ValueError("need at least two points for a rank correlation")
    rx = average_ranks(xs)
    ry = average_ranks(ys)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sx = float(np.dot(dx, dx))
    sy = float(np.dot(dy, dy))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("rank correlation undefined for constant input")
    return float(np.dot(dx, dy)) / math.sqrt(sx * sy)


def load_similarity_dataset(path):
    """word1<TAB>word2<TAB>score per line. A first line whose third column is
    not a number is taken as a header and skipped. Returns a list of
    (word1, word2, score) triples."""
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) < 3:
                raise ValueError(
                    f"{path}:{lineno}: expected word1<TAB>word2<TAB>score")
            try:
                score = float(fields[2])
            except ValueError:
                if lineno == 1:
                    continue
                raise ValueError(
                    f"{path}:{lineno}: score is not a number") from None
            if not np.isfinite(score):
                raise ValueError(f"{path}:{lineno}: non-finite score")
            entries.append((fields[0], fields[1], score))
    if not entries:
        raise ValueError(f"{path}: empty similarity dataset")
    return entries


def covered_scores(store, dataset):
    """Gold scores and vector cosines for the dataset pairs the store covers.

    Pairs with a word missing from the store (or carrying a zero vector) are
    skipped.
    """
    norms = np.linalg.norm(store.matrix, axis=1)
    gold = []
    predicted = []
    for word1, word2, score in dataset:
        i = store.vocab.get(word1)
        j = store.vocab.get(word2)
        if i is None or j is None or norms[i] == 0.0 or norms[j] == 0.0:
            continue
        gold.append(score)
        predicted.append(
            float(np.dot(store.matrix[i], store.matrix[j]) / (norms[i] * norms[j])))
    return gold, predicted


def evaluate(store, dataset):
    """Spearman's rho between gold scores and stored-vector cosines over the
    covered pairs. Returns (rho, covered, total); errors when fewer than two
    pairs are covered."""
    gold, predicted = covered_scores(store, dataset)
    if len(gold) < 2:
        raise ValueError(
            f"only {len(gold)} of {len(dataset)} dataset pairs are covered "
            f"by the store; need at least 2")
    return spearman(gold, predicted), len(gold), len(dataset)


def neighbors(store, word, k):
    """Top-k nearest words by cosine, excluding the query itself.

    Ties break lexicographically. k is clamped to the rest of the vocabulary;
    words with zero vectors are skipped (their cosine is undefined).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    q = store.index(word)
    norms = np.linalg.norm(store.matrix, axis=1)
    if norms[q] == 0.0:
        raise ValueError(f"cosine undefined for zero vector: {word!r}")
    sims = store.matrix @ (store.matrix[q] / norms[q])
    scored = []
    for other, idx in store.vocab.items():
        if idx == q or norms[idx] == 0.0:
            continue
        scored.append((float(sims[idx] / norms[idx]), other))
    scored.sort(key=lambda item: (-item[0], item[1]))
    return [(w, s) for s, w in scored[:k]]
