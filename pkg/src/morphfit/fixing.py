"""Hard morphological fixing: collapse each attract-connected group of words
onto the vector of its most frequent member.

This is the blunt baseline the fine-tuning path is measured against: instead
of nudging related vectors together, every word in a connected component of
the attract graph gets the component representative's initial vector verbatim.
"""

import warnings

import numpy as np

from .vectors import VectorStore


def load_frequency_table(path):
    """word<TAB>count per line; returns dict word -> count. Duplicates keep
    the first occurrence."""
    table = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ValueError(
                    f"{path}:{lineno}: expected word<TAB>count")
            try:
                count = int(fields[1])
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: count is not an integer") from None
            if count < 0:
                raise ValueError(f"{path}:{lineno}: negative count")
            if fields[0] in table:
                warnings.warn(
                    f"duplicate word {fields[0]!r} at {path}:{lineno}; "
                    f"keeping the first count")
                continue
            table[fields[0]] = count
    return table


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, item):
        parent = self.parent.setdefault(item, item)
        if parent != item:
            parent = self.parent[item] = self.find(parent)
        return parent

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def morph_fix(store, attract_pairs, frequencies):
    """New store where every attract-connected component shares one vector.

    The representative of a component is its most frequent member (missing
    frequency counts as 0); ties go to the lexicographically smallest word.
    Every member's row becomes the representative's initial vector. Words in
    no attract pair keep their current vectors. Applying the result to the
    same pairs and frequencies again changes nothing.
    """
    uf = _UnionFind()
    dropped = 0
    for left, right in attract_pairs:
        if left in store.vocab and right in store.vocab:
            uf.union(left, right)
        else:
            dropped += 1
    if dropped:
        warnings.warn(
            f"ignored {dropped} attract pairs with words missing from the store")

    components = {}
    for word in uf.parent:
        components.setdefault(uf.find(word), []).append(word)

    matrix = store.matrix.copy()
    for members in components.values():
        rep = min(members, key=lambda w: (-frequencies.get(w, 0), w))
        rep_vector = store.initial_matrix[store.vocab[rep]]
        for word in members:
            matrix[store.vocab[word]] = rep_vector
    return VectorStore(store.vocab, matrix)
