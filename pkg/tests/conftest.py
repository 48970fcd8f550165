import numpy as np

from morphfit import VectorStore

DATA = __file__.rsplit("/", 1)[0] + "/data"


def make_store(mapping):
    """VectorStore from an ordered word -> vector dict."""
    words = list(mapping)
    matrix = np.array([mapping[w] for w in words], dtype=np.float64)
    return VectorStore(words, matrix)
