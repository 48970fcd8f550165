"""Mini-batch fine-tuning of word vectors against attract/repel constraints.

The objective over an attract batch B_A and a repel batch B_R is

    sum over (l, r) in B_A of
        relu(delta_att + x_l.t_l - x_l.x_r) + relu(delta_att + x_r.t_r - x_l.x_r)
  + sum over (l, r) in B_R of
        relu(delta_rpl + x_l.x_r - x_l.t_l) + relu(delta_rpl + x_l.x_r - x_r.t_r)
  + sum over distinct words w in both batches of
        lambda_reg * ||x_w_initial - x_w||

where t_i is an in-batch negative for x_i: the vector closest to it (highest
dot product) for attract terms, the furthest (lowest dot product) for repel
terms, never the word itself or its pair partner. Ties go to the lowest row
index; an empty candidate pool drops the term. Parameters update with
per-coordinate AdaGrad; the choice of negatives is treated as constant within
a step, so gradients flow into the member, its partner, and the negative.

Costs accumulate term by term in pair order with plain float adds, so small
instances can be checked against a brute-force reimplementation exactly.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

ATTRACT = "attract"
REPEL = "repel"

ADAGRAD_EPS = 1e-8


@dataclass
class TrainingConfig:
    delta_att: float = 0.6
    delta_rpl: float = 0.0
    lambda_reg: float = 1e-9
    epochs: int = 10
    attract_batch_size: int = 50
    repel_batch_size: int = 50
    learning_rate: float = 0.05
    rng_seed: int = 1

    def __post_init__(self):
        if self.delta_att < 0 or self.delta_rpl < 0:
            raise ValueError("margins must be non-negative")
        if self.lambda_reg < 0:
            raise ValueError("lambda_reg must be non-negative")
        if self.epochs < 0:
            raise ValueError("epochs must be non-negative")
        if self.attract_batch_size < 1 or self.repel_batch_size < 1:
            raise ValueError("batch sizes must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning rate must be positive")


@dataclass
class MiniBatch:
    """Index pairs of one kind. Indices refer to store matrix rows."""
    kind: str
    pairs: list

    def words(self):
        """Distinct row indices in this batch, ascending."""
        return sorted({i for pair in self.pairs for i in pair})


@dataclass
class AdagradState:
    """Per-row squared-gradient accumulators, created lazily so only rows
    that ever receive a gradient carry state."""
    accumulators: dict = field(default_factory=dict)


def _select(candidates, kind, member, matrix):
    """Best negative among ascending candidate rows; None if empty.

    Strict comparisons keep the first (lowest) index on ties.
    """
    best = None
    best_dot = 0.0
    row = matrix[member]
    for cand in candidates:
        d = float(np.dot(row, matrix[cand]))
        if best is None:
            best = cand
            best_dot = d
        elif kind == ATTRACT and d > best_dot:
            best = cand
            best_dot = d
        elif kind == REPEL and d < best_dot:
            best = cand
            best_dot = d
    return best


def select_negative(batch, member, partner, store):
    """Negative example for `member` within its own batch: the closest other
    batch word for attract batches, the furthest for repel ones, excluding
    the member and its partner. None when no candidate remains."""
    pool = [i for i in batch.words() if i != member and i != partner]
    return _select(pool, batch.kind, member, store.matrix)


def _hinge_terms(pairs, kind, pool, matrix, delta):
    """Yield (l, r, t_l, t_r, z_l, z_r) per pair: chosen negatives and hinge
    pre-activations (None where the pool is empty)."""
    for left, right in pairs:
        candidates = [i for i in pool if i != left and i != right]
        t_left = _select(candidates, kind, left, matrix)
        t_right = _select(candidates, kind, right, matrix)
        dot_lr = float(np.dot(matrix[left], matrix[right]))
        z_left = z_right = None
        if kind == ATTRACT:
            if t_left is not None:
                z_left = delta + float(np.dot(matrix[left], matrix[t_left])) - dot_lr
            if t_right is not None:
                z_right = delta + float(np.dot(matrix[right], matrix[t_right])) - dot_lr
        else:
            if t_left is not None:
                z_left = delta + dot_lr - float(np.dot(matrix[left], matrix[t_left]))
            if t_right is not None:
                z_right = delta + dot_lr - float(np.dot(matrix[right], matrix[t_right]))
        yield left, right, t_left, t_right, z_left, z_right


def attract_cost(batch, store, config):
    """Hinge cost of one attract batch, negatives drawn from the batch."""
    if batch.kind != ATTRACT:
        raise ValueError("attract_cost needs an attract batch")
    total = 0.0
    for *_ignored, z_left, z_right in _hinge_terms(
            batch.pairs, ATTRACT, batch.words(), store.matrix,
            config.delta_att):
        if z_left is not None and z_left > 0.0:
            total += z_left
        if z_right is not None and z_right > 0.0:
            total += z_right
    return total


def repel_cost(batch, store, config):
    """Hinge cost of one repel batch, negatives drawn from the batch."""
    if batch.kind != REPEL:
        raise ValueError("repel_cost needs a repel batch")
    total = 0.0
    for *_ignored, z_left, z_right in _hinge_terms(
            batch.pairs, REPEL, batch.words(), store.matrix,
            config.delta_rpl):
        if z_left is not None and z_left > 0.0:
            total += z_left
        if z_right is not None and z_right > 0.0:
            total += z_right
    return total


def reg_cost(word_indices, store, config):
    """Drift penalty: lambda_reg times the L2 distance of each distinct word
    from its initial vector (the unsquared norm)."""
    total = 0.0
    for idx in sorted(set(word_indices)):
        dist = float(np.linalg.norm(store.initial_matrix[idx] - store.matrix[idx]))
        total += config.lambda_reg * dist
    return total


def gradients(batch_attract, batch_repel, store, config):
    """Cost and analytic gradient of the paired-batch objective.

    Negatives come from the union of both batches' words (still excluding a
    pair's own members), so even single-pair batches see distractors. The
    choice of negatives is held fixed, so away from hinge kinks and selection
    switches these are exact derivatives of the objective. Returns
    (attract_cost, repel_cost, reg_cost, grads) with grads a dict mapping
    each touched row index to its gradient vector. Either batch may be None.
    """
    matrix = store.matrix
    a_pairs = batch_attract.pairs if batch_attract is not None else []
    r_pairs = batch_repel.pairs if batch_repel is not None else []
    pool = sorted({i for pair in a_pairs for i in pair}
                  | {i for pair in r_pairs for i in pair})

    grads = {}

    def grad(idx):
        if idx not in grads:
            grads[idx] = np.zeros(store.dim)
        return grads[idx]

    a_cost = 0.0
    for left, right, t_left, t_right, z_left, z_right in _hinge_terms(
            a_pairs, ATTRACT, pool, matrix, config.delta_att):
        if z_left is not None and z_left > 0.0:
            a_cost += z_left
            grad(left)[:] += matrix[t_left] - matrix[right]
            grad(t_left)[:] += matrix[left]
            grad(right)[:] -= matrix[left]
        if z_right is not None and z_right > 0.0:
            a_cost += z_right
            grad(right)[:] += matrix[t_right] - matrix[left]
            grad(t_right)[:] += matrix[right]
            grad(left)[:] -= matrix[right]

    r_cost = 0.0
    for left, right, t_left, t_right, z_left, z_right in _hinge_terms(
            r_pairs, REPEL, pool, matrix, config.delta_rpl):
        if z_left is not None and z_left > 0.0:
            r_cost += z_left
            grad(left)[:] += matrix[right] - matrix[t_left]
            grad(right)[:] += matrix[left]
            grad(t_left)[:] -= matrix[left]
        if z_right is not None and z_right > 0.0:
            r_cost += z_right
            grad(right)[:] += matrix[left] - matrix[t_right]
            grad(left)[:] += matrix[right]
            grad(t_right)[:] -= matrix[right]

    g_cost = 0.0
    for idx in pool:
        diff = matrix[idx] - store.initial_matrix[idx]
        dist = float(np.linalg.norm(diff))
        g_cost += config.lambda_reg * dist
        if dist > 0.0:
            grad(idx)[:] += config.lambda_reg * diff / dist

    return a_cost, r_cost, g_cost, grads


def step(batch_attract, batch_repel, store, state, config):
    """One AdaGrad update over a paired attract/repel batch.

    Costs and gradients are evaluated on the pre-update matrix, then all
    touched rows update at once. Returns the pre-update (attract, repel, reg)
    costs. Either batch may be None.
    """
    a_cost, r_cost, g_cost, grads = gradients(
        batch_attract, batch_repel, store, config)
    matrix = store.matrix
    for idx in sorted(grads):
        g = grads[idx]
        if not np.any(g):
            continue
        acc = state.accumulators.get(idx)
        if acc is None:
            acc = state.accumulators[idx] = np.zeros(store.dim)
        acc += g * g
        matrix[idx] -= config.learning_rate * g / np.sqrt(acc + ADAGRAD_EPS)

    return a_cost, r_cost, g_cost


@dataclass
class EpochCost:
    epoch: int
    attract: float
    repel: float
    regularization: float

    @property
    def total(self):
        return self.attract + self.repel + self.regularization


def _epoch_batches(pairs, kind, batch_size, n_steps, rng):
    """Split one epoch's pairs into n_steps batches.

    The list whose own ceil(len/batch) equals n_steps is consumed in shuffled
    consecutive chunks (last one possibly short). A shorter list cycles: it
    reshuffles whenever exhausted and keeps filling batches of up to
    min(batch_size, len(pairs)) pairs, so its signal stays present in every
    step.
    """
    if not pairs:
        return [None] * n_steps
    own_steps = math.ceil(len(pairs) / batch_size)
    order = list(rng.permutation(len(pairs)))
    batches = []
    if own_steps == n_steps:
        for s in range(n_steps):
            chunk = order[s * batch_size:(s + 1) * batch_size]
            batches.append(MiniBatch(kind, [pairs[i] for i in chunk]))
    else:
        fill = min(batch_size, len(pairs))
        pos = 0
        for _ in range(n_steps):
            chunk = []
            while len(chunk) < fill:
                if pos == len(order):
                    order = list(rng.permutation(len(pairs)))
                    pos = 0
                take = min(fill - len(chunk), len(order) - pos)
                chunk.extend(order[pos:pos + take])
                pos += take
            batches.append(MiniBatch(kind, [pairs[i] for i in chunk]))
    return batches


def fit(store, constraints, config=None, renormalize_each_epoch=False,
        renormalize_output=False, on_epoch=None):
    """Fine-tune a copy of the store against a ConstraintSet.

    Pairs with out-of-vocabulary words are dropped with a warning. Every
    epoch reshuffles both pair lists with a generator seeded once from
    config.rng_seed, so identical inputs and seed give bit-identical output.
    Returns (fitted store, per-epoch EpochCost list); on_epoch, if given, is
    called with each EpochCost as it completes. The input store is not
    touched; rows that never appear in a batch keep their exact values.
    """
    if config is None:
        config = TrainingConfig()

    def to_indices(pairs):
        kept = []
        dropped = 0
        for left, right in pairs:
            if left in store.vocab and right in store.vocab:
                kept.append((store.vocab[left], store.vocab[right]))
            else:
                dropped += 1
        return kept, dropped

    a_pairs, a_dropped = to_indices(constraints.attract)
    r_pairs, r_dropped = to_indices(constraints.repel)
    if a_dropped or r_dropped:
        warnings.warn(
            f"dropped {a_dropped + r_dropped} constraint pairs with "
            f"out-of-vocabulary words")
    if not a_pairs and not r_pairs:
        raise ValueError("empty constraint set: nothing to fit")

    a_steps = math.ceil(len(a_pairs) / config.attract_batch_size) if a_pairs else 0
    r_steps = math.ceil(len(r_pairs) / config.repel_batch_size) if r_pairs else 0
    n_steps = max(a_steps, r_steps)

    work = store.copy()
    state = AdagradState()
    rng = np.random.default_rng(config.rng_seed)
    log = []
    for epoch in range(1, config.epochs + 1):
        a_batches = _epoch_batches(a_pairs, ATTRACT,
                                   config.attract_batch_size, n_steps, rng)
        r_batches = _epoch_batches(r_pairs, REPEL,
                                   config.repel_batch_size, n_steps, rng)
        a_sum = r_sum = g_sum = 0.0
        for batch_a, batch_r in zip(a_batches, r_batches):
            a_cost, r_cost, g_cost = step(batch_a, batch_r, work, state, config)
            a_sum += a_cost
            r_sum += r_cost
            g_sum += g_cost
        if renormalize_each_epoch:
            _renormalize(work.matrix)
        entry = EpochCost(epoch, a_sum, r_sum, g_sum)
        log.append(entry)
        if on_epoch is not None:
            on_epoch(entry)
    if renormalize_output:
        _renormalize(work.matrix)
    return work, log


def _renormalize(matrix):
    norms = np.linalg.norm(matrix, axis=1)
    nonzero = norms > 0.0
    matrix[nonzero] /= norms[nonzero, None]
