"""Acceptance suite: one test per shipping criterion.

Each test prints a `criterion N: PASS (...)` line with the measured
numbers; run with `-s` to see them live. The final large-scale check
needs real embedding and similarity files and only runs when the
MORPHFIT_VECTORS and MORPHFIT_SIMLEX environment variables are set.
"""

import os
import time

import numpy as np
import pytest

from morphfit import (ConstraintSet, MiniBatch, TrainingConfig, VectorStore,
                      attract_cost, build, cosine, evaluate, fit, gradients,
                      load, load_similarity_dataset, morph_fix, read_pairs,
                      repel_cost, save, select_negative, spearman)
from morphfit.cli import main

import oracles
from conftest import DATA, make_store


def report(criterion, detail):
    print(f"criterion {criterion}: PASS ({detail})")


# Each row: language, pair, constraint kind, extra vocabulary the pair
# needs before the rule tables can license it (group heads, antonym
# bases for the transitive expansion).
RULE_FIXTURES = [
    ("en", "discuss", "discussed", "attract", ()),
    ("en", "laugh", "laughing", "attract", ()),
    ("en", "pacifist", "pacifists", "attract", ()),
    ("en", "evacuate", "evacuated", "attract", ()),
    ("en", "evaluate", "evaluates", "attract", ()),
    ("en", "look", "looks", "attract", ()),
    ("en", "look", "looking", "attract", ()),
    ("en", "look", "looked", "attract", ()),
    ("en", "create", "created", "attract", ()),
    ("en", "create", "creating", "attract", ()),
    ("en", "read", "reads", "attract", ()),
    ("en", "speak", "speaking", "attract", ()),
    ("en", "turtle", "turtles", "attract", ()),
    ("en", "clean", "cleaned", "attract", ()),
    ("en", "generate", "generated", "attract", ()),
    ("de", "schottisch", "schottischem", "attract", ()),
    ("de", "damalige", "damaligen", "attract", ()),
    ("de", "kombiniere", "kombinierte", "attract", ("kombinieren",)),
    ("de", "schweigt", "schweigst", "attract", ("schweigen",)),
    ("de", "hacken", "gehackt", "attract", ()),
    ("de", "schottischem", "schottischen", "attract", ("schottisch",)),
    ("de", "mache", "gemacht", "attract", ("machen",)),
    ("de", "kaufst", "kauft", "attract", ("kaufen",)),
    ("de", "arbeite", "arbeitete", "attract", ("arbeiten",)),
    ("de", "arbeiten", "gearbeitet", "attract", ()),
    ("de", "wahrheit", "wahrheiten", "attract", ()),
    ("de", "gemeinschaft", "gemeinschaften", "attract", ()),
    ("de", "lehrerin", "lehrerinnen", "attract", ()),
    ("de", "auto", "autos", "attract", ()),
    ("de", "postkarte", "postkarten", "attract", ()),
    ("de", "wörterbuch", "wörterbücher", "attract", ()),
    ("de", "stadt", "städter", "attract", ()),
    ("de", "asiatisch", "asiatischem", "attract", ()),
    ("de", "katalanisch", "katalanischer", "attract", ()),
    ("it", "golfo", "golfi", "attract", ()),
    ("it", "minato", "minata", "attract", ()),
    ("it", "mettere", "metto", "attract", ()),
    ("it", "crescono", "cresci", "attract", ("crescere",)),
    ("it", "crediti", "credite", "attract", ()),
    ("it", "libro", "libri", "attract", ()),
    ("it", "aspettare", "aspettiamo", "attract", ()),
    ("it", "aspettare", "aspettato", "attract", ()),
    ("it", "bianco", "bianca", "attract", ()),
    ("it", "nero", "neri", "attract", ()),
    ("it", "generazione", "generazioni", "attract", ()),
    ("it", "tartaruga", "tartarughe", "attract", ()),
    ("it", "bianca", "bianche", "attract", ()),
    ("it", "albergo", "alberghi", "attract", ()),
    ("it", "ricevere", "ricevete", "attract", ()),
    ("it", "riceve", "ricevuto", "attract", ("ricevere",)),
    ("it", "dormire", "dormono", "attract", ()),
    ("it", "dormi", "dormita", "attract", ("dormire",)),
    ("ru", "альбом", "альбомы", "attract", ()),
    ("ru", "песня", "песни", "attract", ()),
    ("ru", "письмо", "письма", "attract", ()),
    ("ru", "платье", "платья", "attract", ()),
    ("ru", "варить", "варите", "attract", ()),
    ("ru", "заканчиваю", "заканчивают", "attract", ("заканчивать",)),
    ("ru", "работа", "работой", "attract", ()),
    ("ru", "линия", "линию", "attract", ()),
    ("ru", "работам", "работами", "attract", ("работы",)),
    ("ru", "быстрый", "быстрее", "attract", ()),
    ("ru", "новая", "новые", "attract", ()),
    ("ru", "новое", "новый", "attract", ()),
    ("en", "dressed", "undressed", "repel", ()),
    ("en", "similar", "dissimilar", "repel", ()),
    ("en", "formality", "informality", "repel", ()),
    ("en", "advantage", "disadvantage", "repel", ()),
    ("en", "regular", "irregular", "repel", ()),
    ("en", "careful", "careless", "repel", ()),
    ("en", "mature", "immature", "repel", ()),
    ("en", "allow", "disallow", "repel", ()),
    ("en", "regularity", "irregularity", "repel", ()),
    ("en", "cheerful", "cheerless", "repel", ()),
    ("en", "allows", "disallow", "repel", ("allow",)),
    ("de", "stabil", "unstabil", "repel", ()),
    ("de", "relevant", "irrelevant", "repel", ()),
    ("de", "aktiv", "inaktiv", "repel", ()),
    ("de", "wandelbar", "unwandelbar", "repel", ()),
    ("de", "zyklone", "antizyklone", "repel", ()),
    ("de", "geschmackvoll", "geschmacklos", "repel", ()),
    ("de", "geformtes", "ungeformt", "repel", ("geformt",)),
    ("de", "relevant", "irrelevanter", "repel", ("irrelevant",)),
    ("de", "aktivem", "inaktiv", "repel", ("aktiv",)),
    ("it", "realtà", "irrealtà", "repel", ()),
    ("it", "attuato", "inattuato", "repel", ()),
    ("it", "attivo", "inattivo", "repel", ()),
    ("it", "rispettoso", "irrispettoso", "repel", ()),
    ("it", "abitata", "inabitato", "repel", ("abitato",)),
    ("it", "rispettosa", "irrispettosi", "repel", ("rispettoso",
                                                   "irrispettoso")),
    ("ru", "адекватный", "неадекватный", "repel", ()),
    ("ru", "вирусная", "антивирусная", "repel", ()),
    ("ru", "адекватный", "неадекватная", "repel", ("неадекватный",)),
]


def test_criterion_1_rule_table_fidelity():
    start = time.perf_counter()
    missing = []
    for lang, left, right, kind, support in RULE_FIXTURES:
        constraints = build({left, right, *support}, lang)
        pairs = constraints.attract if kind == "attract" else constraints.repel
        if (left, right) not in pairs or (right, left) not in pairs:
            missing.append((lang, left, right, kind))
    assert not missing, f"pairs not emitted: {missing}"

    # the six-word Italian vocabulary reproduces its full constraint sets,
    # including every cross combination of the transitive expansion
    with open(f"{DATA}/it_sextet_vocab.txt", encoding="utf-8") as fh:
        vocab = fh.read().split()
    constraints = build(vocab, "it")
    assert constraints.attract == read_pairs(f"{DATA}/it_sextet_attract_expected.tsv")
    assert constraints.repel == read_pairs(f"{DATA}/it_sextet_repel_expected.tsv")

    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(1, f"{len(RULE_FIXTURES)} fixture pairs across en/de/it/ru, "
              f"{elapsed:.2f}s")


def test_criterion_2_cost_oracle_equivalence():
    start = time.perf_counter()
    pairs_2x2 = [(0, 1), (2, 3)]
    aligned = make_store({"a": [1.0, 0.0], "b": [1.0, 0.0],
                          "c": [0.0, 1.0], "d": [1.0, 0.0]})
    value = attract_cost(MiniBatch("attract", pairs_2x2), aligned,
                         TrainingConfig(delta_att=0.6))
    assert value == pytest.approx(3.4, abs=1e-12)
    crossed = make_store({"a": [1.0, 0.0], "b": [1.0, 0.0],
                          "c": [0.0, 1.0], "d": [0.0, 1.0]})
    value = repel_cost(MiniBatch("repel", pairs_2x2), crossed,
                       TrainingConfig(delta_rpl=0.0))
    assert value == pytest.approx(4.0, abs=1e-12)

    rng = np.random.default_rng(202)
    for _ in range(200):
        matrix, pairs = oracles.random_cost_instance(rng)
        store = make_store({f"w{i}": row for i, row in enumerate(matrix)})
        delta = float(rng.choice([0.0, 0.25, 0.6]))
        config = TrainingConfig(delta_att=delta, delta_rpl=delta)
        pool = oracles.batch_pool(pairs)
        for kind, cost_fn in (("attract", attract_cost),
                              ("repel", repel_cost)):
            batch = MiniBatch(kind, pairs)
            assert cost_fn(batch, store, config) == oracles.hinge_cost(
                matrix, pairs, pool, kind, delta)
            for left, right in pairs:
                assert select_negative(batch, left, right, store) == \
                    oracles.pick_negative(matrix, left, right, pool, kind)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    report(2, f"200 random batches exact, hand values 3.4 and 4.0, "
              f"{elapsed:.2f}s")


def test_criterion_3_gradient_check():
    start = time.perf_counter()
    rng = np.random.default_rng(303)
    worst = 0.0
    checked = 0
    while checked < 50:
        inst = oracles.make_gradient_instance(rng)
        if inst is None:
            continue
        matrix, initial, a_pairs, r_pairs, lam = inst
        store = make_store({f"w{i}": row for i, row in enumerate(matrix)})
        store.initial_matrix = initial
        config = TrainingConfig(delta_att=0.6, delta_rpl=0.1, lambda_reg=lam)
        _, _, _, grads = gradients(MiniBatch("attract", a_pairs),
                                   MiniBatch("repel", r_pairs), store, config)
        rows = oracles.batch_pool(a_pairs + r_pairs)
        fd = oracles.fd_gradient(matrix, initial, a_pairs, r_pairs,
                                 0.6, 0.1, lam, rows)
        for idx in rows:
            analytic = grads.get(idx, np.zeros(store.dim))
            err = np.linalg.norm(analytic - fd[idx])
            scale = max(1.0, np.linalg.norm(analytic),
                        np.linalg.norm(fd[idx]))
            worst = max(worst, err / scale)
        checked += 1
    assert worst <= 1e-4
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    report(3, f"50 instances, max relative error {worst:.2e}, {elapsed:.2f}s")


def test_criterion_4_specialisation_behaviour():
    start = time.perf_counter()
    store = make_store({
        "w1": [1.0, 0.0, 0.0, 0.0],
        "w2": [0.1, 0.99498743710662, 0.0, 0.0],
        "w3": [0.0, 0.0, 1.0, 0.0],
        "w4": [0.0, 0.0, 0.9, 0.43588989435406736],
        "w5": [0.5, 0.5, 0.5, 0.5],
        "w6": [0.2, 0.0, 0.0, 0.8],
    })
    constraints = ConstraintSet([("w1", "w2")], [("w3", "w4")])
    fitted, _ = fit(store, constraints, TrainingConfig())
    gain = cosine(fitted, "w1", "w2") - cosine(store, "w1", "w2")
    drop = cosine(store, "w3", "w4") - cosine(fitted, "w3", "w4")
    assert gain >= 0.2
    assert drop >= 0.2
    np.testing.assert_array_equal(fitted.vector("w5"), store.vector("w5"))
    np.testing.assert_array_equal(fitted.vector("w6"), store.vector("w6"))
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(4, f"attract cosine +{gain:.2f}, repel cosine -{drop:.2f}, "
              f"spectator rows bitwise equal, {elapsed:.2f}s")


def _pull_back_instance():
    words = [f"w{i:02d}" for i in range(60)]
    rng = np.random.default_rng(7)
    base = rng.normal(size=(60, 6))
    base /= np.linalg.norm(base, axis=1, keepdims=True)

    def sample_pairs(count, seed):
        pair_rng = np.random.default_rng(seed)
        out = []
        for _ in range(count):
            i = int(pair_rng.integers(0, 60))
            j = int(pair_rng.integers(0, 60))
            if i == j:
                j = (j + 1) % 60
            out.append((words[i], words[j]))
        return out

    constraints = ConstraintSet(sample_pairs(500, 11), sample_pairs(300, 13))
    return words, base, constraints


def test_criterion_5_regulariser_pull_back():
    words, base, constraints = _pull_back_instance()

    def run(lam):
        store = VectorStore(list(words), base.copy())
        config = TrainingConfig(delta_att=0.0, delta_rpl=0.0, lambda_reg=lam,
                                epochs=10, learning_rate=1e-4, rng_seed=1)
        fitted, log = fit(store, constraints, config)
        moved = np.linalg.norm(fitted.matrix - store.initial_matrix, axis=1)
        return float(moved.max()), log

    pinned, log = run(1e3)
    free, _ = run(0.0)
    assert log[0].attract > 0.0 and log[0].repel > 0.0
    assert pinned <= 1e-3
    # the identical run without the pull-back moves well past the bound
    assert free > 1e-3
    report(5, f"max drift {pinned:.2e} under heavy regularisation "
              f"vs {free:.2e} without")


def test_criterion_6_morph_fix_components():
    rng = np.random.default_rng(606)
    words = ["look", "looks", "looking", "tiea", "tieb",
             "apple", "banana", "cherry", "date", "elm"]
    store = make_store({w: rng.normal(size=5) for w in words})
    pairs = [("look", "looks"), ("looks", "looking"), ("tiea", "tieb")]
    freqs = {"look": 500, "looks": 80, "looking": 120,
             "tiea": 50, "tieb": 50}

    fixed = morph_fix(store, pairs, freqs)
    for word in ("look", "looks", "looking"):
        np.testing.assert_array_equal(fixed.vector(word),
                                      store.vector("look"))
    # equal frequencies fall back to the alphabetically first member
    for word in ("tiea", "tieb"):
        np.testing.assert_array_equal(fixed.vector(word),
                                      store.vector("tiea"))
    for word in ("apple", "banana", "cherry", "date", "elm"):
        np.testing.assert_array_equal(fixed.vector(word), store.vector(word))

    again = morph_fix(fixed, pairs, freqs)
    np.testing.assert_array_equal(again.matrix, fixed.matrix)
    report(6, "3-word chain takes the max-frequency row, ties go "
              "alphabetical, idempotent")


def test_criterion_7_spearman_against_counting_oracle():
    assert spearman([1, 2, 3, 4, 5], [10, 20, 30, 40, 50]) == 1.0
    assert spearman([1, 2, 3, 4, 5], [5, 4, 3, 2, 1]) == -1.0
    assert spearman([1, 2, 2, 4], [1, 2, 3, 4]) == pytest.approx(0.9487,
                                                                 abs=1e-3)
    rng = np.random.default_rng(707)
    checked = 0
    while checked < 100:
        n = int(rng.integers(2, 13))
        xs = rng.integers(0, 6, size=n).tolist()
        ys = rng.integers(0, 6, size=n).tolist()
        if len(set(xs)) < 2 or len(set(ys)) < 2:
            continue
        assert spearman(xs, ys) == pytest.approx(
            oracles.spearman_rho(xs, ys), abs=1e-12)
        checked += 1
    report(7, "100 tied lists within 1e-12 of the counting oracle, "
              "extremes exact")


TOY_BASES = ["lock", "zip", "fold", "load", "wind",
             "tie", "pack", "seal", "pin", "plug"]


def _toy_corpus(tmp_path):
    """40 words, four forms per base, all four starting near each other."""
    rng = np.random.default_rng(88)
    words, rows = [], []
    for base in TOY_BASES:
        centre = rng.normal(size=10)
        centre /= np.linalg.norm(centre)
        for form in (base, base + "s", "un" + base, "un" + base + "s"):
            noise = rng.normal(size=10)
            noise /= np.linalg.norm(noise)
            blended = 0.7 * centre + 0.3 * noise
            words.append(form)
            rows.append(blended / np.linalg.norm(blended))
    vectors = str(tmp_path / "toy_vectors.txt")
    save(VectorStore(words, np.array(rows)), vectors)
    vocab = str(tmp_path / "toy_vocab.txt")
    with open(vocab, "w", encoding="utf-8") as fh:
        fh.write("\n".join(words) + "\n")
    gold = str(tmp_path / "toy_gold.tsv")
    cross = [("lock", "zip"), ("fold", "load"), ("wind", "tie"),
             ("pack", "seal"), ("pin", "plug")]
    with open(gold, "w", encoding="utf-8") as fh:
        for base in TOY_BASES:
            fh.write(f"{base}\t{base}s\t10\n")
            fh.write(f"{base}\tun{base}\t0\n")
        for left, right in cross:
            fh.write(f"{left}\t{right}\t5\n")
    return vectors, vocab, gold


def _eval_rho(vectors, gold, capsys):
    assert main(["eval", "--vectors", vectors, "--dataset", gold]) == 0
    line = capsys.readouterr().out.strip().split("\n")[-1]
    fields = dict(part.split("=") for part in line.split())
    assert int(fields["covered"]) == 25 and int(fields["total"]) == 25
    return float(fields["rho"])


def test_criterion_8_end_to_end_toy_pipeline(tmp_path, capsys):
    start = time.perf_counter()
    vectors, vocab, gold = _toy_corpus(tmp_path)
    out_attract = str(tmp_path / "attract.tsv")
    out_repel = str(tmp_path / "repel.tsv")
    assert main(["extract", "--lang", "en", "--vocab", vocab,
                 "--out-attract", out_attract,
                 "--out-repel", out_repel]) == 0
    assert capsys.readouterr().out == "|W|=40 |A|=40 |R|=80\n"

    before = _eval_rho(vectors, gold, capsys)
    fitted = str(tmp_path / "fitted.txt")
    assert main(["fit", "--vectors", vectors, "--attract", out_attract,
                 "--repel", out_repel, "--out", fitted, "--no-plot"]) == 0
    capsys.readouterr()
    after = _eval_rho(fitted, gold, capsys)
    assert after > before

    assert main(["neighbors", "--vectors", fitted,
                 "--word", "lock", "-k", "39"]) == 0
    ranked = [line.split("\t")[0]
              for line in capsys.readouterr().out.strip().split("\n")]
    assert ranked.index("locks") < ranked.index("unlock")
    assert ranked.index("locks") < ranked.index("unlocks")

    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    report(8, f"rho {before:.3f} to {after:.3f}, inflections outrank "
              f"prefix antonyms, {elapsed:.2f}s")


@pytest.mark.skipif(
    not (os.environ.get("MORPHFIT_VECTORS")
         and os.environ.get("MORPHFIT_SIMLEX")),
    reason="set MORPHFIT_VECTORS and MORPHFIT_SIMLEX to run the "
           "large-scale similarity check")
def test_criterion_9_large_scale_similarity_gain():
    store = load(os.environ["MORPHFIT_VECTORS"], normalize=True)
    dataset = load_similarity_dataset(os.environ["MORPHFIT_SIMLEX"])
    before, covered, total = evaluate(store, dataset)
    constraints = build(store.words(), "en")
    fitted, _ = fit(store, constraints)
    after, _, _ = evaluate(fitted, dataset)
    assert after > before
    assert after >= 0.40
    report(9, f"rho {before:.3f} to {after:.3f} on {covered}/{total} pairs")
