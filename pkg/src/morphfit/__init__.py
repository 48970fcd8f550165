"""morphfit: sharpen word vectors with morphologically derived attract/repel
constraints.

Workflow: derive constraint pairs from a vocabulary with language rule tables
(build), fine-tune vectors against them (fit) or hard-collapse inflection
groups (morph_fix), then score against a gold similarity dataset (evaluate).
"""

from .constraints import (ConstraintSet, build, expand_repel, extract_attract,
                          extract_repel, read_pairs, read_vocab, write_pairs)
from .evaluation import (average_ranks, evaluate, load_similarity_dataset,
                         neighbors, spearman)
from .fixing import load_frequency_table, morph_fix
from .optimizer import (AdagradState, EpochCost, MiniBatch, TrainingConfig,
                        attract_cost, fit, gradients, reg_cost, repel_cost,
                        select_negative, step)
from .rules import (LANGUAGES, MorphRule, RuleSet, antonym_candidates,
                    apply_rule, builtin_rules, load_rules, rules_from_text,
                    rules_to_text, save_rules)
from .vectors import VectorStore, cosine, load, save

__version__ = "0.1.0"

__all__ = [
    "AdagradState", "ConstraintSet", "EpochCost", "LANGUAGES", "MiniBatch",
    "MorphRule", "RuleSet", "TrainingConfig", "VectorStore",
    "antonym_candidates", "apply_rule", "attract_cost", "average_ranks",
    "build", "builtin_rules", "cosine", "evaluate", "expand_repel",
    "extract_attract", "extract_repel", "fit", "gradients", "load",
    "load_frequency_table", "load_rules", "load_similarity_dataset",
    "morph_fix", "neighbors", "read_pairs", "read_vocab", "reg_cost",
    "repel_cost", "rules_from_text", "rules_to_text", "save", "save_rules",
    "select_negative", "spearman", "step", "write_pairs",
]
