"""Build ATTRACT/REPEL word-pair constraints from a vocabulary.

ATTRACT pairs link inflectional variants generated by the language's rule
table; REPEL pairs link words to their derivational antonyms (negation
prefixes, suffix swaps), expanded one step through the attract relation so
that inflections of an antonym pair repel each other too. Pairs are ordered
and every pair appears in both orders. The whole process is deterministic:
the vocabulary is scanned in sorted order, rules apply in table order, and
output keeps first-seen order.
"""

from dataclasses import dataclass, field

from .rules import GROUP, RuleSet, antonym_candidates, apply_rule, builtin_rules


@dataclass
class ConstraintSet:
    attract: list = field(default_factory=list)
    repel: list = field(default_factory=list)


def extract_attract(vocab, rules):
    """Ordered attract pairs over the in-vocabulary forms.

    Direct rules pair the word with each generated candidate (both orders);
    group rules pair every distinct in-vocabulary member of the generated
    suffix group with every other.
    """
    vocab_set = set(vocab)
    pairs = []
    seen = set()

    def add(left, right):
        if left != right and (left, right) not in seen:
            seen.add((left, right))
            pairs.append((left, right))

    for word in sorted(vocab_set):
        for rule in rules.attract_rules:
            candidates = apply_rule(rule, word)
            if not candidates:
                continue
            if rule.kind == GROUP:
                group = [word] + [c for c in candidates if c in vocab_set]
                for left in group:
                    for right in group:
                        add(left, right)
            else:
                for cand in candidates:
                    if cand in vocab_set:
                        add(word, cand)
                        add(cand, word)
    return pairs


def extract_repel(vocab, rules):
    """Ordered direct antonym pairs (both orders), no expansion."""
    vocab_set = set(vocab)
    pairs = []
    seen = set()
    for word in sorted(vocab_set):
        for cand in antonym_candidates(rules, word):
            if cand in vocab_set and cand != word:
                for pair in ((word, cand), (cand, word)):
                    if pair not in seen:
                        seen.add(pair)
                        pairs.append(pair)
    return pairs


def expand_repel(attract, repel):
    """One-step closure of repel through attract.

    For each repel pair (a, b) and attract partners a' of a and b' of b, the
    pairs (a', b), (a, b'), (a', b') and their mirrors are repel pairs too.
    The closure is not iterated; partners of partners stay untouched.
    """
    partners = {}
    for left, right in attract:
        partners.setdefault(left, []).append(right)

    out = list(repel)
    seen = set(repel)

    def add(left, right):
        if left != right and (left, right) not in seen:
            seen.add((left, right))
            seen.add((right, left))
            out.append((left, right))
            out.append((right, left))

    for a, b in repel:
        for a2 in partners.get(a, ()):
            add(a2, b)
        for b2 in partners.get(b, ()):
            add(a, b2)
        for a2 in partners.get(a, ()):
            for b2 in partners.get(b, ()):
                add(a2, b2)
    return out


def build(vocab, rules):
    """Full extraction: attract + expanded repel, with conflicts resolved.

    A pair generated on both sides is treated as repel only (antonymy
    signals are rarer and more deliberate than the broad inflection sweep).
    `rules` is a RuleSet or a builtin language code.
    """
    if not isinstance(rules, RuleSet):
        rules = builtin_rules(rules)
    attract = extract_attract(vocab, rules)
    repel = expand_repel(attract, extract_repel(vocab, rules))
    repel_set = set(repel)
    attract = [p for p in attract if p not in repel_set]
    return ConstraintSet(attract, repel)


def write_pairs(pairs, path):
    """One tab-separated pair per line, UTF-8."""
    with open(path, "w", encoding="utf-8") as fh:
        for left, right in pairs:
            fh.write(f"{left}\t{right}\n")


def read_pairs(path):
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0] or not fields[1]:
                raise ValueError(
                    f"{path}:{lineno}: expected two tab-separated words")
            pairs.append((fields[0], fields[1]))
    return pairs


def read_vocab(path):
    """Vocabulary file: one word per line, optionally word<TAB>count.

    Returns an insertion-ordered dict word -> count (None when the line has
    no count). Duplicate words keep the first occurrence.
    """
    vocab = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            fields = line.split("\t")
            word = fields[0].strip()
            if not word:
                raise ValueError(f"{path}:{lineno}: empty word")
            count = None
            if len(fields) > 2:
                raise ValueError(f"{path}:{lineno}: too many columns")
            if len(fields) == 2:
                try:
                    count = int(fields[1])
                except ValueError:
                    raise ValueError(
                        f"{path}:{lineno}: count is not an integer") from None
                if count < 0:
                    raise ValueError(f"{path}:{lineno}: negative count")
            if word not in vocab:
                vocab[word] = count
    return vocab
