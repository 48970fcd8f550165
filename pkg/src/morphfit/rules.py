"""Language-specific inflection and antonym-formation rules.

Rules are data, not code: each language is a table of MorphRule records plus
a list of negation prefixes and suffix swaps, so tests can enumerate them and
users can dump, edit, and reload them as plain text.

A rule either derives candidate forms directly from a word (kinds
"append-suffixes", "strip-then-append", "umlaut-plural") or defines a whole
suffix group whose members all count as inflections of one another (kind
"suffix-group-cross-product"). For group rules the stem is the word minus
`strip` trailing characters and the group is {word} plus stem+variant for
every variant; every in-vocabulary member of the group gets paired with every
other by the constraint builder.

Variants may contain "~", which expands to the stem: "ge~t" on stem "kauf"
yields "gekauft". That covers circumfix participles that plain suffixes
cannot express.
"""

from dataclasses import dataclass, field

APPEND = "append-suffixes"
STRIP_APPEND = "strip-then-append"
GROUP = "suffix-group-cross-product"
UMLAUT = "umlaut-plural"

_KINDS = (APPEND, STRIP_APPEND, GROUP, UMLAUT)

_UMLAUT_MAP = {"a": "ä", "o": "ö", "u": "ü"}


@dataclass(frozen=True)
class MorphRule:
    """One rewrite rule.

    trigger: required word ending ("" = any word).
    exclude: ending that vetoes the rule even when trigger matches ("" = none).
    strip: trailing characters removed before appending variants.
    variants: suffixes (or ~-templates) producing the candidate forms.
    """
    kind: str
    trigger: str = ""
    strip: int = 0
    variants: tuple = ()
    exclude: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown rule kind: {self.kind!r}")
        if self.strip < 0:
            raise ValueError("strip must be non-negative")
        if self.trigger and self.strip > len(self.trigger):
            raise ValueError(
                f"strip {self.strip} exceeds trigger {self.trigger!r}")
        if not self.variants:
            raise ValueError("rule needs at least one variant")
        object.__setattr__(self, "variants", tuple(self.variants))


@dataclass(frozen=True)
class RuleSet:
    """All rules for one language."""
    language: str
    attract_rules: tuple = ()
    repel_prefixes: tuple = ()
    repel_suffix_swaps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "attract_rules", tuple(self.attract_rules))
        object.__setattr__(self, "repel_prefixes", tuple(self.repel_prefixes))
        object.__setattr__(self, "repel_suffix_swaps",
                           tuple(tuple(s) for s in self.repel_suffix_swaps))


def _expand(stem, variant):
    if "~" in variant:
        return variant.replace("~", stem)
    return stem + variant


def apply_rule(rule, word):
    """Candidate related forms for one word under one rule, in variant order,
    deduplicated, never containing the word itself. Empty list when the rule
    does not trigger. Pure, no vocabulary filtering here."""
    if rule.trigger and not word.endswith(rule.trigger):
        return []
    if rule.exclude and word.endswith(rule.exclude):
        return []
    out = []
    seen = {word}
    if rule.kind == UMLAUT:
        pos = None
        for i in range(len(word) - 1, -1, -1):
            if word[i] in _UMLAUT_MAP:
                pos = i
                break
        if pos is None:
            return []
        mutated = word[:pos] + _UMLAUT_MAP[word[pos]] + word[pos + 1:]
        bases = [mutated + v for v in rule.variants]
    elif rule.kind == APPEND:
        bases = [word + v for v in rule.variants]
    else:
        stem = word[:-rule.strip] if rule.strip else word
        bases = [_expand(stem, v) for v in rule.variants]
    for cand in bases:
        if cand not in seen:
            seen.add(cand)
            out.append(cand)
    return out


def antonym_candidates(rules, word):
    """Candidate antonyms: each negation prefix prepended, plus suffix swaps
    (e.g. -ful -> -less) where the word carries the source suffix."""
    out = []
    seen = {word}
    for prefix in rules.repel_prefixes:
        cand = prefix + word
        if cand not in seen:
            seen.add(cand)
            out.append(cand)
    for source, target in rules.repel_suffix_swaps:
        if word.endswith(source) and len(word) > len(source):
            cand = word[:-len(source)] + target
            if cand not in seen:
                seen.add(cand)
                out.append(cand)
    return out


# --- English -----------------------------------------------------------

_EN_ATTRACT = (
    # plural / past / progressive straight onto the word
    MorphRule(APPEND, variants=("s", "ed", "ing")),
    # words ending in -e drop it before -ed/-ing (create -> created/creating)
    MorphRule(STRIP_APPEND, trigger="e", strip=1, variants=("ed", "ing")),
)
_EN_PREFIXES = ("dis", "il", "un", "in", "im", "ir", "mis", "non", "anti")
_EN_SWAPS = (("ful", "less"),)

# --- German ------------------------------------------------------------

_DE_VERB_T = ("e", "st", "ete", "etest", "etet", "eten", "ge~et")
# stems not ending in t; "t" itself is needed for third person pairs like
# (kaufst, kauft)
_DE_VERB = ("e", "st", "t", "te", "test", "tet", "ten", "ge~t")

_DE_ATTRACT = (
    # adjective/participle declension: any word crossed with -e -em -en -er -es
    MorphRule(GROUP, variants=("e", "em", "en", "er", "es")),
    # verb conjugation, stem ends in t (arbeiten -> arbeit-)
    MorphRule(GROUP, trigger="ten", strip=2, variants=_DE_VERB_T),
    # verb conjugation, all other -en infinitives
    MorphRule(GROUP, trigger="en", strip=2, variants=_DE_VERB,
              exclude="ten"),
    # noun plurals in -en
    MorphRule(APPEND, trigger="ei", variants=("en",)),
    MorphRule(APPEND, trigger="heit", variants=("en",)),
    MorphRule(APPEND, trigger="keit", variants=("en",)),
    MorphRule(APPEND, trigger="schaft", variants=("en",)),
    MorphRule(APPEND, trigger="ung", variants=("en",)),
    # feminine agent nouns: lehrerin -> lehrerinnen
    MorphRule(APPEND, trigger="in", variants=("nen",)),
    # plural -s after final vowel
    MorphRule(APPEND, trigger="a", variants=("s",)),
    MorphRule(APPEND, trigger="i", variants=("s",)),
    MorphRule(APPEND, trigger="o", variants=("s",)),
    MorphRule(APPEND, trigger="u", variants=("s",)),
    MorphRule(APPEND, trigger="y", variants=("s",)),
    # plural -n after final -e
    MorphRule(APPEND, trigger="e", variants=("n",)),
    # umlaut plural: wörterbuch -> wörterbücher, stadt -> städter
    MorphRule(UMLAUT, variants=("er",)),
)
_DE_PREFIXES = ("un", "nicht", "anti", "ir", "in", "miss")
_DE_SWAPS = (("voll", "los"),)

# --- Italian -----------------------------------------------------------

_IT_VOWELS = ("a", "e", "o", "i")

_IT_ATTRACT = (
    # gender/number endings cross each other (bianco/bianca/bianchi...)
    MorphRule(GROUP, trigger="a", strip=1, variants=_IT_VOWELS),
    MorphRule(GROUP, trigger="e", strip=1, variants=_IT_VOWELS),
    MorphRule(GROUP, trigger="o", strip=1, variants=_IT_VOWELS),
    MorphRule(GROUP, trigger="i", strip=1, variants=_IT_VOWELS),
    # -ga/-ca keep the hard consonant in the plural: tartaruga -> tartarughe
    MorphRule(STRIP_APPEND, trigger="ga", strip=1, variants=("he",)),
    MorphRule(STRIP_APPEND, trigger="ca", strip=1, variants=("he",)),
    # albergo -> alberghi
    MorphRule(STRIP_APPEND, trigger="go", strip=1, variants=("hi",)),
    # conjugation groups for the three infinitive classes
    MorphRule(GROUP, trigger="are", strip=3,
              variants=("iamo", "ate", "ano", "o", "i", "a",
                        "ato", "ata", "ati")),
    MorphRule(GROUP, trigger="ere", strip=3,
              variants=("iamo", "ete", "ono", "o", "i", "e",
                        "uto", "uta", "uti", "ute")),
    MorphRule(GROUP, trigger="ire", strip=3,
              variants=("iamo", "ite", "ono", "o", "i", "e",
                        "ito", "ita", "iti", "ite")),
)
_IT_PREFIXES = ("in", "ir", "im", "anti")
_IT_SWAPS = ()

# --- Russian -----------------------------------------------------------

# conjugation endings shared by the -ть and -ти infinitive groups; "те"
# keeps pairs like (варить, варите) reachable from the infinitive
_RU_VERB = ("у", "ю", "ешь", "ишь", "ет", "ит", "ем", "им",
            "ете", "ите", "те", "ут", "ют", "ат", "ят", "нный", "нная")

_RU_ATTRACT = (
    # bare plurals
    MorphRule(APPEND, variants=("и", "ы")),
    MorphRule(STRIP_APPEND, trigger="а", strip=1, variants=("и", "ы")),
    MorphRule(STRIP_APPEND, trigger="я", strip=1, variants=("и", "ы")),
    MorphRule(STRIP_APPEND, trigger="ь", strip=1, variants=("и", "ы")),
    MorphRule(STRIP_APPEND, trigger="о", strip=1, variants=("а",)),
    MorphRule(STRIP_APPEND, trigger="е", strip=1, variants=("я",)),
    # verb conjugation for both infinitive endings
    MorphRule(GROUP, trigger="ти", strip=2, variants=_RU_VERB),
    MorphRule(GROUP, trigger="ть", strip=2, variants=_RU_VERB),
    # noun case endings
    MorphRule(GROUP, trigger="а", strip=1, variants=("е", "у", "ой")),
    MorphRule(GROUP, trigger="я", strip=1, variants=("е", "ю", "ей")),
    MorphRule(GROUP, trigger="ы", strip=1, variants=("ам", "ами", "ах")),
    MorphRule(GROUP, trigger="и", strip=1, variants=("ь", "ям", "ями", "ях")),
    # adjective endings
    MorphRule(GROUP, trigger="ый", strip=2, variants=("ь", "ее", "ые")),
    MorphRule(GROUP, trigger="ой", strip=2, variants=("ь", "ее", "ые")),
    MorphRule(GROUP, trigger="ий", strip=2, variants=("ь", "ее", "ые")),
    MorphRule(GROUP, trigger="ая", strip=2, variants=("ее", "ые", "ый")),
    MorphRule(GROUP, trigger="ое", strip=2, variants=("ый", "ые", "ая")),
)
_RU_PREFIXES = ("не", "анти")
_RU_SWAPS = ()

_BUILTIN = {
    "en": RuleSet("en", _EN_ATTRACT, _EN_PREFIXES, _EN_SWAPS),
    "de": RuleSet("de", _DE_ATTRACT, _DE_PREFIXES, _DE_SWAPS),
    "it": RuleSet("it", _IT_ATTRACT, _IT_PREFIXES, _IT_SWAPS),
    "ru": RuleSet("ru", _RU_ATTRACT, _RU_PREFIXES, _RU_SWAPS),
}

LANGUAGES = tuple(sorted(_BUILTIN))


def builtin_rules(language):
    """Bundled RuleSet for one of: en, de, it, ru."""
    try:
        return _BUILTIN[language]
    except KeyError:
        raise ValueError(
            f"no builtin rules for language {language!r}; "
            f"available: {', '.join(LANGUAGES)}") from None


# --- text serialization --------------------------------------------------
#
# One record per line, tab separated:
#   language <TAB> en
#   attract <TAB> kind <TAB> trigger[!exclude] <TAB> strip <TAB> v1,v2,...
#   repel-prefix <TAB> dis
#   repel-suffix-swap <TAB> ful <TAB> less
# Blank lines and lines starting with # are skipped.

def rules_to_text(rules):
    lines = [f"language\t{rules.language}"]
    for r in rules.attract_rules:
        trigger = r.trigger
        if r.exclude:
            trigger = f"{trigger}!{r.exclude}"
        lines.append(
            f"attract\t{r.kind}\t{trigger}\t{r.strip}\t{','.join(r.variants)}")
    for p in rules.repel_prefixes:
        lines.append(f"repel-prefix\t{p}")
    for source, target in rules.repel_suffix_swaps:
        lines.append(f"repel-suffix-swap\t{source}\t{target}")
    return "\n".join(lines) + "\n"


def rules_from_text(text):
    language = None
    attract = []
    prefixes = []
    swaps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        tag = fields[0]
        if tag == "language" and len(fields) == 2:
            language = fields[1]
        elif tag == "attract" and len(fields) == 5:
            trigger, _, exclude = fields[2].partition("!")
            try:
                strip = int(fields[3])
            except ValueError:
                raise ValueError(f"rule table line {lineno}: bad strip count")
            variants = tuple(v for v in fields[4].split(",") if v)
            attract.append(MorphRule(fields[1], trigger, strip, variants,
                                     exclude))
        elif tag == "repel-prefix" and len(fields) == 2:
            prefixes.append(fields[1])
        elif tag == "repel-suffix-swap" and len(fields) == 3:
            swaps.append((fields[1], fields[2]))
        else:
            raise ValueError(f"rule table line {lineno}: cannot parse {raw!r}")
    if language is None:
        raise ValueError("rule table has no language line")
    return RuleSet(language, tuple(attract), tuple(prefixes), tuple(swaps))


def save_rules(rules, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(rules_to_text(rules))


def load_rules(path):
    with open(path, encoding="utf-8") as fh:
        return rules_from_text(fh.read())
