"""Deterministic fixture corpora and independent oracles shared by the
test modules."""

from __future__ import annotations

from random import Random

from spanaug.corpus import Corpus, Document, Mention, Relation, Token, make_document
from spanaug.lexicon import LexEntry, Lexicon

ACTORS = ["clerk", "manager", "officer", "supervisor", "agent", "secretary"]
VERBS = ["registers", "examines", "checks", "reviews", "forwards", "approves", "rejects", "archives"]
OBJECTS = ["claim", "request", "document", "invoice", "order", "report", "form", "complaint"]
TITLES = ["Manager", "Director", "Head"]
DEPARTMENTS = ["Claims", "Office", "Operations", "Support", "Finance"]
PLAIN = ["afterwards", "also", "meanwhile", "additionally", "finally"]


def d1_document() -> Document:
    """Single-sentence fixture: four mentions, one forward Flow relation."""
    return make_document(
        "D1",
        [(t, 0) for t in ["After", "a", "claim", "is", "registered", ",", "it", "is", "examined", "."]],
        [
            Mention("M1", "Activity Data", 1, 2),
            Mention("M2", "Activity", 4, 4),
            Mention("M3", "Activity Data", 6, 6),
            Mention("M4", "Activity", 8, 8),
        ],
        [Relation("R1", "Flow", "M2", "M4")],
    )


def _sentence(rng: Random, sentence_index: int, offset: int, long_actor: bool):
    """One templated sentence; returns (tokens, mentions, activity_id_seed)."""
    tokens: list[Token] = []
    mentions: list[Mention] = []

    def add(text: str) -> int:
        tokens.append(Token(text, sentence_index))
        return offset + len(tokens) - 1

    add("The")
    if long_actor:
        start = add(rng.choice(TITLES))
        add(",")
        add(rng.choice(DEPARTMENTS))
        end = add(rng.choice(DEPARTMENTS))
        mentions.append(Mention(f"a{sentence_index}", "Actor", start, end))
    else:
        position = add(rng.choice(ACTORS))
        mentions.append(Mention(f"a{sentence_index}", "Actor", position, position))
    position = add(rng.choice(VERBS))
    mentions.append(Mention(f"v{sentence_index}", "Activity", position, position))
    add("the")
    position = add(rng.choice(OBJECTS))
    mentions.append(Mention(f"o{sentence_index}", "Activity Data", position, position))
    if rng.random() < 0.4:
        add(rng.choice(PLAIN))
    add(".")
    return tokens, mentions


def random_fixture_document(doc_id: str, rng: Random, n_sentences: int | None = None) -> Document:
    """A multi-sentence document with comma-carrying mentions, same-sentence
    Performer/Uses relations, and cross-sentence Flow relations between the
    activities of adjacent sentences."""
    n = n_sentences if n_sentences is not None else rng.randint(2, 4)
    tokens: list[Token] = []
    mentions: list[Mention] = []
    for s in range(n):
        sent_tokens, sent_mentions = _sentence(rng, s, len(tokens), long_actor=rng.random() < 0.5)
        tokens += sent_tokens
        mentions += sent_mentions
    relations = []
    for s in range(n):
        relations.append(Relation(f"p{s}", "Actor Performer", f"v{s}", f"a{s}"))
        relations.append(Relation(f"u{s}", "Uses", f"v{s}", f"o{s}"))
    for s in range(n - 1):
        relations.append(Relation(f"f{s}", "Flow", f"v{s}", f"v{s + 1}"))
    return Document(doc_id, tuple(tokens), tuple(mentions), tuple(relations))


def fixture_corpus(n_documents: int = 20, seed: int = 2024) -> Corpus:
    rng = Random(seed)
    docs = tuple(random_fixture_document(f"doc{i}", rng) for i in range(n_documents))
    return Corpus(docs)


# --- synonym-class corpus: surfaces drawn from classes the lexicon knows ---

SYN_CLASSES = {
    ("Activity", "VERB"): [
        ["check", "examine", "inspect", "review", "audit", "assess",
         "verify", "evaluate", "screen", "scan", "appraise", "vet"],
        ["register", "record", "file", "log", "enter", "catalog",
         "archive", "index", "post", "book", "list", "store"],
        ["approve", "accept", "authorize", "confirm", "endorse", "ratify",
         "grant", "clear", "sanction", "validate", "sign", "settle"],
    ],
    ("Actor", "NOUN"): [
        ["clerk", "officer", "agent", "assistant", "operator", "registrar",
         "cashier", "teller", "receptionist", "administrator", "coordinator", "secretary"],
        ["manager", "supervisor", "director", "lead", "chief", "head",
         "principal", "executive", "controller", "foreman", "steward", "overseer"],
    ],
    ("Activity Data", "NOUN"): [
        ["claim", "request", "application", "case", "petition", "inquiry",
         "submission", "dossier", "ticket", "filing", "appeal", "motion"],
        ["invoice", "bill", "statement", "receipt", "voucher", "slip",
         "memo", "tally", "quote", "estimate", "summary", "docket"],
    ],
}


def synonym_class_lexicon() -> Lexicon:
    """Each class member's synonyms are the other members of its class."""
    entries = {}
    pos = {}
    for (_, tag), classes in SYN_CLASSES.items():
        for members in classes:
            for word in members:
                others = tuple(w for w in members if w != word)
                entries[(word, tag)] = LexEntry(synonyms=others)
                pos[word] = tag
    return Lexicon(entries=entries, pos=pos)


def synonym_class_document(doc_id: str, rng: Random) -> Document:
    """Template document whose mention surfaces come from synonym classes.

    Actor and Activity Data words swap freely between the subject and
    object slots, so sentence position says nothing about the mention
    type: only the surface form does. A surface unseen in training gets
    its type guessed, so making more class members visible (which is what
    synonym substitution does to the training fold) directly pays off."""
    tokens: list[Token] = []
    mentions: list[Mention] = []
    relations: list[Relation] = []
    n = rng.randint(1, 2)
    for s in range(n):
        def add(text: str) -> int:
            tokens.append(Token(text, s))
            return len(tokens) - 1

        def draw(key) -> str:
            return rng.choice(rng.choice(SYN_CLASSES[key]))

        subject_is_actor = rng.random() < 0.5
        add("The")
        subject = add(draw(("Actor", "NOUN")) if subject_is_actor else draw(("Activity Data", "NOUN")))
        add("must")
        verb = add(draw(("Activity", "VERB")))
        add("the")
        obj = add(draw(("Activity Data", "NOUN")) if subject_is_actor else draw(("Actor", "NOUN")))
        add(".")
        actor, data = (subject, obj) if subject_is_actor else (obj, subject)
        mentions += [
            Mention(f"a{s}", "Actor", actor, actor),
            Mention(f"v{s}", "Activity", verb, verb),
            Mention(f"o{s}", "Activity Data", data, data),
        ]
        mentions.sort(key=lambda m: m.start)
        relations += [
            Relation(f"p{s}", "Actor Performer", f"v{s}", f"a{s}"),
            Relation(f"u{s}", "Uses", f"v{s}", f"o{s}"),
        ]
    return Document(doc_id, tuple(tokens), tuple(mentions), tuple(relations))


def synonym_class_corpus(n_documents: int = 40, seed: int = 7) -> Corpus:
    rng = Random(seed)
    docs = []
    for i in range(n_documents):
        doc = synonym_class_document(f"s{i}", rng)
        while not doc.mentions:  # every document should carry some labels
            doc = synonym_class_document(f"s{i}", rng)
        docs.append(doc)
    return Corpus(tuple(docs))


# --- linearly separable corpora for the baseline models ---------------------

SEP_ACTOR_WORDS = ["clerk", "manager", "officer"]
SEP_VERB_WORDS = ["checks", "files", "approves"]
SEP_FILLER_WORDS = ["promptly", "today", "internally", "so"]


def separable_tagger_corpus(n_docs: int = 8, seed: int = 3) -> Corpus:
    """Tags are a function of the token text alone: actor words are always
    Actor mentions, verb words always Activity mentions."""
    rng = Random(seed)
    docs = []
    for i in range(n_docs):
        tokens = [Token("The", 0)]
        mentions = []
        tokens.append(Token(rng.choice(SEP_ACTOR_WORDS), 0))
        mentions.append(Mention("a", "Actor", 1, 1))
        tokens.append(Token(rng.choice(SEP_VERB_WORDS), 0))
        mentions.append(Mention("v", "Activity", 2, 2))
        tokens.append(Token(rng.choice(SEP_FILLER_WORDS), 0))
        tokens.append(Token(".", 0))
        docs.append(Document(f"t{i}", tuple(tokens), tuple(mentions)))
    return Corpus(tuple(docs), mention_types=("Actor", "Activity"), relation_types=("Flow",))


def separable_relation_corpus(n_docs: int = 6, seed: int = 5) -> Corpus:
    """Flow holds exactly between textually adjacent Activity mentions;
    activities sit three tokens apart so the distance buckets separate
    adjacent from non-adjacent pairs."""
    rng = Random(seed)
    docs = []
    for i in range(n_docs):
        n_acts = rng.randint(3, 4)
        tokens, mentions, relations = [], [], []
        for a in range(n_acts):
            tokens.append(Token(rng.choice(SEP_FILLER_WORDS), 0))
            tokens.append(Token(rng.choice(SEP_VERB_WORDS), 0))
            tokens.append(Token(rng.choice(SEP_FILLER_WORDS), 0))
            mentions.append(Mention(f"v{a}", "Activity", 3 * a + 1, 3 * a + 1))
        for a in range(n_acts - 1):
            relations.append(Relation(f"f{a}", "Flow", f"v{a}", f"v{a + 1}"))
        docs.append(Document(f"r{i}", tuple(tokens), tuple(mentions), tuple(relations)))
    return Corpus(tuple(docs), mention_types=("Activity",), relation_types=("Flow",))


# --- independent scoring oracle ---------------------------------------------


def kuhn_matching_score(gold_keys: list, pred_keys: list) -> tuple[int, int, int]:
    """Maximum bipartite matching (augmenting paths) where an edge exists
    iff the keys are equal: (tp, fp, fn). Independent of the library's
    counting-based scorer."""
    matched_to: list[int | None] = [None] * len(pred_keys)

    def try_assign(i: int, visited: set[int]) -> bool:
        for j, key in enumerate(pred_keys):
            if key == gold_keys[i] and j not in visited:
                visited.add(j)
                if matched_to[j] is None or try_assign(matched_to[j], visited):
                    matched_to[j] = i
                    return True
        return False

    tp = sum(1 for i in range(len(gold_keys)) if try_assign(i, set()))
    return tp, len(pred_keys) - tp, len(gold_keys) - tp
