"""Self-contained downstream extractors used to measure augmentation gain.

Two averaged perceptrons: a BIO sequence tagger for mention detection and
a multiclass classifier over ordered mention pairs for relation
extraction, plus the order-based Performer/Recipient rule. Both models
memorize surface forms through their lexical features, which is exactly
the behavior the augmentation effects perturb, so gains are measurable
without external model dependencies. Training is deterministic for a
fixed (corpus, epochs, seed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from random import Random

from .corpus import Corpus, Document, Mention, Relation
from .edits import sentence_spans

TAGGER_FORMAT = "spanaug-tagger/1"
RELATIONS_FORMAT = "spanaug-relations/1"


@dataclass
class TaggerModel:
    tags: tuple[str, ...]  # "O" plus B-/I- per mention type
    weights: dict[str, list[float]]  # feature -> per-tag averaged weights


@dataclass
class RelModel:
    relation_types: tuple[str, ...]
    window: int  # max sentence distance for candidate pairs
    weights: dict[str, list[float]]  # feature -> per-class weights, "none" last


def _tag_set(mention_types) -> tuple[str, ...]:
    tags = ["O"]
    for t in mention_types:
        tags += [f"B-{t}", f"I-{t}"]
    return tuple(tags)


def _token_features(d: Document, start: int, end: int) -> list[tuple[str, ...]]:
    """Static per-token features for the sentence tokens[start:end+1]."""
    texts = [t.text for t in d.tokens[start : end + 1]]
    lower = [t.lower() for t in texts]
    feats = []
    for i, w in enumerate(lower):
        feats.append(
            (
                f"w={w}",
                f"pre={w[:3]}",
                f"suf={w[-3:]}",
                f"cap={texts[i][:1].isupper()}",
                f"prev={lower[i - 1] if i else '<s>'}",
                f"next={lower[i + 1] if i + 1 < len(lower) else '</s>'}",
            )
        )
    return feats


def _gold_tags(d: Document, start: int, end: int, tag_index: dict[str, int]) -> list[int]:
    tags = [0] * (end - start + 1)
    for m in d.mentions:
        if m.start < start or m.end > end:
            continue
        tags[m.start - start] = tag_index[f"B-{m.type}"]
        for i in range(m.start + 1, m.end + 1):
            tags[i - start] = tag_index[f"I-{m.type}"]
    return tags


def _scores(weights: dict[str, list[float]], feats, n: int) -> list[float]:
    scores = [0.0] * n
    for f in feats:
        row = weights.get(f)
        if row is not None:
            for c in range(n):
                scores[c] += row[c]
    return scores


def _argmax(scores) -> int:
    best = 0
    for c in range(1, len(scores)):
        if scores[c] > scores[best]:
            best = c
    return best


def _averaged(w, u, steps) -> dict[str, list[float]]:
    return {f: [w[f][c] - u[f][c] / steps for c in range(len(w[f]))] for f in sorted(w)}


def train_tagger(train: Corpus, epochs: int = 5, seed: int = 0) -> TaggerModel:
    """Averaged perceptron over per-token features with greedy decoding;
    the previous *predicted* tag feeds the next decision."""
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    if not train.documents:
        raise ValueError("cannot train on an empty corpus")
    tags = _tag_set(train.mention_types)
    tag_index = {t: i for i, t in enumerate(tags)}
    n = len(tags)

    prepared = []
    for d in train.documents:
        for _, s, e in sentence_spans(d):
            prepared.append(list(zip(_token_features(d, s, e), _gold_tags(d, s, e, tag_index))))

    rng = Random(seed)
    w: dict[str, list[float]] = {}
    u: dict[str, list[float]] = {}
    step = 0
    order = list(range(len(prepared)))
    for _ in range(epochs):
        rng.shuffle(order)
        for si in order:
            prev = "<s>"
            for feats, gold in prepared[si]:
                full = feats + (f"ptag={prev}",)
                pred = _argmax(_scores(w, full, n))
                step += 1
                if pred != gold:
                    for f in full:
                        row = w.setdefault(f, [0.0] * n)
                        urow = u.setdefault(f, [0.0] * n)
                        row[gold] += 1.0
                        urow[gold] += step
                        row[pred] -= 1.0
                        urow[pred] -= step
                prev = tags[pred]
    return TaggerModel(tags, _averaged(w, u, max(step, 1)))


def predict_tags(model: TaggerModel, d: Document) -> list[str]:
    n = len(model.tags)
    out = []
    for _, s, e in sentence_spans(d):
        prev = "<s>"
        for feats in _token_features(d, s, e):
            pred = _argmax(_scores(model.weights, feats + (f"ptag={prev}",), n))
            tag = model.tags[pred]
            out.append(tag)
            prev = tag
    return out


def predict_mentions(model: TaggerModel, d: Document) -> list[Mention]:
    """Greedy decode then BIO assembly; an I- tag without a matching open
    span is repaired to B-. Spans never cross sentence boundaries because
    decoding restarts per sentence."""
    tags = predict_tags(model, d)
    mentions: list[Mention] = []
    boundaries = {s for _, s, _ in sentence_spans(d)}
    open_type = None
    open_start = 0
    for i, tag in enumerate(tags):
        starts_sentence = i in boundaries
        if open_type is not None and (
            starts_sentence
            or tag == "O"
            or tag.startswith("B-")
            or (tag.startswith("I-") and tag[2:] != open_type)
        ):
            mentions.append(Mention(f"p{len(mentions)}", open_type, open_start, i - 1))
            open_type = None
        if tag == "O":
            continue
        if open_type is None:  # B- opens; orphan I- repaired to B-
            open_type = tag[2:]
            open_start = i
    if open_type is not None:
        mentions.append(Mention(f"p{len(mentions)}", open_type, open_start, len(tags) - 1))
    return mentions


_DIST_EDGES = (1, 2, 3, 4, 5, 10)


def _bucket(value: int) -> str:
    mag = abs(value)
    for edge in _DIST_EDGES:
        if mag <= edge:
            label = str(edge)
            break
    else:
        label = ">10"
    return f"-{label}" if value < 0 else f"+{label}"


def _pair_features(d: Document, head: Mention, tail: Mention) -> tuple[str, ...]:
    hs = d.tokens[head.start].sentence
    ts = d.tokens[tail.start].sentence
    if head.start < tail.start:
        gap = tail.start - head.end - 1
    else:
        gap = head.start - tail.end - 1
    hw = d.tokens[head.start].text.lower()
    tw = d.tokens[tail.start].text.lower()
    return (
        f"ht={head.type}",
        f"tt={tail.type}",
        f"pair={head.type}>{tail.type}",
        f"order={'HT' if head.start < tail.start else 'TH'}",
        f"dist={_bucket(tail.start - head.start)}",
        f"gap={_bucket(gap)}",
        f"sdist={ts - hs}",
        f"hw={hw}",
        f"tw={tw}",
        f"hw,tw={hw}|{tw}",
    )


def _candidate_pairs(d: Document, window: int) -> list[tuple[Mention, Mention]]:
    ms = sorted(d.mentions, key=lambda m: m.start)
    pairs = []
    for head in ms:
        for tail in ms:
            if head.id == tail.id:
                continue
            if abs(d.tokens[head.start].sentence - d.tokens[tail.start].sentence) <= window:
                pairs.append((head, tail))
    return pairs


def train_relations(
    train: Corpus, epochs: int = 5, seed: int = 0, window: int = 1
) -> RelModel:
    """Multiclass averaged perceptron over ordered candidate mention pairs
    within the sentence-distance window; classes are the relation types
    plus an explicit none."""
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    if not train.documents:
        raise ValueError("cannot train on an empty corpus")
    # none first: an all-zero score ties toward predicting no relation
    classes = ("<none>",) + tuple(train.relation_types)
    class_index = {c: i for i, c in enumerate(classes)}
    none = 0
    n = len(classes)

    prepared = []
    for d in train.documents:
        gold = {(r.head, r.tail): class_index[r.type] for r in d.relations}
        for head, tail in _candidate_pairs(d, window):
            label = gold.get((head.id, tail.id), none)
            prepared.append((_pair_features(d, head, tail), label))

    rng = Random(seed)
    w: dict[str, list[float]] = {}
    u: dict[str, list[float]] = {}
    step = 0
    order = list(range(len(prepared)))
    for _ in range(epochs):
        rng.shuffle(order)
        for pi in order:
            feats, gold_label = prepared[pi]
            pred = _argmax(_scores(w, feats, n))
            step += 1
            if pred != gold_label:
                for f in feats:
                    row = w.setdefault(f, [0.0] * n)
                    urow = u.setdefault(f, [0.0] * n)
                    row[gold_label] += 1.0
                    urow[gold_label] += step
                    row[pred] -= 1.0
                    urow[pred] -= step
    return RelModel(tuple(train.relation_types), window, _averaged(w, u, max(step, 1)))


def predict_relations(model: RelModel, d: Document) -> list[Relation]:
    """Relations over the document's (given) mentions; requires mentions
    to be attached, gold or predicted."""
    classes = ("<none>",) + tuple(model.relation_types)
    n = len(classes)
    out = []
    for head, tail in _candidate_pairs(d, model.window):
        pred = _argmax(_scores(model.weights, _pair_features(d, head, tail), n))
        if pred != 0:
            out.append(Relation(f"r{len(out)}", classes[pred], head.id, tail.id))
    return out


def rule_actor_baseline(d: Document) -> list[Relation]:
    """Order rule: per Activity, the nearest same-sentence Actor on the
    left becomes its Performer, the nearest on the right its Recipient.
    Distance is measured between span starts; ties take the leftmost."""
    out = []
    activities = [m for m in sorted(d.mentions, key=lambda m: m.start) if m.type == "Activity"]
    actors = [m for m in sorted(d.mentions, key=lambda m: m.start) if m.type == "Actor"]
    for act in activities:
        sentence = d.tokens[act.start].sentence
        same = [m for m in actors if d.tokens[m.start].sentence == sentence]
        left = [m for m in same if m.start < act.start]
        right = [m for m in same if m.start > act.start]
        if left:
            nearest = min(left, key=lambda m: (act.start - m.start, m.start))
            out.append(Relation(f"ab{len(out)}", "Actor Performer", act.id, nearest.id))
        if right:
            nearest = min(right, key=lambda m: (m.start - act.start, m.start))
            out.append(Relation(f"ab{len(out)}", "Actor Recipient", act.id, nearest.id))
    return out


def save_tagger(model: TaggerModel, path) -> None:
    obj = {"format": TAGGER_FORMAT, "tags": list(model.tags), "weights": model.weights}
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, sort_keys=True)
        f.write("\n")


def load_tagger(path) -> TaggerModel:
    with open(path, encoding="utf-8") as f:
        obj = json.load(f)
    if obj.get("format") != TAGGER_FORMAT:
        raise ValueError(f"unsupported tagger format {obj.get('format')!r}")
    return TaggerModel(tuple(obj["tags"]), {f: list(map(float, r)) for f, r in obj["weights"].items()})


def save_relation_model(model: RelModel, path) -> None:
    obj = {
        "format": RELATIONS_FORMAT,
        "relation_types": list(model.relation_types),
        "window": model.window,
        "weights": model.weights,
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, sort_keys=True)
        f.write("\n")


def load_relation_model(path) -> RelModel:
    with open(path, encoding="utf-8") as f:
        obj = json.load(f)
    if obj.get("format") != RELATIONS_FORMAT:
        raise ValueError(f"unsupported relation-model format {obj.get('format')!r}")
    return RelModel(
        tuple(obj["relation_types"]),
        int(obj["window"]),
        {f: list(map(float, r)) for f, r in obj["weights"].items()},
    )
