"""Lexical resources for the rule-based techniques: synonyms, antonyms,
coarse POS tags, abbreviation expansions, filler phrases, and stop words.

Resources load from plain UTF-8 files in a directory:

* ``synonyms.tsv``   rows ``surface<TAB>POS<TAB>relation<TAB>target`` where
  relation is ``syn``, ``ant``, or ``pos`` (POS declaration only; target
  ignored and may be ``-``).
* ``abbreviations.tsv``  rows ``short<TAB>long``.
* ``fillers.txt``    one phrase per line.
* ``stopwords.txt``  one token per line.

Lookups are case-insensitive on the surface form; callers re-apply the
original token's initial capital via :func:`match_case`. A small bundled
process-domain lexicon keeps the toolkit self-contained; production users
export a richer one from a lexical database in the same format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

POS_TAGS = ("NOUN", "VERB", "ADJ", "ADV", "OTHER")

_DATA_DIR = Path(__file__).parent / "data" / "lexicon"


class LexiconError(ValueError):
    """Malformed lexicon file or broken lexicon invariant."""


@dataclass(frozen=True)
class LexEntry:
    synonyms: tuple[str, ...] = ()
    antonyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class Lexicon:
    # (lowercased surface, POS) -> entry
    entries: dict[tuple[str, str], LexEntry] = field(default_factory=dict)
    abbreviations: dict[str, str] = field(default_factory=dict)  # short lower -> long
    expansions: dict[str, str] = field(default_factory=dict)  # long lower -> short
    fillers: tuple[str, ...] = ()
    stopwords: frozenset[str] = frozenset()
    pos: dict[str, str] = field(default_factory=dict)  # lowercased surface -> tag

    def coarse_pos(self, text: str) -> str:
        """Dictionary POS tag for a surface form, OTHER when unknown."""
        return self.pos.get(text.lower(), "OTHER")

    def _gather(self, text: str, which: str, pos: str | None) -> tuple[str, ...]:
        key = text.lower()
        tags = (pos,) if pos else POS_TAGS
        out: list[str] = []
        for tag in tags:
            entry = self.entries.get((key, tag))
            if entry:
                for w in getattr(entry, which):
                    if w not in out:
                        out.append(w)
        return tuple(out)

    def synonyms(self, text: str, pos: str | None = None) -> tuple[str, ...]:
        return self._gather(text, "synonyms", pos)

    def antonyms(self, text: str, pos: str | None = None) -> tuple[str, ...]:
        return self._gather(text, "antonyms", pos)

    def is_stopword(self, text: str) -> bool:
        return text.lower() in self.stopwords


def match_case(replacement: str, original: str) -> str:
    """Re-apply an initial capital so substitutions keep sentence casing."""
    if original[:1].isupper() and replacement[:1].islower():
        return replacement[0].upper() + replacement[1:]
    return replacement


def coarse_pos(lex: Lexicon, text: str) -> str:
    return lex.coarse_pos(text)


def _read_lines(path: Path) -> list[tuple[int, str]]:
    out = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        out.append((lineno, line))
    return out


def load_lexicon(path) -> Lexicon:
    """Load a lexicon directory. Missing files yield empty resources; a
    malformed row or a broken invariant raises LexiconError naming the
    file and line."""
    root = Path(path)
    if not root.is_dir():
        raise LexiconError(f"lexicon path {root} is not a directory")

    entries: dict[tuple[str, str], dict[str, list[str]]] = {}
    pos_map: dict[str, str] = {}
    syn_file = root / "synonyms.tsv"
    if syn_file.exists():
        for lineno, line in _read_lines(syn_file):
            parts = line.split("\t")
            if len(parts) != 4:
                raise LexiconError(
                    f"{syn_file.name}:{lineno}: expected 4 tab-separated fields, got {len(parts)}"
                )
            surface, tag, relation, target = (p.strip() for p in parts)
            if tag not in POS_TAGS:
                raise LexiconError(f"{syn_file.name}:{lineno}: unknown POS tag {tag!r}")
            if relation not in ("syn", "ant", "pos"):
                raise LexiconError(
                    f"{syn_file.name}:{lineno}: relation must be syn, ant or pos, got {relation!r}"
                )
            key = surface.lower()
            pos_map.setdefault(key, tag)
            if relation == "pos":
                entries.setdefault((key, tag), {"syn": [], "ant": []})
                continue
            if not target:
                raise LexiconError(f"{syn_file.name}:{lineno}: empty target")
            if relation == "syn" and target.lower() == key:
                raise LexiconError(
                    f"{syn_file.name}:{lineno}: {surface!r} listed as its own synonym"
                )
            bucket = entries.setdefault((key, tag), {"syn": [], "ant": []})
            if target not in bucket[relation]:
                bucket[relation].append(target)

    abbreviations: dict[str, str] = {}
    expansions: dict[str, str] = {}
    abbr_file = root / "abbreviations.tsv"
    if abbr_file.exists():
        for lineno, line in _read_lines(abbr_file):
            parts = line.split("\t")
            if len(parts) != 2:
                raise LexiconError(
                    f"{abbr_file.name}:{lineno}: expected 2 tab-separated fields, got {len(parts)}"
                )
            short, long = (p.strip() for p in parts)
            if not short or not long:
                raise LexiconError(f"{abbr_file.name}:{lineno}: empty abbreviation field")
            if short.lower() in abbreviations:
                raise LexiconError(
                    f"{abbr_file.name}:{lineno}: duplicate short form {short!r}"
                )
            if long.lower() in expansions:
                raise LexiconError(
                    f"{abbr_file.name}:{lineno}: duplicate long form {long!r}"
                )
            abbreviations[short.lower()] = long
            expansions[long.lower()] = short

    fillers: tuple[str, ...] = ()
    fill_file = root / "fillers.txt"
    if fill_file.exists():
        fillers = tuple(line.strip() for _, line in _read_lines(fill_file))

    stopwords: frozenset[str] = frozenset()
    stop_file = root / "stopwords.txt"
    if stop_file.exists():
        stopwords = frozenset(line.strip().lower() for _, line in _read_lines(stop_file))

    frozen = {
        key: LexEntry(tuple(v["syn"]), tuple(v["ant"])) for key, v in entries.items()
    }
    return Lexicon(frozen, abbreviations, expansions, fillers, stopwords, pos_map)


def builtin_lexicon() -> Lexicon:
    """The bundled process-domain lexicon shipped with the package."""
    return load_lexicon(_DATA_DIR)
