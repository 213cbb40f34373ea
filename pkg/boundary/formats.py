"""Prefixes use the word syntax; annuli are written "stem!excluded", e.g. "a1a2!a1"."""
from boundary.domain import AnnulusSet, BoundaryPrefix
from free_group.exceptions import InvalidLetter, InvalidParameter, SpecParseError
from free_group.formats import parse_letters, parse_word


def parse_prefix(text, rank, offset=0):
    word = parse_word(text, rank, offset)
    if len(word) == 0:
        raise SpecParseError("boundary prefix must have depth >= 1", offset, text)
    return BoundaryPrefix(word)


def parse_annulus(text, rank, offset=0):
    stem_text, bang, child_text = text.partition('!')
    if not bang:
        raise SpecParseError("annulus needs 'stem!excluded'", offset + len(text), text)
    stem = parse_word(stem_text, rank, offset)
    child_offset = offset + len(stem_text) + 1
    child = parse_letters(child_text, rank, child_offset)
    if len(child) != 1:
        raise SpecParseError("excluded child must be a single letter", child_offset, text)
    try:
        return AnnulusSet(stem, child[0])
    except (InvalidLetter, InvalidParameter) as exc:
        raise SpecParseError(f"malformed annulus: {exc}", child_offset, text)


def format_annulus(annulus):
    return str(annulus)
