"""
Text syntax for words: "e" is the identity, otherwise letters "a<i>" and
"A<i>" (inverse) joined without separators, e.g. "a1A2a1".
"""
import re

from free_group.domain import Letter, ReducedWord
from free_group.exceptions import SpecParseError

LETTER_RE = re.compile(r'([aA])(\d+)')


def _tokens(text, rank, offset):
    """Yield (position, Letter) pairs; positions are offsets into the original text."""
    lead = len(text) - len(text.lstrip())
    body = text.strip()
    if body == "e":
        return
    if not body:
        raise SpecParseError("empty word", offset + lead, text)
    pos = 0
    while pos < len(body):
        match = LETTER_RE.match(body, pos)
        if not match:
            raise SpecParseError(
                f"expected a<i> or A<i>, got {body[pos]!r}", offset + lead + pos, text
            )
        index = int(match.group(2))
        if index < 1 or index > rank:
            raise SpecParseError(
                f"generator index {index} out of range for rank {rank}", offset + lead + pos, text
            )
        yield offset + lead + pos, Letter(index, 1 if match.group(1) == 'a' else -1)
        pos = match.end()


def parse_letters(text, rank, offset=0):
    """Parse a letter string without reducing it. `offset` shifts reported positions."""
    return [letter for _, letter in _tokens(text, rank, offset)]


def parse_word(text, rank, offset=0):
    """Parse a reduced word; an adjacent inverse pair is a parse error."""
    letters = []
    for pos, letter in _tokens(text, rank, offset):
        if letters and letters[-1] == letter.inverse():
            raise SpecParseError("word is not reduced", pos, text)
        letters.append(letter)
    return ReducedWord(rank, tuple(letters))


def format_word(w):
    return str(w)
