"""Checking derivations in a group presentation step by step.

Words are tuples of ``(symbol, exponent)`` with exponent ``+1`` or ``-1``.
A derivation is a list of steps; each step is one move or a list of moves,
and the word is freely reduced after every step.

A move ``(position, relator, direction)`` either

* rewrites with relator number ``relator``: the side ``lhs`` (direction +1)
  or ``rhs`` (direction -1) found at ``position`` is replaced by the other
  side; if the inverse of that side is found there instead, it is replaced by
  the inverse of the other side; or
* inserts a cancelling pair when ``relator`` is a symbol: ``x x^-1`` for
  direction +1 and ``x^-1 x`` for direction -1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

Word = tuple[tuple[str, int], ...]

_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?")


class StepDoesNotApply(ValueError):
    def __init__(self, index: int, subword: Word, message: str = ""):
        self.index = index
        self.subword = subword
        super().__init__(f"step {index} does not apply at subword "
                         f"{format_word(subword)!r}{': ' + message if message else ''}")


def parse_word(text: str) -> Word:
    """Parse ``"b a b^-1 a^2"``; ``"1"`` or ``""`` is the empty word."""
    out: list[tuple[str, int]] = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.fullmatch(tok)
        if m is None:
            raise ValueError(f"bad token {tok!r}")
        sym, exp = m.group(1), int(m.group(2) or 1)
        if exp == 0:
            continue
        sign = 1 if exp > 0 else -1
        out.extend([(sym, sign)] * abs(exp))
    return tuple(out)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    parts = []
    for sym, e in w:
        parts.append(sym if e == 1 else f"{sym}^-1")
    return " ".join(parts)


def as_word(w) -> Word:
    return parse_word(w) if isinstance(w, str) else tuple(tuple(x) for x in w)


def inverse(w: Word) -> Word:
    return tuple((s, -e) for s, e in reversed(w))


def free_reduce(w: Word) -> Word:
    out: list[tuple[str, int]] = []
    for x in w:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Move:
    position: int
    relator: Union[int, str]
    direction: int = 1


def _as_move(m) -> Move:
    return m if isinstance(m, Move) else Move(*m)


def apply_move(word: Word, relators: Sequence[tuple[Word, Word]], move: Move,
               step_index: int = 0) -> Word:
    p = move.position
    if not 0 <= p <= len(word):
        raise StepDoesNotApply(step_index, (), f"position {p} outside word of length {len(word)}")
    if isinstance(move.relator, str):
        x = move.relator
        pair = ((x, 1), (x, -1)) if move.direction > 0 else ((x, -1), (x, 1))
        return word[:p] + pair + word[p:]
    lhs, rhs = relators[move.relator]
    src, dst = (lhs, rhs) if move.direction > 0 else (rhs, lhs)
    here = word[p:p + len(src)]
    if here == src:
        return word[:p] + dst + word[p + len(src):]
    if here == inverse(src):
        return word[:p] + inverse(dst) + word[p + len(src):]
    raise StepDoesNotApply(step_index, here,
                           f"expected {format_word(src)!r} or its inverse")


def derivation_check(relators, steps, start, end, via=None) -> bool:
    """True iff applying ``steps`` to ``start`` yields ``end`` up to free reduction.

    ``via``, if given, lists the expected word after each step.
    """
    rels = [(as_word(a), as_word(b)) for a, b in relators]
    word = free_reduce(as_word(start))
    for n, step in enumerate(steps):
        moves = [step] if isinstance(step, Move) or (
            isinstance(step, tuple) and step and not isinstance(step[0], (Move, tuple, list))
        ) else list(step)
        for m in moves:
            word = apply_move(word, rels, _as_move(m), n)
        word = free_reduce(word)
        if via is not None and word != free_reduce(as_word(via[n])):
            raise StepDoesNotApply(n, word, f"expected {via[n]!r} after this step")
    return word == free_reduce(as_word(end))


# Relators b^-1 a b = a^2, c^-1 a c = a^2, b c = c b.
DOUBLING_RELATORS = (("b^-1 a b", "a^2"), ("c^-1 a c", "a^2"), ("b c", "c b"))

# bab^-1 -> bca^2c^-1b^-1 -> cba^2b^-1c^-1 -> cac^-1
CONJUGATE_DERIVATION = (
    [Move(1, "c", 1), Move(4, "c", 1), Move(2, 1, 1)],
    [Move(0, 2, 1), Move(4, 2, 1)],
    [Move(2, 0, -1)],
)
CONJUGATE_VIA = ("b c a^2 c^-1 b^-1", "c b a^2 b^-1 c^-1", "c a c^-1")
