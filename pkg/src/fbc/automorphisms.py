"""Endomorphisms and automorphisms of a free group, given by generator images.

A :class:`FreeMap` stores one image word per generator.  Composition follows
the convention compose(f, g) = "f after g".  Inversion runs Nielsen
reduction on the image tuple: elementary moves (swap entries, invert an
entry, multiply one entry by another or its inverse) are applied greedily
whenever they shrink the total length or, at equal length, improve a
lexicographic tiebreak; the map is an automorphism exactly when the reduced
tuple is a signed permutation of the basis, and replaying the moves on a
parallel tuple yields the inverse.

The map DSL used by the CLI and fixtures: semicolon-separated rules
``gen -> word`` in word text syntax, e.g. ``a->b; b->c; c->cA``.  Every
generator of the declared rank must appear exactly once on a left-hand
side; the rank defaults to the number of rules.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .intlin import IntMatrix, determinant
from .words import (
    CapacityExceeded,
    InvalidLetter,
    ParseError,
    RankMismatch,
    Word,
    _concat_reduced,
    _invert_ints,
    _ord_key,
    letter_cap,
    parse_word,
    word_to_text,
)

__all__ = [
    "DuplicateRule",
    "FreeMap",
    "MissingGenerator",
    "NotAutomorphismError",
    "abelianization_matrix",
    "apply",
    "compose",
    "invert",
    "is_automorphism",
    "map_to_text",
    "parse_automorphism",
    "random_automorphism",
    "transition_matrix",
]


class NotAutomorphismError(ValueError):
    """An operation that requires an automorphism got a non-invertible map."""


class DuplicateRule(ParseError):
    """A generator appears on two left-hand sides of the map DSL."""


class MissingGenerator(ParseError):
    """A generator of the declared rank has no rule in the map DSL."""


@dataclass(frozen=True)
class FreeMap:
    """Endomorphism of F_rank sending generator i to images[i-1]."""

    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.rank:
            raise RankMismatch(
                f"{len(self.images)} images for rank {self.rank}"
            )
        for img in self.images:
            if img.rank != self.rank:
                raise RankMismatch(
                    f"image of rank {img.rank} in a rank-{self.rank} map"
                )

    @classmethod
    def identity(cls, rank: int) -> "FreeMap":
        return cls(rank, tuple(Word._wrap(rank, (i,)) for i in range(1, rank + 1)))

    @classmethod
    def from_texts(cls, texts: Sequence[str], rank: int | None = None) -> "FreeMap":
        rank = rank if rank is not None else len(texts)
        return cls(rank, tuple(parse_word(t, rank=rank) for t in texts))

    @cached_property
    def _table(self) -> dict[int, tuple[int, ...]]:
        table: dict[int, tuple[int, ...]] = {}
        for i, img in enumerate(self.images, start=1):
            table[i] = img.raw
            table[-i] = _invert_ints(img.raw)
        return table

    def image(self, gen: int) -> Word:
        return self.images[gen - 1]

    @property
    def is_identity(self) -> bool:
        return all(
            img.raw == (i,) for i, img in enumerate(self.images, start=1)
        )

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __repr__(self) -> str:
        return f"FreeMap({map_to_text(self)!r})"


def apply(f: FreeMap, w: Word) -> Word:
    """Image of ``w`` under ``f``, freely reduced.

    Since image words are reduced, cancellation can only cascade at the
    seams, which keeps this linear in the output size.
    """
    if f.rank != w.rank:
        raise RankMismatch(f"map rank {f.rank}, word rank {w.rank}")
    table = f._table
    cap = letter_cap()
    out: list[int] = []
    pop = out.pop
    extend = out.extend
    for x in w.raw:
        img = table[x]
        j = 0
        limit = len(img)
        while out and j < limit and out[-1] == -img[j]:
            pop()
            j += 1
        if j < limit:
            extend(img[j:] if j else img)
            if len(out) > cap:
                raise CapacityExceeded(f"image exceeds letter cap {cap}")
    return Word._wrap(w.rank, tuple(out))


def compose(f: FreeMap, g: FreeMap) -> FreeMap:
    """The map "f after g": generator i goes to f(g(i))."""
    if f.rank != g.rank:
        raise RankMismatch(f"compose of ranks {f.rank} and {g.rank}")
    return FreeMap(f.rank, tuple(apply(f, img) for img in g.images))


def abelianization_matrix(f: FreeMap) -> IntMatrix:
    """Signed exponent-sum matrix: entry (i, j) counts generator i in the
    image of generator j with sign."""
    r = f.rank
    cols = []
    for img in f.images:
        col = [0] * r
        for x in img.raw:
            col[abs(x) - 1] += 1 if x > 0 else -1
        cols.append(col)
    return IntMatrix.from_rows(
        [[cols[j][i] for j in range(r)] for i in range(r)]
    )


def transition_matrix(f: FreeMap) -> IntMatrix:
    """Unsigned letter-count matrix: entry (i, j) counts occurrences of
    generator i (either sign) in the image of generator j."""
    r = f.rank
    cols = []
    for img in f.images:
        col = [0] * r
        for x in img.raw:
            col[abs(x) - 1] += 1
        cols.append(col)
    return IntMatrix.from_rows(
        [[cols[j][i] for j in range(r)] for i in range(r)]
    )


# --- Nielsen reduction -----------------------------------------------------
#
# Tuple states are lists of reduced letter tuples.  Moves:
#   ("swap", i, j)         entries i and j exchange
#   ("invert", i)          entry i is inverted
#   ("mul", i, j, side, s) entry i <- entry_i * entry_j^s   (side="r")
#                          entry i <- entry_j^s * entry_i   (side="l")

_BFS_NODE_CAP = 50_000


def _apply_move(state: list[tuple[int, ...]], move) -> None:
    kind = move[0]
    if kind == "swap":
        _, i, j = move
        state[i], state[j] = state[j], state[i]
    elif kind == "invert":
        _, i = move
        state[i] = _invert_ints(state[i])
    else:
        _, i, j, side, s = move
        other = state[j] if s == 1 else _invert_ints(state[j])
        if side == "r":
            state[i] = _concat_reduced(state[i], other)
        else:
            state[i] = _concat_reduced(other, state[i])


def _all_moves(r: int):
    moves = []
    for i in range(r):
        for j in range(i + 1, r):
            moves.append(("swap", i, j))
    for i in range(r):
        moves.append(("invert", i))
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            for side in ("r", "l"):
                for s in (1, -1):
                    moves.append(("mul", i, j, side, s))
    return moves


def _state_key(state: Sequence[tuple[int, ...]]):
    total = sum(len(t) for t in state)
    return (total, tuple(tuple(_ord_key(x) for x in t) for t in state))


def _signed_permutation(state: Sequence[tuple[int, ...]]) -> Optional[list[int]]:
    # Returns the letter held by each entry when the tuple is a signed
    # permutation of the basis, else None.
    r = len(state)
    seen = set()
    letters = []
    for t in state:
        if len(t) != 1:
            return None
        letters.append(t[0])
        seen.add(abs(t[0]))
    if seen != set(range(1, r + 1)):
        return None
    return letters


def _greedy_reduce(state, shadow, moves):
    # Apply the single move that most improves (total length, lex rank),
    # mirroring every move on the shadow tuple, until no move improves.
    while True:
        current = _state_key(state)
        best_key = None
        best_move = None
        for move in moves:
            trial = list(state)
            _apply_move(trial, move)
            key = _state_key(trial)
            if key < current and (best_key is None or key < best_key):
                best_key = key
                best_move = move
        if best_move is None:
            return
        _apply_move(state, best_move)
        _apply_move(shadow, best_move)


def _bfs_escape(state, moves) -> Optional[list]:
    # At a greedy stall, search the component reachable by total-length-
    # preserving moves for any state that admits a strict length drop.
    # Returns the move path (including the dropping move) or None.
    total = sum(len(t) for t in state)
    start = tuple(state)
    seen = {start}
    frontier = [(start, [])]
    while frontier:
        next_frontier = []
        for node, path in frontier:
            for move in moves:
                trial = list(node)
                _apply_move(trial, move)
                new_total = sum(len(t) for t in trial)
                if new_total < total:
                    return path + [move]
                if new_total > total:
                    continue
                key = tuple(trial)
                if key in seen:
                    continue
                seen.add(key)
                if len(seen) > _BFS_NODE_CAP:
                    raise RuntimeError(
                        "Nielsen reduction exceeded its search bound"
                    )
                next_frontier.append((key, path + [move]))
        frontier = next_frontier
    return None


def invert(f: FreeMap) -> Optional[FreeMap]:
    """Inverse of ``f``, or None when ``f`` is not an automorphism.

    A |det| != 1 abelianization is rejected immediately (cheap and sound);
    otherwise Nielsen reduction decides.  When an inverse is returned it
    composes with ``f`` to the identity exactly, both ways.
    """
    if abs(determinant(abelianization_matrix(f))) != 1:
        return None
    r = f.rank
    state = [img.raw for img in f.images]
    shadow = [(i,) for i in range(1, r + 1)]
    moves = _all_moves(r)
    while True:
        _greedy_reduce(state, shadow, moves)
        letters = _signed_permutation(state)
        if letters is not None:
            break
        path = _bfs_escape(state, moves)
        if path is None:
            return None
        for move in path:
            _apply_move(state, move)
            _apply_move(shadow, move)
    inverse_images: list[Word] = [None] * r  # type: ignore[list-item]
    for i, letter in enumerate(letters):
        target = abs(letter)
        raw = shadow[i] if letter > 0 else _invert_ints(shadow[i])
        inverse_images[target - 1] = Word._wrap(r, raw)
    g = FreeMap(r, tuple(inverse_images))
    if not (compose(f, g).is_identity and compose(g, f).is_identity):
        raise AssertionError("Nielsen replay produced a wrong inverse")
    return g


def is_automorphism(f: FreeMap) -> bool:
    return invert(f) is not None


def random_automorphism(
    rank: int,
    moves: int = 8,
    rng: random.Random | None = None,
) -> FreeMap:
    """Automorphism built from ``moves`` random elementary Nielsen moves.

    Useful as a test generator: the construction certifies invertibility.
    """
    rng = rng or random.Random()
    state = [(i,) for i in range(1, rank + 1)]
    all_moves = _all_moves(rank)
    multiplications = [m for m in all_moves if m[0] == "mul"]
    others = [m for m in all_moves if m[0] != "mul"]
    for _ in range(moves):
        pool = multiplications if (rank > 1 and rng.random() < 0.75) else others
        if not pool:
            pool = others
        _apply_move(state, rng.choice(pool))
    return FreeMap(rank, tuple(Word._wrap(rank, t) for t in state))


# --- map DSL ---------------------------------------------------------------

_RULE_RE = re.compile(r"^\s*([a-z])\s*->\s*(.*?)\s*$", re.S)


def parse_automorphism(text: str, rank: int | None = None) -> FreeMap:
    """Parse the map DSL ``a->b; b->c; c->cA`` into a :class:`FreeMap`."""
    rules: list[tuple[int, str, int]] = []  # (gen, rhs text, segment offset)
    offset = 0
    for segment in text.split(";"):
        stripped = segment.strip()
        if stripped:
            line, col = _position(text, offset)
            m = _RULE_RE.match(segment)
            if not m:
                raise ParseError(
                    f"expected 'gen -> word', got {stripped!r}", line, col
                )
            gen = ord(m.group(1)) - ord("a") + 1
            rules.append((gen, m.group(2), offset))
        offset += len(segment) + 1
    if not rules:
        raise ParseError("empty automorphism", 1, 1)
    if rank is None:
        rank = len(rules)
    images: list[Word | None] = [None] * rank
    for gen, rhs, seg_offset in rules:
        line, col = _position(text, seg_offset)
        if gen > rank:
            raise InvalidLetter(
                f"rule for generator {chr(ord('a') + gen - 1)!r} outside rank {rank}"
            )
        if images[gen - 1] is not None:
            raise DuplicateRule(
                f"generator {chr(ord('a') + gen - 1)!r} has two rules", line, col
            )
        images[gen - 1] = parse_word(rhs, rank=rank)
    missing = [chr(ord("a") + i) for i, img in enumerate(images) if img is None]
    if missing:
        raise MissingGenerator(
            f"no rule for generator(s) {', '.join(missing)}", 1, 1
        )
    return FreeMap(rank, tuple(images))  # type: ignore[arg-type]


def _position(text: str, offset: int) -> tuple[int, int]:
    prefix = text[:offset]
    line = prefix.count("\n") + 1
    col = offset - (prefix.rfind("\n") + 1) + 1
    return line, col


def map_to_text(f: FreeMap) -> str:
    """Render a map in the DSL; round-trips through parse_automorphism."""
    return "; ".join(
        f"{chr(ord('a') + i)}->{word_to_text(img)}"
        for i, img in enumerate(f.images)
    )
