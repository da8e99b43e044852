"""Exact arithmetic on words in a finite-rank free group.

A letter is a signed generator index: ``+i`` is the i-th generator
(1-based) and ``-i`` its inverse.  :class:`Word` values are immutable and
always freely reduced; reduction happens at construction so the invariant
is locally checkable everywhere else.  :class:`CyclicWord` adds cyclic
reduction and a canonical rotation, making equality of cyclic words the
same thing as conjugacy of the underlying group elements.

The canonical letter order is: generator index ascending, and within one
generator the positive letter before the negative one (a < a^-1 < b < ...).

Text syntax (shared by the CLI and the test fixtures): lowercase letters
``a``..``z`` denote generators 1..26, an uppercase letter denotes the
inverse (``A`` is ``a^-1``), ``x^k`` repeats the preceding letter k times
(negative k inverts), ``1`` is the empty word, whitespace is ignored.
``caB^2`` reads as c a b^-1 b^-1.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence, Union

__all__ = [
    "CapacityExceeded",
    "CyclicWord",
    "DEFAULT_LETTER_CAP",
    "InvalidLetter",
    "Letter",
    "ParseError",
    "RankMismatch",
    "Word",
    "canonical_cyclic",
    "cyclic_length",
    "cyclic_reduce",
    "free_reduce",
    "letter_cap",
    "parse_word",
    "set_letter_cap",
    "word_to_text",
]

DEFAULT_LETTER_CAP = 10**7

_letter_cap = DEFAULT_LETTER_CAP


class InvalidLetter(ValueError):
    """A letter refers to a generator outside the word's rank."""


class CapacityExceeded(RuntimeError):
    """A word operation ran past the configured letter cap."""


class RankMismatch(ValueError):
    """Two objects over free groups of different ranks were combined."""


class ParseError(ValueError):
    """Malformed word / automorphism / presentation text."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, column {col})")


def letter_cap() -> int:
    """Current global cap on the letter count of any single word."""
    return _letter_cap


def set_letter_cap(cap: int) -> int:
    """Set the global letter cap, returning the previous value.

    Iterated automorphism images grow exponentially, so word operations
    fail loudly with :class:`CapacityExceeded` instead of eating memory.
    """
    global _letter_cap
    if cap < 1:
        raise ValueError("letter cap must be positive")
    previous = _letter_cap
    _letter_cap = cap
    return previous


class Letter(NamedTuple):
    """A single generator or inverse generator, as (index, sign)."""

    gen: int
    sign: int

    @classmethod
    def from_int(cls, value: int) -> "Letter":
        if value == 0:
            raise InvalidLetter("letter value 0 is not a generator")
        return cls(abs(value), 1 if value > 0 else -1)

    def to_int(self) -> int:
        return self.gen * self.sign

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


LetterLike = Union[Letter, int]


def _as_ints(letters: Iterable[LetterLike]) -> list[int]:
    out = []
    for item in letters:
        x = item.to_int() if isinstance(item, Letter) else int(item)
        if x == 0:
            raise InvalidLetter("letter value 0 is not a generator")
        out.append(x)
    return out


def _ord_key(x: int) -> int:
    # Total letter order: gen ascending, positive before negative.
    return (abs(x) << 1) | (x < 0)


def _reduce_ints(ints: Sequence[int]) -> list[int]:
    cap = _letter_cap
    out: list[int] = []
    push = out.append
    pop = out.pop
    for x in ints:
        if out and out[-1] == -x:
            pop()
        else:
            push(x)
            if len(out) > cap:
                raise CapacityExceeded(f"word exceeds letter cap {cap}")
    return out


def _invert_ints(ints: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(ints))


def _concat_reduced(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    # Both inputs freely reduced: cancellation happens only at the seam.
    i, j = len(a), 0
    lb = len(b)
    while i > 0 and j < lb and a[i - 1] == -b[j]:
        i -= 1
        j += 1
    return tuple(a[:i]) + tuple(b[j:])


class Word:
    """A freely reduced word in the rank-``rank`` free group.

    ``raw`` is the tuple of signed generator indices; ``letters`` offers
    the same data as :class:`Letter` values.  Words are immutable values:
    all operations return new words and are safe to share across workers.
    """

    __slots__ = ("rank", "raw", "_hash")

    rank: int
    raw: tuple[int, ...]

    def __init__(self, rank: int, letters: Iterable[LetterLike] = ()):
        if rank < 1:
            raise ValueError("rank must be positive")
        ints = _as_ints(letters)
        for x in ints:
            if abs(x) > rank:
                raise InvalidLetter(f"generator {abs(x)} outside rank {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "raw", tuple(_reduce_ints(ints)))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _wrap(cls, rank: int, raw: tuple[int, ...]) -> "Word":
        # Internal fast path: raw must already be reduced and in range.
        w = object.__new__(cls)
        object.__setattr__(w, "rank", rank)
        object.__setattr__(w, "raw", raw)
        object.__setattr__(w, "_hash", None)
        return w

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_int(x) for x in self.raw)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.raw)

    def __bool__(self) -> bool:
        return bool(self.raw)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.rank == other.rank and self.raw == other.raw

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.rank, self.raw))
            object.__setattr__(self, "_hash", h)
        return h

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} * rank {other.rank}")
        return Word._wrap(self.rank, _concat_reduced(self.raw, other.raw))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        result = Word._wrap(self.rank, ())
        for _ in range(abs(n)):
            result = result * base
        return result

    def inverse(self) -> "Word":
        return Word._wrap(self.rank, _invert_ints(self.raw))

    def conjugate_by(self, u: "Word") -> "Word":
        """u * self * u^-1."""
        return u * self * u.inverse()

    def __str__(self) -> str:
        return word_to_text(self)

    def __repr__(self) -> str:
        return f"Word({word_to_text(self)!r}, rank={self.rank})"


def free_reduce(rank: int, raw: Iterable[LetterLike]) -> Word:
    """The unique freely reduced word equal to ``raw`` in the rank-r group.

    Idempotent; raises :class:`InvalidLetter` for out-of-range generators.
    """
    return Word(rank, raw)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as conjugator * core * conjugator^-1 with core cyclically
    reduced (shortest in the conjugacy class)."""
    raw = w.raw
    i, j = 0, len(raw) - 1
    while i < j and raw[i] == -raw[j]:
        i += 1
        j -= 1
    core = Word._wrap(w.rank, raw[i : j + 1])
    conjugator = Word._wrap(w.rank, raw[:i])
    return core, conjugator


def cyclic_length(w: Word) -> int:
    """Length of the cyclic core of ``w``; conjugation-invariant."""
    raw = w.raw
    i, j = 0, len(raw) - 1
    while i < j and raw[i] == -raw[j]:
        i += 1
        j -= 1
    return j - i + 1


def _min_rotation(raw: tuple[int, ...]) -> tuple[int, ...]:
    n = len(raw)
    if n <= 1:
        return raw
    keys = [_ord_key(x) for x in raw]
    least = min(keys)
    starts = [i for i, k in enumerate(keys) if k == least]
    if len(starts) == 1:
        i = starts[0]
        return raw[i:] + raw[:i]
    doubled = keys + keys
    best = min(starts, key=lambda s: doubled[s : s + n])
    return raw[best:] + raw[:best]


class CyclicWord:
    """Canonical representative of a conjugacy class.

    Stored cyclically reduced and rotated to the lexicographically least
    position under the letter order, so two words map to equal CyclicWords
    exactly when they are conjugate.
    """

    __slots__ = ("rank", "raw", "_hash")

    rank: int
    raw: tuple[int, ...]

    def __init__(self, rank: int, letters: Iterable[LetterLike] = ()):
        if rank < 1:
            raise ValueError("rank must be positive")
        ints = tuple(_as_ints(letters))
        for x in ints:
            if abs(x) > rank:
                raise InvalidLetter(f"generator {abs(x)} outside rank {rank}")
        for k in range(len(ints)):
            if ints[k] == -ints[(k + 1) % len(ints)]:
                raise ValueError("letters are not cyclically reduced")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "raw", _min_rotation(ints))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _wrap(cls, rank: int, raw: tuple[int, ...]) -> "CyclicWord":
        c = object.__new__(cls)
        object.__setattr__(c, "rank", rank)
        object.__setattr__(c, "raw", raw)
        object.__setattr__(c, "_hash", None)
        return c

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_int(x) for x in self.raw)

    def __setattr__(self, name, value):
        raise AttributeError("CyclicWord is immutable")

    def __len__(self) -> int:
        return len(self.raw)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.rank == other.rank and self.raw == other.raw

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.rank, self.raw))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self) -> tuple:
        return (len(self.raw), tuple(_ord_key(x) for x in self.raw))

    def to_word(self) -> Word:
        return Word._wrap(self.rank, self.raw)

    def __str__(self) -> str:
        return word_to_text(self.to_word())

    def __repr__(self) -> str:
        return f"CyclicWord({str(self)!r}, rank={self.rank})"


def canonical_cyclic(w: Word) -> CyclicWord:
    """Canonical cyclic form of ``w``: equal for conjugate words."""
    core, _ = cyclic_reduce(w)
    return CyclicWord._wrap(w.rank, _min_rotation(core.raw))


def _letter_from_char(ch: str, names: Sequence[str] | None) -> int:
    if names is not None:
        try:
            return names.index(ch.lower()) + 1
        except ValueError:
            return 0
    idx = ord(ch.lower()) - ord("a") + 1
    return idx


def parse_word(
    text: str,
    rank: int | None = None,
    names: Sequence[str] | None = None,
) -> Word:
    """Parse word text into a :class:`Word`.

    With ``names`` given, letters are resolved against that generator name
    list (single lowercase letters) and the rank is ``len(names)``.
    Otherwise letters a..z map to generators 1..26 and the rank is ``rank``
    if given, else the largest generator mentioned (1 for the empty word).
    """
    if names is not None:
        rank = len(names)
    ints: list[int] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    max_gen = 0

    def err(msg: str):
        return ParseError(msg, line, col)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "1":
            i += 1
            col += 1
            continue
        if not ("a" <= ch <= "z" or "A" <= ch <= "Z"):
            raise err(f"unexpected character {ch!r}")
        gen = _letter_from_char(ch, names)
        if gen == 0:
            raise err(f"unknown generator {ch.lower()!r}")
        if rank is not None and gen > rank:
            raise InvalidLetter(f"generator {ch.lower()!r} outside rank {rank}")
        sign = -1 if ch.isupper() else 1
        i += 1
        col += 1
        count = 1
        if i < n and text[i] == "^":
            i += 1
            col += 1
            start = i
            if i < n and text[i] == "-":
                i += 1
                col += 1
            digits = 0
            while i < n and text[i].isdigit():
                i += 1
                col += 1
                digits += 1
            if digits == 0:
                raise err("expected an integer after '^'")
            count = int(text[start:i])
        letter = gen * sign if count >= 0 else -gen * sign
        ints.extend([letter] * abs(count))
        max_gen = max(max_gen, gen)
    if rank is None:
        rank = max(max_gen, 1)
    return Word(rank, ints)


def word_to_text(w: Word, names: Sequence[str] | None = None) -> str:
    """Render a word in the shared text syntax; empty words render as '1'.

    Runs of a repeated letter collapse to ``x^k``.  Round-trips through
    :func:`parse_word`.
    """
    if not w.raw:
        return "1"
    parts: list[str] = []
    run_letter = w.raw[0]
    run = 1
    for x in w.raw[1:]:
        if x == run_letter:
            run += 1
        else:
            parts.append(_render_run(run_letter, run, names))
            run_letter, run = x, 1
    parts.append(_render_run(run_letter, run, names))
    return "".join(parts)


def _render_run(letter: int, run: int, names: Sequence[str] | None) -> str:
    gen = abs(letter)
    if names is not None:
        ch = names[gen - 1]
    else:
        ch = chr(ord("a") + gen - 1)
    if letter < 0:
        ch = ch.upper()
    return ch if run == 1 else f"{ch}^{run}"
