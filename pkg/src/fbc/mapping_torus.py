"""Mapping-torus presentations and first homology.

The mapping torus of an endomorphism f of F_r is presented on the r free
generators plus a stable letter t, with one relator t^-1 a_i t * f(a_i)^-1
per generator (the superscript convention a^t = t^-1 a t).  First homology
is computed from the relator exponent-sum matrix via Smith normal form;
for mapping tori the same invariants come from the matrix A - I, where A
is the abelianized action, and both routes are exposed so they can be
checked against each other.

Presentation text format (CLI): ``gens: a b t; rel: TatA; rel: ...`` —
segments separated by semicolons, first the generator names, then one
relator per ``rel:`` in word text syntax over those names.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .automorphisms import FreeMap, abelianization_matrix
from .intlin import IntMatrix, smith_normal_form
from .words import ParseError, Word, _invert_ints, parse_word, word_to_text

__all__ = [
    "AbelianInvariants",
    "Presentation",
    "abelian_invariants",
    "abelian_invariants_from_map",
    "mapping_torus_presentation",
    "parse_presentation",
    "presentation_to_text",
    "relator_exponent_matrix",
]

# Default generator names skip 't', which is reserved for the stable letter.
_BASE_NAMES = "abcdefghijklmnopqrs"


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group: named generators and freely reduced
    relators (Words over rank = generator count)."""

    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generator_names", tuple(self.generator_names))
        object.__setattr__(self, "relators", tuple(self.relators))
        names = self.generator_names
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        n = len(names)
        for rel in self.relators:
            if rel.rank != n:
                raise ValueError(
                    f"relator rank {rel.rank} differs from generator count {n}"
                )

    @property
    def generator_count(self) -> int:
        return len(self.generator_names)

    def __repr__(self) -> str:
        return f"Presentation({presentation_to_text(self)!r})"


@dataclass(frozen=True)
class AbelianInvariants:
    """H_1 = Z^betti + Z/d_1 + ... with d_i >= 2 forming a divisor chain."""

    betti: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.betti < 0:
            raise ValueError("betti number cannot be negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion entries must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion must form a divisibility chain")

    def cyclic_hom_count(self, n: int) -> int:
        """|Hom(G, Z/n)| predicted by H_1: n^betti * prod gcd(d_i, n)."""
        count = n**self.betti
        for d in self.torsion:
            count *= gcd(d, n)
        return count

    def describe(self) -> str:
        parts = []
        if self.betti:
            parts.append(f"Z^{self.betti}" if self.betti > 1 else "Z")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def mapping_torus_presentation(
    f: FreeMap, names: tuple[str, ...] | None = None
) -> Presentation:
    """Presentation of the mapping torus of ``f`` on r+1 generators.

    Relators are t^-1 a_i t * f(a_i)^-1, so for psi: a->b, b->c, c->cA the
    result is <a,b,c,t | t^-1 a t b^-1, t^-1 b t c^-1, t^-1 c t a c^-1>.
    """
    r = f.rank
    if names is None:
        if r > len(_BASE_NAMES):
            raise ValueError(
                "default names cover rank <= 19; pass explicit names"
            )
        names = tuple(_BASE_NAMES[:r]) + ("t",)
    if len(names) != r + 1:
        raise ValueError(f"need {r + 1} generator names, got {len(names)}")
    t = r + 1
    relators = []
    for i in range(1, r + 1):
        raw = (-t, i, t) + _invert_ints(f.images[i - 1].raw)
        relators.append(Word(r + 1, raw))
    return Presentation(names, tuple(relators))


def relator_exponent_matrix(p: Presentation) -> IntMatrix:
    """Exponent sums of each generator (rows) in each relator (columns)."""
    n = p.generator_count
    if not p.relators:
        return IntMatrix.from_rows([[0] for _ in range(n)])
    cols = []
    for rel in p.relators:
        col = [0] * n
        for x in rel.raw:
            col[abs(x) - 1] += 1 if x > 0 else -1
        cols.append(col)
    return IntMatrix.from_rows(
        [[col[i] for col in cols] for i in range(n)]
    )


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    """H_1 of the presented group via the Smith form of the exponent matrix."""
    if not p.relators:
        return AbelianInvariants(p.generator_count, ())
    snf = smith_normal_form(relator_exponent_matrix(p))
    betti = p.generator_count - len(snf.nonzero)
    return AbelianInvariants(betti, snf.torsion)


def abelian_invariants_from_map(f: FreeMap) -> AbelianInvariants:
    """H_1 of the mapping torus of ``f`` computed directly from A - I.

    The stable letter contributes one free Z factor; the rest is the
    cokernel of A - I on the abelianized fiber.  Must agree with
    :func:`abelian_invariants` of the mapping-torus presentation.
    """
    a = abelianization_matrix(f)
    snf = smith_normal_form(a - IntMatrix.identity(f.rank))
    betti = 1 + (f.rank - len(snf.nonzero))
    return AbelianInvariants(betti, snf.torsion)


def parse_presentation(text: str) -> Presentation:
    """Parse ``gens: a b t; rel: TatA; ...`` into a :class:`Presentation`."""
    segments = [s.strip() for s in text.split(";")]
    segments = [s for s in segments if s]
    if not segments:
        raise ParseError("empty presentation", 1, 1)
    head = segments[0]
    if not head.startswith("gens:"):
        raise ParseError("presentation must start with 'gens:'", 1, 1)
    names = tuple(head[len("gens:") :].split())
    if not names:
        raise ParseError("no generator names after 'gens:'", 1, 1)
    for name in names:
        if len(name) != 1 or not name.isalpha() or not name.islower():
            raise ParseError(
                f"generator name {name!r} must be a single lowercase letter", 1, 1
            )
    relators = []
    for seg in segments[1:]:
        if not seg.startswith("rel:"):
            raise ParseError(f"expected 'rel:', got {seg!r}", 1, 1)
        relators.append(parse_word(seg[len("rel:") :].strip(), names=list(names)))
    return Presentation(names, tuple(relators))


def presentation_to_text(p: Presentation) -> str:
    parts = ["gens: " + " ".join(p.generator_names)]
    parts.extend(
        "rel: " + word_to_text(rel, names=p.generator_names) for rel in p.relators
    )
    return "; ".join(parts)
