"""Profinite fingerprints: counting homomorphisms to finite groups.

A finite group is a multiplication table over element indices, built by
closing permutation generators.  Counting maps from a presentation into a
finite group is plain backtracking over generator images, pruned by
checking each relator as soon as all of its generators are assigned.  The
innermost level gets special treatment: a relator is decomposed around the
occurrences of the last variable, so candidate images are found by a table
scan (or solved outright when the variable occurs once) instead of
re-evaluating the whole word per candidate.  Variable order is chosen by a
small cost model; counts are order-independent.

A fingerprint records homomorphism and epimorphism counts against a fixed
library of finite groups.  Those counts are invariants of the profinite
completion, and strictly refine quotient-set membership (a group in the
library is a quotient exactly when its epimorphism count is positive).
Equal fingerprints over a library are necessary, never sufficient, for
profinite isomorphism — reports say "IDENTICAL over library", nothing more.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from .mapping_torus import Presentation
from .words import canonical_cyclic, word_to_text

__all__ = [
    "FingerprintCache",
    "Fingerprint",
    "FingerprintComparison",
    "FingerprintEntry",
    "FiniteGroup",
    "LibraryMismatch",
    "OrderCapExceeded",
    "alternating_group",
    "build_group_from_permutations",
    "compare_fingerprints",
    "count_epis",
    "count_epis_bruteforce",
    "count_homs",
    "count_homs_bruteforce",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
    "fingerprint",
    "load_group_file",
    "parse_permutation",
    "presentation_key",
    "quaternion_group",
    "standard_library",
    "symmetric_group",
]

DEFAULT_ORDER_CAP = 2000


class OrderCapExceeded(RuntimeError):
    """Closing the permutation generators passed the group-order cap."""


class LibraryMismatch(ValueError):
    """Fingerprints over different libraries cannot be compared."""


class FiniteGroup:
    """Finite group as a multiplication table on element indices."""

    def __init__(
        self,
        label: str,
        mul: Sequence[Sequence[int]],
        identity: int,
        inverse: Sequence[int],
    ):
        self.label = label
        self.order = len(mul)
        self.mul = tuple(tuple(row) for row in mul)
        self.identity = identity
        self.inverse = tuple(inverse)
        self._cols: tuple[tuple[int, ...], ...] | None = None
        self._check_laws()

    def _check_laws(self):
        n = self.order
        e = self.identity
        mul = self.mul
        if any(len(row) != n for row in mul):
            raise ValueError("multiplication table must be square")
        for i in range(n):
            if mul[e][i] != i or mul[i][e] != i:
                raise ValueError("identity law fails")
            j = self.inverse[i]
            if mul[i][j] != e or mul[j][i] != e:
                raise ValueError("inverse law fails")
        # Associativity spot check; guards table-construction bugs.
        rng = random.Random(n)
        for _ in range(min(30, n**3)):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise ValueError("associativity fails on a sampled triple")

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        if self._cols is None:
            self._cols = tuple(zip(*self.mul))
        return self._cols

    def generated_order(self, gens: Iterable[int]) -> int:
        """Order of the subgroup generated by the given element indices."""
        mul = self.mul
        seen = {self.identity}
        frontier = [self.identity]
        gen_list = list(set(gens))
        while frontier:
            fresh = []
            for x in frontier:
                row = mul[x]
                for g in gen_list:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        fresh.append(y)
            frontier = fresh
        return len(seen)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label!r}, order={self.order})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str) -> dict[int, int]:
    """Parse cycle notation like ``(1 2 3)(4 5)`` into a point mapping."""
    stripped = re.sub(r"\s", "", text)
    consumed = "".join(_CYCLE_RE.findall(stripped))
    if re.sub(r"[()]", "", stripped) != consumed:
        raise ValueError(f"malformed cycle notation: {text!r}")
    mapping: dict[int, int] = {}
    for cycle in _CYCLE_RE.findall(text):
        points = [int(tok) for tok in cycle.replace(",", " ").split()]
        if len(points) != len(set(points)):
            raise ValueError(f"repeated point in cycle ({cycle})")
        for p in points:
            if p < 1:
                raise ValueError("points are 1-based positive integers")
            if p in mapping:
                raise ValueError(f"point {p} appears in two cycles")
        for a, b in zip(points, points[1:] + points[:1]):
            mapping[a] = b
    return mapping


def build_group_from_permutations(
    label: str,
    gens: Sequence[str | dict[int, int]],
    order_cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Close permutation generators into a full multiplication table.

    Raises :class:`OrderCapExceeded` when the closure passes ``order_cap``.
    """
    mappings = [
        parse_permutation(g) if isinstance(g, str) else dict(g) for g in gens
    ]
    degree = max((max(m, default=0) for m in mappings), default=1)
    degree = max(degree, 1)
    perms = []
    for m in mappings:
        perms.append(tuple(m.get(i + 1, i + 1) - 1 for i in range(degree)))
    identity = tuple(range(degree))
    elements = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for p in frontier:
            for q in perms:
                r = tuple(p[q[i]] for i in range(degree))
                if r not in elements:
                    elements.add(r)
                    fresh.append(r)
                    if len(elements) > order_cap:
                        raise OrderCapExceeded(
                            f"group {label!r} exceeds order cap {order_cap}"
                        )
        frontier = fresh
    ordered = sorted(elements)
    index = {p: i for i, p in enumerate(ordered)}
    n = len(ordered)
    mul = [
        [index[tuple(p[q[i]] for i in range(degree))] for q in ordered]
        for p in ordered
    ]
    inverse = [0] * n
    for i, p in enumerate(ordered):
        inv = [0] * degree
        for src, dst in enumerate(p):
            inv[dst] = src
        inverse[i] = index[tuple(inv)]
    return FiniteGroup(label, mul, index[identity], inverse)


def load_group_file(path: str | Path, label: str | None = None) -> FiniteGroup:
    """Read a permutation-group file: one generator per line, cycle notation.

    The label defaults to the file stem.
    """
    path = Path(path)
    lines = [
        line.strip()
        for line in path.read_text().splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    return build_group_from_permutations(label or path.stem, lines)


def cyclic_group(n: int) -> FiniteGroup:
    cycle = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    return build_group_from_permutations(f"Z/{n}", [cycle])


def dihedral_group(n: int) -> FiniteGroup:
    rotation = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    reflection = "".join(
        f"({i} {n + 2 - i})" for i in range(2, n // 2 + 2) if i != n + 2 - i
    )
    return build_group_from_permutations(f"D{n}", [rotation, reflection])


def symmetric_group(n: int) -> FiniteGroup:
    cycle = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    return build_group_from_permutations(f"S{n}", [cycle, "(1 2)"])


def alternating_group(n: int) -> FiniteGroup:
    if n % 2 == 1:
        cycle = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    else:
        cycle = "(" + " ".join(str(i) for i in range(2, n + 1)) + ")"
    return build_group_from_permutations(f"A{n}", [cycle, "(1 2 3)"])


def quaternion_group() -> FiniteGroup:
    # Regular representation on {1,i,-1,-i,j,k,-j,-k}.
    return build_group_from_permutations(
        "Q8", ["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]
    )


def direct_product(g: FiniteGroup, h: FiniteGroup, label: str | None = None) -> FiniteGroup:
    n, m = g.order, h.order
    mul = [
        [g.mul[i1][i2] * m + h.mul[j1][j2] for i2 in range(n) for j2 in range(m)]
        for i1 in range(n)
        for j1 in range(m)
    ]
    identity = g.identity * m + h.identity
    inverse = [
        g.inverse[i] * m + h.inverse[j] for i in range(n) for j in range(m)
    ]
    return FiniteGroup(label or f"{g.label}x{h.label}", mul, identity, inverse)


_library_cache: dict[bool, tuple[FiniteGroup, ...]] = {}


def standard_library(deep: bool = False) -> list[FiniteGroup]:
    """The default comparison library: Z/2..Z/12, D4, D5, D6, Q8, A4, S4, A5,
    plus S5 behind ``deep`` (slow: 120^4 raw assignments before pruning)."""
    if deep not in _library_cache:
        groups = [cyclic_group(n) for n in range(2, 13)]
        groups += [
            dihedral_group(4),
            dihedral_group(5),
            dihedral_group(6),
            quaternion_group(),
            alternating_group(4),
            symmetric_group(4),
            alternating_group(5),
        ]
        if deep:
            groups.append(symmetric_group(5))
        _library_cache[deep] = tuple(groups)
    return list(_library_cache[deep])


# --- homomorphism search ----------------------------------------------------


def _relator_tuples(p: Presentation) -> list[tuple[int, ...]]:
    return [rel.raw for rel in p.relators if rel.raw]


def _choose_order(relators: Sequence[tuple[int, ...]], n: int) -> list[int]:
    supports = [sorted({abs(x) for x in rel}) for rel in relators]
    constrained = sorted({g for sup in supports for g in sup})
    if len(constrained) <= 6:
        candidates = [list(p) for p in permutations(constrained)]
    else:
        candidates = [_greedy_order(constrained, supports)]
    best = min(
        candidates, key=lambda order: (_order_cost(order, relators, n), order)
    )
    return best


def _greedy_order(constrained: list[int], supports: list[list[int]]) -> list[int]:
    remaining = set(constrained)
    pending = [set(sup) for sup in supports]
    order: list[int] = []
    while remaining:
        placed = set(order)

        def score(g: int):
            completed = sum(
                1 for sup in pending if sup and sup <= placed | {g}
            )
            touched = sum(1 for sup in pending if g in sup)
            return (-completed, -touched, g)

        nxt = min(remaining, key=score)
        order.append(nxt)
        remaining.discard(nxt)
        pending = [sup for sup in pending if not sup <= set(order)]
    return order


def _order_cost(
    order: Sequence[int], relators: Sequence[tuple[int, ...]], n: int
) -> float:
    pos = {g: d for d, g in enumerate(order)}
    k = len(order)
    completes: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
    for rel in relators:
        completes[max(pos[abs(x)] for x in rel)].append(rel)
    states = 1.0
    cost = 0.0
    for d in range(k):
        states *= n
        rels = sorted(completes[d], key=len)
        if d < k - 1 or not rels:
            for rel in rels:
                cost += states * len(rel)
                states = max(states / n, 1.0)
            continue
        v = order[d]
        outer = states / n
        rels_inner = sorted(rels, key=lambda r: _occurrences(r, v))
        first_m = _occurrences(rels_inner[0], v)
        scan = 1.0 if first_m == 1 else (n if first_m == 2 else n * 2.0 * first_m)
        cost += outer * (sum(len(r) for r in rels_inner) + scan)
        states = max(states / n, 1.0)
        for rel in rels_inner[1:]:
            cost += states * len(rel)
            states = max(states / n, 1.0)
    return cost


def _occurrences(rel: tuple[int, ...], g: int) -> int:
    return sum(1 for x in rel if abs(x) == g)


def _split_segments(rel: tuple[int, ...], v: int):
    segments: list[tuple[int, ...]] = []
    exps: list[int] = []
    current: list[int] = []
    for x in rel:
        if abs(x) == v:
            segments.append(tuple(current))
            current = []
            exps.append(1 if x > 0 else -1)
        else:
            current.append(x)
    segments.append(tuple(current))
    return tuple(segments), tuple(exps)


def _compile_inner(rel: tuple[int, ...], v: int):
    segments, exps = _split_segments(rel, v)
    m = len(exps)
    if m == 1:
        kind = "solve"
    elif m == 2 and exps == (-1, 1):
        kind = "nf"
    elif m == 2 and exps == (1, -1):
        kind = "fn"
    else:
        kind = "generic"
    return (kind, segments, exps, rel)


@dataclass(frozen=True)
class _Plan:
    n_gens: int
    order: tuple[int, ...]
    checks: tuple[tuple[tuple[int, ...], ...], ...]  # relators per depth
    inner: tuple  # compiled relators completing at the innermost depth
    free_gens: tuple[int, ...]


def _compile_plan(p: Presentation, group: FiniteGroup) -> Optional[_Plan]:
    relators = _relator_tuples(p)
    n_gens = p.generator_count
    constrained = sorted({abs(x) for rel in relators for x in rel})
    free_gens = tuple(g for g in range(1, n_gens + 1) if g not in constrained)
    if not relators or not constrained:
        return None
    order = _choose_order(relators, group.order)
    pos = {g: d for d, g in enumerate(order)}
    k = len(order)
    checks: list[list[tuple[int, ...]]] = [[] for _ in range(k)]
    for rel in relators:
        checks[max(pos[abs(x)] for x in rel)].append(rel)
    for d in range(k):
        checks[d].sort(key=len)
    v = order[-1]
    inner = tuple(
        _compile_inner(rel, v)
        for rel in sorted(checks[k - 1], key=lambda r: _occurrences(r, v))
    )
    return _Plan(
        n_gens=n_gens,
        order=tuple(order),
        checks=tuple(tuple(c) for c in checks[:-1]),
        inner=inner,
        free_gens=free_gens,
    )


def _search(
    plan: _Plan,
    group: FiniteGroup,
    first_candidates: Sequence[int] | None = None,
    collect: bool = False,
):
    """Count (collect=False) or yield (collect=True) constrained solutions.

    Solutions are assignments of element indices to the constrained
    generators, reported as {gen: index} snapshots when collected.
    """
    n = group.order
    mul = group.mul
    cols = group.columns
    inv = group.inverse
    e = group.identity
    order = plan.order
    k = len(order)
    assign = [0] * (plan.n_gens + 1)
    inner_v = order[-1]
    inner = plan.inner
    solutions: list[tuple[int, ...]] = []
    count = 0

    def eval_word(letters: tuple[int, ...]) -> int:
        cur = e
        for x in letters:
            cur = mul[cur][assign[x] if x > 0 else inv[assign[-x]]]
        return cur

    def survivors_of(compiled) -> Iterable[int]:
        kind, segments, exps, _rel = compiled
        vals = [eval_word(seg) for seg in segments]
        if kind == "solve":
            q = mul[inv[vals[0]]][inv[vals[1]]]
            return (q if exps[0] == 1 else inv[q],)
        if kind == "nf":
            d_const = mul[inv[vals[0]]][inv[vals[2]]]
            row = mul[vals[1]]
            col = cols[d_const]
            return [q for q in range(n) if row[q] == col[q]]
        if kind == "fn":
            d_const = mul[inv[vals[0]]][inv[vals[2]]]
            col = cols[vals[1]]
            row = mul[d_const]
            return [q for q in range(n) if col[q] == row[q]]
        found = []
        for q in range(n):
            q_inv = inv[q]
            cur = vals[0]
            for i, s in enumerate(exps):
                cur = mul[cur][q if s == 1 else q_inv]
                cur = mul[cur][vals[i + 1]]
            if cur == e:
                found.append(q)
        return found

    def leaf():
        nonlocal count
        candidates = survivors_of(inner[0])
        rest = inner[1:]
        if not rest and not collect:
            count += len(candidates)
            return
        for q in candidates:
            assign[inner_v] = q
            if all(eval_word(c[3]) == e for c in rest):
                if collect:
                    solutions.append(tuple(assign))
                else:
                    count += 1

    def descend(depth: int):
        if depth == k - 1:
            leaf()
            return
        g = order[depth]
        rels = plan.checks[depth]
        candidates = (
            first_candidates if depth == 0 and first_candidates is not None else range(n)
        )
        for q in candidates:
            assign[g] = q
            if all(eval_word(rel) == e for rel in rels):
                descend(depth + 1)

    if k == 1:
        # Only the innermost variable exists; restrict its candidates when
        # slicing for workers.
        candidates = survivors_of(inner[0])
        if first_candidates is not None:
            allowed = set(first_candidates)
            candidates = [q for q in candidates if q in allowed]
        rest = inner[1:]
        for q in candidates:
            assign[inner_v] = q
            if all(eval_word(c[3]) == e for c in rest):
                if collect:
                    solutions.append(tuple(assign))
                else:
                    count += 1
    else:
        first = first_candidates if first_candidates is not None else range(n)
        g0 = order[0]
        rels0 = plan.checks[0]
        for q in first:
            assign[g0] = q
            if all(eval_word(rel) == e for rel in rels0):
                descend(1)

    return solutions if collect else count


def _slice_ranges(n: int, workers: int) -> list[range]:
    width = (n + workers - 1) // workers
    return [range(lo, min(lo + width, n)) for lo in range(0, n, width)]


def _count_slice_job(args) -> int:
    plan, group_data, lo_hi = args
    group = FiniteGroup(*group_data)
    return _search(plan, group, first_candidates=range(*lo_hi))


def count_homs(p: Presentation, q: FiniteGroup, workers: int = 1) -> int:
    """Number of homomorphisms from the presented group to ``q``.

    Backtracking over generator images in a planned order, checking each
    relator as soon as its generators are assigned.  Generators that appear
    in no relator contribute a free factor of |q| each.  ``workers``
    partitions the image of the first-ordered generator across processes;
    counts are independent of the worker count.
    """
    if p.generator_count == 0:
        return 1
    plan = _compile_plan(p, q)
    free = p.generator_count if plan is None else len(plan.free_gens)
    base = q.order**free
    if plan is None:
        return base
    if workers > 1 and q.order >= 2 * workers:
        group_data = (q.label, q.mul, q.identity, q.inverse)
        jobs = [
            (plan, group_data, (r.start, r.stop))
            for r in _slice_ranges(q.order, workers)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_count_slice_job, jobs))
        return total * base
    return _search(plan, q) * base


def _solutions(p: Presentation, q: FiniteGroup) -> Iterator[tuple[int, ...]]:
    """All homomorphisms, as tuples of element indices per generator."""
    n_gens = p.generator_count
    if n_gens == 0:
        yield ()
        return
    plan = _compile_plan(p, q)
    if plan is None:
        yield from product(range(q.order), repeat=n_gens)
        return
    constrained_solutions = _search(plan, q, collect=True)
    free = plan.free_gens
    for assign in constrained_solutions:
        if not free:
            yield tuple(assign[g] for g in range(1, n_gens + 1))
            continue
        for free_vals in product(range(q.order), repeat=len(free)):
            filled = list(assign)
            for g, val in zip(free, free_vals):
                filled[g] = val
            yield tuple(filled[g] for g in range(1, n_gens + 1))


def count_epis(p: Presentation, q: FiniteGroup, workers: int = 1) -> int:
    """Number of surjections: homomorphisms whose image generates ``q``.

    Surjectivity is decided by closing the image set inside the table;
    closures are memoized on the image set.
    """
    del workers  # enumeration cost dominates; kept for interface symmetry
    memo: dict[frozenset[int], bool] = {}
    target = q.order
    count = 0
    for images in _solutions(p, q):
        key = frozenset(images)
        hit = memo.get(key)
        if hit is None:
            hit = q.generated_order(key) == target
            memo[key] = hit
        if hit:
            count += 1
    return count


def count_homs_bruteforce(p: Presentation, q: FiniteGroup) -> int:
    """Unpruned oracle: try every assignment, check every relator."""
    n = q.order
    mul = q.mul
    inv = q.inverse
    e = q.identity
    relators = [rel.raw for rel in p.relators]
    count = 0
    for assignment in product(range(n), repeat=p.generator_count):
        ok = True
        for rel in relators:
            cur = e
            for x in rel:
                cur = mul[cur][assignment[x - 1] if x > 0 else inv[assignment[-x - 1]]]
            if cur != e:
                ok = False
                break
        if ok:
            count += 1
    return count


def count_epis_bruteforce(p: Presentation, q: FiniteGroup) -> int:
    """Unpruned oracle for epimorphism counts."""
    n = q.order
    mul = q.mul
    inv = q.inverse
    e = q.identity
    relators = [rel.raw for rel in p.relators]
    count = 0
    for assignment in product(range(n), repeat=p.generator_count):
        ok = True
        for rel in relators:
            cur = e
            for x in rel:
                cur = mul[cur][assignment[x - 1] if x > 0 else inv[assignment[-x - 1]]]
            if cur != e:
                ok = False
                break
        if ok and q.generated_order(assignment) == n:
            count += 1
    return count


# --- fingerprints -----------------------------------------------------------


@dataclass(frozen=True)
class FingerprintEntry:
    label: str
    hom_count: int
    epi_count: int

    def __post_init__(self):
        if self.hom_count < 1:
            raise ValueError("hom count is at least 1 (the trivial map)")
        if not 0 <= self.epi_count <= self.hom_count:
            raise ValueError("epi count must lie in [0, hom count]")


@dataclass(frozen=True)
class Fingerprint:
    entries: tuple[FingerprintEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(entry.label for entry in self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class FingerprintComparison:
    verdict: str  # "IDENTICAL" or "DIFFER"
    labels: tuple[str, ...]
    first_difference: Optional[tuple[FingerprintEntry, FingerprintEntry]]

    @property
    def identical(self) -> bool:
        return self.verdict == "IDENTICAL"

    def describe(self) -> str:
        scope = f"over library [{', '.join(self.labels)}]"
        if self.identical:
            return f"IDENTICAL {scope}"
        a, b = self.first_difference
        return (
            f"DIFFER at {a.label}: hom {a.hom_count} vs {b.hom_count}, "
            f"epi {a.epi_count} vs {b.epi_count} ({scope})"
        )


def presentation_key(p: Presentation) -> str:
    """Canonical content hash: generator count plus the sorted canonical
    (cyclically reduced, rotation-minimal) relator words."""
    relator_texts = sorted(
        word_to_text(canonical_cyclic(rel).to_word()) for rel in p.relators
    )
    payload = json.dumps([p.generator_count, relator_texts])
    return hashlib.sha256(payload.encode()).hexdigest()


class FingerprintCache:
    """Append-only cache mapping (presentation hash, group label) to counts."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._data: dict[tuple[str, str], tuple[int, int]] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                self._data[(record["presentation"], record["group"])] = (
                    record["hom"],
                    record["epi"],
                )

    def get(self, key: str, label: str) -> Optional[tuple[int, int]]:
        return self._data.get((key, label))

    def put(self, key: str, label: str, hom: int, epi: int) -> None:
        self._data[(key, label)] = (hom, epi)
        with self.path.open("a") as handle:
            handle.write(
                json.dumps(
                    {"presentation": key, "group": label, "hom": hom, "epi": epi}
                )
                + "\n"
            )


def fingerprint(
    p: Presentation,
    library: Sequence[FiniteGroup],
    workers: int = 1,
    cache: FingerprintCache | None = None,
) -> Fingerprint:
    """Hom/epi counts of ``p`` against every group in ``library``, in order."""
    key = presentation_key(p) if cache is not None else None
    entries = []
    for q in library:
        counts = cache.get(key, q.label) if cache is not None else None
        if counts is None:
            counts = (count_homs(p, q, workers=workers), count_epis(p, q))
            if cache is not None:
                cache.put(key, q.label, *counts)
        entries.append(FingerprintEntry(q.label, *counts))
    return Fingerprint(tuple(entries))


def compare_fingerprints(f1: Fingerprint, f2: Fingerprint) -> FingerprintComparison:
    """IDENTICAL, or DIFFER at the first differing library entry."""
    if f1.labels != f2.labels:
        raise LibraryMismatch(
            f"library labels differ: {f1.labels} vs {f2.labels}"
        )
    for a, b in zip(f1.entries, f2.entries):
        if (a.hom_count, a.epi_count) != (b.hom_count, b.epi_count):
            return FingerprintComparison("DIFFER", f1.labels, (a, b))
    return FingerprintComparison("IDENTICAL", f1.labels, None)
