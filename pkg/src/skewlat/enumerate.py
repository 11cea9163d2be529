"""Exhaustive enumeration of small skew lattices.

The search fills the meet and join tables together, one off-diagonal cell
at a time.  The absorption dualities restrict each cell to a handful of
(meet, join) pairs; associativity and absorption are re-checked on every
triple the new cell completes.  Isomorphic copies are merged by a
canonical key: the least relabelled table pair over all permutations that
respect an isomorphism-invariant element signature.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from . import kernels
from .algebra import SkewLattice, element_signature, from_tables

RESTRICTIONS = ("right_handed", "left_handed", "normal", "symmetric")


class EnumerationBoundError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationSpec:
    order: int
    restrict: frozenset[str] = frozenset()
    up_to_iso: bool = True
    limit: int | None = None
    workers: int = 1
    backend: str | None = None
    # feasibility caps; raise them deliberately, never silently truncate
    max_order: int = 5
    max_order_handed: int = 6

    def __post_init__(self) -> None:
        object.__setattr__(self, "restrict", frozenset(self.restrict))

    def check(self) -> None:
        unknown = self.restrict - set(RESTRICTIONS)
        if unknown:
            raise EnumerationBoundError(f"unknown restriction(s): {', '.join(sorted(unknown))}")
        if self.order < 1:
            raise EnumerationBoundError("order must be at least 1")
        handed = bool(self.restrict & {"right_handed", "left_handed"})
        cap = self.max_order_handed if handed else self.max_order
        if self.order > cap:
            raise EnumerationBoundError(
                f"order {self.order} exceeds the configured bound {cap}"
                + (" (with handedness restriction)" if handed else "")
            )
        if self.workers < 1:
            raise EnumerationBoundError("workers must be positive")
        if self.limit is not None and self.limit < 0:
            raise EnumerationBoundError("limit must be non-negative")


@dataclass(frozen=True)
class CanonicalForm:
    key: bytes
    perm: tuple[int, ...] = field(compare=False)

    def hex(self) -> str:
        return self.key.hex()


def _flat(S: SkewLattice) -> tuple[list[int], list[int]]:
    return [v for row in S.meet for v in row], [v for row in S.join for v in row]


def _perms(S: SkewLattice) -> list[tuple[int, ...]]:
    """Permutations that send elements to positions sorted by signature."""
    n = len(S)
    sig = element_signature(S)
    groups: dict[tuple, list[int]] = {}
    for x in range(n):
        groups.setdefault(sig[x], []).append(x)
    slots = []
    pos = 0
    for s in sorted(groups):
        members = groups[s]
        slots.append((members, list(range(pos, pos + len(members)))))
        pos += len(members)
    out = []
    for choice in itertools.product(*(itertools.permutations(p) for _, p in slots)):
        perm = [0] * n
        for (members, _), positions in zip(slots, choice):
            for x, p in zip(members, positions):
                perm[x] = p
        out.append(tuple(perm))
    return out


def canonical_form(S: SkewLattice, backend: str | None = None) -> CanonicalForm:
    meet, join = _flat(S)
    key, perm = kernels.get(backend).canonical_key(meet, join, len(S), _perms(S))
    return CanonicalForm(key, perm)


def from_key(key: bytes) -> SkewLattice:
    n = math.isqrt(len(key) // 2)
    nn = n * n
    meet = [list(key[r * n:(r + 1) * n]) for r in range(n)]
    join = [list(key[nn + r * n:nn + (r + 1) * n]) for r in range(n)]
    return from_tables(meet, join)


def canonical_representative(S: SkewLattice) -> SkewLattice:
    return from_key(canonical_form(S).key)


def _raw(spec: EnumerationSpec) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    k = kernels.get(spec.backend)
    flags = 0
    if "right_handed" in spec.restrict:
        flags |= kernels.RIGHT_HANDED
    if "left_handed" in spec.restrict:
        flags |= kernels.LEFT_HANDED
    n = spec.order
    if spec.workers == 1 or n < 2:
        return k.search(n, flags)
    firsts = range(k.n_first_choices(n))
    with ThreadPoolExecutor(max_workers=spec.workers) as pool:
        parts = list(pool.map(lambda f: k.search(n, flags, f), firsts))
    return [t for part in parts for t in part]


def _to_algebra(n: int, meet: tuple[int, ...], join: tuple[int, ...]) -> SkewLattice:
    return from_tables(
        [meet[r * n:(r + 1) * n] for r in range(n)],
        [join[r * n:(r + 1) * n] for r in range(n)],
    )


def _passes(S: SkewLattice, restrict: frozenset[str]) -> bool:
    if not restrict & {"normal", "symmetric"}:
        return True
    from .classify import properties

    props = properties(S)
    return all(props[r][0] for r in restrict & {"normal", "symmetric"})


def enumerate_algebras(spec: EnumerationSpec) -> Iterator[SkewLattice]:
    """Yield every skew lattice of the given order, in a fixed order.

    With ``up_to_iso`` one canonical representative per isomorphism class
    is produced, sorted by canonical key; otherwise all labelled algebras,
    sorted by their tables.  The order is independent of ``workers``.
    """
    spec.check()
    n = spec.order
    raw = _raw(spec)
    if spec.up_to_iso:
        k = kernels.get(spec.backend)
        keys = set()
        for meet, join in raw:
            S = SkewLattice(
                tuple(meet[r * n:(r + 1) * n] for r in range(n)),
                tuple(join[r * n:(r + 1) * n] for r in range(n)),
            )
            key, _ = k.canonical_key(meet, join, n, _perms(S))
            keys.add(key)
        algebras = (from_key(key) for key in sorted(keys))
    else:
        algebras = (_to_algebra(n, m, j) for m, j in sorted(raw))
    count = 0
    for S in algebras:
        if spec.limit is not None and count >= spec.limit:
            return
        if _passes(S, spec.restrict):
            count += 1
            yield S


def enumerate(spec: EnumerationSpec) -> Iterator[SkewLattice]:
    return enumerate_algebras(spec)


def all_up_to(order: int, **kw) -> list[SkewLattice]:
    """Every skew lattice of order 1..order, up to isomorphism."""
    out = []
    for n in range(1, order + 1):
        out.extend(enumerate_algebras(EnumerationSpec(n, **kw)))
    return out


def emit(algebras: list[SkewLattice], directory: Path) -> list[Path]:
    """Write one algebra file per canonical key into ``directory``."""
    from .io import format_algebra

    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for S in algebras:
        path = directory / f"{canonical_form(S).hex()}.skl"
        path.write_text(format_algebra(S), encoding="utf-8")
        paths.append(path)
    return paths
