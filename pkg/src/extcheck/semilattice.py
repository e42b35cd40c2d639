"""Join-semilattices with zero, their homomorphisms, and biproducts.

Subobject lattices and closed-subobject lattices of a binary sum split as a
biproduct in the category of join-semilattices: injections given by closure
of the tagged embedding, projections by component restriction.  This module
materializes those lattices over bitmasks, verifies the biproduct equations,
and provides the 2x2 matrix calculus for homs between binary sums.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import CheckResult, Coproduct, FiniteObject, Report
from .closure import ClosureFamily, Space
from .factorization import FactorizationSystem
from .subobjects import enumerate_subobjects


@dataclass(eq=False)
class JoinSemilattice:
    """Finite join-semilattice with least element, as an explicit join table."""

    labels: tuple[str, ...]
    join: tuple[tuple[int, ...], ...]
    zero: int

    def __post_init__(self):
        n = len(self.labels)
        assert len(self.join) == n and all(len(row) == n for row in self.join)
        for i in range(n):
            if self.join[i][self.zero] != i or self.join[i][i] != i:
                raise ValueError("zero not neutral or join not idempotent")
            for j in range(n):
                if self.join[i][j] != self.join[j][i]:
                    raise ValueError("join not commutative")

    @property
    def n(self) -> int:
        return len(self.labels)

    def leq(self, i: int, j: int) -> bool:
        return self.join[i][j] == j

    def is_associative(self) -> bool:
        n = self.n
        for a in range(n):
            for b in range(n):
                ab = self.join[a][b]
                for c in range(n):
                    if self.join[ab][c] != self.join[a][self.join[b][c]]:
                        return False
        return True

    def join_of(self, indices) -> int:
        out = self.zero
        for i in indices:
            out = self.join[out][i]
        return out


def lattice_from_masks(masks: Sequence[int], labels: Sequence[str],
                       join_mask, zero_mask: int) -> tuple[JoinSemilattice, dict]:
    """Build a semilattice from distinct masks and a mask-level join."""
    index = {m: i for i, m in enumerate(masks)}
    n = len(masks)
    table = tuple(
        tuple(index[join_mask(masks[i], masks[j])] for j in range(n))
        for i in range(n))
    lat = JoinSemilattice(tuple(labels), table, index[zero_mask])
    return lat, index


def _set_label(ob: FiniteObject, mask: int) -> str:
    return "{" + ",".join(ob.labels_of(mask)) + "}"


def subobject_semilattice(sys: FactorizationSystem,
                          ob: FiniteObject) -> tuple[JoinSemilattice, tuple[int, ...]]:
    """The full admissible-subobject lattice as a join-semilattice.

    Admissible joins coincide with carrier unions for the stock systems;
    the subobject module property-tests that coincidence, so the mask-level
    table uses unions directly.
    """
    subs = enumerate_subobjects(sys, ob)
    masks = tuple(s.mask for s in subs)
    labels = tuple(_set_label(ob, m) for m in masks)
    lat, _ = lattice_from_masks(masks, labels, lambda a, b: a | b, 0)
    return lat, masks


def closed_semilattice(space: Space,
                       all_masks: Sequence[int]) -> tuple[JoinSemilattice, tuple[int, ...]]:
    """Closed subobjects under join = closure of union, zero = closure of empty."""
    masks = tuple(m for m in all_masks if space.fn(m) == m)
    labels = tuple(_set_label(space.ob, m) for m in masks)
    lat, _ = lattice_from_masks(masks, labels,
                                lambda a, b: space.fn(a | b), space.fn(0))
    return lat, masks


@dataclass(eq=False)
class SemilatticeHom:
    source: JoinSemilattice
    target: JoinSemilattice
    table: tuple[int, ...]

    def __post_init__(self):
        assert len(self.table) == self.source.n

    def __eq__(self, other):
        return (self.source is other.source and self.target is other.target
                and self.table == other.table)

    def is_valid(self) -> bool:
        src, tgt = self.source, self.target
        if self.table[src.zero] != tgt.zero:
            return False
        for i in range(src.n):
            for j in range(i + 1, src.n):
                if self.table[src.join[i][j]] != tgt.join[self.table[i]][self.table[j]]:
                    return False
        return True

    def __call__(self, i: int) -> int:
        return self.table[i]


def identity_hom(lat: JoinSemilattice) -> SemilatticeHom:
    return SemilatticeHom(lat, lat, tuple(range(lat.n)))


def zero_hom(src: JoinSemilattice, tgt: JoinSemilattice) -> SemilatticeHom:
    return SemilatticeHom(src, tgt, tuple(tgt.zero for _ in range(src.n)))


def compose_homs(g: SemilatticeHom, h: SemilatticeHom) -> SemilatticeHom:
    assert h.target is g.source
    return SemilatticeHom(h.source, g.target, tuple(g.table[t] for t in h.table))


def join_homs(h1: SemilatticeHom, h2: SemilatticeHom) -> SemilatticeHom:
    assert h1.source is h2.source and h1.target is h2.target
    tgt = h1.target
    return SemilatticeHom(h1.source, tgt,
                          tuple(tgt.join[a][b] for a, b in zip(h1.table, h2.table)))


def join_irreducibles(lat: JoinSemilattice) -> tuple[int, ...]:
    out = []
    for j in range(lat.n):
        if j == lat.zero:
            continue
        strictly_below = [a for a in range(lat.n) if a != j and lat.leq(a, j)]
        reducible = any(lat.join[a][b] == j
                        for a in strictly_below for b in strictly_below)
        if not reducible:
            out.append(j)
    return tuple(out)


def enumerate_homs(src: JoinSemilattice, tgt: JoinSemilattice,
                   verify: bool = True) -> tuple[SemilatticeHom, ...]:
    """All join-zero homomorphisms, via assignments on join-irreducibles.

    Every hom is determined by its (monotone) values on the irreducibles;
    conversely each monotone assignment extends by joins.  With `verify`
    each candidate is rechecked against the full hom equations, so the
    result is sound even without leaning on distributivity.
    """
    irr = join_irreducibles(src)
    below = [tuple(p for p, i in enumerate(irr) if src.leq(i, x))
             for x in range(src.n)]
    order_pairs = [(p, q) for p in range(len(irr)) for q in range(len(irr))
                   if p != q and src.leq(irr[p], irr[q])]
    out = []
    for assign in itertools.product(range(tgt.n), repeat=len(irr)):
        if any(not tgt.leq(assign[p], assign[q]) for (p, q) in order_pairs):
            continue
        table = tuple(tgt.join_of(assign[p] for p in below[x])
                      for x in range(src.n))
        hom = SemilatticeHom(src, tgt, table)
        if not verify or hom.is_valid():
            out.append(hom)
    return tuple(out)


@dataclass(eq=False)
class Biproduct:
    left: JoinSemilattice
    right: JoinSemilattice
    total: JoinSemilattice
    inj_l: SemilatticeHom
    inj_r: SemilatticeHom
    proj_l: SemilatticeHom
    proj_r: SemilatticeHom
    report: Report

    @property
    def passed(self) -> bool:
        return self.report.passed


def verify_biproduct(inj_l: SemilatticeHom, inj_r: SemilatticeHom,
                     proj_l: SemilatticeHom, proj_r: SemilatticeHom) -> Report:
    """The four retraction/vanishing equations plus the joint identity."""
    total = inj_l.target
    left = inj_l.source
    right = inj_r.source
    checks = []
    endpoints_ok = (inj_r.target is total and proj_l.source is total
                    and proj_r.source is total and proj_l.target is left
                    and proj_r.target is right)
    checks.append(CheckResult("endpoints_consistent", endpoints_ok, 1, None))
    valid = all(h.is_valid() for h in (inj_l, inj_r, proj_l, proj_r))
    checks.append(CheckResult("maps_are_homs", valid, 4, None))
    if endpoints_ok:
        checks.append(CheckResult(
            "projection_retracts_own_injection",
            compose_homs(proj_l, inj_l) == identity_hom(left)
            and compose_homs(proj_r, inj_r) == identity_hom(right), 2, None))
        checks.append(CheckResult(
            "projection_kills_other_injection",
            compose_homs(proj_l, inj_r) == zero_hom(right, left)
            and compose_homs(proj_r, inj_l) == zero_hom(left, right), 2, None))
        joint = join_homs(compose_homs(inj_l, proj_l), compose_homs(inj_r, proj_r))
        checks.append(CheckResult(
            "joint_identity", joint == identity_hom(total), 1, None))
    return Report("biproduct", tuple(checks))


def subobject_biproduct(sys: FactorizationSystem, x: FiniteObject,
                        y: FiniteObject, cp: Coproduct) -> Biproduct:
    """Sub(X+Y) as the biproduct of Sub(X) and Sub(Y).

    With sorted tagged carriers the left summand occupies the low mask bits,
    so injections place masks and projections split them.
    """
    kx, masks_x = subobject_semilattice(sys, x)
    ky, masks_y = subobject_semilattice(sys, y)
    kxy, masks_xy = subobject_semilattice(sys, cp.ob)
    nx = x.size
    low = (1 << nx) - 1
    idx_xy = {m: i for i, m in enumerate(masks_xy)}
    idx_x = {m: i for i, m in enumerate(masks_x)}
    idx_y = {m: i for i, m in enumerate(masks_y)}
    inj_l = SemilatticeHom(kx, kxy, tuple(idx_xy[m] for m in masks_x))
    inj_r = SemilatticeHom(ky, kxy, tuple(idx_xy[m << nx] for m in masks_y))
    proj_l = SemilatticeHom(kxy, kx, tuple(idx_x[m & low] for m in masks_xy))
    proj_r = SemilatticeHom(kxy, ky, tuple(idx_y[m >> nx] for m in masks_xy))
    report = verify_biproduct(inj_l, inj_r, proj_l, proj_r)
    return Biproduct(kx, ky, kxy, inj_l, inj_r, proj_l, proj_r, report)


def closed_biproduct(sys: FactorizationSystem, family: ClosureFamily,
                     x: FiniteObject, y: FiniteObject, cp: Coproduct) -> Biproduct:
    """Closed lattices of a sum: inject by closing the placed mask, project
    by splitting; zero is the closure of empty."""
    sx, sy, sxy = family.space(x), family.space(y), family.space(cp.ob)
    all_x = [s.mask for s in enumerate_subobjects(sys, x)]
    all_y = [s.mask for s in enumerate_subobjects(sys, y)]
    all_xy = [s.mask for s in enumerate_subobjects(sys, cp.ob)]
    kx, masks_x = closed_semilattice(sx, all_x)
    ky, masks_y = closed_semilattice(sy, all_y)
    kxy, masks_xy = closed_semilattice(sxy, all_xy)
    nx = x.size
    low = (1 << nx) - 1
    idx_xy = {m: i for i, m in enumerate(masks_xy)}
    idx_x = {m: i for i, m in enumerate(masks_x)}
    idx_y = {m: i for i, m in enumerate(masks_y)}
    inj_l = SemilatticeHom(kx, kxy, tuple(idx_xy[sxy.fn(m)] for m in masks_x))
    inj_r = SemilatticeHom(ky, kxy, tuple(idx_xy[sxy.fn(m << nx)] for m in masks_y))
    proj_l = SemilatticeHom(kxy, kx, tuple(idx_x[m & low] for m in masks_xy))
    proj_r = SemilatticeHom(kxy, ky, tuple(idx_y[m >> nx] for m in masks_xy))
    report = verify_biproduct(inj_l, inj_r, proj_l, proj_r)
    return Biproduct(kx, ky, kxy, inj_l, inj_r, proj_l, proj_r, report)


Matrix = tuple[tuple[SemilatticeHom, SemilatticeHom],
               tuple[SemilatticeHom, SemilatticeHom]]


def hom_matrix(bp_src: Biproduct, bp_tgt: Biproduct, h: SemilatticeHom) -> Matrix:
    """2x2 matrix of a hom between totals: entry [i][j] goes from source
    component j to target component i."""
    assert h.source is bp_src.total and h.target is bp_tgt.total
    return (
        (compose_homs(bp_tgt.proj_l, compose_homs(h, bp_src.inj_l)),
         compose_homs(bp_tgt.proj_l, compose_homs(h, bp_src.inj_r))),
        (compose_homs(bp_tgt.proj_r, compose_homs(h, bp_src.inj_l)),
         compose_homs(bp_tgt.proj_r, compose_homs(h, bp_src.inj_r))),
    )


def matrix_to_hom(bp_src: Biproduct, bp_tgt: Biproduct, matrix: Matrix) -> SemilatticeHom:
    """Joint extension of a 2x2 matrix of component homs."""
    (m_ll, m_lr), (m_rl, m_rr) = matrix
    parts = [
        compose_homs(bp_tgt.inj_l, compose_homs(m_ll, bp_src.proj_l)),
        compose_homs(bp_tgt.inj_l, compose_homs(m_lr, bp_src.proj_r)),
        compose_homs(bp_tgt.inj_r, compose_homs(m_rl, bp_src.proj_l)),
        compose_homs(bp_tgt.inj_r, compose_homs(m_rr, bp_src.proj_r)),
    ]
    out = parts[0]
    for p in parts[1:]:
        out = join_homs(out, p)
    return out
