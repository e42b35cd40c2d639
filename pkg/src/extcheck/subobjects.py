"""Admissible subobjects, their lattices, and direct image/preimage.

Subobjects are kept in canonical inclusion form: a subobject of X is just a
subset of X's carrier, its representative the literal inclusion of the full
subobject on that subset.  Meet is intersection, join is the image of the
copairing of the two inclusions under the ambient factorization system, and
the Galois pair image/preimage is built from the factorizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .core import (
    CheckResult,
    FiniteObject,
    Morphism,
    Report,
    compose,
    copair,
    coproduct,
    inclusion,
    split_coproduct,
    sum_morphisms,
    LEFT_TAG,
    RIGHT_TAG,
)
from .factorization import FactorizationSystem


@dataclass(frozen=True)
class Subobject:
    ambient: FiniteObject
    elements: tuple[str, ...]

    def __post_init__(self):
        elements = tuple(sorted(self.elements))
        object.__setattr__(self, "elements", elements)
        missing = set(elements) - set(self.ambient.elements)
        if missing:
            raise ValueError(f"labels {sorted(missing)} outside ambient carrier")

    @cached_property
    def mask(self) -> int:
        return self.ambient.mask_of(self.elements)

    @cached_property
    def ob(self) -> FiniteObject:
        return self.ambient.restrict(self.elements)

    @cached_property
    def rep(self) -> Morphism:
        return inclusion(self.ob, self.ambient)

    @property
    def size(self) -> int:
        return len(self.elements)

    def leq(self, other: "Subobject") -> bool:
        assert self.ambient == other.ambient
        return set(self.elements) <= set(other.elements)


def subobject_from_mask(ambient: FiniteObject, mask: int) -> Subobject:
    return Subobject(ambient, ambient.labels_of(mask))


def serialize_subobject(sub: Subobject) -> dict:
    return {"ambient": sub.ambient.label, "elements": list(sub.elements)}


def image(sys: FactorizationSystem, f: Morphism, sub: Subobject) -> Subobject:
    """Direct image of a subobject of f's source, via the factorizer."""
    assert sub.ambient == f.source
    fac = sys.factorize(compose(f, sub.rep))
    carrier = tuple(sorted(set(v for (_, v) in fac.m_part.mapping)))
    return Subobject(f.target, carrier)


def preimage(f: Morphism, sub: Subobject) -> Subobject:
    """Inverse image, the canonical pullback of the inclusion along f."""
    assert sub.ambient == f.target
    keep = set(sub.elements)
    return Subobject(f.source, tuple(e for (e, v) in f.mapping if v in keep))


def restriction(sys: FactorizationSystem, f: Morphism, sub: Subobject) -> Morphism:
    """f cut down to a source subobject, landing on its image."""
    img = image(sys, f, sub)
    return Morphism(sub.ob, img.ob,
                    tuple((e, f.table[e]) for e in sub.elements))


def corestriction(f: Morphism, sub: Subobject) -> Morphism:
    """f cut down to the preimage of a target subobject."""
    pre = preimage(f, sub)
    return Morphism(pre.ob, sub.ob,
                    tuple((e, f.table[e]) for e in pre.elements))


@dataclass(eq=False)
class SubobjectLattice:
    """All admissible subobjects of one object, in a fixed enumeration order."""

    sys: FactorizationSystem
    ambient: FiniteObject
    subs: tuple[Subobject, ...]

    def __post_init__(self):
        self._by_mask = {s.mask: s for s in self.subs}

    def __iter__(self):
        return iter(self.subs)

    def __len__(self):
        return len(self.subs)

    def __contains__(self, sub: Subobject) -> bool:
        return sub.mask in self._by_mask and self._by_mask[sub.mask] == sub

    def from_mask(self, mask: int) -> Subobject:
        return self._by_mask[mask]

    def bottom(self) -> Subobject:
        return self._by_mask[0]

    def top(self) -> Subobject:
        full = (1 << self.ambient.size) - 1
        return self._by_mask[full]

    def leq(self, p: Subobject, q: Subobject) -> bool:
        return p.mask & ~q.mask == 0

    def meet(self, p: Subobject, q: Subobject) -> Subobject:
        """Intersection, the pullback of the two inclusions."""
        return self._by_mask[p.mask & q.mask]

    def join(self, p: Subobject, q: Subobject) -> Subobject:
        """Image of the copairing of the two inclusions."""
        cp = copair(p.rep, q.rep)
        fac = self.sys.factorize(cp)
        carrier = set(v for (_, v) in fac.m_part.mapping)
        return self._by_mask[self.ambient.mask_of(carrier)]

    def is_distributive(self) -> bool:
        for p in self.subs:
            for q in self.subs:
                for r in self.subs:
                    lhs = self.meet(p, self.join(q, r))
                    rhs = self.join(self.meet(p, q), self.meet(p, r))
                    if lhs != rhs:
                        return False
        return True


def enumerate_subobjects(sys: FactorizationSystem, x: FiniteObject) -> SubobjectLattice:
    """All subsets whose canonical inclusion lies in M, smallest first."""
    subs = []
    for mask in range(1 << x.size):
        sub = subobject_from_mask(x, mask)
        if sys.in_m(sub.rep):
            subs.append(sub)
    subs.sort(key=lambda s: (s.size, s.elements))
    return SubobjectLattice(sys, x, tuple(subs))


def iota_map(sum_sub: Subobject) -> tuple[Subobject, Subobject]:
    """Componentwise preimage of a subobject of a constructed coproduct."""
    x, y = split_coproduct(sum_sub.ambient)
    left = tuple(e[len(LEFT_TAG):] for e in sum_sub.elements if e.startswith(LEFT_TAG))
    right = tuple(e[len(RIGHT_TAG):] for e in sum_sub.elements if e.startswith(RIGHT_TAG))
    return Subobject(x, left), Subobject(y, right)


def L_map(sub: Subobject, y: FiniteObject) -> Subobject:
    """Left extension: a subobject of X viewed inside X+Y (bottom on Y)."""
    amb = coproduct(sub.ambient, y).ob
    return Subobject(amb, tuple(LEFT_TAG + e for e in sub.elements))


def R_map(x: FiniteObject, sub: Subobject) -> Subobject:
    """Right extension: a subobject of Y viewed inside X+Y (bottom on X)."""
    amb = coproduct(x, sub.ambient).ob
    return Subobject(amb, tuple(RIGHT_TAG + e for e in sub.elements))


class SubobjectSum(NamedTuple):
    sub: Subobject
    admissible: bool
    morphism: Morphism


def sum_subobjects(sys: FactorizationSystem, a: Subobject, b: Subobject) -> SubobjectSum:
    """The sum a + b inside X + Y, with its admissibility flag.

    The underlying morphism is the sum of the two inclusions; admissibility
    holds iff that morphism is in M and its carrier agrees with the join of
    the images of a and b under the injections.
    """
    cp = coproduct(a.ambient, b.ambient)
    s = sum_morphisms(a.rep, b.rep, None, cp.ob)
    carrier = tuple(LEFT_TAG + e for e in a.elements) + tuple(
        RIGHT_TAG + e for e in b.elements)
    sub = Subobject(cp.ob, carrier)
    img_l = image(sys, cp.inl, Subobject(a.ambient, a.elements))
    img_r = image(sys, cp.inr, Subobject(b.ambient, b.elements))
    joined = _join_raw(sys, img_l, img_r)
    admissible = sys.in_m(s) and set(joined.elements) == set(carrier)
    return SubobjectSum(sub, admissible, s)


def _join_raw(sys: FactorizationSystem, p: Subobject, q: Subobject) -> Subobject:
    cp = copair(p.rep, q.rep)
    fac = sys.factorize(cp)
    carrier = tuple(sorted(set(v for (_, v) in fac.m_part.mapping)))
    return Subobject(p.ambient, carrier)


def check_adjunction_admissible(sys: FactorizationSystem,
                                x: FiniteObject, y: FiniteObject) -> Report:
    """Join of extensions is left adjoint to the pair of injection preimages.

    Checks, for all admissible m of X, n of Y and p of X+Y:
    L(m) v R(n) <= p  iff  m <= preimage(inl, p) and n <= preimage(inr, p).
    """
    cp = coproduct(x, y)
    lat_x = enumerate_subobjects(sys, x)
    lat_y = enumerate_subobjects(sys, y)
    lat_xy = enumerate_subobjects(sys, cp.ob)
    checks = []
    count = 0
    witness = None
    ok = True
    for m in lat_x:
        lm = L_map(m, y)
        for n in lat_y:
            rn = R_map(x, n)
            join_mask = lm.mask | rn.mask
            lhs_join = _join_raw(sys, lm, rn)
            if lhs_join.mask != join_mask:
                ok = False
                witness = {"m": serialize_subobject(m), "n": serialize_subobject(n),
                           "reason": "join of extensions is not their union"}
                break
            for p in lat_xy:
                count += 1
                lhs = join_mask & ~p.mask == 0
                pl, pr = iota_map(p)
                rhs = m.leq(pl) and n.leq(pr)
                if lhs != rhs:
                    ok = False
                    witness = {"m": serialize_subobject(m), "n": serialize_subobject(n),
                               "p": serialize_subobject(p),
                               "lhs": lhs, "rhs": rhs}
                    break
            if not ok:
                break
        if not ok:
            break
    checks.append(CheckResult("extension_preimage_adjunction", ok, count, witness))
    return Report(f"adjunction[{x.label},{y.label}]", tuple(checks))
