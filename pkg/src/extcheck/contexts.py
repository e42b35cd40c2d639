"""Built-in verification contexts and the extensivity validator.

A context bundles a flavor of finite objects (plain sets, or preorders with
monotone maps), a factorization system, the closure families registered for
that flavor, and a canonical object enumeration up to isomorphism at a given
size bound.  Mutated variants (deliberately broken coproduct order, swapped
factorization classes, split-mono admissibles) feed the self-tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from . import core
from .core import (
    CheckResult,
    Coproduct,
    FiniteObject,
    Morphism,
    Report,
    LEFT_TAG,
    RIGHT_TAG,
    compose,
    copair,
    enumerate_morphisms,
    find_iso,
    identity,
    initial,
    is_injective,
    is_iso,
    is_isomorphic,
    is_surjective,
    product,
    pullback,
    serialize_morphism,
    serialize_object,
    terminal,
    transitive_closure,
)
from .closure import ALEXANDROV, IDENTITY, INDISCRETE, ClosureFamily
from .factorization import (
    FactorizationSystem,
    image_factorization,
    is_embedding,
    validate_system,
)
from .subobjects import SubobjectLattice, enumerate_subobjects


def surjections_injections() -> FactorizationSystem:
    return FactorizationSystem(
        "surjections/injections", is_surjective, is_injective, image_factorization)


def surjections_embeddings() -> FactorizationSystem:
    return FactorizationSystem(
        "surjections/embeddings", is_surjective, is_embedding, image_factorization)


@lru_cache(maxsize=None)
def finset_objects(bound: int) -> tuple[FiniteObject, ...]:
    out = [FiniteObject((), None, name="set0")]
    for k in range(1, bound + 1):
        labels = tuple(f"x{i + 1}" for i in range(k))
        out.append(FiniteObject(labels, None, name=f"set{k}"))
    return tuple(out)


def _transitive_rows(rows: list[int], k: int) -> bool:
    for i in range(k):
        ri = rows[i]
        m = ri
        while m:
            low = m & -m
            if rows[low.bit_length() - 1] & ~ri:
                return False
            m ^= low
    return True


def _iso_signature(ob: FiniteObject) -> tuple:
    down = sorted((bin(d).count("1"), bin(u).count("1"))
                  for d, u in zip(ob.down_masks, ob.up_masks))
    return (len(ob.order), tuple(down))


@lru_cache(maxsize=None)
def preorders_of_size(k: int) -> tuple[FiniteObject, ...]:
    """All preorders on k points, one representative per iso class.

    Candidates are generated as reflexive relation matrices, filtered for
    transitivity row-wise, then deduplicated by invariant signature and
    isomorphism search.
    """
    labels = tuple(f"p{i + 1}" for i in range(k))
    if k == 0:
        return (FiniteObject((), frozenset(), name="pre0_0"),)
    positions = [(i, j) for i in range(k) for j in range(k) if i != j]
    groups: dict[tuple, list[FiniteObject]] = {}
    for bits in range(1 << len(positions)):
        rows = [1 << i for i in range(k)]
        for p, (i, j) in enumerate(positions):
            if (bits >> p) & 1:
                rows[i] |= 1 << j
        if not _transitive_rows(rows, k):
            continue
        pairs = frozenset(
            (labels[i], labels[j]) for i in range(k) for j in range(k)
            if (rows[i] >> j) & 1)
        ob = FiniteObject(labels, pairs)
        sig = _iso_signature(ob)
        bucket = groups.setdefault(sig, [])
        if not any(is_isomorphic(ob, seen) for seen in bucket):
            bucket.append(ob)
    reps = [ob for bucket in groups.values() for ob in bucket]
    reps.sort(key=lambda o: (len(o.order), sorted(o.order)))
    return tuple(FiniteObject(o.elements, o.order, name=f"pre{k}_{i}")
                 for i, o in enumerate(reps))


@lru_cache(maxsize=None)
def finpre_objects(bound: int) -> tuple[FiniteObject, ...]:
    out: list[FiniteObject] = []
    for k in range(bound + 1):
        out.extend(preorders_of_size(k))
    return tuple(out)


@dataclass(eq=False)
class Context:
    """One verification universe: flavor, system, closure families, pool."""

    name: str
    ordered: bool
    system: FactorizationSystem
    families: tuple[ClosureFamily, ...]
    enumerate_objects: Callable[[int], tuple[FiniteObject, ...]]
    extra_objects: tuple[FiniteObject, ...] = ()
    coproduct_fn: Callable[[FiniteObject, FiniteObject], Coproduct] = core.coproduct
    _coproducts: dict = field(default_factory=dict, repr=False)
    _lattices: dict = field(default_factory=dict, repr=False)

    def objects(self, bound: int) -> tuple[FiniteObject, ...]:
        pool = list(self.enumerate_objects(bound))
        for extra in self.extra_objects:
            if extra.has_order != self.ordered:
                raise ValueError(f"object {extra.label} has the wrong flavor")
            if not any(is_isomorphic(extra, ob) for ob in pool):
                pool.append(extra)
        return tuple(pool)

    def hom(self, x: FiniteObject, y: FiniteObject) -> tuple[Morphism, ...]:
        return enumerate_morphisms(x, y)

    def coproduct(self, x: FiniteObject, y: FiniteObject) -> Coproduct:
        key = (x, y)
        if key not in self._coproducts:
            self._coproducts[key] = self.coproduct_fn(x, y)
        return self._coproducts[key]

    def sub_lattice(self, x: FiniteObject) -> SubobjectLattice:
        if x not in self._lattices:
            self._lattices[x] = enumerate_subobjects(self.system, x)
        return self._lattices[x]

    def family(self, name: str) -> ClosureFamily:
        for fam in self.families:
            if fam.name == name:
                return fam
        raise KeyError(f"closure family {name} not registered for {self.name}")

    def with_extra_objects(self, extras: Sequence[FiniteObject]) -> "Context":
        return Context(self.name, self.ordered, self.system, self.families,
                       self.enumerate_objects, tuple(extras), self.coproduct_fn)

    def validate_factorization(self, bound: int) -> Report:
        return validate_system(self.system, self.objects(bound))

    def validate_extensive(self, bound: int) -> Report:
        return validate_extensive(self, bound)


def builtin(name: str) -> Context:
    if name == "finset":
        return Context("finset", False, surjections_injections(),
                       (IDENTITY, INDISCRETE), finset_objects)
    if name == "finpre":
        return Context("finpre", True, surjections_embeddings(),
                       (ALEXANDROV, IDENTITY, INDISCRETE), finpre_objects)
    raise KeyError(f"unknown context: {name}")


BUILTIN_CONTEXTS = ("finset", "finpre")


def swapped_system_context(base: Context) -> Context:
    """Self-test mutant: the two classes exchanged, factorizer untouched."""
    sys = base.system
    swapped = FactorizationSystem(
        f"{sys.name}|swapped", sys.m_member, sys.e_member, sys.factorize_fn)
    return Context(f"{base.name}!swapped", base.ordered, swapped, base.families,
                   base.enumerate_objects, base.extra_objects, base.coproduct_fn)


def crossed_coproduct_context(base: Context) -> Context:
    """Self-test mutant: coproduct order polluted with one cross pair."""
    assert base.ordered, "the cross-pair mutant needs the ordered flavor"

    def crossed(x: FiniteObject, y: FiniteObject) -> Coproduct:
        cp = core.coproduct(x, y)
        if x.size == 0 or y.size == 0:
            return cp
        extra = (LEFT_TAG + x.elements[0], RIGHT_TAG + y.elements[0])
        order = transitive_closure(set(cp.ob.order) | {extra})
        ob = FiniteObject(cp.ob.elements, order, name=cp.ob.name + "!")
        inl = Morphism(x, ob, cp.inl.mapping)
        inr = Morphism(y, ob, cp.inr.mapping)
        return Coproduct(ob, inl, inr)

    return Context(f"{base.name}!crossed", base.ordered, base.system, base.families,
                   base.enumerate_objects, base.extra_objects, crossed)


def split_mono_context(base: Context) -> Context:
    """Self-test mutant: admissibles narrowed to split monomorphisms."""

    def has_retraction(f: Morphism) -> bool:
        if not is_injective(f):
            return False
        want = identity(f.source)
        return any(compose(r, f) == want
                   for r in enumerate_morphisms(f.target, f.source))

    sys = FactorizationSystem(
        f"{base.system.name}|split", base.system.e_member, has_retraction,
        base.system.factorize_fn)
    return Context(f"{base.name}!split", base.ordered, sys, base.families,
                   base.enumerate_objects, base.extra_objects, base.coproduct_fn)


def validate_extensive(ctx: Context, bound: int) -> Report:
    """Brute-force the extensivity laws over the object pool.

    Pullback stability is checked by constructing, for every map into a
    constructed coproduct, the canonical comparison out of the coproduct of
    the two injection pullbacks, and testing it is an isomorphism commuting
    with everything.
    """
    pool = ctx.objects(bound)
    zero = initial(ctx.ordered)
    one = terminal(ctx.ordered)
    checks: list[CheckResult] = []

    count = 0
    ok = True
    witness = None
    for x in pool:
        count += 1
        if len(ctx.hom(zero, x)) != 1:
            ok = False
            witness = {"object": serialize_object(x), "reason": "no unique map from 0"}
            break
        if x.size and len(ctx.hom(x, zero)) != 0:
            ok = False
            witness = {"object": serialize_object(x), "reason": "map into 0 exists"}
            break
    checks.append(CheckResult("initial_strict", ok, count, witness))

    count = 0
    ok = True
    witness = None
    for x in pool:
        for y in pool:
            count += 1
            cp = ctx.coproduct(x, y)
            inl_img = set(v for (_, v) in cp.inl.mapping)
            inr_img = set(v for (_, v) in cp.inr.mapping)
            good = (is_injective(cp.inl) and is_injective(cp.inr)
                    and ctx.system.in_m(cp.inl) and ctx.system.in_m(cp.inr)
                    and not (inl_img & inr_img)
                    and inl_img | inr_img == set(cp.ob.elements))
            if not good:
                ok = False
                witness = {"x": serialize_object(x), "y": serialize_object(y)}
                break
        if not ok:
            break
    checks.append(CheckResult("injections_admissible_disjoint_jointly_epic",
                              ok, count, witness))

    count = 0
    ok = True
    witness = None
    for x in pool:
        for y in pool:
            count += 1
            cp = ctx.coproduct(x, y)
            if pullback(cp.inl, cp.inr).ob.size != 0:
                ok = False
                witness = {"x": serialize_object(x), "y": serialize_object(y)}
                break
        if not ok:
            break
    checks.append(CheckResult("coproduct_disjoint", ok, count, witness))

    count = 0
    ok = True
    witness = None
    for x in pool:
        for y in pool:
            if not ok:
                break
            cp = ctx.coproduct(x, y)
            for z in pool:
                if not ok:
                    break
                for f in ctx.hom(z, cp.ob):
                    count += 1
                    pb_l = pullback(f, cp.inl)
                    pb_r = pullback(f, cp.inr)
                    mid = ctx.coproduct(pb_l.ob, pb_r.ob)
                    try:
                        comparison = copair(pb_l.p1, pb_r.p1, mid.ob)
                        into_sum = copair(compose(cp.inl, pb_l.p2),
                                          compose(cp.inr, pb_r.p2), mid.ob)
                    except ValueError as err:
                        ok = False
                        witness = {"f": serialize_morphism(f), "error": str(err)}
                        break
                    if not is_iso(comparison) or compose(f, comparison) != into_sum:
                        ok = False
                        witness = {"f": serialize_morphism(f),
                                   "comparison": serialize_morphism(comparison)}
                        break
    checks.append(CheckResult("coproducts_pullback_stable", ok, count, witness))

    count = 0
    ok = True
    witness = None
    two = ctx.coproduct(one, one)
    for x in pool:
        count += 1
        lhs = product(two.ob, x).ob
        rhs = ctx.coproduct(x, x).ob
        if find_iso(lhs, rhs) is None:
            ok = False
            witness = {"x": serialize_object(x),
                       "lhs": serialize_object(lhs), "rhs": serialize_object(rhs)}
            break
    checks.append(CheckResult("distributivity_two_by_x", ok, count, witness))

    zero_to_one = Morphism(zero, one, ())
    checks.append(CheckResult("zero_embedding_admissible",
                              ctx.system.in_m(zero_to_one), 1, None))

    count = 0
    ok = True
    witness = None
    for x in pool:
        for y in pool:
            if not ok:
                break
            for f in ctx.hom(x, y):
                count += 1
                if f.preimage_mask(0) != 0:
                    ok = False
                    witness = {"f": serialize_morphism(f)}
                    break
        if not ok:
            break
    checks.append(CheckResult("morphisms_reflect_zero", ok, count, witness))

    return Report(f"extensive[{ctx.name}]", tuple(checks))
