"""The groupoid span realization of the Hall product.

For the abelian (1-type) case the three spaces are nerves of finite
groupoids, so everything is computable by orbit enumeration:

* X0 has one component per catalog class, with pi_1 = its automorphism
  group (orders stored as [|Aut|]);
* X1 has one component per isomorphism class of arrows f: a -> b, i.e. per
  orbit of Hom(a, b) under the two-sided action (g, h) . f = h f g^-1 of
  Aut(a) x Aut(b), with pi_1 the stabilizer of the arrow;
* the target leg t: X1 -> X0 carries, over each class z, the comma groupoid
  of maps into z: components are precomposition orbits of Hom(a, z) under
  Aut(a), with pi_1 the stabilizer of the map.

The other leg maps an arrow class [f: a -> b] to (class of a, class of
coker f) in X0 x X0.  The honest second coordinate is the mapping cone
(ker f)[1] (+) coker f, a derived object; restricted to module-valued
functions this only matters through the injectivity mask: pulling back
chi_x (x) chi_y picks out components with source class x, zero kernel and
cokernel class y.  The product mu = t_! o (s x c)^* then reproduces the
classical Hall numbers through homotopy cardinality alone, with no
subobject counting anywhere on the path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .errors import InputError
from .hall import HallContext, HallElement
from .lf import Fiber, FiniteSupportFn, LFType, ProperMapData, lf_product, pullback, pushforward
from . import reps
from .reps import RepMorphism


@dataclass
class ArrowClass:
    """One isomorphism class of arrows a -> b with its groupoid data."""

    comp_id: tuple
    source_class: int
    target_class: int
    rep: RepMorphism          # lexicographically least orbit member
    orbit_size: int
    stabilizer_order: int     # |{(g, h) : h f = f g}|
    injective: bool
    cokernel_class: int
    kernel_dim: int


@dataclass
class SpanModel:
    context: HallContext
    x0: LFType
    x00: LFType               # X0 x X0, components are (class, class) pairs
    x1: LFType
    t: ProperMapData          # target leg with comma-groupoid fibers
    sc: ProperMapData         # (source, cone) leg: pullback only
    arrow_classes: Dict[tuple, ArrowClass]


def _orbit(seed: RepMorphism, left_gens, right_gens) -> dict:
    """Orbit of a morphism under postcomposition by left_gens and
    precomposition by right_gens (generators of the acting groups)."""
    seen = {seed.key(): seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for m in frontier:
            for g in right_gens:
                cand = m.compose(g)
                k = cand.key()
                if k not in seen:
                    seen[k] = cand
                    nxt.append(cand)
            for h in left_gens:
                cand = h.compose(m)
                k = cand.key()
                if k not in seen:
                    seen[k] = cand
                    nxt.append(cand)
        frontier = nxt
    return seen


def build_span_model(ctx: HallContext) -> SpanModel:
    """Assemble X0, X1 and both legs over the catalog universe."""
    if ctx.mode != "classical":
        raise InputError("the span model is built for classical contexts")
    cat = ctx.catalog
    n = len(cat)

    x0 = LFType(
        tuple(range(n)),
        tuple((cat.aut_order(i),) for i in range(n)),
    )
    x00 = lf_product(x0, x0)

    gens = {i: reps.aut_generators(cat.rep(i)) for i in range(n)}
    auts = {i: cat.aut_order(i) for i in range(n)}

    arrow_classes: Dict[tuple, ArrowClass] = {}
    member_lookup: Dict[tuple, dict] = {}
    x1_pairs = []
    for a in range(n):
        for b in range(n):
            seen_keys: set = set()
            orbits = []
            for f in reps.enumerate_homs(
                cat.rep(a), cat.rep(b), cap=ctx.caps.candidates
            ):
                k = f.key()
                if k in seen_keys:
                    continue
                orbit = _orbit(f, gens[b], gens[a])
                seen_keys.update(orbit)
                orbits.append((min(orbit), orbit))
            orbits.sort(key=lambda o: o[0])
            lookup = {}
            for rank, (canon_key, orbit) in enumerate(orbits):
                comp = ("m", a, b, rank)
                canon = orbit[canon_key]
                stab, rem = divmod(auts[a] * auts[b], len(orbit))
                assert rem == 0
                kc = reps.kernel_cokernel(canon)
                arrow_classes[comp] = ArrowClass(
                    comp_id=comp,
                    source_class=a,
                    target_class=b,
                    rep=canon,
                    orbit_size=len(orbit),
                    stabilizer_order=stab,
                    injective=canon.is_injective(),
                    cokernel_class=cat.classify(kc.cokernel),
                    kernel_dim=kc.kernel.total_dim,
                )
                for k in orbit:
                    lookup[k] = comp
                x1_pairs.append((comp, (stab,)))
            member_lookup[(a, b)] = lookup

    x1 = LFType.from_pairs(x1_pairs)

    # target leg with comma-groupoid fibers
    t_map = tuple(arrow_classes[c].target_class for c in x1.components)
    t_fibers = []
    for z in range(n):
        fib_pairs = []
        fib_incl = []
        for a in range(n):
            seen_keys = set()
            orbits = []
            for f in reps.enumerate_homs(
                cat.rep(a), cat.rep(z), cap=ctx.caps.candidates
            ):
                k = f.key()
                if k in seen_keys:
                    continue
                orbit = _orbit(f, [], gens[a])
                seen_keys.update(orbit)
                orbits.append((min(orbit), orbit))
            orbits.sort(key=lambda o: o[0])
            for rank, (canon_key, orbit) in enumerate(orbits):
                stab, rem = divmod(auts[a], len(orbit))
                assert rem == 0
                fib_pairs.append((("f", z, a, rank), (stab,)))
                fib_incl.append(member_lookup[(a, z)][canon_key])
        t_fibers.append(Fiber(LFType.from_pairs(fib_pairs), tuple(fib_incl)))
    t = ProperMapData(x1, x0, t_map, tuple(t_fibers))

    # (source, cone) leg: component map only; its homotopy fibers are never
    # consumed (the product needs pullback here, push-forward along t)
    sc_map = tuple(
        (arrow_classes[c].source_class, arrow_classes[c].cokernel_class)
        for c in x1.components
    )
    sc = ProperMapData(x1, x00, sc_map, None)

    return SpanModel(ctx, x0, x00, x1, t, sc, arrow_classes)


def mu_span(a: HallElement, b: HallElement, span: SpanModel) -> HallElement:
    """t_! ((s x c)^* (a (x) b)): the span route to the Hall product.

    The tensor function is (x, y) |-> a(x) b(y) on X0 x X0.  After pullback,
    support is restricted to components whose arrow has zero kernel: for a
    module cone class the mapping cone (ker f)[1] (+) coker f matches a
    module only when ker f = 0.
    """
    ctx = span.context
    if a.context is not ctx or b.context is not ctx:
        raise InputError("elements do not belong to the span's context")
    tensor_vals = {}
    for x, cx in a.values.items():
        for y, cy in b.values.items():
            tensor_vals[(x, y)] = cx * cy
    tensor = FiniteSupportFn(span.x00, tensor_vals)
    pulled = pullback(span.sc, tensor)
    masked = FiniteSupportFn(
        span.x1,
        {
            comp: val
            for comp, val in pulled.values.items()
            if span.arrow_classes[comp].kernel_dim == 0
        },
    )
    pushed = pushforward(span.t, masked)
    return HallElement(ctx, dict(pushed.values))
