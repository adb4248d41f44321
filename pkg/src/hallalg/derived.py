"""Bounded complexes, mapping cones and derived Hom for hereditary quivers.

Shift convention (fixed once): complexes are cohomological, the differential
raises degree, and (x[1])^n = x^(n+1), so a module stalk in degree 0 shifted
by [1] sits in degree -1.  The triangle of a chain map f: x -> z is
x -> z -> cone(f) -> x[1].

Because the path algebra of an acyclic quiver is hereditary, every bounded
complex is quasi-isomorphic to its homology; a DerivedClass records exactly
that normal form: the catalog class of H^n for each degree n.

Derived Hom is computed on the nose as chain maps out of a projective
realization (each summand replaced by its two-term projective resolution),
modulo null-homotopic maps.  All of it is exact F_p linear algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Sequence

from .errors import EnumerationCapError, InputError, OutOfUniverseError
from .fq import FqMatrix, RowSpace, complement_basis
from .catalog import Catalog
from . import reps
from .reps import Representation, RepMorphism


@dataclass(frozen=True, order=True)
class DerivedClass:
    """Quasi-isomorphism class: ((degree, catalog class index), ...) sorted
    by degree, at most one entry per degree, zero classes omitted."""

    entries: tuple

    def __post_init__(self):
        degs = [d for d, _ in self.entries]
        if sorted(degs) != degs or len(set(degs)) != len(degs):
            raise InputError("derived class entries must be sorted, one per degree")

    @classmethod
    def from_module(cls, class_index: int, degree: int = 0) -> "DerivedClass":
        return cls(((degree, class_index),))

    @classmethod
    def zero(cls) -> "DerivedClass":
        return cls(())

    def is_zero(self) -> bool:
        return not self.entries

    def shift(self, k: int) -> "DerivedClass":
        return DerivedClass(tuple((d - k, i) for d, i in self.entries))

    def degrees(self) -> tuple:
        return tuple(d for d, _ in self.entries)

    def class_at(self, degree: int) -> Optional[int]:
        for d, i in self.entries:
            if d == degree:
                return i
        return None

    def dims_at(self, degree: int, cat: Catalog) -> tuple:
        i = self.class_at(degree)
        if i is None:
            return (0,) * cat.quiver.vertex_count
        return cat.dims(i)

    def euler_vector(self, cat: Catalog) -> tuple:
        """Alternating-sum dimension vector; additive in triangles."""
        n = cat.quiver.vertex_count
        out = [0] * n
        for d, i in self.entries:
            sign = 1 if d % 2 == 0 else -1
            for v, dim in enumerate(cat.dims(i)):
                out[v] += sign * dim
        return tuple(out)

    def is_module_stalk(self) -> bool:
        return all(d == 0 for d, _ in self.entries)

    def to_json_list(self, cat: Catalog) -> list:
        return [{"class_id": cat.name(i), "degree": d} for d, i in self.entries]

    def name(self, cat: Catalog) -> str:
        if not self.entries:
            return "0"
        return "+".join(
            f"{cat.name(i)}[{-d}]" if d else cat.name(i) for d, i in self.entries
        )


class Complex:
    """A bounded cochain complex of representations; d(n): rep(n) -> rep(n+1),
    with d o d = 0 enforced on construction."""

    __slots__ = ("quiver", "p", "lo", "reps", "diffs")

    def __init__(self, quiver, p: int, lo: int, reps_: Sequence[Representation],
                 diffs: Sequence[RepMorphism]):
        if reps_ and len(diffs) != len(reps_) - 1:
            raise InputError("need one differential per consecutive degree pair")
        if not reps_ and diffs:
            raise InputError("empty complex cannot carry differentials")
        self.quiver = quiver
        self.p = p
        self.lo = lo
        self.reps = tuple(reps_)
        self.diffs = tuple(diffs)
        for n, d in enumerate(self.diffs):
            if d.source != self.reps[n] or d.target != self.reps[n + 1]:
                raise InputError("differential endpoints mismatch")
        for n in range(len(self.diffs) - 1):
            if not self.diffs[n + 1].compose(self.diffs[n]).is_zero():
                raise InputError("d o d != 0")

    @property
    def hi(self) -> int:
        return self.lo + len(self.reps) - 1

    def rep(self, n: int) -> Representation:
        if self.lo <= n <= self.hi:
            return self.reps[n - self.lo]
        return Representation.zero(self.quiver, self.p)

    def diff(self, n: int) -> RepMorphism:
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return RepMorphism.zero(self.rep(n), self.rep(n + 1))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def total_dim(self) -> int:
        return sum(r.total_dim for r in self.reps)

    def shift(self, k: int) -> "Complex":
        """x[k]: degree n holds x^(n+k); differentials pick up (-1)^k."""
        diffs = self.diffs if k % 2 == 0 else tuple(-d for d in self.diffs)
        return Complex(self.quiver, self.p, self.lo - k, self.reps, diffs)

    @classmethod
    def empty(cls, quiver, p: int) -> "Complex":
        return cls(quiver, p, 0, (), ())

    @classmethod
    def stalk(cls, rep: Representation, degree: int = 0) -> "Complex":
        return cls(rep.quiver, rep.p, degree, (rep,), ())


def homology(c: Complex) -> list:
    """[(degree, H^n as a Representation with induced arrow maps)] for every
    degree with nonzero homology; dim H^n = dim ker d^n - rank d^(n-1)."""
    out = []
    q, p = c.quiver, c.p
    for n in c.degrees():
        d_out = c.diff(n)
        d_in = c.diff(n - 1)
        rep_n = c.rep(n)

        comp_bases = []   # per vertex: ambient vectors spanning ker/im
        coord_mats = []   # per vertex: stacked (complement; image) basis rows
        for v in range(q.vertex_count):
            amb = rep_n.dims[v]
            im = RowSpace(p, amb)
            for j in range(d_in.mats[v].cols):
                im.add(d_in.mats[v].col(j))
            ker_rows = d_out.mats[v].kernel_basis().row_list()
            comp = complement_basis(im, ker_rows)
            assert len(comp) == len(ker_rows) - im.dim
            comp_bases.append(comp)
            rows = [list(w) for w in comp] + [list(r) for r in im.basis()]
            coord_mats.append(
                FqMatrix.from_rows(p, rows) if rows else FqMatrix(p, 0, amb, ())
            )

        dims = tuple(len(cb) for cb in comp_bases)
        if not any(dims):
            continue

        def quot_coords(v: int, vec) -> tuple:
            res = _solve_matrix(coord_mats[v].transpose(), vec)
            return res[: len(comp_bases[v])]

        mats = []
        for idx, (s, t) in enumerate(q.arrows):
            cols = [
                quot_coords(t, rep_n.mats[idx].mul_vec(w))
                for w in comp_bases[s]
            ]
            if cols:
                mats.append(FqMatrix.from_rows(p, cols).transpose())
            else:
                mats.append(FqMatrix.zeros(p, dims[t], 0))
        out.append((n, Representation(q, p, dims, mats)))
    return out


def _solve_matrix(a: FqMatrix, b) -> tuple:
    from .fq import solve
    res = solve(a, b)
    if res is None:
        raise AssertionError("inconsistent coordinate solve (not in span)")
    return res[0]


def derived_class_of(c: Complex, cat: Catalog, strict: bool = True) -> Optional[DerivedClass]:
    """Classify a complex up to quasi-isomorphism: the catalog class of each
    homology representation, by degree.  Requires an acyclic quiver (the
    hereditary decomposition is what makes homology a complete invariant).

    strict=True raises OutOfUniverseError when some homology leaves the
    catalog bound; strict=False returns None instead.
    """
    if not cat.quiver.is_acyclic():
        raise InputError("derived classification needs an acyclic quiver")
    entries = []
    for n, h in homology(c):
        try:
            idx = cat.classify(h)
        except OutOfUniverseError:
            if strict:
                raise
            return None
        if not cat.rep(idx).is_zero():
            entries.append((n, idx))
    return DerivedClass(tuple(entries))


def stalk_realization(cat: Catalog, dc: DerivedClass) -> Complex:
    """The split realization: class reps placed at their degrees, zero
    differentials."""
    cache = _derived_cache(cat, "stalk_real")
    hit = cache.get(dc)
    if hit is not None:
        return hit
    cache[dc] = out = _stalk_realization(cat, dc)
    return out


def _stalk_realization(cat: Catalog, dc: DerivedClass) -> Complex:
    if dc.is_zero():
        return Complex.empty(cat.quiver, cat.p)
    lo = dc.entries[0][0]
    hi = dc.entries[-1][0]
    reps_ = []
    for n in range(lo, hi + 1):
        i = dc.class_at(n)
        reps_.append(cat.rep(i) if i is not None else Representation.zero(cat.quiver, cat.p))
    diffs = [RepMorphism.zero(reps_[k], reps_[k + 1]) for k in range(len(reps_) - 1)]
    return Complex(cat.quiver, cat.p, lo, reps_, diffs)


def projective_realization(cat: Catalog, dc: DerivedClass) -> Complex:
    """Quasi-isomorphic complex of projectives: the summand at degree a is
    replaced by its standard resolution placed in degrees a-1, a.

    Degree n holds p0(summand at n) (+) p1(summand at n+1); the only nonzero
    differential blocks are the resolution maps delta.
    """
    cache = _derived_cache(cat, "proj_real")
    hit = cache.get(dc)
    if hit is not None:
        return hit
    cache[dc] = out = _projective_realization(cat, dc)
    return out


def _projective_realization(cat: Catalog, dc: DerivedClass) -> Complex:
    if dc.is_zero():
        return Complex.empty(cat.quiver, cat.p)
    q, p = cat.quiver, cat.p
    res = {d: reps.standard_resolution(cat.rep(i)) for d, i in dc.entries}
    lo = dc.entries[0][0] - 1
    hi = dc.entries[-1][0]

    def part0(n):
        r = res.get(n)
        return r.p0 if r else Representation.zero(q, p)

    def part1(n):
        r = res.get(n)
        return r.p1 if r else Representation.zero(q, p)

    reps_ = [reps.direct_sum(part0(n), part1(n + 1)) for n in range(lo, hi + 1)]

    diffs = []
    for n in range(lo, hi):
        src = reps_[n - lo]
        dst = reps_[n - lo + 1]
        r_next = res.get(n + 1)
        mats = []
        for v in range(q.vertex_count):
            grid = [[0] * src.dims[v] for _ in range(dst.dims[v])]
            if r_next is not None:
                # block p1(summand n+1) -> p0(summand n+1): delta
                delta = r_next.delta.mats[v]
                col_off = part0(n).dims[v]
                for r in range(delta.rows):
                    for cix in range(delta.cols):
                        grid[r][col_off + cix] = delta[r, cix]
            mats.append(
                FqMatrix.from_rows(p, grid) if dst.dims[v]
                else FqMatrix(p, 0, src.dims[v], ())
            )
        diffs.append(RepMorphism(src, dst, mats, validate=True))
    return Complex(q, p, lo, reps_, diffs)


def augmentation_map(cat: Catalog, dc: DerivedClass) -> "ChainMap":
    """The canonical quasi-isomorphism projective_realization -> stalk
    realization: aug on each p0 block, zero on p1 blocks."""
    P = projective_realization(cat, dc)
    C = stalk_realization(cat, dc)
    res = {d: reps.standard_resolution(cat.rep(i)) for d, i in dc.entries}
    q, p = cat.quiver, cat.p
    mats = {}
    for n in P.degrees():
        src = P.rep(n)
        dst = C.rep(n)
        r = res.get(n)
        vmats = []
        for v in range(q.vertex_count):
            grid = [[0] * src.dims[v] for _ in range(dst.dims[v])]
            if r is not None:
                aug = r.aug.mats[v]
                for rr in range(aug.rows):
                    for cc in range(aug.cols):
                        grid[rr][cc] = aug[rr, cc]
            vmats.append(
                FqMatrix.from_rows(p, grid) if dst.dims[v]
                else FqMatrix(p, 0, src.dims[v], ())
            )
        mats[n] = RepMorphism(src, dst, vmats, validate=False)
    return ChainMap(P, C, mats)


class ChainMap:
    """A degreewise intertwiner commuting with the differentials."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source: Complex, target: Complex, mats: Dict[int, RepMorphism],
                 validate: bool = True):
        self.source = source
        self.target = target
        self.mats = {
            n: m for n, m in sorted(mats.items())
            if not (m.source.is_zero() and m.target.is_zero())
        }
        if validate:
            for n, m in self.mats.items():
                if m.source != source.rep(n) or m.target != target.rep(n):
                    raise InputError(f"chain map block at degree {n} has bad endpoints")
                if not m.is_intertwiner():
                    raise InputError(f"block at degree {n} is not a morphism")
            if not self.commutes():
                raise InputError("chain map does not commute with differentials")

    def mat(self, n: int) -> RepMorphism:
        got = self.mats.get(n)
        if got is not None:
            return got
        return RepMorphism.zero(self.source.rep(n), self.target.rep(n))

    def commutes(self) -> bool:
        degs = set(self.source.degrees()) | set(self.target.degrees())
        for n in degs:
            lhs = self.target.diff(n).compose(self.mat(n))
            rhs = self.mat(n + 1).compose(self.source.diff(n))
            if not (lhs - rhs).is_zero():
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        degs = set(self.mats) | set(other.mats)
        mats = {n: self.mat(n).compose(other.mat(n)) for n in degs}
        return ChainMap(other.source, self.target, mats, validate=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.mats) | set(other.mats)
        mats = {n: self.mat(n) + other.mat(n) for n in degs}
        return ChainMap(self.source, self.target, mats, validate=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())


def mapping_cone(f: ChainMap) -> Complex:
    """cone(f)^n = x^(n+1) (+) z^n with differential
    [[-d_x, 0], [f, d_z]]; completes f to the triangle x -> z -> cone -> x[1]."""
    X, Z = f.source, f.target
    q, p = X.quiver, X.p
    degs = [n for n in range(min(X.lo - 1, Z.lo) if X.reps or Z.reps else 0,
                             (max(X.hi - 1, Z.hi) if X.reps or Z.reps else -1) + 1)
            if X.rep(n + 1).total_dim or Z.rep(n).total_dim]
    if not degs:
        return Complex.empty(q, p)
    lo, hi = min(degs), max(degs)
    cone_reps = [reps.direct_sum(X.rep(n + 1), Z.rep(n)) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo, hi):
        src, dst = cone_reps[n - lo], cone_reps[n - lo + 1]
        dx = X.diff(n + 1)
        dz = Z.diff(n)
        fb = f.mat(n + 1)
        mats = []
        for v in range(q.vertex_count):
            x1, z0 = X.rep(n + 1).dims[v], Z.rep(n).dims[v]
            x2, z1 = X.rep(n + 2).dims[v], Z.rep(n + 1).dims[v]
            grid = [[0] * (x1 + z0) for _ in range(x2 + z1)]
            m = dx.mats[v]
            for r in range(x2):
                for c in range(x1):
                    grid[r][c] = (-m[r, c]) % p
            m = fb.mats[v]
            for r in range(z1):
                for c in range(x1):
                    grid[x2 + r][c] = m[r, c]
            m = dz.mats[v]
            for r in range(z1):
                for c in range(z0):
                    grid[x2 + r][x1 + c] = m[r, c]
            mats.append(
                FqMatrix.from_rows(p, grid) if (x2 + z1)
                else FqMatrix(p, 0, x1 + z0, ())
            )
        diffs.append(RepMorphism(src, dst, mats, validate=True))
    return Complex(q, p, lo, cone_reps, diffs)


class GradedMapSpace:
    """Coordinate bookkeeping for graded collections g^n: X^n -> Z^(n+shift)
    of vertexwise matrices; flattening order is (degree, vertex, row, col)."""

    def __init__(self, X: Complex, Z: Complex, shift: int = 0):
        self.X = X
        self.Z = Z
        self.shift = shift
        self.p = X.p
        degs = []
        if X.reps or Z.reps:
            los = []
            his = []
            if X.reps:
                los.append(X.lo)
                his.append(X.hi)
            if Z.reps:
                los.append(Z.lo - shift)
                his.append(Z.hi - shift)
            degs = list(range(min(los), max(his) + 1))
        self.degrees = [
            n for n in degs
            if X.rep(n).total_dim and Z.rep(n + shift).total_dim
        ]
        self.offsets: Dict[tuple, int] = {}
        total = 0
        q = X.quiver
        for n in self.degrees:
            for v in range(q.vertex_count):
                self.offsets[(n, v)] = total
                total += Z.rep(n + shift).dims[v] * X.rep(n).dims[v]
        self.total = total

    def pos(self, n: int, v: int, r: int, c: int) -> int:
        return self.offsets[(n, v)] + r * self.X.rep(n).dims[v] + c

    def intertwining_rows(self) -> list:
        rows: list = []
        q, p = self.X.quiver, self.p
        for n in self.degrees:
            xr = self.X.rep(n)
            zr = self.Z.rep(n + self.shift)
            for idx, (s, t) in enumerate(q.arrows):
                xa, za = xr.mats[idx], zr.mats[idx]
                for r in range(zr.dims[t]):
                    for c in range(xr.dims[s]):
                        row = [0] * self.total
                        for k in range(xr.dims[t]):
                            row[self.pos(n, t, r, k)] = (
                                row[self.pos(n, t, r, k)] + xa[k, c]
                            ) % p
                        for k in range(zr.dims[s]):
                            row[self.pos(n, s, k, c)] = (
                                row[self.pos(n, s, k, c)] - za[r, k]
                            ) % p
                        rows.append(row)
        return rows

    def unflatten(self, vec: Sequence[int]) -> Dict[int, RepMorphism]:
        q = self.X.quiver
        out = {}
        for n in self.degrees:
            mats = []
            for v in range(q.vertex_count):
                zr = self.Z.rep(n + self.shift).dims[v]
                xr = self.X.rep(n).dims[v]
                if zr * xr:
                    base = self.offsets[(n, v)]
                    mats.append(FqMatrix(self.p, zr, xr, vec[base : base + zr * xr]))
                else:
                    mats.append(FqMatrix.zeros(self.p, zr, xr))
            out[n] = RepMorphism(
                self.X.rep(n), self.Z.rep(n + self.shift), mats, validate=False
            )
        return out

    def flatten(self, mats: Dict[int, RepMorphism]) -> tuple:
        vec = [0] * self.total
        for n, m in mats.items():
            if n not in self.offsets and m.is_zero():
                continue
            for v in range(self.X.quiver.vertex_count):
                block = m.mats[v]
                if block.rows * block.cols == 0:
                    continue
                base = self.offsets[(n, v)]
                for i, val in enumerate(block.data):
                    vec[base + i] = val
        return tuple(vec)


def chain_map_space(X: Complex, Z: Complex) -> tuple:
    """(space, basis) where basis spans {chain maps X -> Z} as flat vectors."""
    gs = GradedMapSpace(X, Z, 0)
    rows = gs.intertwining_rows()
    # commutation: d_Z o f^n - f^(n+1) o d_X = 0 at every degree
    q, p = X.quiver, X.p
    degs = sorted(set(X.degrees()) | set(Z.degrees()))
    for n in degs:
        dz = Z.diff(n)
        dx = X.diff(n)
        for v in range(q.vertex_count):
            n_rows = Z.rep(n + 1).dims[v]
            n_cols = X.rep(n).dims[v]
            for r in range(n_rows):
                for c in range(n_cols):
                    row = [0] * gs.total
                    touched = False
                    if (n, v) in gs.offsets:
                        for k in range(Z.rep(n).dims[v]):
                            row[gs.pos(n, v, k, c)] = (
                                row[gs.pos(n, v, k, c)] + dz.mats[v][r, k]
                            ) % p
                            touched = touched or dz.mats[v][r, k] != 0
                    if (n + 1, v) in gs.offsets:
                        for k in range(X.rep(n + 1).dims[v]):
                            row[gs.pos(n + 1, v, r, k)] = (
                                row[gs.pos(n + 1, v, r, k)] - dx.mats[v][k, c]
                            ) % p
                            touched = touched or dx.mats[v][k, c] != 0
                    if touched:
                        rows.append(row)
    if gs.total == 0:
        return gs, []
    if not rows:
        basis_mat = FqMatrix.identity(X.p, gs.total)
    else:
        basis_mat = FqMatrix.from_rows(X.p, rows).kernel_basis()
    return gs, [basis_mat.row(i) for i in range(basis_mat.rows)]


def homotopy_boundaries(X: Complex, Z: Complex, gs: GradedMapSpace) -> list:
    """Flat vectors (in gs coordinates) spanning the null-homotopic chain
    maps: d_Z h + h d_X over all degree -1 graded morphisms h."""
    hs = GradedMapSpace(X, Z, -1)
    if hs.total == 0:
        return []
    rows = hs.intertwining_rows()
    if not rows:
        hbasis = FqMatrix.identity(X.p, hs.total)
    else:
        hbasis = FqMatrix.from_rows(X.p, rows).kernel_basis()
    out = []
    for i in range(hbasis.rows):
        hmats = hs.unflatten(hbasis.row(i))

        def hmat(n: int) -> RepMorphism:
            got = hmats.get(n)
            if got is not None:
                return got
            return RepMorphism.zero(X.rep(n), Z.rep(n - 1))

        bmats = {}
        for n in gs.degrees:
            bmats[n] = Z.diff(n - 1).compose(hmat(n)) + hmat(n + 1).compose(X.diff(n))
        out.append(gs.flatten(bmats))
    return out


class HomotopyClasses:
    """Hom in the derived category between two realized complexes: the chain
    map space modulo null-homotopics, with one lifted representative per
    class and a canonical coset key for classifying arbitrary chain maps."""

    def __init__(self, X: Complex, Z: Complex, cap: int = reps.DEFAULT_CAP,
                 max_exponent: int = 20):
        self.X = X
        self.Z = Z
        self.p = X.p
        self.space, self.cycle_basis = chain_map_space(X, Z)
        self.null = RowSpace(self.p, self.space.total)
        for b in homotopy_boundaries(X, Z, self.space):
            self.null.add(b)
        self.complement = complement_basis(self.null, self.cycle_basis)
        self.dim = len(self.complement)
        if self.dim > max_exponent or self.p ** self.dim > cap:
            raise EnumerationCapError(
                f"{self.p}**{self.dim} homotopy classes exceed the cap"
            )

    @property
    def count(self) -> int:
        return self.p ** self.dim

    def class_vectors(self) -> Iterator[tuple]:
        zero = (0,) * self.space.total
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            vec = list(zero)
            for c, b in zip(coeffs, self.complement):
                if c:
                    for j, val in enumerate(b):
                        vec[j] = (vec[j] + c * val) % self.p
            yield tuple(vec)

    def canon(self, vec: Sequence[int]) -> tuple:
        """Canonical coset representative: unique in vec + null-homotopics."""
        return self.null.reduce(vec)

    def lift(self, vec: Sequence[int]) -> ChainMap:
        return ChainMap(self.X, self.Z, self.space.unflatten(vec), validate=False)

    def vector_of(self, f: ChainMap) -> tuple:
        return self.space.flatten(f.mats)

    def class_key(self, f: ChainMap) -> tuple:
        return self.canon(self.vector_of(f))


def _derived_cache(cat: Catalog, name: str) -> dict:
    store = getattr(cat, "_derived_caches", None)
    if store is None:
        store = {}
        setattr(cat, "_derived_caches", store)
    return store.setdefault(name, {})


def hom_class_table(cat: Catalog, x: DerivedClass, z: DerivedClass,
                    cap: int = reps.DEFAULT_CAP, max_exponent: int = 20) -> HomotopyClasses:
    cache = _derived_cache(cat, "hom_tables")
    key = (x, z)
    if key not in cache:
        P = projective_realization(cat, x)
        C = stalk_realization(cat, z)
        cache[key] = HomotopyClasses(P, C, cap=cap, max_exponent=max_exponent)
    return cache[key]


def hom_classes(x: DerivedClass, z: DerivedClass, cat: Catalog,
                cap: int = reps.DEFAULT_CAP, max_exponent: int = 20) -> list:
    """One chain-map representative per derived Hom class x -> z; exactly
    p^(ext_dim(x, z, 0)) of them, pairwise non-homotopic."""
    table = hom_class_table(cat, x, z, cap=cap, max_exponent=max_exponent)
    return [table.lift(v) for v in table.class_vectors()]


def stalk_hom_dim(cat: Catalog, a: int, b: int, k: int,
                  cap: int = reps.DEFAULT_CAP) -> int:
    """dim of derived Hom(A, B[k]) for catalog module classes A, B, computed
    from the chain-map space of the projective realization (no vanishing
    assumptions; out-of-range shifts genuinely solve to zero)."""
    cache = _derived_cache(cat, "stalk_hom")
    key = (a, b, k)
    if key not in cache:
        if cat.rep(a).is_zero() or cat.rep(b).is_zero():
            cache[key] = 0
        else:
            P = projective_realization(cat, DerivedClass.from_module(a))
            C = stalk_realization(cat, DerivedClass.from_module(b).shift(k))
            table = HomotopyClasses(P, C, cap=cap, max_exponent=64)
            cache[key] = table.dim
    return cache[key]


def ext_dim(x: DerivedClass, z: DerivedClass, i: int, cat: Catalog,
            cap: int = reps.DEFAULT_CAP) -> int:
    """dim of derived Hom(x, z[i]); additive over the hereditary summand
    decomposition, each summand pair computed by the honest chain-map solver."""
    total = 0
    for a_deg, a_idx in x.entries:
        for b_deg, b_idx in z.entries:
            total += stalk_hom_dim(cat, a_idx, b_idx, i + a_deg - b_deg, cap=cap)
    return total
