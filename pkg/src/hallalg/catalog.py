"""The bounded universe of isomorphism classes of quiver representations.

A Catalog holds one canonical representative per isomorphism class with
dimension vector <= a componentwise bound.  Enumeration is an exhaustive
orbit scan over all arrow-matrix tuples per dimension vector, deduplicated
by explicit isomorphism testing; the canonical representative is the
lexicographically least matrix tuple in its orbit (the first one seen, since
candidates are generated in lexicographic order).

Hom dimensions, Ext^1 dimensions, automorphism data and Hom-fingerprints are
cached lazily, so large classes whose automorphism groups are never consumed
cost nothing.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

from .errors import EnumerationCapError, InputError, OutOfUniverseError
from .fq import FqMatrix, check_prime
from .quivers import Quiver
from . import reps
from .reps import Representation


def _all_matrices(p: int, rows: int, cols: int) -> list:
    return [
        FqMatrix(p, rows, cols, data)
        for data in itertools.product(range(p), repeat=rows * cols)
    ]


@dataclass(frozen=True)
class IsoClassId:
    """Stable identifier of a catalog class."""

    index: int
    dim_vector: tuple
    fingerprint: tuple  # dim Hom(I, -) over the catalog indecomposables

    @property
    def name(self) -> str:
        return f"c{self.index}"


@dataclass
class CatalogEntry:
    index: int
    rep: Representation
    indecomposable: bool = False

    @property
    def dims(self) -> tuple:
        return self.rep.dims


class Catalog:
    """All iso classes with dim vector <= bound, with cached invariants."""

    def __init__(self, quiver: Quiver, p: int, bound: Sequence[int],
                 entries: Sequence[CatalogEntry], cap: int):
        self.quiver = quiver
        self.p = p
        self.bound = tuple(bound)
        self.entries = list(entries)
        self.cap = cap
        self._by_dims: dict = {}
        for e in self.entries:
            self._by_dims.setdefault(e.dims, []).append(e.index)
        self._hom_dim: dict = {}
        self._ext1: dict = {}
        self._aut_order: dict = {}
        self._fingerprint: dict = {}
        self._classify_memo: dict = {}
        self._sum_memo: dict = {}
        self._mark_indecomposables()

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, quiver: Quiver, p: int, bound: Sequence[int],
              cap: int = reps.DEFAULT_CAP) -> "Catalog":
        check_prime(p)
        bound = tuple(bound)
        if len(bound) != quiver.vertex_count:
            raise InputError("bound length != vertex count")
        if any(b < 0 for b in bound):
            raise InputError("bound must be componentwise >= 0")

        entries: list = []
        dim_vectors = sorted(
            itertools.product(*(range(b + 1) for b in bound)),
            key=lambda d: (sum(d), d),
        )
        for dims in dim_vectors:
            found: list = []
            total_candidates = 1
            shapes = [(dims[t], dims[s]) for s, t in quiver.arrows]
            for r, c in shapes:
                total_candidates *= p ** (r * c)
                if total_candidates > cap:
                    raise EnumerationCapError(
                        f"{total_candidates}+ arrow-matrix tuples at dims "
                        f"{dims} exceed cap {cap}"
                    )
            entry_iters = [_all_matrices(p, r, c) for r, c in shapes]
            for mats in itertools.product(*entry_iters) if shapes else [()]:
                cand = Representation(quiver, p, dims, mats)
                if any(reps.is_isomorphic(cand, prev, cap=cap) for prev in found):
                    continue
                found.append(cand)
            for cand in found:
                entries.append(CatalogEntry(len(entries), cand))
        return cls(quiver, p, bound, entries, cap)

    def _mark_indecomposables(self) -> None:
        nonzero = [e for e in self.entries if not e.rep.is_zero()]
        for e in self.entries:
            if e.rep.is_zero():
                e.indecomposable = False
                continue
            decomposable = False
            for a in nonzero:
                if decomposable:
                    break
                for b in nonzero:
                    if a.index > b.index:
                        continue
                    dims = tuple(x + y for x, y in zip(a.dims, b.dims))
                    if dims != e.dims:
                        continue
                    if reps.is_isomorphic(
                        reps.direct_sum(a.rep, b.rep), e.rep, cap=self.cap
                    ):
                        decomposable = True
                        break
            e.indecomposable = not decomposable

    # -- lookups -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.entries)

    def rep(self, index: int) -> Representation:
        return self.entries[index].rep

    def dims(self, index: int) -> tuple:
        return self.entries[index].dims

    @property
    def zero_index(self) -> int:
        return self._by_dims[(0,) * self.quiver.vertex_count][0]

    def classes_with_dims(self, dims: tuple) -> list:
        return list(self._by_dims.get(tuple(dims), []))

    @property
    def indecomposable_indices(self) -> list:
        return [e.index for e in self.entries if e.indecomposable]

    def class_id(self, index: int) -> IsoClassId:
        e = self.entries[index]
        return IsoClassId(index, e.dims, self.fingerprint_of_entry(index))

    def name(self, index: int) -> str:
        return f"c{index}"

    def index_of_name(self, name: str) -> int:
        if not name.startswith("c"):
            raise InputError(f"bad class name {name!r}")
        try:
            idx = int(name[1:])
        except ValueError as exc:
            raise InputError(f"bad class name {name!r}") from exc
        if not 0 <= idx < len(self.entries):
            raise InputError(f"unknown class {name!r}")
        return idx

    # -- cached invariants ----------------------------------------------------

    def hom_dim(self, x: int, y: int) -> int:
        key = (x, y)
        if key not in self._hom_dim:
            self._hom_dim[key] = reps.hom_dim(self.rep(x), self.rep(y))
        return self._hom_dim[key]

    def ext1_dim(self, x: int, y: int) -> int:
        key = (x, y)
        if key not in self._ext1:
            self._ext1[key] = reps.ext1_dim(self.rep(x), self.rep(y))
        return self._ext1[key]

    def aut_order(self, index: int) -> int:
        if index not in self._aut_order:
            self._aut_order[index] = reps.aut_order(self.rep(index))
        return self._aut_order[index]

    def fingerprint_of_entry(self, index: int) -> tuple:
        if index not in self._fingerprint:
            self._fingerprint[index] = tuple(
                self.hom_dim(i, index) for i in self.indecomposable_indices
            )
        return self._fingerprint[index]

    def fingerprint(self, rep: Representation) -> tuple:
        """Hom-fingerprint of an arbitrary representation against the
        catalog indecomposables."""
        return tuple(
            reps.hom_dim(self.rep(i), rep) for i in self.indecomposable_indices
        )

    def direct_sum_index(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        if key not in self._sum_memo:
            self._sum_memo[key] = self.classify(
                reps.direct_sum(self.rep(key[0]), self.rep(key[1]))
            )
        return self._sum_memo[key]

    # -- classification ---------------------------------------------------------

    def classify(self, rep: Representation) -> int:
        """Catalog index of the class of rep.

        Dimension-vector filter, Hom-fingerprint filter, then an invertible
        intertwiner search against the remaining candidate confirms.
        """
        if rep.quiver != self.quiver or rep.p != self.p:
            raise InputError("representation not over this catalog's quiver")
        memo_key = rep.key()
        hit = self._classify_memo.get(memo_key)
        if hit is not None:
            return hit
        if any(d > b for d, b in zip(rep.dims, self.bound)):
            raise OutOfUniverseError(
                f"dimension vector {rep.dims} exceeds catalog bound {self.bound}"
            )
        candidates = self._by_dims.get(rep.dims, [])
        fp = self.fingerprint(rep)
        narrowed = [i for i in candidates if self.fingerprint_of_entry(i) == fp]
        for i in narrowed:
            if reps.is_isomorphic(rep, self.rep(i), cap=self.cap):
                self._classify_memo[memo_key] = i
                return i
        raise OutOfUniverseError(
            f"no catalog class matches dims {rep.dims} (universe inconsistency)"
        )

    # -- export ----------------------------------------------------------------

    def export_json_dict(self) -> dict:
        return {
            "schema": 1,
            "modulus": self.p,
            "bound": list(self.bound),
            "classes": [
                {
                    "id": self.name(e.index),
                    "dim_vector": list(e.dims),
                    "aut_order": self.aut_order(e.index),
                    "indecomposable": e.indecomposable,
                }
                for e in self.entries
            ],
        }

    def export_json(self) -> str:
        return json.dumps(self.export_json_dict(), sort_keys=True, indent=2)


def catalog_build(quiver: Quiver, p: int, bound: Sequence[int],
                  cap: int = reps.DEFAULT_CAP) -> Catalog:
    """Build the full bounded catalog; see Catalog.build."""
    return Catalog.build(quiver, p, bound, cap=cap)
