"""Finite Kolmogorov spaces as posets under the specialization order.

Orientation used throughout: ``a <= b`` means ``a`` lies in the closure of
``{b}``.  Open sets are the up-closed sets, closed sets the down-closed
sets, so maximal elements are the open points.  For a poset read as
``(Spec R, ⊆)`` this makes the opens the specialization-closed sets.

Subsets cross the API as ``frozenset`` of identifiers; internally every
subset is a bitmask over the element order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator

from .errors import CycleError, SizeCapExceeded, UnknownElement

DEFAULT_SIZE_CAP = 20


def id_key(x):
    """Sort key that orders numbers numerically and everything else by str."""
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return (0, x, "")
    return (1, 0, str(x))


def subset_key(s) -> tuple:
    """Deterministic order on subsets: size first, then lexicographic."""
    return (len(s), tuple(sorted((id_key(x) for x in s))))


def sorted_ids(s) -> list:
    return sorted(s, key=id_key)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A finite poset; construct through :func:`poset_from_relations`.

    ``le`` must already be a partial order (reflexive, antisymmetric and
    transitive).  Instances are immutable and hashable by value.
    """

    __slots__ = ("_elements", "_index", "_down", "_up", "_hash")

    def __init__(self, elements: Iterable[Hashable], le: Iterable[tuple]):
        elements = tuple(elements)
        index = {}
        for i, x in enumerate(elements):
            if x in index:
                raise ValueError(f"duplicate element {x!r}")
            index[x] = i
        n = len(elements)
        down = [1 << i for i in range(n)]
        for a, b in le:
            if a not in index:
                raise UnknownElement(f"unknown element {a!r}")
            if b not in index:
                raise UnknownElement(f"unknown element {b!r}")
            down[index[b]] |= 1 << index[a]
        for j in range(n):
            for i in _bits(down[j]):
                if down[i] & ~down[j]:
                    raise ValueError(
                        f"relation is not transitive at {elements[i]!r} <= {elements[j]!r}"
                    )
                if i != j and down[i] >> j & 1:
                    raise CycleError(
                        f"{elements[i]!r} and {elements[j]!r} are mutually related"
                    )
        up = [0] * n
        for j in range(n):
            for i in _bits(down[j]):
                up[i] |= 1 << j
        self._elements = elements
        self._index = index
        self._down = tuple(down)
        self._up = tuple(up)
        self._hash = None

    # -- basic structure -------------------------------------------------

    @property
    def elements(self) -> tuple:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def le(self, a, b) -> bool:
        """True when ``a`` lies in the closure of ``{b}``."""
        return bool(self._down[self._idx(b)] >> self._idx(a) & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.le(a, b)

    def relations(self) -> list[tuple]:
        """All strict pairs ``(a, b)`` with ``a < b``, deterministically sorted."""
        out = []
        for j, b in enumerate(self._elements):
            for i in _bits(self._down[j] & ~(1 << j)):
                out.append((self._elements[i], b))
        return sorted(out, key=lambda p: (id_key(p[0]), id_key(p[1])))

    def cover_relations(self) -> list[tuple]:
        """Pairs ``a < b`` with nothing strictly between them."""
        out = []
        for a, b in self.relations():
            ia, ib = self._index[a], self._index[b]
            between = self._up[ia] & self._down[ib] & ~(1 << ia) & ~(1 << ib)
            if not between:
                out.append((a, b))
        return out

    def _idx(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(f"{x!r} is not a point of this space") from None

    def mask(self, s: Iterable) -> int:
        m = 0
        for x in s:
            m |= 1 << self._idx(x)
        return m

    def subset(self, mask: int) -> frozenset:
        return frozenset(self._elements[i] for i in _bits(mask))

    @property
    def full_mask(self) -> int:
        return (1 << len(self._elements)) - 1

    def down_mask(self, x) -> int:
        return self._down[self._idx(x)]

    def up_mask(self, x) -> int:
        return self._up[self._idx(x)]

    # mask-level primitives shared by the module functions

    def _closure_mask(self, m: int) -> int:
        out = 0
        for i in _bits(m):
            out |= self._down[i]
        return out

    def _upset_mask(self, m: int) -> int:
        out = 0
        for i in _bits(m):
            out |= self._up[i]
        return out

    def _interior_mask(self, m: int) -> int:
        out = 0
        for i in _bits(m):
            if self._up[i] & ~m == 0:
                out |= 1 << i
        return out

    def _limit_mask(self, m: int) -> int:
        out = 0
        for i in _bits(m):
            out |= self._down[i] & ~(1 << i)
        return out

    def _open_points_mask(self, m: int) -> int:
        """Points of ``m`` that are open in the subspace ``m`` (its maximal elements)."""
        out = 0
        for i in _bits(m):
            if self._up[i] & m == 1 << i:
                out |= 1 << i
        return out

    # -- value semantics -------------------------------------------------

    def _key(self):
        return (frozenset(self._elements), frozenset(self.relations()))

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"FinitePoset({list(self._elements)!r}, le={self.cover_relations()!r})"

    def to_json(self) -> dict:
        return {
            "elements": list(self._elements),
            "le": [list(p) for p in self.cover_relations()],
        }

    def opposite(self) -> "FinitePoset":
        return FinitePoset(self._elements, [(b, a) for a, b in self.relations()])

    def restrict(self, points: Iterable) -> "FinitePoset":
        """The induced subposet, which is also the subspace topology."""
        keep = set(points)
        for x in keep:
            self._idx(x)
        elems = [x for x in self._elements if x in keep]
        return FinitePoset(elems, [(a, b) for a, b in self.relations() if a in keep and b in keep])

    def topology(self, size_cap: int = DEFAULT_SIZE_CAP) -> "FiniteTopology":
        return FiniteTopology(self._elements, enumerate_opens(self, size_cap=size_cap))


def poset_from_relations(elements: Iterable[Hashable], le_pairs: Iterable[tuple]) -> FinitePoset:
    """Build the poset generated by ``le_pairs`` (reflexive-transitive closure).

    Raises :class:`CycleError` if two distinct elements end up below each
    other, :class:`UnknownElement` if a pair mentions a missing identifier.
    """
    elements = list(elements)
    if len(set(elements)) != len(elements):
        raise ValueError("element identifiers must be unique")
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    down = [1 << i for i in range(n)]
    for a, b in le_pairs:
        for x in (a, b):
            if x not in index:
                raise UnknownElement(f"relation references unknown element {x!r}")
        down[index[b]] |= 1 << index[a]
    # Warshall on bitmasks
    for k in range(n):
        bit = 1 << k
        dk = down[k]
        for j in range(n):
            if down[j] & bit:
                down[j] |= dk
    for j in range(n):
        for i in _bits(down[j] & ~(1 << j)):
            if down[i] >> j & 1:
                raise CycleError(
                    f"{elements[i]!r} and {elements[j]!r} lie below each other"
                )
    pairs = [(elements[i], elements[j]) for j in range(n) for i in _bits(down[j])]
    return FinitePoset(elements, pairs)


def chain(*names) -> FinitePoset:
    """Total order ``names[0] < names[1] < ...``."""
    return poset_from_relations(names, zip(names, names[1:]))


def antichain(*names) -> FinitePoset:
    return poset_from_relations(names, [])


# -- topology --------------------------------------------------------------


def closure(space: FinitePoset, s: Iterable) -> frozenset:
    """Down-closure of ``s``: the smallest closed set containing it."""
    return space.subset(space._closure_mask(space.mask(s)))


def is_open(space: FinitePoset, s: Iterable) -> bool:
    m = space.mask(s)
    return space._upset_mask(m) == m


def is_closed(space: FinitePoset, s: Iterable) -> bool:
    m = space.mask(s)
    return space._closure_mask(m) == m


def interior(space: FinitePoset, s: Iterable) -> frozenset:
    """Largest open (up-closed) subset of ``s``."""
    return space.subset(space._interior_mask(space.mask(s)))


def open_points(space: FinitePoset, s: Iterable) -> frozenset:
    """Points ``x`` of ``s`` such that ``{x}`` is open in the subspace ``s``."""
    return space.subset(space._open_points_mask(space.mask(s)))


def _check_cap(space, size_cap):
    if size_cap is not None and len(space) > size_cap:
        raise SizeCapExceeded(
            f"enumeration over {len(space)} points exceeds size cap {size_cap}"
        )


def _upset_masks(space: FinitePoset) -> list[int]:
    # decide points from the top down, so everything above x is settled first
    order = sorted(range(len(space)), key=lambda i: bin(space._up[i]).count("1"))
    out = []

    def rec(k, chosen):
        if k == len(order):
            out.append(chosen)
            return
        i = order[k]
        rec(k + 1, chosen)
        strict_up = space._up[i] & ~(1 << i)
        if strict_up & ~chosen == 0:
            rec(k + 1, chosen | 1 << i)

    rec(0, 0)
    return out


def enumerate_opens(space: FinitePoset, size_cap: int | None = DEFAULT_SIZE_CAP) -> list[frozenset]:
    """All open subsets, ordered by size and then lexicographically."""
    _check_cap(space, size_cap)
    return sorted((space.subset(m) for m in _upset_masks(space)), key=subset_key)


def enumerate_closed(space: FinitePoset, size_cap: int | None = DEFAULT_SIZE_CAP) -> list[frozenset]:
    _check_cap(space, size_cap)
    full = space.full_mask
    return sorted((space.subset(full & ~m) for m in _upset_masks(space)), key=subset_key)


def limit_points(space: FinitePoset, s: Iterable) -> frozenset:
    """Points lying in the closure of ``s`` minus themselves.

    On a finite poset this is the set of points strictly below some member.
    """
    return space.subset(space._limit_mask(space.mask(s)))


def limit_iterate(space: FinitePoset, s: Iterable, i: int) -> frozenset:
    if i < 0:
        raise ValueError("iteration count must be non-negative")
    m = space.mask(s)
    for _ in range(i):
        nxt = space._limit_mask(m)
        if nxt == m:
            break
        m = nxt
    return space.subset(m)


@dataclass(frozen=True)
class StratificationReport:
    """KG-style layers: ``level[x]`` is the least ``λ`` with ``x ∈ X_λ``."""

    level: dict
    space_dim: int | None
    layers: tuple = ()

    def to_dict(self) -> dict:
        return {
            "level": {str(k): v for k, v in sorted(self.level.items(), key=lambda kv: id_key(kv[0]))},
            "space_dim": self.space_dim,
            "layers": [sorted_ids(layer) for layer in self.layers],
        }


def stratify(space: FinitePoset) -> StratificationReport:
    """Peel open points of the remaining subspace until nothing is left."""
    remaining = space.full_mask
    level = {}
    layers = []
    lam = 0
    while remaining:
        peel = space._open_points_mask(remaining)
        # a nonempty finite poset always has a maximal element
        assert peel, "finite space failed to stratify"
        layer = space.subset(peel)
        for x in layer:
            level[x] = lam
        layers.append(layer)
        remaining &= ~peel
        lam += 1
    return StratificationReport(level, lam - 1 if lam else None, tuple(layers))


def chain_dimension(space: FinitePoset) -> int | None:
    """Length of the longest chain of irreducible closed subsets.

    Irreducible closed sets of a finite T0 space are the point closures,
    so this is the length of the longest chain in the order.
    """
    if not len(space):
        return None
    height = {}
    for i in sorted(range(len(space)), key=lambda i: bin(space._down[i]).count("1")):
        below = space._down[i] & ~(1 << i)
        height[i] = max((height[j] + 1 for j in _bits(below)), default=0)
    return max(height.values())


def obstruction_points(space: FinitePoset) -> frozenset:
    """Points that are limit points of their own closure."""
    out = 0
    for i in range(len(space)):
        strict = space._down[i] & ~(1 << i)
        if space._closure_mask(strict) >> i & 1:
            out |= 1 << i
    return space.subset(out)


def hochster_dual(space: FinitePoset) -> FinitePoset:
    """Order-opposite poset: quasi-compact opens of ``space`` become its closed basis."""
    return space.opposite()


# -- raw finite topologies ---------------------------------------------------


class FiniteTopology:
    """A finite space given by its list of open sets.

    Exists so that spectral checks can be run on spaces that are not T0
    (those have no poset representation).
    """

    def __init__(self, points: Iterable, opens: Iterable[Iterable]):
        self.points = frozenset(points)
        opens = {frozenset(u) for u in opens}
        for u in opens:
            if not u <= self.points:
                raise UnknownElement(f"open set {set(u)!r} has points outside the space")
        if frozenset() not in opens or self.points not in opens:
            raise ValueError("a topology must contain the empty set and the whole space")
        for u, v in itertools.combinations(opens, 2):
            if u | v not in opens or u & v not in opens:
                raise ValueError("open sets are not closed under finite unions and intersections")
        self.opens = sorted(opens, key=subset_key)

    @property
    def closed_sets(self) -> list[frozenset]:
        return sorted((self.points - u for u in self.opens), key=subset_key)

    def closure(self, s) -> frozenset:
        s = frozenset(s)
        out = self.points
        for f in self.closed_sets:
            if s <= f:
                out &= f
        return out

    def limit_points(self, s) -> frozenset:
        s = frozenset(s)
        return frozenset(x for x in self.points if x in self.closure(s - {x}))

    def is_quasi_compact(self, s) -> bool:
        # Any open cover of a finite space uses finitely many distinct opens,
        # so a finite subcover always exists; evaluated literally here by
        # checking that the union of all opens meeting s covers it.
        s = frozenset(s)
        cover = frozenset().union(*(u for u in self.opens if u & s)) if s else frozenset()
        return s <= cover

    def specialization_poset(self) -> FinitePoset:
        pairs = [(a, b) for a in self.points for b in self.points if a in self.closure({b})]
        return poset_from_relations(sorted_ids(self.points), pairs)


@dataclass(frozen=True)
class SpectralReport:
    kolmogorov: bool
    quasi_compact: bool
    qc_intersection: bool
    qc_basis: bool
    sober: bool
    witnesses: dict = field(default_factory=dict)

    FLAGS = ("kolmogorov", "quasi_compact", "qc_intersection", "qc_basis", "sober")

    @property
    def is_spectral(self) -> bool:
        return all(getattr(self, f) for f in self.FLAGS)

    def to_dict(self) -> dict:
        d = {f: getattr(self, f) for f in self.FLAGS}
        d["spectral"] = self.is_spectral
        d["witnesses"] = {k: _jsonable(v) for k, v in self.witnesses.items()}
        return d


def _jsonable(v):
    if isinstance(v, (set, frozenset)):
        return sorted_ids(_jsonable(x) for x in v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _is_irreducible(top: FiniteTopology, f: frozenset) -> bool:
    if not f:
        return False
    proper = [g for g in top.closed_sets if g < f]
    for g, h in itertools.combinations_with_replacement(proper, 2):
        if g | h == f:
            return False
    return True


def spectral_check(space, size_cap: int | None = DEFAULT_SIZE_CAP) -> SpectralReport:
    """Evaluate the five spectral-space conditions on a finite space."""
    top = space if isinstance(space, FiniteTopology) else space.topology(size_cap=size_cap)
    witnesses = {}

    kolmogorov = True
    for a, b in itertools.combinations(sorted_ids(top.points), 2):
        if not any((a in u) != (b in u) for u in top.opens):
            kolmogorov = False
            witnesses["kolmogorov"] = [a, b]
            break

    quasi_compact = top.is_quasi_compact(top.points)
    if not quasi_compact:
        witnesses["quasi_compact"] = sorted_ids(top.points)

    qc_opens = [u for u in top.opens if top.is_quasi_compact(u)]
    qc_set = set(qc_opens)
    qc_intersection = True
    for u, v in itertools.combinations(qc_opens, 2):
        if u & v not in qc_set:
            qc_intersection = False
            witnesses["qc_intersection"] = [u, v]
            break

    qc_basis = True
    for u in top.opens:
        for x in sorted_ids(u):
            if not any(x in v and v <= u for v in qc_opens):
                qc_basis = False
                witnesses["qc_basis"] = {"open": u, "point": x}
                break
        if not qc_basis:
            break

    sober = True
    for f in top.closed_sets:
        if _is_irreducible(top, f) and not any(top.closure({x}) == f for x in f):
            sober = False
            witnesses["sober"] = f
            break

    return SpectralReport(kolmogorov, quasi_compact, qc_intersection, qc_basis, sober, witnesses)
