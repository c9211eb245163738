"""The two countable spaces that finite posets cannot model.

``omega-plus-one``: points ``x_0, x_1, ...`` plus ``x_inf``; the nonempty
opens are the tails ``U_j = {x_i : i >= j}`` (``inf`` is above every
integer).  Points are the naturals and the string ``"inf"``.

``graded-kx``: points ``s_i`` for every integer ``i`` plus a generic point
``g``; a set is open iff it avoids ``g``, or contains ``g`` together with
some down-ray ``{s_i : i <= i0}``.  Points are the integers and ``"g"``.

Subsets are described by finite data plus behavior at infinity.  All
boolean operations work by evaluating membership on a window large enough
to contain every finite datum and reading the tails off the descriptors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import UnsupportedDescriptor, UnknownElement
from .poset import FinitePoset, SpectralReport, poset_from_relations, sorted_ids

INF = "inf"
G = "g"


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _int_set(values, what, nonneg=False) -> frozenset:
    out = set()
    for v in values:
        if not _is_int(v) or (nonneg and v < 0):
            raise UnsupportedDescriptor(f"{what} must be {'natural numbers' if nonneg else 'integers'}, got {v!r}")
        out.add(v)
    return frozenset(out)


# -- omega + 1 ---------------------------------------------------------------


@dataclass(frozen=True)
class OmegaSetDescriptor:
    """A subset of omega+1: finitely many naturals, or all but finitely many."""

    mode: str = "finite"
    exceptions: frozenset = frozenset()
    has_infinity: bool = False

    def __post_init__(self):
        if self.mode not in ("finite", "cofinite"):
            raise UnsupportedDescriptor(f"mode must be 'finite' or 'cofinite', got {self.mode!r}")
        object.__setattr__(self, "exceptions", _int_set(self.exceptions, "exceptions", nonneg=True))
        object.__setattr__(self, "has_infinity", bool(self.has_infinity))

    @classmethod
    def of(cls, points: Iterable) -> "OmegaSetDescriptor":
        points = set(points)
        has_inf = INF in points
        points.discard(INF)
        return cls("finite", frozenset(points), has_inf)

    @classmethod
    def whole(cls) -> "OmegaSetDescriptor":
        return cls("cofinite", frozenset(), True)

    @classmethod
    def tail(cls, j: int) -> "OmegaSetDescriptor":
        """The open set U_j."""
        return cls("cofinite", frozenset(range(j)), True)

    @classmethod
    def segment(cls, j: int) -> "OmegaSetDescriptor":
        """The closed initial segment {x_0, ..., x_{j-1}}."""
        return cls("finite", frozenset(range(j)), False)

    @property
    def cofinite(self) -> bool:
        return self.mode == "cofinite"

    def __contains__(self, p) -> bool:
        if p == INF:
            return self.has_infinity
        if not _is_int(p) or p < 0:
            raise UnknownElement(f"{p!r} is not a point of omega+1")
        return (p in self.exceptions) != self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.exceptions and not self.has_infinity

    def naturals_bound(self) -> int:
        """One past every natural mentioned by the descriptor."""
        return max(self.exceptions, default=-1) + 1

    def max_natural(self):
        """Largest natural member, ``None`` if there is none or no largest."""
        if self.cofinite or not self.exceptions:
            return None
        return max(self.exceptions)

    def complement(self) -> "OmegaSetDescriptor":
        return OmegaSetDescriptor(
            "finite" if self.cofinite else "cofinite", self.exceptions, not self.has_infinity
        )

    def _combine(self, other, op) -> "OmegaSetDescriptor":
        n = max(self.naturals_bound(), other.naturals_bound())
        tail = op(self.cofinite, other.cofinite)
        members = [i for i in range(n) if op(i in self, i in other)]
        if tail:
            exc = frozenset(range(n)) - frozenset(members)
        else:
            exc = frozenset(members)
        return OmegaSetDescriptor(
            "cofinite" if tail else "finite", exc, op(self.has_infinity, other.has_infinity)
        )

    def union(self, other) -> "OmegaSetDescriptor":
        return self._combine(other, lambda a, b: a or b)

    def intersection(self, other) -> "OmegaSetDescriptor":
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other) -> "OmegaSetDescriptor":
        return self.intersection(other.complement())

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def issubset(self, other) -> bool:
        return self.difference(other).is_empty()

    def window(self, n: int) -> frozenset:
        """Members among x_0..x_{n-1} and x_inf."""
        out = {i for i in range(n) if i in self}
        if self.has_infinity:
            out.add(INF)
        return frozenset(out)

    def to_json(self) -> dict:
        return {"mode": self.mode, "exceptions": sorted(self.exceptions), "has_infinity": self.has_infinity}

    @classmethod
    def from_json(cls, d: dict) -> "OmegaSetDescriptor":
        try:
            return cls(d["mode"], frozenset(d.get("exceptions", [])), d.get("has_infinity", False))
        except (KeyError, TypeError) as exc:
            raise UnsupportedDescriptor(f"bad omega descriptor {d!r}: {exc}") from None

    def __str__(self):
        nat = sorted(self.exceptions)
        if self.cofinite:
            body = "N" + (f" minus {nat}" if nat else "")
            return body + (" + x_inf" if self.has_infinity else "")
        names = [f"x_{i}" for i in nat] + (["x_inf"] if self.has_infinity else [])
        return "{" + ", ".join(names) + "}"


def omega_is_open(s: OmegaSetDescriptor) -> bool:
    if s.is_empty():
        return True
    if not (s.cofinite and s.has_infinity):
        return False
    j = s.naturals_bound()
    return s.exceptions == frozenset(range(j))


def omega_is_closed(s: OmegaSetDescriptor) -> bool:
    return omega_is_open(s.complement())


def omega_closure(s: OmegaSetDescriptor) -> OmegaSetDescriptor:
    """Smallest closed superset: X, or the initial segment through max(s)."""
    if s.cofinite or s.has_infinity:
        return OmegaSetDescriptor.whole()
    top = s.max_natural()
    if top is None:
        return OmegaSetDescriptor()
    return OmegaSetDescriptor.segment(top + 1)


def omega_limit_points(s: OmegaSetDescriptor) -> OmegaSetDescriptor:
    """x_i is a limit point iff s has a member strictly above it;
    x_inf is one iff s contains infinitely many naturals."""
    if s.cofinite:
        return OmegaSetDescriptor.whole()
    if s.has_infinity:
        return OmegaSetDescriptor("cofinite", frozenset(), False)
    top = s.max_natural()
    if top is None:
        return OmegaSetDescriptor()
    return OmegaSetDescriptor.segment(top)


def omega_open_points(r: OmegaSetDescriptor) -> OmegaSetDescriptor:
    """Points x of r with U_j ∩ r = {x} for some j."""
    if r.cofinite:
        # every tail meets r in infinitely many points
        return OmegaSetDescriptor()
    if r.has_infinity:
        return OmegaSetDescriptor.of([INF])
    top = r.max_natural()
    return OmegaSetDescriptor() if top is None else OmegaSetDescriptor.of([top])


def omega_obstruction_points() -> OmegaSetDescriptor:
    """Points lying in the closure of their own closure minus themselves.

    Only x_inf: closure({x_i}) minus x_i is the closed segment below i,
    while closure({x_inf}) minus x_inf is all naturals, whose closure is X.
    """
    found = set()
    if INF in omega_closure(omega_closure(OmegaSetDescriptor.of([INF])) - OmegaSetDescriptor.of([INF])):
        found.add(INF)
    # every finite point behaves alike; the first few are evaluated as witnesses
    for i in range(8):
        pt = OmegaSetDescriptor.of([i])
        if i in omega_closure(omega_closure(pt) - pt):
            found.add(i)
    return OmegaSetDescriptor.of(found)


def omega_spectral_check(window: int = 32) -> SpectralReport:
    """The five spectral conditions for omega+1.

    The opens are the chain X = U_0 ⊋ U_1 ⊋ ... ⊋ ∅ indexed by the naturals.
    Conditions over all opens are evaluated on U_0..U_window together with
    the structural fact that the index set is well-ordered.
    """
    witnesses = {}
    tails = [OmegaSetDescriptor.tail(j) for j in range(window + 1)]

    kolmogorov = True
    pts = list(range(window)) + [INF]
    for a_pos, a in enumerate(pts):
        for b in pts[a_pos + 1:]:
            # a < b in index order; U_b separates them
            u = OmegaSetDescriptor.tail(b) if b != INF else OmegaSetDescriptor.tail(a + 1)
            if (a in u) == (b in u):
                kolmogorov = False
                witnesses["kolmogorov"] = [a, b]
                break
        if not kolmogorov:
            break

    # Any open cover of a subset uses tails U_j with j in a nonempty set of
    # naturals; that set has a least element whose tail contains all others,
    # so a single member already covers.  Checked on the window: tails nest.
    nested = all(tails[j + 1].issubset(tails[j]) for j in range(window))
    quasi_compact = nested and tails[0] == OmegaSetDescriptor.whole()
    if not quasi_compact:
        witnesses["quasi_compact"] = "tails do not nest"

    qc_intersection = True
    for j in range(window + 1):
        for k in range(j, window + 1):
            if not omega_is_open(tails[j] & tails[k]):
                qc_intersection = False
                witnesses["qc_intersection"] = [j, k]
    qc_basis = nested  # every open is itself quasi-compact

    # closed sets: X and the segments; nonempty ones form a chain, hence are
    # irreducible, with generic points x_inf and x_{j-1}
    sober = omega_closure(OmegaSetDescriptor.of([INF])) == OmegaSetDescriptor.whole()
    for j in range(1, window + 1):
        seg = OmegaSetDescriptor.segment(j)
        if not omega_is_closed(seg) or omega_closure(OmegaSetDescriptor.of([j - 1])) != seg:
            sober = False
            witnesses["sober"] = str(seg)
            break
    if not sober and "sober" not in witnesses:
        witnesses["sober"] = "X"
    return SpectralReport(kolmogorov, quasi_compact, qc_intersection, qc_basis, sober, witnesses)


@dataclass(frozen=True)
class SymbolicStratification:
    """Open-point peeling on an infinite space, reported inside a window.

    ``level`` maps the window points to their level, or ``None`` when the
    point is never peeled at a finite stage.
    """

    level: dict
    space_dim: int | None
    stalled: bool
    layers: tuple = ()
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "level": {str(k): v for k, v in self.level.items()},
            "space_dim": self.space_dim,
            "stalled": self.stalled,
            "layers": [str(layer) for layer in self.layers],
            "note": self.note,
        }


def omega_stratify(window: Iterable[int] = range(4), max_steps: int = 64) -> SymbolicStratification:
    """Peel open points of omega+1.

    No singleton is open in X (every nonempty open is infinite), so the
    first layer is already empty and no point receives a finite level.
    """
    window = sorted(window)
    remaining = OmegaSetDescriptor.whole()
    layers = []
    stalled = False
    for _ in range(max_steps):
        if remaining.is_empty():
            break
        peel = omega_open_points(remaining)
        if peel.is_empty():
            stalled = True
            break
        layers.append(peel)
        remaining = remaining - peel
    else:
        stalled = True

    def level_of(p):
        for lam, layer in enumerate(layers):
            if p in layer:
                return lam
        return None

    level = {i: level_of(i) for i in window}
    level[INF] = level_of(INF)
    note = ""
    if stalled:
        note = (
            "the remaining space has no open point at stage "
            f"{len(layers)}; points not listed in a layer are not reached at any finite level"
        )
    return SymbolicStratification(level, None, stalled, tuple(layers), note)


def truncate_omega(n: int) -> FinitePoset:
    """Subspace {x_0, ..., x_{n-1}, x_inf} with the induced topology.

    The induced specialization order is the chain x_0 < ... < x_{n-1} < x_inf.
    A finite truncation is always T0 with no obstruction points, so it does
    not reproduce the behavior at x_inf.
    """
    if n < 1:
        raise ValueError("truncation needs at least one finite point")
    pts = list(range(n)) + [INF]
    return poset_from_relations(pts, zip(pts, pts[1:]))


# -- graded k[x] -------------------------------------------------------------

_BASES = ("empty", "down_ray", "up_ray", "all_integers")


@dataclass(frozen=True, eq=False)
class GradedSetDescriptor:
    """A subset of the graded k[x] spectrum.

    ``base`` is one of ``empty``, ``down_ray`` (i <= bound), ``up_ray``
    (i >= bound) or ``all_integers``; ``added`` and ``removed`` are finite
    corrections.  Equality is by membership, not by field values.
    """

    base: str = "empty"
    bound: int | None = None
    added: frozenset = frozenset()
    removed: frozenset = frozenset()
    has_g: bool = False

    def __post_init__(self):
        if self.base not in _BASES:
            raise UnsupportedDescriptor(f"unknown base {self.base!r}")
        ray = self.base in ("down_ray", "up_ray")
        if ray and not _is_int(self.bound):
            raise UnsupportedDescriptor(f"{self.base} needs an integer bound")
        if not ray and self.bound is not None:
            raise UnsupportedDescriptor(f"{self.base} takes no bound")
        added = _int_set(self.added, "added")
        removed = _int_set(self.removed, "removed")
        object.__setattr__(self, "added", added)
        object.__setattr__(self, "removed", removed)
        object.__setattr__(self, "has_g", bool(self.has_g))
        if added & removed:
            raise UnsupportedDescriptor("added and removed must be disjoint")
        if any(self._in_base(i) for i in added):
            raise UnsupportedDescriptor("added points must lie outside the base")
        if not all(self._in_base(i) for i in removed):
            raise UnsupportedDescriptor("removed points must lie inside the base")

    def _in_base(self, i: int) -> bool:
        if self.base == "empty":
            return False
        if self.base == "all_integers":
            return True
        if self.base == "down_ray":
            return i <= self.bound
        return i >= self.bound

    @classmethod
    def of(cls, points: Iterable) -> "GradedSetDescriptor":
        points = set(points)
        has_g = G in points
        points.discard(G)
        return cls("empty", None, frozenset(points), frozenset(), has_g)

    @classmethod
    def whole(cls) -> "GradedSetDescriptor":
        return cls("all_integers", has_g=True)

    @classmethod
    def closed_points(cls) -> "GradedSetDescriptor":
        return cls("all_integers")

    @classmethod
    def up_ray(cls, b: int, has_g: bool = False) -> "GradedSetDescriptor":
        return cls("up_ray", b, has_g=has_g)

    @classmethod
    def down_ray(cls, a: int, has_g: bool = False) -> "GradedSetDescriptor":
        return cls("down_ray", a, has_g=has_g)

    # tails: behavior as i -> -inf and i -> +inf
    @property
    def tail_below(self) -> bool:
        return self.base in ("down_ray", "all_integers")

    @property
    def tail_above(self) -> bool:
        return self.base in ("up_ray", "all_integers")

    def unbounded_below(self) -> bool:
        return self.tail_below

    def contains_down_ray(self) -> bool:
        # removed is finite, so a down-ray survives below it
        return self.tail_below

    def _data_range(self) -> tuple[int, int]:
        vals = set(self.added) | set(self.removed)
        if self.bound is not None:
            vals.add(self.bound)
        if not vals:
            return (0, 0)
        return (min(vals), max(vals))

    def __contains__(self, p) -> bool:
        if p == G:
            return self.has_g
        if not _is_int(p):
            raise UnknownElement(f"{p!r} is not a point of the graded k[x] spectrum")
        if p in self.added:
            return True
        if p in self.removed:
            return False
        return self._in_base(p)

    @staticmethod
    def _from_window(below: bool, above: bool, lo: int, hi: int, members, has_g: bool):
        """Canonical descriptor from tails and membership on [lo, hi]."""
        members = frozenset(i for i in members if lo <= i <= hi)
        win = range(lo, hi + 1)
        if not below and not above:
            return GradedSetDescriptor("empty", None, members, frozenset(), has_g)
        if below and above:
            return GradedSetDescriptor("all_integers", None, frozenset(), frozenset(win) - members, has_g)
        if below:
            a = next((i for i in win if i not in members), hi + 1) - 1
            return GradedSetDescriptor("down_ray", a, frozenset(i for i in members if i > a), frozenset(), has_g)
        b = next((i for i in reversed(win) if i not in members), lo - 1) + 1
        return GradedSetDescriptor("up_ray", b, frozenset(i for i in members if i < b), frozenset(), has_g)

    def canonical(self) -> "GradedSetDescriptor":
        lo, hi = self._data_range()
        lo, hi = lo - 1, hi + 1
        return self._from_window(
            self.tail_below, self.tail_above, lo, hi,
            [i for i in range(lo, hi + 1) if i in self], self.has_g,
        )

    def _key(self):
        c = self.canonical()
        return (c.base, c.bound, c.added, c.removed, c.has_g)

    def __eq__(self, other):
        if not isinstance(other, GradedSetDescriptor):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def is_empty(self) -> bool:
        return self == GradedSetDescriptor()

    def _combine(self, other, op) -> "GradedSetDescriptor":
        lo1, hi1 = self._data_range()
        lo2, hi2 = other._data_range()
        lo, hi = min(lo1, lo2) - 1, max(hi1, hi2) + 1
        members = [i for i in range(lo, hi + 1) if op(i in self, i in other)]
        return self._from_window(
            op(self.tail_below, other.tail_below), op(self.tail_above, other.tail_above),
            lo, hi, members, op(self.has_g, other.has_g),
        )

    def union(self, other):
        return self._combine(other, lambda a, b: a or b)

    def intersection(self, other):
        return self._combine(other, lambda a, b: a and b)

    def complement(self) -> "GradedSetDescriptor":
        lo, hi = self._data_range()
        lo, hi = lo - 1, hi + 1
        return self._from_window(
            not self.tail_below, not self.tail_above, lo, hi,
            [i for i in range(lo, hi + 1) if i not in self], not self.has_g,
        )

    def difference(self, other):
        return self.intersection(other.complement())

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def issubset(self, other) -> bool:
        return self.difference(other).is_empty()

    def integer_part(self) -> "GradedSetDescriptor":
        return GradedSetDescriptor(self.base, self.bound, self.added, self.removed, False)

    def window(self, lo: int, hi: int) -> frozenset:
        out = {i for i in range(lo, hi + 1) if i in self}
        if self.has_g:
            out.add(G)
        return frozenset(out)

    def to_json(self) -> dict:
        if self.base in ("down_ray", "up_ray"):
            base = {self.base: self.bound}
        else:
            base = self.base
        return {"base": base, "added": sorted(self.added), "removed": sorted(self.removed), "has_g": self.has_g}

    @classmethod
    def from_json(cls, d: dict) -> "GradedSetDescriptor":
        try:
            base = d.get("base", "empty")
            bound = None
            if isinstance(base, dict):
                if len(base) != 1:
                    raise UnsupportedDescriptor(f"base must have exactly one key, got {base!r}")
                (base, bound), = base.items()
            return cls(base, bound, frozenset(d.get("added", [])), frozenset(d.get("removed", [])), d.get("has_g", False))
        except (AttributeError, TypeError) as exc:
            raise UnsupportedDescriptor(f"bad graded descriptor {d!r}: {exc}") from None

    def __str__(self):
        c = self.canonical()
        parts = []
        if c.base == "all_integers":
            parts.append("all s_i")
        elif c.base == "down_ray":
            parts.append(f"s_i (i <= {c.bound})")
        elif c.base == "up_ray":
            parts.append(f"s_i (i >= {c.bound})")
        if c.added:
            parts.append("{" + ", ".join(f"s_{i}" for i in sorted(c.added)) + "}")
        body = " + ".join(parts) if parts else ""
        if c.removed:
            body += " minus {" + ", ".join(f"s_{i}" for i in sorted(c.removed)) + "}"
        if c.has_g:
            body = (body + " + g") if body else "{g}"
        return body or "{}"

    def __repr__(self):
        return f"GradedSetDescriptor({self})"


def graded_is_open(s: GradedSetDescriptor) -> bool:
    return (not s.has_g) or s.contains_down_ray()


def graded_is_closed(s: GradedSetDescriptor) -> bool:
    return graded_is_open(s.complement())


def graded_closure(s: GradedSetDescriptor) -> GradedSetDescriptor:
    """Closed sets are those containing g, and the g-free sets bounded below."""
    if s.has_g or not s.unbounded_below():
        return s
    return s | GradedSetDescriptor.of([G])


def graded_limit_points(s: GradedSetDescriptor) -> GradedSetDescriptor:
    """Only g can be a limit point, and is one iff s minus g is unbounded below."""
    return GradedSetDescriptor.of([G]) if s.integer_part().unbounded_below() else GradedSetDescriptor()


def graded_open_points(r: GradedSetDescriptor) -> GradedSetDescriptor:
    """Points x of r with some open U satisfying U ∩ r = {x}.

    Each {s_i} is open.  g needs an open U containing g and a down-ray with
    nothing else of r, which exists iff the integers of r are bounded below.
    """
    out = r.integer_part()
    if r.has_g and not r.unbounded_below():
        out = out | GradedSetDescriptor.of([G])
    return out


def graded_stratify(window: tuple[int, int] = (-3, 3), max_steps: int = 64) -> SymbolicStratification:
    lo, hi = window
    remaining = GradedSetDescriptor.whole()
    layers = []
    stalled = False
    for _ in range(max_steps):
        if remaining.is_empty():
            break
        peel = graded_open_points(remaining)
        if peel.is_empty():
            stalled = True
            break
        layers.append(peel)
        remaining = remaining - peel
    else:
        stalled = True

    def level_of(p):
        for lam, layer in enumerate(layers):
            if p in layer:
                return lam
        return None

    level = {i: level_of(i) for i in range(lo, hi + 1)}
    level[G] = level_of(G)
    # every s_i sits in the same layer as the window points by translation symmetry
    dim = None if stalled else len(layers) - 1
    return SymbolicStratification(level, dim, stalled, tuple(layers))


def graded_is_irreducible_closed(f: GradedSetDescriptor) -> bool:
    """A nonempty closed set that is not a union of two proper closed subsets.

    Closed sets are stable under removing any single s_i (containing g, or
    g-free and bounded below, is preserved), so a closed set with a point
    s_i and some other point splits as {s_i} plus the rest.
    """
    if not graded_is_closed(f) or f.is_empty():
        return False
    ints = f.integer_part()
    if ints.is_empty():
        return True  # {g}
    lo, hi = ints._data_range()
    p = next((i for i in range(lo - 1, hi + 2) if i in ints), None)
    rest = f - GradedSetDescriptor.of([p])
    if rest.is_empty():
        return True
    single = GradedSetDescriptor.of([p])
    return not (graded_is_closed(single) and graded_is_closed(rest))


def graded_chain_dimension(window: tuple[int, int] = (-3, 3)) -> int:
    """Longest chain of irreducible closed sets.

    Every point closure is the point itself, and irreducible closed sets are
    exactly point closures, so no strict chain has length above 0.  The
    window points and g are checked explicitly.
    """
    lo, hi = window
    pts = list(range(lo, hi + 1)) + [G]
    closures = [graded_closure(GradedSetDescriptor.of([p])) for p in pts]
    longest = 0
    for a in closures:
        if not graded_is_irreducible_closed(a):
            raise AssertionError(f"point closure {a} is not irreducible")
        for b in closures:
            if a != b and a.issubset(b):
                longest = 1
    return longest


def truncate_graded(lo: int, hi: int) -> FinitePoset:
    """Finite model on s_lo..s_hi and g.

    Open sets are evaluated with the window standing in for the whole
    integer line: a set containing g is open iff it contains a nonempty
    initial run s_lo, ..., s_i0.  That makes g <= s_lo the only relation.
    """
    if lo > hi:
        raise ValueError("need lo <= hi")
    pts = list(range(lo, hi + 1)) + [G]
    return poset_from_relations(pts, [(G, lo)])


def point_label(p) -> str:
    if p == INF:
        return "x_inf"
    if p == G:
        return "g"
    return str(p)


def describe(points) -> list:
    return sorted_ids(points)
