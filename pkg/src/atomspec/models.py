"""Atomic models: an atom set, its topology and Ext tables between atoms.

Every builder records only what is known about its family.  Entries the
family leaves symbolic (diagonal Ext of a local ring, for instance) are
stored as ``unknown`` and any attempt to use them in a vanishing test
raises :class:`~atomspec.errors.UnknownExtRead`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import poset as P
from . import symbolic as S
from .errors import NonConstantUnsupported, ParseError, UnknownElement, UnknownExtRead
from .poset import FinitePoset, poset_from_relations


@dataclass(frozen=True)
class ExtEntry:
    """One Ext^i(alpha, beta) value.

    ``kind`` is ``"dim"`` (a known positive dimension), ``"nonzero"``
    (nonzero, dimension not recorded), ``"zero"`` or ``"unknown"``.
    """

    kind: str
    dim: int | None = None
    eventually_constant: bool = True

    def __post_init__(self):
        if self.kind not in ("dim", "nonzero", "zero", "unknown"):
            raise ValueError(f"bad Ext entry kind {self.kind!r}")
        if self.kind == "dim" and (not isinstance(self.dim, int) or self.dim <= 0):
            raise ValueError("a 'dim' entry needs a positive dimension; use zero() for 0")

    @classmethod
    def of_dim(cls, n: int, eventually_constant: bool = True) -> "ExtEntry":
        if n == 0:
            return cls("zero", None, eventually_constant)
        return cls("dim", n, eventually_constant)

    @classmethod
    def zero(cls, eventually_constant: bool = True) -> "ExtEntry":
        return cls("zero", None, eventually_constant)

    @classmethod
    def nonzero(cls, eventually_constant: bool = True) -> "ExtEntry":
        return cls("nonzero", None, eventually_constant)

    @classmethod
    def unknown(cls, eventually_constant: bool = True) -> "ExtEntry":
        return cls("unknown", None, eventually_constant)

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def to_json(self):
        if self.kind == "dim":
            return self.dim
        if self.kind == "zero":
            return 0
        return self.kind


ZERO = ExtEntry.zero()
ONE = ExtEntry.of_dim(1)


@dataclass(frozen=True)
class QuiverPresentation:
    """A quiver without relations; arrows are ``(source, target, multiplicity)``."""

    vertices: tuple
    arrows: tuple = ()

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex")
        arrows = []
        for a in self.arrows:
            src, dst, *rest = a
            mult = rest[0] if rest else 1
            for v in (src, dst):
                if v not in verts:
                    raise UnknownElement(f"arrow endpoint {v!r} is not a declared vertex")
            if not isinstance(mult, int) or mult < 1:
                raise ValueError(f"arrow multiplicity must be a positive integer, got {mult!r}")
            arrows.append((src, dst, mult))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", tuple(arrows))

    def arrow_count(self, i, j) -> int:
        return sum(m for s, t, m in self.arrows if s == i and t == j)

    def adjacency(self) -> dict:
        out = {}
        for s, t, m in self.arrows:
            out[(s, t)] = out.get((s, t), 0) + m
        return out

    @property
    def num_arrows(self) -> int:
        return sum(m for _, _, m in self.arrows)

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {s} {t}" + (f" {m}" if m != 1 else "") for s, t, m in self.arrows]
        return "\n".join(lines) + "\n"


def parse_quiver(text: str, source: str | None = None) -> QuiverPresentation:
    """Parse ``vertex <id>`` / ``arrow <src> <dst> [multiplicity]`` lines.

    Blank lines and ``#`` comments are ignored.
    """
    vertices = []
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = line.split()
        if not toks:
            continue
        col = raw.index(toks[0]) + 1
        kw = toks[0]
        if kw == "vertex":
            if len(toks) != 2:
                raise ParseError("expected 'vertex <id>'", lineno, col, source)
            if toks[1] in vertices:
                raise ParseError(f"duplicate vertex {toks[1]!r}", lineno, raw.index(toks[1], col) + 1, source)
            vertices.append(toks[1])
        elif kw == "arrow":
            if len(toks) not in (3, 4):
                raise ParseError("expected 'arrow <src> <dst> [multiplicity]'", lineno, col, source)
            mult = 1
            if len(toks) == 4:
                try:
                    mult = int(toks[3])
                except ValueError:
                    mult = 0
                if mult < 1:
                    raise ParseError(
                        f"multiplicity must be a positive integer, got {toks[3]!r}",
                        lineno, raw.rindex(toks[3]) + 1, source,
                    )
            arrows.append((toks[1], toks[2], mult, lineno, raw))
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, col, source)
    declared = set(vertices)
    out = []
    for src, dst, mult, lineno, raw in arrows:
        for v in (src, dst):
            if v not in declared:
                raise ParseError(f"undeclared vertex {v!r}", lineno, raw.index(v, raw.index("arrow") + 5) + 1, source)
        out.append((src, dst, mult))
    return QuiverPresentation(tuple(vertices), tuple(out))


class AtomicModel:
    """Base class; see :class:`FiniteAtomicModel` and :class:`GradedKxModel`."""

    def ext(self, i: int, a, b) -> ExtEntry:
        raise NotImplementedError

    def ext_nonzero(self, i: int, a, b, need_constant: bool = False) -> bool:
        """Vanishing test used by every engine; never reads ``unknown`` silently."""
        e = self.ext(i, a, b)
        if need_constant and not e.eventually_constant:
            raise NonConstantUnsupported(f"Ext^{i}({a!r}, {b!r}) is not known to be eventually constant")
        if e.is_unknown:
            raise UnknownExtRead(i, a, b)
        return e.kind != "zero"

    def _degree0(self, a, b) -> ExtEntry:
        # Hom between distinct atoms vanishes; the diagonal is the residue skew field
        return ONE if a == b else ZERO


@dataclass(frozen=True, eq=False)
class FiniteAtomicModel(AtomicModel):
    """Finitely many atoms on a poset-backed space.

    ``table`` holds explicit entries for degrees >= 1; anything missing is
    resolved by ``fallback`` (one of ``"zero"``, ``"unknown"``,
    ``"unknown-diagonal"``).
    """

    family: str
    space: FinitePoset
    table: dict = field(default_factory=dict)
    hereditary: bool = False
    fallback: str = "zero"
    source: object = None
    name: str = ""
    copies: dict = field(default_factory=dict)

    finite = True

    @property
    def atoms(self) -> tuple:
        return self.space.elements

    def _check(self, a):
        if a not in self.space:
            raise UnknownElement(f"{a!r} is not an atom of this model")

    def ext(self, i: int, a, b) -> ExtEntry:
        if i < 0:
            raise ValueError("degree must be non-negative")
        self._check(a)
        self._check(b)
        if i == 0:
            return self._degree0(a, b)
        if i >= 2 and self.hereditary:
            return ZERO
        entry = self.table.get((i, a, b))
        if entry is not None:
            return entry
        if self.fallback == "zero":
            return ZERO
        if self.fallback == "unknown":
            return ExtEntry.unknown()
        if self.fallback == "unknown-diagonal":
            return ExtEntry.unknown() if a == b else ZERO
        raise ValueError(f"bad fallback {self.fallback!r}")

    def candidates(self, i: int, a) -> tuple:
        return self.atoms

    def sample_atoms(self, window=None) -> tuple:
        return self.atoms

    # topology hooks used by the classification engine
    def is_open(self, s) -> bool:
        return P.is_open(self.space, s)

    def limit_points(self, s) -> frozenset:
        return P.limit_points(self.space, s)

    def as_set(self, atoms) -> frozenset:
        return frozenset(atoms)

    def kgdim(self) -> int:
        dim = P.stratify(self.space).space_dim
        return 0 if dim is None else dim

    def ext1_matrix(self) -> dict:
        return {(a, b): self.ext(1, a, b).to_json() for a in self.atoms for b in self.atoms}

    def __repr__(self):
        return f"FiniteAtomicModel({self.family!r}, atoms={list(self.atoms)!r})"


class GradedKxModel(AtomicModel):
    """Atoms s_i (i in Z) and g with Ext^1(s_i, s_{i-1}) = k and all other Ext^1 zero.

    The category is hereditary, so Ext in degree >= 2 vanishes.
    """

    family = "graded-kx"
    hereditary = True
    finite = False
    name = "graded-kx"

    def _check(self, a):
        if a != S.G and not S._is_int(a):
            raise UnknownElement(f"{a!r} is not an atom of the graded k[x] model")

    def ext(self, i: int, a, b) -> ExtEntry:
        if i < 0:
            raise ValueError("degree must be non-negative")
        self._check(a)
        self._check(b)
        if i == 0:
            return self._degree0(a, b)
        if i >= 2:
            return ZERO
        if a != S.G and b != S.G and b == a - 1:
            return ONE
        return ZERO

    def candidates(self, i: int, a) -> tuple:
        """Every atom b with Ext^i(a, b) possibly nonzero."""
        self._check(a)
        if i == 0:
            return (a,)
        if i == 1 and a != S.G:
            return (a - 1,)
        return ()

    def sample_atoms(self, window=(-3, 3)) -> tuple:
        lo, hi = window
        return tuple(range(lo, hi + 1)) + (S.G,)

    def is_open(self, s) -> bool:
        return S.graded_is_open(self.as_set(s))

    def limit_points(self, s) -> S.GradedSetDescriptor:
        return S.graded_limit_points(self.as_set(s))

    def as_set(self, atoms):
        if isinstance(atoms, S.GradedSetDescriptor):
            return atoms
        return S.GradedSetDescriptor.of(atoms)

    def kgdim(self) -> int:
        return S.graded_stratify().space_dim

    def truncate(self, lo: int, hi: int) -> FiniteAtomicModel:
        """Finite window model on s_lo..s_hi and g (see :func:`symbolic.truncate_graded`)."""
        space = S.truncate_graded(lo, hi)
        table = {(1, i, i - 1): ONE for i in range(lo + 1, hi + 1)}
        return FiniteAtomicModel("graded-kx-window", space, table, hereditary=True,
                                 name=f"graded-kx[{lo},{hi}]")

    def __repr__(self):
        return "GradedKxModel()"


def model_from_commutative_poset(spec: FinitePoset, name: str = "") -> FiniteAtomicModel:
    """Atoms are the primes; Ext between distinct primes vanishes in every degree."""
    return FiniteAtomicModel("commutative", spec, {}, hereditary=False,
                             fallback="unknown-diagonal", source=spec, name=name)


def triangular_atom(copy: int, p) -> str:
    return f"P{copy}({p})"


def model_from_triangular(spec: FinitePoset, name: str = "") -> FiniteAtomicModel:
    """Two disjoint copies X1, X2 of spec for the lower triangular matrix algebra over R.

    Ext^1(P2(p), P1(p)) is nonzero, Ext^1(P1(p), P2(p)) = 0, entries across
    distinct primes vanish and diagonal entries stay unknown.
    """
    copies = {}
    elements = []
    for c in (1, 2):
        for p in spec.elements:
            atom = triangular_atom(c, p)
            if atom in copies:
                raise ValueError(f"atom name collision for {atom!r}")
            copies[atom] = (c, p)
            elements.append(atom)
    rels = [(triangular_atom(c, a), triangular_atom(c, b)) for c in (1, 2) for a, b in spec.relations()]
    space = poset_from_relations(elements, rels)
    table = {}
    for p in spec.elements:
        p1, p2 = triangular_atom(1, p), triangular_atom(2, p)
        table[(1, p2, p1)] = ExtEntry.nonzero()
        table[(1, p1, p2)] = ZERO
    return FiniteAtomicModel("triangular", space, table, hereditary=False,
                             fallback="unknown-diagonal", source=spec, name=name, copies=copies)


def model_from_quiver(q: QuiverPresentation, name: str = "") -> FiniteAtomicModel:
    """Hereditary model: discrete atoms, Ext^1(i, j) = number of arrows i -> j."""
    space = poset_from_relations(q.vertices, [])
    table = {(1, s, t): ExtEntry.of_dim(m) for (s, t), m in q.adjacency().items()}
    return FiniteAtomicModel("quiver", space, table, hereditary=True, fallback="zero",
                             source=q, name=name)


def model_graded_kx() -> GradedKxModel:
    return GradedKxModel()


def _specialization_pairs(space: FinitePoset) -> set:
    """a <= b read off from point closures rather than from the stored order."""
    return {
        (a, b) for b in space.elements for a in P.closure(space, {b}) if a != b
    }


def expected_order(model: FiniteAtomicModel) -> FinitePoset:
    src = model.source
    if model.family == "commutative":
        return src
    if model.family == "triangular":
        elements = [triangular_atom(c, p) for c in (1, 2) for p in src.elements]
        rels = [(triangular_atom(c, a), triangular_atom(c, b)) for c in (1, 2) for a, b in src.relations()]
        return poset_from_relations(elements, rels)
    if model.family == "quiver":
        return poset_from_relations(src.vertices, [])
    raise ValueError(f"model family {model.family!r} is not built from a poset")


def prime_poset_isomorphism_check(model) -> bool:
    """Does the model's specialization order match the order it was built from?"""
    if not isinstance(model, FiniteAtomicModel):
        raise ValueError("only poset-built models carry a source order")
    exp = expected_order(model)
    if set(exp.elements) != set(model.atoms):
        return False
    return _specialization_pairs(model.space) == set(exp.relations())
