"""Ext^1-vanishing classification of open subsets and the atom dimension calculus.

An open set Phi qualifies when Ext^1(alpha, beta) = 0 for every alpha
outside Phi and beta inside it; these are the open sets whose localizing
subcategory ASupp^-1(Phi) is closed under injective envelopes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import poset as P
from . import symbolic as S
from .errors import UnknownExtRead
from .models import FiniteAtomicModel, GradedKxModel
from .poset import DEFAULT_SIZE_CAP, sorted_ids, subset_key

DEFAULT_DEGREE_CAP = 4
DEFAULT_WINDOW = (-3, 3)
UNDETERMINED = "undetermined"


def format_set(s) -> str:
    return "{" + ", ".join(S.point_label(x) for x in sorted_ids(s)) + "}"


def label_for(phi) -> str:
    return f"ASupp^-1({phi if isinstance(phi, str) else format_set(phi)})"


@dataclass(frozen=True)
class RuleFamily:
    """One family of qualifying opens of a symbolic model."""

    name: str
    description: str
    listed_in_source: bool
    members: tuple  # representative descriptors (window sample)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "listed_in_source": self.listed_in_source,
            "sample": [str(d) for d in self.members],
        }


@dataclass(frozen=True)
class ClassificationResult:
    mode: str  # "enumerated" | "rule-described"
    qualifying: tuple
    labels: dict
    families: tuple = ()
    window: tuple | None = None
    flags: tuple = ()

    def to_dict(self) -> dict:
        if self.mode == "enumerated":
            qual = [sorted_ids(phi) for phi in self.qualifying]
            labels = {format_set(phi): self.labels[phi] for phi in self.qualifying}
        else:
            qual = [d.to_json() for d in self.qualifying]
            labels = {str(d): self.labels[d] for d in self.qualifying}
        out = {"mode": self.mode, "qualifying": qual, "labels": labels}
        if self.families:
            out["families"] = [f.to_dict() for f in self.families]
            out["window"] = list(self.window)
        if self.flags:
            out["flags"] = list(self.flags)
        return out


def _qualifies(model, phi, cache) -> bool:
    for a in model.atoms:
        if a in phi:
            continue
        for b in phi:
            key = (a, b)
            if key not in cache:
                cache[key] = model.ext_nonzero(1, a, b)
            if cache[key]:
                return False
    return True


def qualifying_opens(model, size_cap: int | None = DEFAULT_SIZE_CAP, window=DEFAULT_WINDOW) -> ClassificationResult:
    """All open Phi with Ext^1 vanishing from outside Phi into Phi.

    Finite models are enumerated; the graded k[x] model is answered by its
    family rule with a sample inside ``window``.
    """
    if isinstance(model, GradedKxModel):
        return graded_rule_classification(window)
    opens = P.enumerate_opens(model.space, size_cap=size_cap)
    cache = {}
    qual = tuple(phi for phi in opens if _qualifies(model, phi, cache))
    return ClassificationResult("enumerated", qual, {phi: label_for(phi) for phi in qual})


def brute_force_qualifying(model, size_cap: int | None = DEFAULT_SIZE_CAP) -> list[frozenset]:
    """Independent oracle: every subset, openness tested pointwise on the order."""
    atoms = list(model.atoms)
    if size_cap is not None and len(atoms) > size_cap:
        raise P.SizeCapExceeded(f"{len(atoms)} atoms exceeds size cap {size_cap}")
    space = model.space
    out = []
    for r in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, r):
            phi = set(combo)
            up_closed = all(y in phi for x in phi for y in atoms if space.le(x, y))
            if not up_closed:
                continue
            ok = True
            for a in atoms:
                for b in atoms:
                    if a not in phi and b in phi:
                        e = model.ext(1, a, b)
                        if e.is_unknown:
                            raise UnknownExtRead(1, a, b)
                        if e.kind != "zero":
                            ok = False
            if ok:
                out.append(frozenset(phi))
    return sorted(out, key=subset_key)


# -- graded k[x] rule mode ---------------------------------------------------


def graded_qualifies(phi: S.GradedSetDescriptor) -> bool:
    """Open, and s_{i-1} in Phi forces s_i in Phi (the only nonzero Ext^1)."""
    if not S.graded_is_open(phi):
        return False
    lo, hi = phi._data_range()
    # beyond the data range membership is constant, so one extra step each side suffices
    for i in range(lo - 2, hi + 3):
        if (i - 1) in phi and i not in phi:
            return False
    return True


def graded_rule_classification(window=DEFAULT_WINDOW) -> ClassificationResult:
    lo, hi = window
    D = S.GradedSetDescriptor
    families = (
        RuleFamily("empty", "the empty set", True, (D(),)),
        RuleFamily(
            "up-ray", "{s_i : i >= i0} for each integer i0", True,
            tuple(D.up_ray(i0) for i0 in range(lo, hi + 1)),
        ),
        RuleFamily(
            "all-closed-points", "{s_i : i in Z}, without g", False,
            (D.closed_points(),),
        ),
        RuleFamily("whole", "the whole spectrum", True, (D.whole(),)),
    )
    qual = []
    for fam in families:
        for d in fam.members:
            if not graded_qualifies(d):
                raise AssertionError(f"rule family {fam.name} produced non-qualifying {d}")
            qual.append(d)
    labels = {d: label_for(str(d)) for d in qual}
    flags = tuple(
        f"{fam.name}: qualifies but is not listed in the source example" for fam in families if not fam.listed_in_source
    )
    return ClassificationResult("rule-described", tuple(qual), labels, families, tuple(window), flags)


def rule_window_traces(result: ClassificationResult, lo: int, hi: int) -> set:
    """Traces on the window [lo, hi] of every member of every rule family.

    Up-rays are taken for all i0 from lo-1 to hi+1 so traces at both window
    edges appear.
    """
    D = S.GradedSetDescriptor
    traces = set()
    for fam in result.families:
        if fam.name == "up-ray":
            members = [D.up_ray(i0) for i0 in range(lo - 1, hi + 2)]
        else:
            members = fam.members
        for d in members:
            traces.add(d.window(lo, hi))
    return traces


def cross_validate_graded(lo: int, hi: int) -> bool:
    """Rule-mode traces equal the enumerated classification of the window model."""
    rule = graded_rule_classification((lo, hi))
    finite = qualifying_opens(GradedKxModel().truncate(lo, hi))
    return rule_window_traces(rule, lo, hi) == set(finite.qualifying)


# -- Const / Epi and dimensions ----------------------------------------------


def const_set(model, i: int, a) -> frozenset:
    """Atoms b with eventually constant, nonzero Ext^i(a, b)."""
    return frozenset(b for b in model.candidates(i, a) if model.ext_nonzero(i, a, b, need_constant=True))


def epi_set(model, i: int, a) -> frozenset:
    """Atoms b with eventually epic Ext^i(a, b) and nonzero virtual dual.

    For an eventually constant system with value V the dual direct limit is
    V*, nonzero exactly when V is; so this agrees with :func:`const_set` on
    the data the models carry, and refuses anything else.
    """
    return frozenset(b for b in model.candidates(i, a) if model.ext_nonzero(i, a, b, need_constant=True))


@dataclass(frozen=True)
class AtLeast:
    """A dimension that reached the degree cap."""

    bound: int

    def __str__(self):
        return f">= {self.bound}"

    def to_json(self):
        return str(self)


def dim_json(v):
    return v.to_json() if isinstance(v, AtLeast) else v


def _sup_degree(pred, cap):
    best = None
    for i in range(cap + 1):
        if pred(i):
            best = i
    if best == cap:
        return AtLeast(cap)
    return best


def projdim_atom(model, a, cap: int = DEFAULT_DEGREE_CAP):
    """sup of degrees i <= cap with Ext^i(a, b) != 0 for some atom b."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    return _sup_degree(lambda i: any(model.ext_nonzero(i, a, b) for b in model.candidates(i, a)), cap)


def cprojdim_atom(model, a, cap: int = DEFAULT_DEGREE_CAP):
    """sup of degrees i <= cap with Const_i(a) nonempty."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    return _sup_degree(lambda i: bool(const_set(model, i, a)), cap)


def gldim_via_atoms(model, cap: int = DEFAULT_DEGREE_CAP, window=DEFAULT_WINDOW):
    """sup of degrees i <= cap with a nonzero Ext^i between some pair of atoms."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    atoms = model.sample_atoms(window)
    return _sup_degree(
        lambda i: any(model.ext_nonzero(i, a, b) for a in atoms for b in model.candidates(i, a)), cap
    )


def _le(x, y) -> bool | None:
    """x <= y for dimension values; None when the cap hides the answer."""
    if isinstance(x, AtLeast):
        if isinstance(y, AtLeast):
            return None
        return False if x.bound > y else None
    if isinstance(y, AtLeast):
        return True
    return x <= y


def _add(x, k):
    return AtLeast(x.bound + k) if isinstance(x, AtLeast) else x + k


@dataclass
class CheckReport:
    name: str
    holds: bool
    checked: int = 0
    violations: list = field(default_factory=list)
    undetermined: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "holds": self.holds,
            "checked": self.checked,
            "violations": self.violations,
            "undetermined": self.undetermined,
            "rows": self.rows,
        }


def _iterate_limit(model, s, j):
    cur = model.as_set(s)
    for _ in range(j):
        cur = model.limit_points(cur)
    return cur


def _subset(model, a, b) -> bool:
    if isinstance(a, frozenset) and isinstance(b, frozenset):
        return a <= b
    return model.as_set(a).issubset(model.as_set(b))


def check_epi_containment(model, degrees=(0, 1, 2), window=DEFAULT_WINDOW) -> CheckReport:
    """Epi_i(a) is contained in the union over j <= i of L^j(Const_{i-j}(a))."""
    report = CheckReport("epi-containment", True)
    for a in model.sample_atoms(window):
        for i in degrees:
            try:
                epi = epi_set(model, i, a)
                rhs = model.as_set([])
                for j in range(i + 1):
                    rhs = rhs | _iterate_limit(model, const_set(model, i - j, a), j)
            except UnknownExtRead as exc:
                report.undetermined.append({"atom": a, "degree": i, "reason": str(exc)})
                continue
            report.checked += 1
            if not _subset(model, epi, rhs):
                report.holds = False
                report.violations.append({"atom": a, "degree": i, "epi": sorted_ids(epi), "bound": str(rhs)})
    return report


def check_dimension_bound(model, cap: int = DEFAULT_DEGREE_CAP, window=DEFAULT_WINDOW) -> CheckReport:
    """projdim(a) <= cprojdim(a) + KGdim for every atom."""
    kg = model.kgdim()
    report = CheckReport("dimension-bound", True)
    for a in model.sample_atoms(window):
        try:
            pd = projdim_atom(model, a, cap)
            cpd = cprojdim_atom(model, a, cap)
        except UnknownExtRead as exc:
            report.undetermined.append({"atom": a, "reason": str(exc)})
            report.rows.append({"atom": a, "projdim": UNDETERMINED, "cprojdim": UNDETERMINED,
                                "kgdim": kg, "bound_holds": None})
            continue
        verdict = _le(pd, _add(cpd, kg))
        report.checked += 1
        margin = None
        if not isinstance(pd, AtLeast) and not isinstance(cpd, AtLeast):
            margin = cpd + kg - pd
        report.rows.append({"atom": a, "projdim": dim_json(pd), "cprojdim": dim_json(cpd),
                            "kgdim": kg, "bound_holds": verdict, "margin": margin})
        if verdict is False:
            report.holds = False
            report.violations.append({"atom": a, "projdim": dim_json(pd), "cprojdim": dim_json(cpd), "kgdim": kg})
        elif verdict is None:
            report.undetermined.append({"atom": a, "reason": "degree cap reached"})
    return report


@dataclass
class DimsReport:
    rows: list
    const_sets: dict
    epi_sets: dict
    gldim_estimate: object
    degree_cap: int
    kgdim: int
    projdim_scope: str
    bound: CheckReport
    containment: CheckReport

    def to_dict(self) -> dict:
        def sets(d):
            return {f"{i}|{S.point_label(a)}": sorted_ids(v) if v != UNDETERMINED else v
                    for (i, a), v in d.items()}

        return {
            "atoms": self.rows,
            "gldim": dim_json(self.gldim_estimate),
            "degree_cap": self.degree_cap,
            "kgdim": self.kgdim,
            "projdim_scope": self.projdim_scope,
            "const_sets": sets(self.const_sets),
            "epi_sets": sets(self.epi_sets),
            "bound_holds": self.bound.holds,
            "epi_containment_holds": self.containment.holds,
            "bound": self.bound.to_dict(),
            "epi_containment": self.containment.to_dict(),
        }


def dims_report(model, cap: int = DEFAULT_DEGREE_CAP, window=DEFAULT_WINDOW) -> DimsReport:
    const_sets, epi_sets = {}, {}
    for a in model.sample_atoms(window):
        for i in range(cap + 1):
            try:
                const_sets[(i, a)] = const_set(model, i, a)
                epi_sets[(i, a)] = epi_set(model, i, a)
            except UnknownExtRead:
                const_sets[(i, a)] = epi_sets[(i, a)] = UNDETERMINED
    try:
        gl = gldim_via_atoms(model, cap, window)
    except UnknownExtRead:
        gl = UNDETERMINED
    bound = check_dimension_bound(model, cap, window)
    containment = check_epi_containment(model, tuple(range(cap + 1)), window)
    exact = isinstance(model, FiniteAtomicModel) and model.family == "quiver"
    return DimsReport(bound.rows, const_sets, epi_sets, gl, cap, model.kgdim(),
                      "exact (hereditary, simples detect Ext)" if exact else "atom-level projdim",
                      bound, containment)
