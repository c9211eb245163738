import itertools

import pytest

from atomspec import classify as C
from atomspec import poset as P
from atomspec.builtins import QUIVERS, builtin_model
from atomspec.classify import AtLeast
from atomspec.errors import NonConstantUnsupported, SizeCapExceeded, UnknownExtRead
from atomspec.models import (
    ExtEntry,
    FiniteAtomicModel,
    model_from_commutative_poset,
    model_from_quiver,
    model_from_triangular,
    model_graded_kx,
    triangular_atom,
)
from atomspec.poset import antichain, chain
from atomspec.symbolic import G, GradedSetDescriptor as GD

import oracles


def kronecker():
    return model_from_quiver(QUIVERS["kronecker"]())


def test_kronecker_classification():
    res = C.qualifying_opens(kronecker())
    assert res.mode == "enumerated"
    assert list(res.qualifying) == [frozenset(), {"1"}, {"1", "2"}]
    assert res.labels[frozenset({"1"})] == "ASupp^-1({1})"
    assert C.brute_force_qualifying(kronecker()) == list(res.qualifying)


def test_triangular_singleton():
    res = C.qualifying_opens(model_from_triangular(antichain("p")))
    p1, p2 = triangular_atom(1, "p"), triangular_atom(2, "p")
    assert set(res.qualifying) == {frozenset(), frozenset({p2}), frozenset({p1, p2})}


def test_triangular_chain2_has_six():
    assert len(C.qualifying_opens(model_from_triangular(chain("a", "b"))).qualifying) == 6


def test_commutative_all_opens():
    for spec in [chain("a", "b"), builtin_model("commutative:diamond").space]:
        m = model_from_commutative_poset(spec)
        assert list(C.qualifying_opens(m).qualifying) == P.enumerate_opens(spec)


def test_commutative_brute_force_skips_diagonal():
    # alpha outside and beta inside Phi are never equal, so no unknown entry is read
    m = model_from_commutative_poset(chain("a", "b"))
    assert C.brute_force_qualifying(m) == P.enumerate_opens(chain("a", "b"))


def test_unknown_entry_surfaces():
    space = antichain("a", "b")
    m = FiniteAtomicModel("custom", space, {}, fallback="unknown")
    with pytest.raises(UnknownExtRead) as exc:
        C.qualifying_opens(m)
    assert exc.value.degree == 1


def test_non_constant_entry_refused():
    space = antichain("a", "b")
    m = FiniteAtomicModel("custom", space, {(1, "a", "b"): ExtEntry.nonzero(eventually_constant=False)})
    with pytest.raises(NonConstantUnsupported):
        C.const_set(m, 1, "a")
    # classification only needs vanishing, which is still decidable
    assert len(C.qualifying_opens(m).qualifying) == 3


def test_size_cap():
    m = model_from_quiver(oracles.random_quiver(oracles.rng(1), 5, 0))
    with pytest.raises(SizeCapExceeded):
        C.qualifying_opens(FiniteAtomicModel("quiver", antichain(*range(6))), size_cap=5)
    assert C.qualifying_opens(m, size_cap=5)


def _union_closed(sets):
    s = set(sets)
    return all(a | b in s for a in s for b in s)


def _is_up_closed(space, phi):
    return all(y in phi for x in phi for y in space.elements if space.le(x, y))


@pytest.mark.parametrize("seed", range(5))
def test_enumerated_equals_brute_force_and_union_closed(seed):
    r = oracles.rng(seed)
    models = [model_from_quiver(oracles.random_quiver(r)) for _ in range(10)]
    models += [model_from_triangular(oracles.random_poset(r, 3)) for _ in range(5)]
    models += [model_from_commutative_poset(oracles.random_poset(r, 6)) for _ in range(5)]
    for m in models:
        q = C.qualifying_opens(m).qualifying
        assert list(q) == C.brute_force_qualifying(m)
        assert _union_closed(q)
        assert frozenset() in q and frozenset(m.atoms) in q
        assert all(_is_up_closed(m.space, phi) for phi in q)


def test_monotone_metamorphic():
    """Phi qualifies and Phi' over Phi is open with nothing entering Phi' minus Phi from outside Phi'."""
    r = oracles.rng(11)
    for _ in range(40):
        m = model_from_quiver(oracles.random_quiver(r, 5, 6))
        atoms = set(m.atoms)
        q = set(C.qualifying_opens(m).qualifying)
        for phi in q:
            for phi2 in P.enumerate_opens(m.space):
                if not phi <= phi2:
                    continue
                new = phi2 - phi
                if not any(m.ext_nonzero(1, a, b) for a in atoms - phi2 for b in new):
                    assert phi2 in q


# -- graded rule mode ------------------------------------------------------------------


def test_graded_rule_mode():
    res = C.qualifying_opens(model_graded_kx(), window=(-2, 2))
    assert res.mode == "rule-described"
    assert GD() in res.qualifying and GD.whole() in res.qualifying
    for i0 in range(-2, 3):
        assert GD.up_ray(i0) in res.qualifying
    listed = {f.name for f in res.families if f.listed_in_source}
    assert listed == {"empty", "up-ray", "whole"}
    assert GD.closed_points() in res.qualifying
    assert any("not listed" in f for f in res.flags)


@pytest.mark.parametrize("lo, hi", [(0, 0), (-1, 1), (-2, 3), (0, 5)])
def test_graded_rule_cross_validated_on_truncations(lo, hi):
    assert C.cross_validate_graded(lo, hi)


def test_graded_qualifies_rejects():
    assert not C.graded_qualifies(GD.of([G]))
    assert not C.graded_qualifies(GD.down_ray(0))
    assert not C.graded_qualifies(GD.of([3]))
    assert C.graded_qualifies(GD.up_ray(-4))


# -- Const / Epi and dimensions ----------------------------------------------------------


def test_const_epi_examples():
    g = model_graded_kx()
    for i in (-3, 0, 9):
        assert C.const_set(g, 1, i) == C.epi_set(g, 1, i) == {i - 1}
    assert C.const_set(kronecker(), 1, "1") == {"2"}
    for m in [kronecker(), g, builtin_model("triangular:chain2")]:
        for a in m.sample_atoms((-1, 1)):
            assert C.const_set(m, 0, a) == C.epi_set(m, 0, a) == {a}


def test_projdim_examples():
    k = kronecker()
    assert C.projdim_atom(k, "1") == C.cprojdim_atom(k, "1") == 1
    assert C.projdim_atom(k, "2") == 0
    s = model_from_quiver(QUIVERS["semisimple"]())
    assert C.projdim_atom(s, "1") == 0
    g = model_graded_kx()
    assert C.cprojdim_atom(g, 2) == 1
    with pytest.raises(ValueError):
        C.projdim_atom(k, "1", cap=0)


def test_projdim_cap():
    # a dense table of nonzero entries in every degree reaches the cap
    space = antichain("a")
    m = FiniteAtomicModel("custom", space, {(d, "a", "a"): ExtEntry.nonzero() for d in range(1, 9)})
    assert C.projdim_atom(m, "a", cap=3) == AtLeast(3)
    assert str(AtLeast(3)) == ">= 3"


def test_gldim():
    assert C.gldim_via_atoms(kronecker()) == 1
    assert C.gldim_via_atoms(model_from_quiver(QUIVERS["loop"]())) == 1
    for n in (1, 3):
        assert C.gldim_via_atoms(model_from_quiver(oracles.random_quiver(oracles.rng(n), n, 0))) == 0
    assert C.gldim_via_atoms(model_graded_kx()) == 1


def test_epi_containment_examples():
    assert C.check_epi_containment(kronecker(), (0, 1)).holds
    rep = C.check_epi_containment(model_graded_kx(), (0, 1, 2))
    assert rep.holds and rep.checked > 0 and not rep.undetermined


def test_epi_containment_can_fail(monkeypatch):
    # blank out Const_1 so the nonzero Ext^1(a, b) has nothing to sit under
    m = FiniteAtomicModel("custom", antichain("a", "b"), {(1, "a", "b"): ExtEntry.nonzero()})
    orig = C.const_set
    monkeypatch.setattr(C, "const_set", lambda model, i, a: frozenset() if i == 1 else orig(model, i, a))
    rep = C.check_epi_containment(m, (1,))
    assert not rep.holds and rep.violations[0]["atom"] == "a"


def test_dimension_bound_examples():
    rep = C.check_dimension_bound(kronecker())
    assert rep.holds and {r["atom"]: r["margin"] for r in rep.rows} == {"1": 0, "2": 0}
    rep = C.check_dimension_bound(model_graded_kx())
    assert rep.holds and all(r["kgdim"] == 1 for r in rep.rows)
    s = model_from_quiver(QUIVERS["semisimple"]())
    assert C.check_dimension_bound(s).rows[0]["projdim"] == 0


def test_undetermined_dims_for_symbolic_diagonals():
    rep = C.dims_report(builtin_model("commutative:chain2"))
    assert rep.gldim_estimate == C.UNDETERMINED
    assert all(r["projdim"] == C.UNDETERMINED for r in rep.rows)
    assert rep.bound.holds and rep.bound.undetermined


def test_dims_report_json():
    d = C.dims_report(kronecker()).to_dict()
    assert d["gldim"] == 1 and d["bound_holds"] and d["epi_containment_holds"]
    assert d["const_sets"]["1|1"] == ["2"]
    assert d["const_sets"]["0|2"] == ["2"]


def test_classification_json_is_deterministic():
    m = model_from_triangular(chain("a", "b"))
    assert C.qualifying_opens(m).to_dict() == C.qualifying_opens(m).to_dict()
    sizes = [len(phi) for phi in C.qualifying_opens(m).qualifying]
    assert sizes == sorted(sizes)


def test_triangular_pairs_small():
    spec = chain("a", "b")
    ups = P.enumerate_opens(spec)
    expected = {
        frozenset(triangular_atom(1, p) for p in u1) | frozenset(triangular_atom(2, p) for p in u2)
        for u1, u2 in itertools.product(ups, ups)
        if u1 <= u2
    }
    assert set(C.qualifying_opens(model_from_triangular(spec)).qualifying) == expected
