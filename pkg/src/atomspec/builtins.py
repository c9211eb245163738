"""Named spaces and models shipped with the package."""

from __future__ import annotations

from .models import (
    QuiverPresentation,
    model_from_commutative_poset,
    model_from_quiver,
    model_from_triangular,
    model_graded_kx,
)
from .poset import antichain, chain, poset_from_relations

SYMBOLIC_SPACES = ("omega-plus-one", "graded-kx")


def diamond():
    return poset_from_relations(
        ["bot", "l", "r", "top"],
        [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
    )


POSETS = {
    "chain2": lambda: chain("a", "b"),
    "chain3": lambda: chain("a", "b", "c"),
    "antichain3": lambda: antichain("x", "y", "z"),
    "diamond": diamond,
    # primes of Z under inclusion: (0) below every (p)
    "spec-z-sample": lambda: poset_from_relations(
        ["(0)", "(2)", "(3)", "(5)"], [("(0)", "(2)"), ("(0)", "(3)"), ("(0)", "(5)")]
    ),
}

QUIVERS = {
    "kronecker": lambda: QuiverPresentation(("1", "2"), (("1", "2", 2),)),
    "semisimple": lambda: QuiverPresentation(("1",), ()),
    "loop": lambda: QuiverPresentation(("v",), (("v", "v", 1),)),
    "a3": lambda: QuiverPresentation(("1", "2", "3"), (("1", "2", 1), ("2", "3", 1))),
    "cyclic3": lambda: QuiverPresentation(
        ("1", "2", "3"), (("1", "2", 1), ("2", "3", 1), ("3", "1", 1))
    ),
}


def builtin_space(name):
    if name in SYMBOLIC_SPACES:
        return name
    try:
        return POSETS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin space {name!r}; choose from {sorted(POSETS) + list(SYMBOLIC_SPACES)}") from None


def builtin_model(name):
    """Quivers by name, ``graded-kx``, or ``commutative:<poset>`` / ``triangular:<poset>``."""
    if name == "graded-kx":
        return model_graded_kx()
    if name in QUIVERS:
        return model_from_quiver(QUIVERS[name](), name=name)
    family, _, poset_name = name.partition(":")
    if poset_name in POSETS:
        if family == "commutative":
            return model_from_commutative_poset(POSETS[poset_name](), name=name)
        if family == "triangular":
            return model_from_triangular(POSETS[poset_name](), name=name)
    raise KeyError(f"unknown builtin model {name!r}")


def all_builtin_model_names():
    names = ["graded-kx"] + list(QUIVERS)
    for fam in ("commutative", "triangular"):
        names += [f"{fam}:{p}" for p in POSETS]
    return names
