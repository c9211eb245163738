"""Property checks on finite spaces, shared by the CLI ``--assert`` mode and tests."""

from __future__ import annotations

import itertools
import random

from . import poset as P
from .poset import FinitePoset


def all_subsets(space: FinitePoset):
    for m in range(1 << len(space)):
        yield space.subset(m)


def sample_subsets(space: FinitePoset, count: int, seed: int | None = 0):
    rng = random.Random(seed)
    n = len(space)
    for _ in range(count):
        yield space.subset(rng.getrandbits(n) if n else 0)


def limit_lemma_violations(space: FinitePoset, subsets=None, opens=None, max_pairs: int | None = None) -> list:
    """Every failure of the limit-point identities on the given subsets.

    ``subsets`` defaults to all subsets.  Pairs for the union rule range
    over ``subsets`` (capped by ``max_pairs`` if given).
    """
    subsets = list(all_subsets(space) if subsets is None else subsets)
    opens = P.enumerate_opens(space, size_cap=None) if opens is None else opens
    out = []

    def L(s):
        return P.limit_points(space, s)

    def cl(s):
        return P.closure(space, s)

    for x in space.elements:
        if L({x}) != cl({x}) - {x}:
            out.append(("point", x))
    pairs = itertools.combinations_with_replacement(subsets, 2)
    if max_pairs is not None:
        pairs = itertools.islice(pairs, max_pairs)
    for s1, s2 in pairs:
        if L(s1 | s2) != L(s1) | L(s2):
            out.append(("union", (s1, s2)))
    for s in subsets:
        ls = L(s)
        if not P.is_closed(space, ls):
            out.append(("closed", s))
        if L(cl(s)) != ls:
            out.append(("closure-invariant", s))
        if not L(ls) <= ls:
            out.append(("decreasing", s))
        for u in opens:
            if not u & cl(s) <= cl(u & s):
                out.append(("open-closure", (u, s)))
            if not u & ls <= L(u & s):
                out.append(("open-limit", (u, s)))
        if P.is_closed(space, s) and ls != s - P.open_points(space, s):
            out.append(("closed-open-points", s))
    return out


def stratify_cross_check(space: FinitePoset) -> bool:
    """Level of x equals the length of the longest strict chain starting at x."""
    rep = P.stratify(space)
    for x in space.elements:
        above = space.subset(space.up_mask(x))
        height = P.chain_dimension(space.restrict(above))
        if rep.level[x] != height:
            return False
    return True


def dual_check(space: FinitePoset) -> bool:
    """Involution, and opens of X are exactly the closed sets of the dual."""
    dual = P.hochster_dual(space)
    if P.hochster_dual(dual) != space:
        return False
    opens = set(P.enumerate_opens(space, size_cap=None))
    closed_dual = set(P.enumerate_closed(dual, size_cap=None))
    return opens == closed_dual
