"""
Finite spaces as posets
=======================

A finite Kolmogorov space is the same thing as a partial order: a <= b
means a lies in the closure of {b}. Opens are up-sets, closures are
down-sets, and limit points are whatever sits strictly below the set.
"""

from atomspec import poset as P
from atomspec.poset import FiniteTopology, poset_from_relations

# A diamond: one bottom point, two middle points, one generic top point.
diamond = poset_from_relations(
    ["bot", "l", "r", "top"], [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")]
)

print("open sets:")
for u in P.enumerate_opens(diamond):
    print("  ", sorted(u))

# The closure of the generic point is everything; its limit points are the rest.
print("closure({top})      =", sorted(P.closure(diamond, {"top"})))
print("L({top})            =", sorted(P.limit_points(diamond, {"top"})))
print("L^2({top})          =", sorted(P.limit_iterate(diamond, {"top"}, 2)))

# Peeling open points layer by layer gives each point its Krull-Gabriel level.
strat = P.stratify(diamond)
print("levels              =", strat.level)
print("KG dimension        =", strat.space_dim)
print("chain dimension     =", P.chain_dimension(diamond))

# Every finite T0 space is spectral, and its Hochster dual is the reversed order.
print("spectral            =", P.spectral_check(diamond).is_spectral)
dual = P.hochster_dual(diamond)
print("dual relations      =", dual.cover_relations())
print("double dual equal   =", P.hochster_dual(dual) == diamond)

# Non-T0 spaces have no poset form; the raw-topology hook still checks them.
lumpy = FiniteTopology({"a", "b"}, [set(), {"a", "b"}])
print("indiscrete 2-point  :", P.spectral_check(lumpy).to_dict())
