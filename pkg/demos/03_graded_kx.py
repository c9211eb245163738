"""
The atom spectrum of graded k[x]
================================

Closed points s_i, one per degree shift, and a generic point g. A set with
g is open only if it also contains a down-ray of the s_i. Every s_i is
open, g is peeled one step later, so the Krull-Gabriel dimension is 1
while every chain of irreducible closed sets has length 0.
"""

from atomspec import classify as C
from atomspec import poset as P
from atomspec import symbolic as S
from atomspec.symbolic import G, GradedSetDescriptor as D

print("whole space open     :", S.graded_is_open(D.whole()))
print("{g} open             :", S.graded_is_open(D.of([G])))
print("closure(s_i, i <= 0) :", S.graded_closure(D.down_ray(0)))
print("L(s_i, i <= 0)       :", S.graded_limit_points(D.down_ray(0)))

rep = S.graded_stratify((-3, 3))
print("levels               :", rep.level)
print("KG dimension         :", rep.space_dim)
print("chain dimension      :", S.graded_chain_dimension())

# Qualifying opens come in families; one of them is flagged.
res = C.graded_rule_classification((-2, 2))
for fam in res.families:
    tag = "" if fam.listed_in_source else "   <- flagged: not listed in the source"
    print(f"  {fam.name:18} {fam.description}{tag}")

# The family rule agrees with brute-force enumeration on a finite window.
print("window [-2, 0] opens :", [P.sorted_ids(u) for u in P.enumerate_opens(S.truncate_graded(-2, 0))])
print("cross-validated      :", all(C.cross_validate_graded(lo, hi) for lo, hi in [(0, 0), (-2, 2), (0, 4)]))
