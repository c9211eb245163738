"""
Which localizing subcategories are closed under injective envelopes?
====================================================================

An open set Phi qualifies when Ext^1 vanishes from every atom outside Phi
to every atom inside it. Three families show three behaviours: every open
qualifies for commutative rings, the triangular matrix ring wants
Phi_1 inside Phi_2, and for a quiver no arrow may enter Phi from outside.
"""

from atomspec import classify as C
from atomspec.builtins import QUIVERS
from atomspec.models import model_from_commutative_poset, model_from_quiver, model_from_triangular
from atomspec.poset import chain

spec = chain("p0", "m")

com = model_from_commutative_poset(spec)
print("commutative, 2-chain :", [sorted(u) for u in C.qualifying_opens(com).qualifying])

tri = model_from_triangular(spec)
res = C.qualifying_opens(tri)
print(f"triangular, 2-chain  : {len(res.qualifying)} qualifying opens")
for phi in res.qualifying:
    print("   ", res.labels[phi])

kron = model_from_quiver(QUIVERS["kronecker"]())
res = C.qualifying_opens(kron)
print("Kronecker quiver     :", [sorted(u) for u in res.qualifying])
print("brute force agrees   :", C.brute_force_qualifying(kron) == list(res.qualifying))

# Diagonal Ext entries of commutative rings are left symbolic; reading one is an error.
try:
    com.ext_nonzero(1, "m", "m")
except Exception as exc:
    print("diagonal read        :", type(exc).__name__, "-", exc)
