"""
The omega+1 counterexample
==========================

Points x_0, x_1, ... and x_inf; the nonempty opens are the tails
{x_j, x_{j+1}, ..., x_inf}. The space is spectral, yet x_inf is a limit
point of its own closure, which no finite space can imitate.
"""

from atomspec import poset as P
from atomspec import symbolic as S
from atomspec.symbolic import INF, OmegaSetDescriptor as OD

x_inf = OD.of([INF])

print("spectral flags       :", S.omega_spectral_check().to_dict())
print("closure({x_inf})     :", S.omega_closure(x_inf))
print("L({x_inf})           :", S.omega_limit_points(x_inf))
print("  ...is it closed?   :", S.omega_is_closed(S.omega_limit_points(x_inf)))
print("L(closure({x_inf}))  :", S.omega_limit_points(S.omega_closure(x_inf)))
print("obstruction points   :", S.omega_obstruction_points())

# No singleton is open here, so peeling open points stalls at once.
rep = S.omega_stratify(range(4))
print("stratification       :", rep.level, "|", rep.note)

# Finite truncations are chains and lose the obstruction entirely.
t = S.truncate_omega(3)
print("truncate_omega(3)    :", t.cover_relations())
print("  obstruction points :", set(P.obstruction_points(t)))
print("  levels             :", P.stratify(t).level)
