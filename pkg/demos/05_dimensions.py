"""
Projective dimensions from atoms
================================

Const_i(a) collects the atoms b with eventually constant, nonzero
Ext^i(a, b). Its top degree, cprojdim, bounds projdim up to the
Krull-Gabriel dimension of the space. Here that bound is checked on a few
hereditary models.
"""

from atomspec import classify as C
from atomspec.builtins import builtin_model

for name in ["semisimple", "kronecker", "a3", "loop", "graded-kx"]:
    model = builtin_model(name)
    rep = C.dims_report(model, cap=4, window=(-1, 1))
    rows = ", ".join(f"{r['atom']}: {r['projdim']}<={r['cprojdim']}+{r['kgdim']}" for r in rep.rows)
    print(f"{name:10} gldim={rep.gldim_estimate}  bound={rep.bound.holds}  "
          f"containment={rep.containment.holds}  [{rows}]")

g = builtin_model("graded-kx")
print("Const_1(s_5) in graded k[x]:", set(C.const_set(g, 1, 5)))

# Commutative and triangular models keep their diagonal Ext symbolic, so their
# dimensions stay undetermined rather than guessed.
rep = C.dims_report(builtin_model("commutative:chain2"))
print("commutative chain2 gldim   :", rep.gldim_estimate)
