"""Derivation algebras and the three algebras with the smallest one.

Run with ``python demos/02_derivations.py``.
"""

# %%
from degencheck import builtin, derivation_dimension, derivation_dimension_at
from degencheck.catalog import RIGID
from degencheck.derivations import derivation_analysis

catalog = builtin()

# %%
# dim Der(A) is the nullspace dimension of a 90 x 36 linear system.  The
# three smallest values are all equal to 7.
dims = {name: derivation_dimension(A) for name, A in catalog.algebras.items()}
for name, d in sorted(dims.items(), key=lambda kv: (kv[1], kv[0])):
    tag = "  <- rigid" if name in RIGID else ""
    print(f"{name:10} {d:3}{tag}")

# %%
# For a parametric algebra the value is generic.  The elimination records
# which parameter expressions it divided by; those are where the dimension
# may jump.
res = derivation_analysis(catalog.get("T09"))
print("T09 generic:", res.dimension, "assuming",
      ", ".join(f"{e} != 0" for e in res.assumed_nonzero))
for a in (-1, "-1/2", 0, 2):
    print(f"  alpha = {a}: {derivation_dimension_at(catalog.get('T09'), {'alpha': a})}")
