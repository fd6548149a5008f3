"""Which identities do the built-in algebras satisfy?

Run with ``python demos/01_identities.py``.
"""

# %%
# Every built-in algebra is stored by its structure constants c[i, j, k]
# with i < j.  Here is one of them in the text format the catalog reads.
from degencheck import builtin, check_jacobi, check_malcev, check_metabelian, check_tortkara

catalog = builtin()
print(catalog.get("T19"))

# %%
# The checkers return None on success and a witness otherwise.  A witness
# names the basis tuple and the nonzero residual, so failures are easy to
# re-derive by hand.
print(check_metabelian(catalog.get("T19")))
print(check_malcev(catalog.get("T00")))

# %%
# A small table over the whole catalog.  Parametric algebras (M6e in eps,
# T09 and T18 in alpha) are checked over the field of rational functions
# in their parameter, so "pass" means "for generic parameter values".
checks = {"tortkara": check_tortkara, "malcev": check_malcev,
          "jacobi": check_jacobi, "metabelian": check_metabelian}
print(f"{'':10}" + "".join(f"{c:>12}" for c in checks))
for name, A in catalog.algebras.items():
    marks = ["yes" if fn(A) is None else "no" for fn in checks.values()]
    print(f"{name:10}" + "".join(f"{m:>12}" for m in marks))

# %%
# M6e only fails the Jacobi identity through a factor (1 - eps): at eps = 1
# it becomes a Lie algebra.
M = catalog.get("M6e")
print(check_jacobi(M))
print(check_jacobi(M.specialize({"eps": 1})))
