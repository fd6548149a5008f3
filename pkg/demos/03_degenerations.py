"""Walking through one degeneration certificate by hand, then all of them.

Run with ``python demos/03_degenerations.py``.
"""

# %%
from fractions import Fraction

from degencheck import builtin, limit_t0, transformed_constants, verify_all
from degencheck.degeneration import numeric_constants
from degencheck.catalog import serialize_certificate

catalog = builtin()
cert = catalog.certificate("T19->T12")
print(serialize_certificate(cert))

# %%
# In the new basis the constants are rational functions of t.  Some blow up
# individually but every one has a finite limit as t -> 0.
consts = transformed_constants(catalog.get("T19"), cert.family)
for key, c in sorted(consts.items()):
    print(f"c{key} = {c}   ->   {limit_t0(c)}")

# %%
# The limits are exactly the structure constants of T12.
print(catalog.get("T12"))

# %%
# Numerically, at small t the constants are already close to the limit.
for t0 in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
    vals = numeric_constants(cert, catalog, t0)
    print(t0, {k: float(v) for k, v in sorted(vals.items())})

# %%
# The whole table, with determinant class and the dim Der check.
for report in verify_all(catalog):
    print(report.summary())
