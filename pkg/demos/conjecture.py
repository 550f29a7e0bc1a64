"""
Modular invariants against NIM-rep exponents
============================================

For each catalogued modular category the invariants Z (commuting with S
and T) are listed with the diagonal multiplicities of Z, next to the NIM-reps
with the multiplicities of S-ratio eigenvalues.  The report pairs them.
"""

import numpy as np

from nimreps import catalog, conjecture_report, modular_invariants
from nimreps.modular import get

# %%
# Toric code: six invariants; the two non-identity 3-cycles both have exponent (1,0,0,0)
# but only one NIM-rep of that exponent exists.
toric = get("Toric")
print(np.round(toric.S.real * 2, 6))
for z in modular_invariants(toric):
    print(z.describe())

# %%
for md in catalog():
    r = conjecture_report(md)
    status = "matched" if r.perfect else "orphans"
    print(f"{md.name:>12}: {r.n_invariants} invariants, {r.n_nimreps} NIM-reps -> {status}")

# %%
# Full text for one category.
print(conjecture_report(get("Z4")).text())
