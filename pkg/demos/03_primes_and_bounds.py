# %% [markdown]
# Prime classification and the finiteness bound

# %%
from deltaexp import builtin_curves
from deltaexp.ellcurve import find_good_primes, parse_curve_spec
from deltaexp.reciprocity import finiteness_bound, level_invariants

E = parse_curve_spec("-1,0")
for c in find_good_primes(E, 5, 60):
    kind = "ordinary" if c.ordinary else "supersingular"
    print(c.p, c.a_p, kind, "CL" if c.cl else "")

# %%
E = builtin_curves()["11a1"]
print("anomalous:", [c.p for c in find_good_primes(E, 5, 200, "anomalous")])

# %%
for N in (11, 13, 23):
    print(N, "genus, cusps, index:", level_invariants(N))
for r in range(3):
    inputs, b = finiteness_bound(11, 5, r)
    print("r =", r, "bound", b)
