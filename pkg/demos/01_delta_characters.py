# %% [markdown]
# psi on rational points
#
# An order-two delta-character turns the Mordell-Weil group of a curve into
# p-adic numbers.  It kills torsion, is additive, and a combination of points
# lies in torsion + pE exactly when its value is divisible by p.

# %%
from deltaexp import builtin_curves, build_psi, psi_eval_point, pdiv_test
from deltaexp.ellcurve import fixture_primes, rational_torsion

E = builtin_curves()["37a1"]
G = E.generators[0]
print(E, "generator", G)

# %%
for p in fixture_primes(E):
    psi = build_psi(E, p, 6)
    v = psi_eval_point(psi, G)
    print(f"p={p:2d}  mode={psi.mode}  psi(G)={v.lift()}  residue={v.lift() % p}")

# %% [markdown]
# Additivity and the torsion kernel, on a curve with torsion.

# %%
E = builtin_curves()["14a1"]
p = 13
psi = build_psi(E, p, 6)
for T, n in rational_torsion(E):
    print("order", n, "value", psi_eval_point(psi, T).lift())
print("rank zero, generators:", E.generators)

# %%
E = builtin_curves()["389a1"]
P, Q = E.generators
psi = build_psi(E, 7, 6)
lhs = psi_eval_point(psi, E.add(P, Q))
rhs = psi_eval_point(psi, P) + psi_eval_point(psi, Q)
print("psi(P+Q) == psi(P)+psi(Q):", lhs == rhs)

# psi(7P) is divisible by 7, so 7P is in pE
print(pdiv_test(psi, [(E.mul(7, P), 1)]).as_dict())
