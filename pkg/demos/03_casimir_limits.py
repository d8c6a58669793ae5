# coding: utf-8

# # Pushing Casimirs through the contraction

# Dual coordinates scale inversely to the generators, x_a -> eps^(-n_a) x_a.
# Multiplying by the right power of eps and letting eps -> 0 gives an invariant
# of the contracted algebra.

# In[1]:

from liecontract import builtin_algebra, contract_invariant, evaluate_at_rest, load_builtin
from liecontract.verify import nonrelativistic_scaling

entry = load_builtin("extended_poincare_hbar")
L = entry.algebra
s = nonrelativistic_scaling(L)


# The quadratic Casimir goes to m^2. The Galilean internal energy only shows
# up one order later, at eps^2.

# In[2]:

c2 = contract_invariant(L, s, entry.reference("C2PE"))
print("shift", c2.shift, "limit", c2.limit)
for k, p in sorted(c2.leading_series().to_dict().items()):
    print(f"  eps^{k}: {p}")


# The quartic one lands exactly on the Galilean spin invariant.

# In[3]:

c4 = contract_invariant(L, s, entry.reference("C4PE"))
G = builtin_algebra("extended_galilei")
renamed = c4.limit.rename({"kp1": "kg1", "kp2": "kg2", "kp3": "kg3", "hbar": "h"}, G.generators)
print(renamed == load_builtin("extended_galilei").reference("C4G"))


# In the rest frame the quartic Casimirs reduce to mass squared times spin squared.

# In[4]:

print(evaluate_at_rest(load_builtin("poincare").reference("C4P")))
print(evaluate_at_rest(load_builtin("extended_galilei").reference("C4G")))
