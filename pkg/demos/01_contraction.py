# coding: utf-8

# # From extended Poincare to extended Galilei

# The Poincare algebra with a trivial central charge m contracts to the
# mass-extended Galilei algebra. Shifting the energy by the mass first,
# hbar = h - m, is what keeps the central term alive in the limit.

# In[1]:

from liecontract import (BasisChange, builtin_algebra, change_basis, contract,
                         parse_scale, rescale, same_structure)

EP = builtin_algebra("extended_poincare")
print(EP)


# Change basis. Only the [p_i, kp_i] brackets move.

# In[2]:

EH = change_basis(EP, BasisChange.from_definitions(EP, {"h": ("hbar", {"h": 1, "m": -1})}))
for g in ("p1", "p2", "p3"):
    k = "kp" + g[1]
    print(f"[{g}, {k}] =", EH.bracket_basis(g, k).format(EH.generators))


# Rescale: momenta and boosts by eps, the mass by eps^2. Every constant picks up
# eps^(n_a + n_b - n_c). The boost-boost brackets and the hbar part of
# [p_i, kp_i] die.

# In[3]:

s = parse_scale("J=0,P=1,K=1,Hbar=0,M=2", EH)
for a, b, c, e, f in rescale(EH, s).terms():
    if e:
        print(f"[{a}, {b}] -> {c}: eps^{e} * {f}")


# Take the limit and compare with the catalog algebra.

# In[4]:

C = contract(EH, s, name="contracted")
G = builtin_algebra("extended_galilei")
relabel = {"kp1": "kg1", "kp2": "kg2", "kp3": "kg3", "hbar": "h"}
print("matches extended Galilei:", same_structure(C, G, relabel))


# Scaling the mass by eps only kills the central term: the result is the
# plain Galilei algebra plus a decoupled center.

# In[5]:

s1 = parse_scale("J=0,P=1,K=1,Hbar=0,M=1", EH)
print("[p1, kp1] =", contract(EH, s1).bracket_basis("p1", "kp1").format(EH.generators))
