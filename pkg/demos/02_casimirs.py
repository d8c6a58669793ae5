# coding: utf-8

# # Casimir invariants from the coadjoint action

# A polynomial in the dual coordinates is a Casimir symbol when every
# coadjoint operator annihilates it. Degree by degree this is a linear system.

# In[1]:

from liecontract import builtin_algebra, coadjoint_operator, invariant_count, invariant_ledger

P = builtin_algebra("poincare")
print(coadjoint_operator(P, "kp1"))


# Full and "new" invariant spaces up to degree 4. New means not a product of
# lower-degree invariants.

# In[2]:

for d, (full, new) in invariant_ledger(P, 4).items():
    print(d, len(full), len(new))
    for p in new:
        print("   ", p)


# The count of independent invariants is the corank of the commutator matrix
# at a generic point.

# In[3]:

for name in ("so3", "poincare", "extended_poincare", "galilei", "extended_galilei"):
    print(name, invariant_count(builtin_algebra(name)))


# The mass-extended Galilei algebra has m, the internal energy and a quartic
# spin invariant.

# In[4]:

G = builtin_algebra("extended_galilei")
for d, (full, new) in invariant_ledger(G, 4).items():
    for p in new:
        print(d, p)
