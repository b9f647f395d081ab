# %% [markdown]
# The comparison is sharp: any single wrong sign in L, or any single reversed
# loop insertion in the twist, is caught in a low degree.

# %%
from twistlog.dehn import build_L, corrupt, insertion_count, load_preset, verify_main_theorem

P = load_preset("N3,1", order=5)
L = build_L(P)

degrees = [verify_main_theorem(P, L=corrupt(L, k)).first_disagreement_degree for k in range(len(L))]
print("L flips:", degrees)

# %%
for i in (1, 2, 3):
    n = insertion_count(P, (i,))
    print(f"x{i}:", [verify_main_theorem(P, flip=(i, k)).first_disagreement_degree for k in range(n)])

# %% [markdown]
# With -L in place of L only the opposite sign verifies.

# %%
rep = verify_main_theorem(P, L=L.scale(-1))
print(rep.verified_sign, rep.signs_verifying)
