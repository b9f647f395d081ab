# %% [markdown]
# The logarithm of a Dehn twist on N_{2,1}.
# r = y2 = a1 a2 on the cover; its projection a1 a2 is two-sided and simple.
# The twist t_A on the base is the projection of t_c t_(tau c)^-1, and
# its logarithm should be sigma(L) with L = theta(c((log r)^2)).

# %%
from twistlog.dehn import build_L, geometric_twist, load_preset, log_twist_series, verify_main_theorem
from twistlog.cover import sigma_tilde
from twistlog.magnus import magnus_embed
from twistlog.words import format_word

P = load_preset("N2,1", order=4)
print("c(r) =", format_word(P.curve, "y"), " tau c(r) =", format_word(P.tau_curve, "y"),
      " base curve =", format_word(P.base_curve))
for i in (1, 2):
    print(f"t_A(x{i}) =", format_word(geometric_twist(P, (i,))))

# %%
L = build_L(P)
print(len(L), "terms in L, e.g.", L.sorted_terms()[:3])

# %%
x = (1, 2, -1)
lhs = log_twist_series(P, x)
rhs = magnus_embed(sigma_tilde(P.cover, L, x), P.order, 2)
print("log path agrees through degree", lhs.agreement_degree(rhs))

# %%
for name in ["N2,1", "N3,1"]:
    for N in (4, 5):
        rep = verify_main_theorem(load_preset(name, order=N))
        print(name, N, rep.verified, rep.signs_verifying, [c.agree_through_degree for c in rep.per_generator])
