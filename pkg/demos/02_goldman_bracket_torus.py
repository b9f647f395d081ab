# %% [markdown]
# Curves on the one-holed torus.
# The surface is a single vertex with edge-ends +1, +2, -1, -2 in counterclockwise order.

# %%
from twistlog.ribbon import boundary_cycles, goldman_bracket, kk_action, linked_pairs, load_surface, twist_insert
from twistlog.words import LoopSum, format_word

T = load_surface("torus1")
print("boundary:", [format_word(c) for c in boundary_cycles(T)])
print("euler characteristic:", T.euler_characteristic)

# %%
a, b = LoopSum.from_word((1,)), LoopSum.from_word((2,))
print(linked_pairs(T, (1,), (2,)))          # one crossing, sign +1
print("[a, b] =", goldman_bracket(T, a, b).format())
print("[a, a] =", goldman_bracket(T, a, a).format())

# %% [markdown]
# The action of a free loop on a based loop, and the Dehn twist it exponentiates to.

# %%
print("a acting on b:", kk_action(T, a, (2,)).format())
print("t_a(b) =", format_word(twist_insert(T, (1,), (2,))))
print("t_b(a) =", format_word(twist_insert(T, (2,), (1,))))

# %%
# slopes 2/1 and 0/1 meet twice
print(len(linked_pairs(T, (1, 1, 2), (2,))))

# %%
# the boundary commutes with everything
d = LoopSum.from_word(boundary_cycles(T)[0])
for w in [(1,), (1, 2, 2), (1, -2, 1, 2)]:
    assert goldman_bracket(T, d, LoopSum.from_word(w)) == 0
