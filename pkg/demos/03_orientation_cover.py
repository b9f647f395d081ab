# %% [markdown]
# The orientation double cover of N_{g,1}.
# Base generators a_i all reverse orientation; the cover group is the even-length words.

# %%
import json

from twistlog.cover import build_cover, lift, project, sigma_tilde, tau_class, theta
from twistlog.ribbon import boundary_cycles
from twistlog.words import LoopSum, format_word

C = build_cover(2)
print(json.dumps(C.to_json()["basis"]))
print("cover rank", C.cover_rank, "euler characteristic", C.surface.euler_characteristic)
for c in boundary_cycles(C.surface):
    print(format_word(c, "y"), "->", format_word(project(C, c)))

# %%
x = (1, 2, 2, -1, 2)
par, w = lift(C, x)
print("parity", par, "lift", format_word(w, "y"), "back", format_word(project(C, w, par)))

# %% [markdown]
# tau is the deck transformation; theta = (id - tau)/2 projects onto the anti-invariant part.

# %%
y = LoopSum.from_word((2,))
print("tau(y2) =", tau_class(C, y).format("y"))
print("theta(y2) =", theta(C, y).format("y"))
assert theta(C, y + tau_class(C, y)) == 0

# %%
for x in [(1,), (2,), (1, 2)]:
    print(format_word(x), "->", sigma_tilde(C, y, x).format("x"))
print("sigma(y2)(1) =", sigma_tilde(C, y, ()).format())
