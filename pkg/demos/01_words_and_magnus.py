# %% [markdown]
# Words, group rings and the Magnus expansion.
# Everything is exact: coefficients are Fractions, series are truncated at a fixed degree.

# %%
from fractions import Fraction

from twistlog.magnus import DerivationRep, TruncatedSeries, exp_derivation, exp_series, ideal_degree, log_series, magnus_embed
from twistlog.words import GroupRingElement, cyclic_canonical, format_word, parse_word, reduce

w = parse_word("x1 x2 x2^-1 x1 x3")
print(format_word(w))                                   # x1 x1 x3
print(format_word(cyclic_canonical(parse_word("x2 x1 x2^-1"))))  # x1

# %%
one = GroupRingElement.one(2)
x1 = GroupRingElement.from_word((1,))
print(((x1 - one) * (x1 + one)).format())               # -e + x1 x1

# %% [markdown]
# The commutator starts in degree 2 of the augmentation filtration.

# %%
comm = parse_word("x1 x2 x1^-1 x2^-1")
print(magnus_embed(comm, 2, 2).format())
print(ideal_degree(GroupRingElement.from_word(comm) - one, 5, 2))

# %%
s = magnus_embed((1, 2), 4, 2)
ell = log_series(s)
print(ell.format())
assert exp_series(ell) == s

# %% [markdown]
# exp of a nilpotent derivation is an algebra automorphism of the truncation.

# %%
N = 4
X1, X2 = TruncatedSeries.generator(1, 2, N), TruncatedSeries.generator(2, 2, N)
D = DerivationRep(2, N, {1: (X1 * X2 - X2 * X1).scale(Fraction(1, 2)), 2: TruncatedSeries.zero(2, N)})
a, b = magnus_embed((1,), N, 2), magnus_embed((2, 1), N, 2)
assert exp_derivation(D, a * b) == exp_derivation(D, a) * exp_derivation(D, b)
print(exp_derivation(D, a).format())
