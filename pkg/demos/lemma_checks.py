# %% [markdown]
# Finite checks of the supporting lemmas
#
# Every check walks all isomorphism classes up to a small order and reports
# counterexamples. Running the deliberately weakened ("mutated") version
# shows that the check can actually fail.

# %%
from turan2d.verify import CHECKS, CLAIMS

# %%
small = {
    "equivalence-7-3": {},
    "turan-lb": {"n_max": 7},
    "turan-ub": {"n_max": 7},
    "m2-switching": {"n_max": 7},
    "disjoint-union": {"n_max": 5},
    "sparse-tf-bound": {"n_max": 9},
    "up-bip": {},
    "triangle-nbhd": {"n_max": 7, "samples": 100},
}
for name, kw in small.items():
    rep = CHECKS[name](**kw)
    bad = CHECKS[name](mutate=True, **kw)
    print(f"{name:16s} holds on {rep.instances_checked:6d} graphs: {rep.passed}; mutated: {bad.counterexamples_total} counterexamples")

# %% [markdown]
# A counterexample to the mutated equivalence claim (K4-freeness alone):

# %%
bad = CHECKS["equivalence-7-3"](mutate=True)
print(CLAIMS["equivalence-7-3"])
print(bad.counterexamples[0])
