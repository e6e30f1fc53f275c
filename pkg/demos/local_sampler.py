# %% [markdown]
# Random graphs with large local independence
#
# The forbidden family for (m, r) collects the strictly 2-balanced cores of
# the m-vertex graphs with alpha < r. Sampling G(n, p) at
# p = 1/(48 t n^(1/M)) and checking for copies gives graphs where every
# m-set holds an independent r-set.

# %%
from turan2d.density import forbidden_family
from turan2d.sampler import SampleParams, experiment, sample_lll, verify_local

# %%
for m, r in [(5, 3), (6, 3), (7, 3)]:
    fam = forbidden_family(m, r)
    print(m, r, fam.to_json(), f"{len(fam.minimal_graphs)} minimal graphs")

# %%
params = SampleParams.for_local(4096, 5, 3, seed=1)
print("p at n = 4096:", params.p)
# graphs are capped at 512 vertices, so sample there
g = sample_lll(SampleParams.for_local(512, 5, 3, seed=1))
print(g.n, "vertices,", g.e, "edges; local property:", verify_local(g, 5, 3)[0])

# %% [markdown]
# At this p the graph is very sparse, so alpha is close to n. The summary
# prints the predicted scale n^(1/M) log n next to the measured medians.

# %%
rep = experiment(5, 3, [64, 128, 256, 512], reps=20, seed=3)
for s in rep.summary:
    print(s["n"], s["acceptance_rate"], s["alpha_median"], s["predicted_scale"])
print(rep.flags or "median alpha non-decreasing")
