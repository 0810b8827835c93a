# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Checking strategies by brute force
#
# A strategy is *optimal* if, at every input (the announced prefix plus the
# player's own type), no other announcement ever does better, whatever the
# later players announce.  The checks use a grid of types.  For later movers
# they also use a few extra tails whose sums fall on, and between, the points
# where the decision flips.  Because of those extra tails, a verdict at a grid
# input holds for every possible tail, not just the tails drawn from the grid.

# %%
from seqpivot import ProjectInstance, strategy_vector
from seqpivot.verification import (
    build_grid,
    check_lemma_compat,
    max_welfare_over_optimal,
    verify_optimal,
    verify_socially_optimal,
    welfare_maximality,
)

inst = ProjectInstance(3, 300)
grid = build_grid(inst, 3, extra=(110, 80, 250, 60, 70))

# %%
for name in ("truth", "thm3", "thm5", "greedy"):
    for s in strategy_vector(name, inst):
        print(verify_optimal(s, inst, grid).summary())

# %% [markdown]
# The greedy rule fails: it reports 0 or c based only on the player's own
# type.  Every verdict keeps its violations.  Each witness is a full profile,
# with the announcement that beats the strategy's choice.

# %%
verdict = verify_optimal(strategy_vector("greedy", inst)[0], inst, grid)
print(verdict.violations[0])
print(len(verdict.violations), "violations")

# %% [markdown]
# ## Welfare among optimal announcements
#
# Suppose the running sum lands exactly on c and the last mover's type is
# above their cost share.  Funding and cancelling then give that player the
# same utility, but welfare is higher when they cancel.  The welfare-seeking
# rule (`thm5`) cancels in that case.  The decision-preserving rule (`thm3`)
# does not.

# %%
print(verify_socially_optimal(strategy_vector("thm5", inst)[2], inst, grid).summary())
print(verify_socially_optimal(strategy_vector("thm3", inst)[2], inst, grid).summary())

# %%
print(welfare_maximality(inst, grid, "thm5").summary())
print(max_welfare_over_optimal(inst, grid, (60, 70, 250)))

# %% [markdown]
# ## Structure of the optimal sets
#
# Four rules describe every optimal announcement:
#
# - Below c and not last: only the true type is optimal.
# - Below c and last: an optimal announcement keeps the sum below c.
# - Exactly at c and not last: an optimal announcement is at least the true type.
# - Above c: an optimal announcement keeps the sum at or above c.

# %%
verdict = check_lemma_compat(inst, build_grid(inst, 6))
print(verdict.summary(), verdict.details)
