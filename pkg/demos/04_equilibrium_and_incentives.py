# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Incentives and equilibrium
#
# In the one-shot game, truthful reporting is a dominant strategy under any
# Groves scheme.  Without taxes it is not.

# %%
from seqpivot import ProjectInstance, pivotal_spec, strategy_vector, zero_h_spec, zero_tax
from seqpivot.verification import (
    UTILITY,
    VALUATION,
    build_grid,
    check_groves_invariance,
    dominance_relation,
    nash_check,
    verify_ic,
)

inst = ProjectInstance(3, 300)
grid6 = build_grid(inst, 6)
for scheme in (pivotal_spec(), zero_h_spec(), zero_tax()):
    print(verify_ic(inst, scheme, grid6).summary())

# %% [markdown]
# Any Groves scheme gives the same optimality verdicts.  The part of the tax
# that depends only on the other players' reports cannot change which
# announcement is best.

# %%
for s in strategy_vector("greedy", inst):
    print(check_groves_invariance(s, inst, grid6, pivotal_spec(), zero_h_spec()).summary())

# %% [markdown]
# ## Comparing strategies
#
# `dominance_relation` compares two strategies of the same player while the
# later movers' announcements stay fixed.  It can score by final utility (the
# default) or by pre-tax valuation.  The two measures disagree on truth-telling
# versus the greedy rule.

# %%
grid3 = build_grid(inst, 3)
truth, greedy = strategy_vector("truth", inst)[0], strategy_vector("greedy", inst)[0]
print(dominance_relation(truth, greedy, inst, grid3, UTILITY).relation)
print(dominance_relation(truth, greedy, inst, grid3, VALUATION).relation)

# %% [markdown]
# ## Nash check
#
# The deviations considered are the named rules, every constant grid
# announcement, and every single-point change to the strategy's table.  Each
# player is tested against all of them.  Passing `base` composes both sides
# with a fixed vector first.

# %%
for name in ("thm3", "thm5"):
    vec = strategy_vector(name, inst)
    print(nash_check(vec, inst, grid3).summary())
    print(nash_check(strategy_vector("truth", inst), inst, grid3, base=vec).summary())
