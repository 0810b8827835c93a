# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Three players, one project
#
# A project costs 300 and three players A, B, C would each pay an equal share
# of 100.  The project is built when the announced types add up to at least 300.
# The pivotal (Clarke) tax charges a player only when their announcement flips
# the decision for everyone else.

# %%
from seqpivot import ProjectInstance, outcome, pivotal_spec, play, strategy_vector
from seqpivot.cli import render_table

inst = ProjectInstance(3, 300)
pivotal = pivotal_spec()

# %% [markdown]
# ## Truthful, simultaneous reports
#
# With types (110, 80, 110) the project is built.  A and C are each pivotal
# and pay 10.  Social welfare is the sum of utilities.

# %%
truth = (110, 80, 110)
direct = outcome(inst, pivotal, truth, truth)
print(direct.taxes, direct.utilities, direct.social_welfare)

# %% [markdown]
# ## Announcing in turn
#
# Now the players speak in order A, B, C, and each one sees what the earlier
# players announced.  Under the decision-preserving rule (`thm3`), a player who
# can already push the running sum to 300 announces 300.  That leaves the
# decision unchanged but takes A off the hook.

# %%
trace = play(inst, pivotal, (1, 2, 3), strategy_vector("thm3", inst), truth)
print(render_table(trace))

# %% [markdown]
# ## A tie at the last mover
#
# With types (60, 70, 250), C is the last to move and holds the deciding
# announcement.  Under the welfare-seeking rule (`thm5`), C reports 300 and
# pays 70.

# %%
trace = play(inst, pivotal, (1, 2, 3), strategy_vector("thm5", inst), (60, 70, 250))
print(render_table(trace))

# %% [markdown]
# ## The recorded examples
#
# `seqpivot.golden` keeps the expected rows for all of these and recomputes
# them from the model.  An empty diff means every field matches exactly.

# %%
from seqpivot import golden

print(golden.diff() or "all recorded rows match")
