# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Choosing who speaks last
#
# Who moves last matters.  If the last mover is not pivotal, the
# decision-preserving strategies drive every tax to zero, and the mechanism
# balances its budget.

# %%
from seqpivot import (
    ProjectInstance,
    budget_balanced_orders,
    format_rational,
    find_budget_balanced_order,
    is_pivotal,
    pivotal_spec,
    strategy_vector,
    sweep_orders,
)
from seqpivot.cli import label

inst = ProjectInstance(3, 300)
types = (110, 80, 110)

# %% [markdown]
# ## Every order at once
#
# `sweep_orders` plays all n! orders and returns them in lexicographic order.
# Set `SEQPIVOT_THREADS` (0 means every core) to spread the plays across
# threads.  The results are the same either way.

# %%
for order, trace in sweep_orders(inst, pivotal_spec(), strategy_vector("thm3", inst), types):
    names = "".join(label(i) for i in order)
    fmt = lambda xs: " ".join(format_rational(x) for x in xs)  # noqa: E731
    print(f"{names}: announced {fmt(trace.announcements)}, taxes {fmt(trace.outcome.taxes)}, "
          f"SW {format_rational(trace.outcome.social_welfare)}")

# %% [markdown]
# B is the only player who is not pivotal.  The balanced orders are exactly
# the ones that end with B.

# %%
print([label(i) for i in (1, 2, 3) if not is_pivotal(inst, types, i)])
print(budget_balanced_orders(inst, types))
print(find_budget_balanced_order(inst, types))

# %% [markdown]
# ## Across a whole grid
#
# A balanced order exists at every profile on the six-step grid.
# `find_budget_balanced_order` re-checks each order before returning it.

# %%
from seqpivot.verification import build_grid

grid = build_grid(inst, 6)
orders = {theta: find_budget_balanced_order(inst, theta) for theta in grid.profiles()}
print(len(orders), "profiles, all with a balanced order")
