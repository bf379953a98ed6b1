# %% [markdown]
# # Splitting jobs across machines with a setup cost
#
# Six jobs, three identical machines, and a setup of 1 before every job part.
# We evaluate four hand-made schedules, then let the exhaustive oracle confirm
# which one is optimal.

# %%
from splitsched import evaluate, oracle_optimum, OracleQuery
from splitsched.fixtures import fig1_schedules, intro_instance
from splitsched.gantt import render_ascii

inst = intro_instance()
print([str(j.p) for j in inst.jobs], "setup", inst.setup)

# %% [markdown]
# Each schedule lists, per machine, the job parts in processing order.

# %%
for key, sched in fig1_schedules().items():
    report = evaluate(inst, sched)
    print(f"schedule {key}: total {report.total}, setups {report.setup_count}")
    print(render_ascii(inst, sched))

# %% [markdown]
# The oracle enumerates every machine set per job (7^6 structures); for each
# fixed structure an exact LP sets the part sizes.

# %%
res = oracle_optimum(OracleQuery(inst))
print("optimum", res.optimum, "structures", res.enumerated, "LP solves", res.lp_solves)
print(render_ascii(inst, res.best.schedule()))
