# %% [markdown]
# # Weighted instances from 3-Partition
#
# With weights w_j = p_j + s the weighted objective of an unsplit schedule
# depends only on machine loads, so a perfect partition is the best unsplit
# assignment. For a setup as large as (sum a)^2, splitting never pays and the
# oracle agrees.

# %%
from splitsched import OracleQuery, oracle_optimum
from splitsched.hardness import ThreePartitionInput, balanced_value, build_3partition_instance

data = ThreePartitionInput((1, 1, 4, 2, 2, 2))
s = sum(data.numbers) ** 2
inst = build_3partition_instance(data, s)
res = oracle_optimum(OracleQuery(inst, weighted=True, permutations="spt-ties"))
print("target per machine", data.target)
print("balanced value", balanced_value(data, s), "oracle", res.optimum)
print("machine sets", {j: sorted(ms) for j, ms in res.best.schedule().machine_sets().items()})
