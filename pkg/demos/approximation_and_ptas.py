# %% [markdown]
# # Fast heuristics against the exact optimum
#
# The greedy rule lets job j use at most l_j machines, with l_j growing
# with p_j / s. It is compared with the lower bounds and the oracle. Then the
# two-machine solver and the scheme with accuracy epsilon.

# %%
from fractions import Fraction

from splitsched import (ApproxConfig, OracleQuery, PtasConfig, approx_schedule, lower_bounds, oracle_optimum,
                        ptas_solve, solve_two_machines)
from splitsched.fixtures import intro_instance
from splitsched.io import generate_random

inst = intro_instance()
res = approx_schedule(ApproxConfig(), inst)
bounds = lower_bounds(inst)
print("machines per job", [res.split_bounds[j] for j in sorted(res.split_bounds)])
print("greedy", res.objective, "LB1", bounds.lb_load, "LB2", bounds.lb_setup,
      "ratio to bound", float(bounds.ratio_of(res.objective)))

# %% [markdown]
# On two machines an optimal schedule puts the k shortest jobs unsplit and
# splits the rest evenly; only two values of k need checking.

# %%
for seed in range(5):
    small = generate_random(seed, 6, 2, (Fraction(1, 2), 3), (1, 10), max_den=2)
    exact = solve_two_machines(small, audit=True)
    opt = oracle_optimum(OracleQuery(small)).optimum
    ptas = ptas_solve(PtasConfig(Fraction(1, 2)), small)
    print(f"seed {seed}: k={exact.unsplit_count} two-machine {exact.objective} oracle {opt} "
          f"ptas {ptas.objective} ({float(ptas.objective / opt):.4f} x)")
