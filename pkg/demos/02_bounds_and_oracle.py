"""Compare the finitistic dimension bounds with brute force.

For a few small random algebras the bounds are evaluated, then every
indecomposable of dimension at most 4 is enumerated up to isomorphism
and the largest finite projective dimension among them is reported next
to the bound.  The oracle only sees small modules, so it gives a lower
estimate of fin.dim; the bound must never be below it.

    python demos/02_bounds_and_oracle.py
"""

from findim.bounds import EnumerationBudgetError, evaluate_bounds, truncated_findim
from findim.random_modules import random_algebras

for k, algebra in enumerate(random_algebras(6, seed=5)):
    rep = evaluate_bounds(algebra)
    line = f"#{k} n={algebra.n} dim={algebra.dim} ll^inf={rep.ll_inf_algebra} main bound={rep.bound_main}"
    try:
        res = truncated_findim(algebra, max_dim=4, limit=5000)
        line += f" | {res.indecomposables} indecomposables, max finite pd {res.max_finite_pd}"
    except EnumerationBudgetError as e:
        line += f" | oracle skipped: {e}"
    print(line)
