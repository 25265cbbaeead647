"""Reference values for the statistics kernel, computed with SciPy.

Usage: python3 scripts/stats_reference.py
Output is pasted into crates/core/tests/fixtures/stats_reference.json.
"""
import json
import math

import numpy as np
import scipy
from scipy import stats

points = [
    (0.0, 1.0), (1.0, 1.0), (-1.0, 1.0), (2.5, 1.0), (0.5, 2.0), (-2.0, 2.0),
    (1.5, 3.0), (3.182446305284263, 3.0), (-0.7, 4.5), (2.0, 5.0), (-3.5, 7.25),
    (1.0, 10.0), (2.228138851986274, 10.0), (-1.3, 17.0), (0.25, 29.5),
    (1.961, 98.0), (-2.6, 98.0), (1.961, 1000.0), (4.0, 250.0), (-0.05, 1e5),
]
t_cdf = [{"t": t, "df": df, "cdf": float(stats.t.cdf(t, df))} for t, df in points]

x = [1, 2, 3, 4, 5]
y = [2, 1, 4, 3, 6]
r, p = stats.pearsonr(x, y)

wx = [12.1, 14.3, 11.8, 15.2, 13.7]
wy = [10.4, 11.9, 9.8, 12.5, 10.1]
w = stats.ttest_ind(wx, wy, equal_var=False)
vx, vy = np.var(wx, ddof=1), np.var(wy, ddof=1)
df = (vx / 5 + vy / 5) ** 2 / ((vx / 5) ** 2 / 4 + (vy / 5) ** 2 / 4)

n = 805
sa = math.sqrt(0.3 * 0.7 * n / (n - 1))
sb = math.sqrt(0.1 * 0.9 * n / (n - 1))
prop = stats.ttest_ind_from_stats(0.3, sa, n, 0.1, sb, n, equal_var=False)

out = {
    "generator": "scipy %s" % scipy.__version__,
    "t_cdf": t_cdf,
    "pearson": {"x": x, "y": y, "r": float(r), "p": float(p)},
    "welch": {"x": wx, "y": wy, "t": float(w.statistic), "df": float(df), "p": float(w.pvalue)},
    "two_proportion": {"rate_a": 0.3, "rate_b": 0.1, "n": n, "t": float(prop.statistic), "p": float(prop.pvalue)},
    "binomial_upper": [
        {"k": 16, "n": 100, "p0": 0.05, "p": float(stats.binom.sf(15, 100, 0.05))},
        {"k": 16, "n": 50, "p0": 0.05, "p": float(stats.binom.sf(15, 50, 0.05))},
    ],
    "f_sf": {"f": 13.096, "df1": 1, "df2": 98, "p": float(stats.f.sf(13.096, 1, 98))},
}
print(json.dumps(out, indent=2))
