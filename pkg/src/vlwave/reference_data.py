"""Published reference values for the five built-in examples.

Exact-solution columns are printed truncated to 7 decimals. The HFC and LWM columns
come from third-party methods and are kept only for side-by-side reporting.
"""

from __future__ import annotations

TABLE1_EXAMPLE1 = {
    # x: (exact, collocation, tau, galerkin)
    0.1: (0.0025015, 1.3701e-12, 9.4083e-07, 4.1019e-05),
    0.2: (0.0100250, 9.0015e-13, 3.9899e-07, 7.1956e-05),
    0.3: (0.0226275, 1.1882e-12, 5.3283e-08, 8.3708e-05),
    0.4: (0.0404054, 1.4496e-12, 4.7147e-07, 9.2989e-05),
    0.5: (0.0634973, 1.5533e-12, 1.0288e-06, 1.0235e-04),
    0.6: (0.0920878, 2.0826e-12, 8.6287e-07, 1.0947e-04),
    0.7: (0.1264121, 8.8321e-13, 2.4217e-07, 1.1425e-04),
    0.8: (0.1667632, 7.3194e-13, 9.5880e-08, 1.1836e-04),
    0.9: (0.2135007, 1.8588e-12, 1.9422e-07, 1.2276e-04),
    1.0: (0.2670627, 9.3192e-13, 7.7329e-07, 1.2706e-04),
}

TABLE1_EXAMPLE2 = {
    0.1: (0.0983631, 1.7106e-04, 1.7790e-03, 2.0126e-04),
    0.2: (0.1870978, 3.9765e-04, 6.3775e-04, 3.4647e-04),
    0.3: (0.2575181, 1.2307e-04, 2.6134e-03, 5.0466e-04),
    0.4: (0.3027306, 3.6135e-04, 2.6338e-03, 5.4599e-04),
    0.5: (0.3183098, 5.9103e-04, 1.0177e-03, 4.0975e-04),
    0.6: (0.3027306, 3.6135e-04, 1.1302e-03, 1.5710e-04),
    0.7: (0.2575181, 1.2307e-04, 2.6834e-03, 8.3777e-05),
    0.8: (0.1870978, 3.9765e-04, 2.9582e-03, 2.0029e-04),
    0.9: (0.0983631, 1.7106e-04, 1.8955e-03, 1.5510e-04),
}

TABLE2_EXAMPLE3 = {
    # x: (exact, HFC error, collocation error)
    0.01: (-0.0000009, 5.7e-08, 5.5603e-16),
    0.10: (-0.0009000, 8.4e-08, 6.3881e-16),
    0.50: (-0.0625000, 2.2e-06, 1.8318e-15),
    1.00: (0.0000000, 8.2e-07, 2.7755e-15),
    2.00: (8.0000000, 1.7e-07, 1.7763e-15),
}

TABLE2_EXAMPLE4 = {
    # x: (exact, LWM error, collocation error)
    0.1: (0.9900498, 4.8e-06, 3.3306e-16),
    0.2: (0.9607894, 6.8e-06, 3.3306e-16),
    0.3: (0.9139311, 8.0e-07, 3.3306e-16),
    0.4: (0.8521437, 8.3e-06, 3.3306e-16),
    0.5: (0.7788007, 1.2e-05, 2.2204e-16),
    0.6: (0.6976763, 5.3e-05, 1.1102e-16),
    0.7: (0.6126263, 2.0e-04, 1.1102e-16),
    0.8: (0.5272924, 5.9e-04, 2.2204e-16),
    0.9: (0.4448580, 1.4e-03, 5.5511e-17),
    1.0: (0.3678794, 3.0e-03, 5.6511e-17),
}

TABLE2_EXAMPLE5 = {
    # x: (exact, HFC error, collocation error)
    0.01: (1.0001000, 2.2e-08, 4.4408e-16),
    0.02: (1.0004000, 1.5e-08, 2.2204e-16),
    0.05: (1.0025031, 2.1e-08, 2.2204e-16),
    0.1: (1.0100501, 1.7e-08, 4.4408e-16),
    0.2: (1.0408107, 2.1e-08, 4.4408e-16),
    0.5: (1.2840254, 3.0e-08, 4.4408e-16),
    0.7: (1.6323162, 4.2e-08, 6.6613e-16),
    0.8: (1.8964808, 5.1e-08, 2.2204e-16),
    0.9: (2.2479079, 9.2e-08, 4.4408e-16),
    1.0: (2.7182818, 8.8e-08, 8.8817e-16),
}

# Run settings used for each published table block: problem id -> (eta, schemes, table).
TABLE1_RUNS = {1: (12, TABLE1_EXAMPLE1), 2: (6, TABLE1_EXAMPLE2)}
TABLE2_RUNS = {3: (5, TABLE2_EXAMPLE3, "HFC"), 4: (3, TABLE2_EXAMPLE4, "LWM"), 5: (3, TABLE2_EXAMPLE5, "HFC")}

# Acceptance tolerances on the max absolute error over each published grid.
TABLE1_TOLERANCES = {
    1: {"collocation": 1e-10, "tau": 1e-5, "galerkin": 5e-4},
    2: {"collocation": 5e-3, "tau": 3e-2, "galerkin": 5e-3},
}
TABLE2_COLLOCATION_TOLERANCE = 1e-8
EXACT_RECOVERY_TOLERANCE = 1e-9
