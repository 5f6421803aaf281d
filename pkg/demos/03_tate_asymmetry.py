"""
Asymmetry of Tate cohomology
============================

M = Coker d_0^* has a complete resolution read off from C, and N is cyclic of
length two.  Tate Ext^i(M, N) vanishes for i > 0 and not for i < 0, while
ordinary Ext^i(N, M) never vanishes: the vanishing does not swap sides.
"""

from tatelab.checks import auslander_pattern
from tatelab.homalg import ext, matlis_dual, preset_module, r_dual, tate_ext, tate_tor, tor
from tatelab.scalars import FieldConfig

cfg = FieldConfig()
M, N = preset_module("M", cfg), preset_module("N", cfg)
print(M, N)

spots = range(-4, 5)
print("Tate Ext^i(M, N):", {i: tate_ext(M, N, i) for i in spots})
print("Tate Tor_i(M, N):", {i: tate_tor(M, N, i) for i in spots})
print("Ext^i(N, M):     ", {i: ext(N, M, i, method="coresolve") for i in range(0, 5)})

# the same numbers through other doors
Ms, Mv = r_dual(M), matlis_dual(M)
print("Tor_i(M*, N):    ", {i: tor(Ms, N, i) for i in range(1, 4)}, "= Tate Ext^{-i-1}(M, N)")
print("Tor_i(N, M^v):   ", {i: tor(N, Mv, i, side="second") for i in range(0, 4)}, "= Ext^i(N, M)")

# changing N to N_q moves the nonvanishing Ext^i(M, -) to i in {0, q-1, q}
for q in (1, 2, 3):
    print(f"Ext^i(M, N_{q}):", auslander_pattern(cfg, q))
