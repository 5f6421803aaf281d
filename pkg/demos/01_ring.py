"""
The ring R and why it is Gorenstein
===================================

Build R = k[T,U,V,X,Y,Z]/I over the rationals with alpha = 2, look at its
basis and the products that land in the socle, then certify the socle with
the inverse system of a cubic.
"""

from tatelab.algebra import preset_ring, socle
from tatelab.invsys import apolar_form, contract, verify_apolarity
from tatelab.polyring import groebner_check_by_hilbert, preset_presentation
from tatelab.scalars import FieldConfig

cfg = FieldConfig()                       # rationals, alpha = 2
pres = preset_presentation("codim6-gorenstein", cfg)

# the marked leading terms form a Groebner basis: standard monomials and
# dim (P/I)_d agree degree by degree
ev = groebner_check_by_hilbert(pres.basis, 4, cfg.field)
print("standard monomials per degree:", ev.standard_counts, "| dim (P/I)_d:", ev.quotient_dims)

R = preset_ring(cfg)
print("basis:", [R.basis_name(i) for i in range(R.dim)])
print("Hilbert function:", R.hilbert_function())

# degree one times degree two, in units of s = tvx
s = R.parse("t*v*x")
for a in "tuvxyz":
    row = []
    for b in ("tv", "uv", "vx", "vy", "vz", "tx"):
        p = R.parse(a) * R.parse(f"{b[0]}*{b[1]}")
        row.append(str(p.coeffs[-1]) if p == s * R.element([p.coeffs[-1]] + [0] * 13) else "?")
    print(f"  {a} | " + " ".join(f"{c:>3}" for c in row))

# socle by linear algebra in R ...
print("socle:", [[R.basis_name(i) for i, c in enumerate(v) if c != 0] for v in socle(R)])

# ... and independently by apolarity: I annihilates the cubic F and P/I_F has
# the same Hilbert function, so I = I_F is Gorenstein with socle degree 3
F = apolar_form(cfg)
ok, evidence = verify_apolarity(pres.basis, F)
print("apolarity certificate:", ok, evidence.hilbert_apolar)
print("TVX o F =", contract(pres.parse("T*V*X"), F))
