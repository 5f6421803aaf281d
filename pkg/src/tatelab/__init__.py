"""Exact homological algebra over a codimension-six Artinian Gorenstein ring.

Subpackages and modules:

- ``scalars``   exact fields (Q or F_p) and the parameter alpha
- ``polyring``  polynomials, marked bases, normal forms, ring presentations
- ``algebra``   the finite-dimensional algebra R by structure constants
- ``homalg``    free modules, resolutions, complete resolutions, Ext/Tor/Tate
- ``invsys``    divided powers and the inverse-system certificate
- ``checks``    the verification suite behind the command-line tool
"""

__version__ = "0.1.0"
