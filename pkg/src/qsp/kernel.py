"""Kernel selection: compiled extension when available, pure Python otherwise.

Set QSP_PURE_PYTHON=1 to force the pure-Python kernel (used by the
benchmark to compare both backends).
"""

import os

if os.environ.get("QSP_PURE_PYTHON"):
    from . import _kernel_py as impl
else:
    try:
        from . import _kernel_cy as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as impl

BACKEND = impl.BACKEND
pnorm = impl.pnorm
padd = impl.padd
psub = impl.psub
pneg = impl.pneg
pmul = impl.pmul
pmulint = impl.pmulint
pshift = impl.pshift
pcontent = impl.pcontent
pdivexact = impl.pdivexact
pprem = impl.pprem
pgcd = impl.pgcd
peval1 = impl.peval1
