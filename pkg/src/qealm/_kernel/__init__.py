"""Ground SAT kernel selection.

The compiled extension is used when it imports; otherwise, or when
``QEALM_PURE_PYTHON`` is set to a non-empty value, the pure-Python twin
runs instead. Both share the signature ``solve_csr(num_atoms, indptr, lits)``.
"""

import os

from . import _dpll

python_solve_csr = _dpll.solve_csr

try:
    from ._dpll_ext import solve_csr as compiled_solve_csr
except ImportError:  # extension not built
    compiled_solve_csr = None

if compiled_solve_csr is not None and not os.environ.get("QEALM_PURE_PYTHON"):
    solve_csr = compiled_solve_csr
    KERNEL = "compiled"
else:
    solve_csr = python_solve_csr
    KERNEL = "python"

__all__ = ["solve_csr", "python_solve_csr", "compiled_solve_csr", "KERNEL"]
