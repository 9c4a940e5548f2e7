"""Backend selection for the hot Mobius-chain kernels.

The compiled Cython extension is preferred when importable; the pure-numpy
implementation is the always-available fallback.  Selection can be forced
with the environment variable ISING_VQCS_KERNELS set to "cy" or "py".
"""

from __future__ import annotations

import os

from . import _mobius_np

KIND_X = _mobius_np.KIND_X
KIND_ZZ = _mobius_np.KIND_ZZ
KIND_YY = _mobius_np.KIND_YY

_requested = os.environ.get("ISING_VQCS_KERNELS", "auto").lower()

_impl = _mobius_np
backend_name = "numpy"
if _requested in ("auto", "cy", "cython"):
    try:
        from . import _mobius_cy

        _impl = _mobius_cy
        backend_name = "cython"
    except ImportError:
        if _requested != "auto":
            raise ImportError(
                "ISING_VQCS_KERNELS requested the compiled backend but the "
                "extension is not built; run pip install -e . --no-build-isolation"
            )
elif _requested not in ("py", "numpy"):
    raise ValueError(f"unknown ISING_VQCS_KERNELS value: {_requested!r}")

evolve_chain = _impl.evolve_chain
evolve_final = _impl.evolve_final
evolve_chain_grad = _impl.evolve_chain_grad


def get_backend(name: str):
    """Return the kernel module for an explicit backend name (bench/tests)."""
    if name in ("py", "numpy"):
        return _mobius_np
    if name in ("cy", "cython"):
        from . import _mobius_cy

        return _mobius_cy
    raise ValueError(f"unknown backend {name!r}")
