"""Backend selection for the transport kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``PERIODIC_SCA_PURE`` is set to a non-empty value, the
pure-Python twin is used.  Both expose the same functions.
"""

from __future__ import annotations

import importlib
import os
from array import array
from types import ModuleType

from .tableau import RMatrix


def load_backend(name: str) -> ModuleType:
    if name == "python":
        return importlib.import_module("periodic_sca._kernels_py")
    if name == "cython":
        return importlib.import_module("periodic_sca._kernels")
    raise ValueError(f"unknown backend {name!r}")


def _select() -> ModuleType:
    if os.environ.get("PERIODIC_SCA_PURE"):
        return load_backend("python")
    try:
        return load_backend("cython")
    except ImportError:
        return load_backend("python")


backend = _select()
BACKEND: str = backend.BACKEND


class TransportTables:
    """Flat integer arrays describing one combinatorial R, ready for a kernel."""

    def __init__(self, rmat: RMatrix, impl: ModuleType | None = None):
        self.rmat = rmat
        self.impl = impl or backend
        self.alphabet = rmat.alphabet
        self.n_carriers = len(rmat)
        self.out_letter = array("i", rmat.out_letter)
        self.next_carrier = array("i", rmat.next_carrier)
        self.energy = array("i", rmat.energy)

    def fixed_carriers(self, path: array) -> list[int]:
        return self.impl.fixed_carriers(self.next_carrier, self.alphabet, self.n_carriers, path)

    def transport(self, path: array, v: int) -> tuple[array, int, array]:
        out = array("i", bytes(4 * len(path)))
        en = array("i", bytes(4 * len(path)))
        v_final = self.impl.run_transport(self.out_letter, self.next_carrier, self.energy,
                                          self.alphabet, path, v, out, en)
        return out, v_final, en

    def evolve_steps(self, path: array, steps: int, stop_on_return: bool = False):
        visits = array("l", bytes(array("l").itemsize * self.n_carriers))
        status = self.impl.evolve_steps(self.out_letter, self.next_carrier, self.energy,
                                        self.alphabet, self.n_carriers, path, steps, visits,
                                        stop_on_return)
        return status, visits
