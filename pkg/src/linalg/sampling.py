"""Seeded, splittable random sampling of matrices.

Each check draws from its own ``SampleRng`` whose key is derived from the
master seed and a slash-separated case path, so cases can run in any order
or in parallel and still see the same numbers.
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .core import CMatrix, adjoint


def derive_seed(master_seed: int, path: str) -> int:
    """Derive a 64-bit key from a master seed and a case path."""
    digest = hashlib.blake2b(f"{master_seed}/{path}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


@dataclass
class SampleRng:
    """Counter-based (Philox) generator tagged with its derivation path."""
    master_seed: int
    path: str
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        key = derive_seed(self.master_seed, self.path)
        self.generator = np.random.Generator(np.random.Philox(key=key))

    def provenance(self) -> dict:
        return {"seed": int(self.master_seed), "path": self.path}

    def complex_matrix(self, rows: int, cols: int) -> CMatrix:
        """Independent standard complex Gaussian entries (E|z|^2 = 1)."""
        re = self.generator.standard_normal((rows, cols))
        im = self.generator.standard_normal((rows, cols))
        return (re + 1j * im) / np.sqrt(2.0)

    def hermitian(self, n: int) -> CMatrix:
        g = self.complex_matrix(n, n)
        return (g + adjoint(g)) / 2

    def unitary(self, n: int) -> CMatrix:
        """Haar-distributed unitary: QR of a Gaussian matrix with phases fixed."""
        q, r = np.linalg.qr(self.complex_matrix(n, n))
        diagonal = np.diag(r)
        phases = diagonal / np.where(np.abs(diagonal) == 0, 1.0, np.abs(diagonal))
        return q * phases

    def scalar(self) -> complex:
        return complex(self.complex_matrix(1, 1)[0, 0])

    def uniform(self, low: float, high: float) -> float:
        return float(self.generator.uniform(low, high))


def case_rng(master_seed: int, path: str) -> SampleRng:
    """Shorthand for ``SampleRng(master_seed, path)``."""
    return SampleRng(master_seed, path)
