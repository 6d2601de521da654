"""Pauli strings in the binary (symplectic) representation with exact phases."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .localclifford import LocalClifford

_LETTERS = "IXYZ"
# per-qubit encoding: letter -> (x, z, phase exponent of i in X^x Z^z form)
_ENC = {"I": (0, 0, 0), "X": (1, 0, 0), "Y": (1, 1, 1), "Z": (0, 1, 0)}
_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class PauliString:
    """n-qubit Pauli operator P = i^phase * prod_a X_a^{x_a} Z_a^{z_a}.

    x and z are bitmasks (bit a = qubit a); phase is mod 4.
    """

    __slots__ = ("n", "x", "z", "phase")

    def __init__(self, n: int, x: int, z: int, phase: int = 0):
        if x >> n or z >> n:
            raise ValueError("support beyond n qubits")
        self.n = n
        self.x = x
        self.z = z
        self.phase = phase & 3

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse e.g. '+XZIIZ' or '-iYX'; leftmost letter is qubit 0."""
        s = label.strip()
        phase = 0
        if s.startswith("+"):
            s = s[1:]
        elif s.startswith("-"):
            phase = 2
            s = s[1:]
        if s[:1] in ("i", "j"):
            phase += 1
            s = s[1:]
        x = z = 0
        for a, ch in enumerate(s.upper()):
            if ch not in _ENC:
                raise ValueError(f"bad Pauli letter {ch!r}")
            xb, zb, ph = _ENC[ch]
            x |= xb << a
            z |= zb << a
            phase += ph
        return cls(len(s), x, z, phase)

    def letter(self, a: int) -> str:
        xb = (self.x >> a) & 1
        zb = (self.z >> a) & 1
        return ("I", "X", "Z", "Y")[xb + 2 * zb]

    def to_label(self) -> str:
        """Sign-prefixed letter string; requires a Hermitian (+/-1) phase."""
        sgn = self.sign()
        body = "".join(self.letter(a) for a in range(self.n))
        return ("+" if sgn > 0 else "-") + body

    def sign(self) -> int:
        """+1 or -1 for Hermitian strings (phase i^k with k matching Y count)."""
        ycount = bin(self.x & self.z).count("1")
        k = (self.phase - ycount) & 3
        if k == 0:
            return 1
        if k == 2:
            return -1
        raise ValueError("Pauli string is not Hermitian")

    def is_hermitian(self) -> bool:
        return ((self.phase - bin(self.x & self.z).count("1")) & 1) == 0

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise ValueError("size mismatch")
        # Moving other's X past self's Z gives (-1) per overlapping bit.
        phase = self.phase + other.phase + 2 * bin(self.z & other.x).count("1")
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z, phase)

    def commutes(self, other: "PauliString") -> bool:
        anti = bin(self.x & other.z).count("1") + bin(self.z & other.x).count("1")
        return anti % 2 == 0

    @property
    def support(self) -> int:
        return self.x | self.z

    def conjugate_by_frame(self, frame: List[LocalClifford]) -> "PauliString":
        """(⊗C_a) P (⊗C_a)^dag with exact phase tracking."""
        x = z = 0
        phase = self.phase
        for a in range(self.n):
            xb = (self.x >> a) & 1
            zb = (self.z >> a) & 1
            if not (xb or zb):
                continue
            c = frame[a]
            nx = nz = 0
            ph = 0
            if xb:
                axis, sgn = c.image(0)
                bx, bz, bp = _ENC[_LETTERS[axis + 1]]
                nx, nz, ph = bx, bz, bp + (0 if sgn > 0 else 2)
            if zb:
                axis, sgn = c.image(2)
                bx, bz, bp = _ENC[_LETTERS[axis + 1]]
                ph += bp + (0 if sgn > 0 else 2) + 2 * (nz & bx)
                nx ^= bx
                nz ^= bz
            x |= nx << a
            z |= nz << a
            phase += ph
        return PauliString(self.n, x, z, phase)

    def dense(self) -> np.ndarray:
        """Dense 2^n matrix; index bit a of the basis state is qubit a."""
        out = np.array([[1.0 + 0j]])
        for a in range(self.n - 1, -1, -1):
            out = np.kron(out, _SINGLE[self.letter(a)])
        ycount = bin(self.x & self.z).count("1")
        return (1j ** ((self.phase - ycount) & 3)) * out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PauliString)
            and (self.n, self.x, self.z, self.phase)
            == (other.n, other.x, other.z, other.phase)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.x, self.z, self.phase))

    def __repr__(self) -> str:
        if self.is_hermitian():
            return f"PauliString({self.to_label()!r})"
        return f"PauliString(n={self.n}, x={self.x:b}, z={self.z:b}, i^{self.phase})"


def symplectic_product(x1: int, z1: int, x2: int, z2: int) -> int:
    return (bin(x1 & z2).count("1") + bin(z1 & x2).count("1")) & 1


__all__ = ["PauliString", "symplectic_product"]
