"""Binary symplectic representation of the n-qubit Pauli group.

An observable ``A_1 A_2 ... A_n`` (phase dropped) is stored as two n-bit
integers: ``a`` holds the Z-exponents and ``b`` the X-exponents, so that
``A_i = Z^{a_i} X^{b_i}`` up to phase.  Qubit 1 is the leftmost character of
the text form and the most significant bit of ``a`` and ``b``.

The packed ``code = a << n | b`` is the canonical point ID used by every other
module; sorting observables by code gives the canonical point order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

MAX_QUBITS = 8

_LETTER_BITS = {"I": (0, 0), "X": (0, 1), "Y": (1, 1), "Z": (1, 0)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}

# i^k exponent of the single-qubit product P.Q, keyed by (a_P, b_P, a_Q, b_Q).
# XY = iZ, YZ = iX, ZX = iY and the reversed orders carry -i.
_X, _Y, _Z = (0, 1), (1, 1), (1, 0)
_PAIR_PHASE = {
    _X + _Y: 1, _Y + _Z: 1, _Z + _X: 1,
    _Y + _X: 3, _Z + _Y: 3, _X + _Z: 3,
}


class PauliError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Phase:
    """The scalar i^k, k taken mod 4."""

    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)

    def __mul__(self, other: Phase) -> Phase:
        return Phase(self.k + other.k)

    @property
    def value(self) -> complex:
        return (1, 1j, -1, -1j)[self.k]

    def __str__(self) -> str:
        return ("+1", "+i", "-1", "-i")[self.k]


@dataclass(frozen=True, order=True)
class Observable:
    """A canonical (phase +1) n-qubit Pauli operator."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise PauliError(f"qubit count {self.n} outside 1..{MAX_QUBITS}")
        mask = (1 << self.n) - 1
        if self.a & ~mask or self.b & ~mask:
            raise PauliError("exponent vector wider than n bits")

    @classmethod
    def from_code(cls, code: int, n: int) -> Observable:
        return cls(n, code >> n, code & ((1 << n) - 1))

    @property
    def code(self) -> int:
        return self.a << self.n | self.b

    @property
    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        return to_text(self.code, self.n)

    def __repr__(self) -> str:
        return f"Observable({self})"


def parse_observable(text: str) -> Observable:
    """Parse ``"XYZ"``-style text; leftmost letter is qubit 1."""
    if not isinstance(text, str) or not text:
        raise PauliError("empty observable string")
    n = len(text)
    if n > MAX_QUBITS:
        raise PauliError(f"{n} qubits exceeds the supported maximum {MAX_QUBITS}")
    a = b = 0
    for ch in text:
        try:
            za, xb = _LETTER_BITS[ch]
        except KeyError:
            raise PauliError(f"invalid Pauli letter {ch!r} in {text!r}") from None
        a = a << 1 | za
        b = b << 1 | xb
    return Observable(n, a, b)


def code_of(text: str) -> int:
    return parse_observable(text).code


def to_text(code: int, n: int) -> str:
    a, b = code >> n, code & ((1 << n) - 1)
    return "".join(
        _BITS_LETTER[(a >> i & 1, b >> i & 1)] for i in range(n - 1, -1, -1)
    )


def _check_same(u: Observable, v: Observable) -> None:
    if u.n != v.n:
        raise PauliError(f"qubit counts differ: {u.n} vs {v.n}")


# -- integer-code kernels (used by the geometry modules) ----------------------

def sympl(u: int, v: int, n: int) -> int:
    """Symplectic form of two packed codes."""
    m = (1 << n) - 1
    return ((u >> n & v & m) ^ (v >> n & u & m)).bit_count() & 1


def mul_phase(u: int, v: int, n: int) -> int:
    """Exponent k of i^k in the product of the canonical operators u.v."""
    m = (1 << n) - 1
    ua, ub, va, vb = u >> n, u & m, v >> n, v & m
    k = 0
    for i in range(n):
        k += _PAIR_PHASE.get(
            (ua >> i & 1, ub >> i & 1, va >> i & 1, vb >> i & 1), 0
        )
    return k & 3


def y_count(code: int, n: int) -> int:
    return (code >> n & code).bit_count()


def context_phase(codes, n: int) -> int:
    """Phase exponent of the ordered product of canonical operators.

    Raises if the product is not proportional to the identity.
    """
    acc, k = 0, 0
    for c in codes:
        k += mul_phase(acc, c, n)
        acc ^= c
    if acc:
        raise PauliError("product of the context is not proportional to identity")
    return k & 3


# -- public operations ---------------------------------------------------------

def symplectic_form(u: Observable, v: Observable) -> int:
    _check_same(u, v)
    return sympl(u.code, v.code, u.n)


def commutes(u: Observable, v: Observable) -> bool:
    return symplectic_form(u, v) == 0


def multiply(u: Observable, v: Observable) -> tuple[Observable, Phase]:
    """Product u.v as (canonical observable, phase)."""
    _check_same(u, v)
    return (
        Observable(u.n, u.a ^ v.a, u.b ^ v.b),
        Phase(mul_phase(u.code, v.code, u.n)),
    )


def context_sign(obs) -> int:
    """Sign of a context: +1 if the product is +I, -1 if it is -I."""
    obs = list(obs)
    if not obs:
        raise PauliError("empty context")
    n = obs[0].n
    for o in obs:
        _check_same(obs[0], o)
    for i, u in enumerate(obs):
        for v in obs[i + 1:]:
            if sympl(u.code, v.code, n):
                raise PauliError(f"{u} and {v} do not commute")
    if reduce(lambda x, y: x ^ y, (o.code for o in obs)):
        raise PauliError("product of the context is not proportional to identity")
    k = context_phase((o.code for o in obs), n)
    if k & 1:
        # commuting operators multiplying to a multiple of I cannot give +-i
        raise PauliError("context product has phase +-i")
    return 1 if k == 0 else -1


def is_symmetric(u: Observable) -> bool:
    """True iff the operator equals its transpose (even number of Y's)."""
    return y_count(u.code, u.n) % 2 == 0
