"""Arithmetic in GF(2^m), 1 <= m <= 16, through exponent/log tables.

Field elements are plain ints in [0, 2^m).  Bit i of a value is the
coefficient of x^i of the corresponding polynomial over GF(2), so
addition is XOR.  A field is constructed from a degree-m modulus
polynomial (same bit convention, with bit m set).  The modulus must be
primitive: the constructor fills the exponent table by repeatedly
multiplying by x and rejects any modulus for which x fails to generate
the whole multiplicative group.
"""
from __future__ import annotations

from .errors import DegreeOutOfRange, DivisionByZero, NonPrimitiveModulus

#: Default primitive modulus per extension degree.  Conventional choices
#: (the degree-8 entry is the Reed-Solomon standard 0x11D, not the AES
#: polynomial, which is irreducible but not primitive).  Primitivity of
#: every entry is re-verified at construction time.
DEFAULT_MODULI: dict[int, int] = {
    1: 0b11,                 # x + 1
    2: 0b111,                # x^2 + x + 1
    3: 0b1011,               # x^3 + x + 1
    4: 0b10011,              # x^4 + x + 1
    5: 0b100101,             # x^5 + x^2 + 1
    6: 0b1000011,            # x^6 + x + 1
    7: 0b10000011,           # x^7 + x + 1
    8: 0b100011101,          # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,         # x^9 + x^4 + 1
    10: 0b10000001001,       # x^10 + x^3 + 1
    11: 0b100000000101,      # x^11 + x^2 + 1
    12: 0b1000001010011,     # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,    # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,   # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10001000000001011, # x^16 + x^12 + x^3 + x + 1
}


class Field:
    """GF(2^m) with table-driven multiplication.

    Parameters
    ----------
    m:
        Extension degree, 1 <= m <= 16.
    modulus:
        Optional modulus polynomial (bit mask, degree exactly m).  When
        omitted the entry from ``DEFAULT_MODULI`` is used.

    Attributes
    ----------
    q:
        Field size 2^m.
    exp:
        Exponent table of length 2(q-1): ``exp[i]`` is x^i.  The doubled
        length lets products skip the mod-(q-1) reduction.
    log:
        Discrete log base x; ``log[0]`` is unused.
    """

    __slots__ = ("m", "q", "modulus", "exp", "log")

    def __init__(self, m: int, modulus: int | None = None):
        if not 1 <= m <= 16:
            raise DegreeOutOfRange(f"extension degree {m} outside 1..16")
        if modulus is None:
            modulus = DEFAULT_MODULI[m]
        if modulus.bit_length() != m + 1:
            raise NonPrimitiveModulus(
                f"modulus {modulus:#x} does not have degree {m}"
            )
        if not modulus & 1:
            # x divides the modulus, so it is reducible and x is a zero divisor.
            raise NonPrimitiveModulus(f"modulus {modulus:#x} has zero constant term")
        self.m = m
        self.q = 1 << m
        self.modulus = modulus

        order = self.q - 1
        exp = [0] * (2 * order)
        log = [0] * self.q
        v = 1
        for i in range(order):
            if v == 1 and i > 0:
                raise NonPrimitiveModulus(
                    f"modulus {modulus:#x} is not primitive: x has order {i}"
                )
            exp[i] = v
            exp[i + order] = v
            log[v] = i
            v <<= 1
            if v & self.q:
                v ^= modulus
        if v != 1:
            # Cannot happen for an irreducible modulus, but a reducible one
            # can send x into a cycle that never returns to 1.
            raise NonPrimitiveModulus(f"modulus {modulus:#x} is reducible")
        self.exp = exp
        self.log = log

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        """Sum of two elements (characteristic 2, so also the difference)."""
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        """Product of two elements; zero absorbs."""
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        """Multiplicative inverse of a nonzero element."""
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        return self.exp[self.q - 1 - self.log[a]]

    def div(self, a: int, b: int) -> int:
        """Quotient a / b with b nonzero."""
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        return self.exp[self.log[a] - self.log[b] + self.q - 1]

    def pow(self, a: int, e: int) -> int:
        """Power a^e for integer e (negative allowed when a is nonzero)."""
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    # -- conveniences -------------------------------------------------------

    def alpha_power(self, i: int) -> int:
        """x^i for any integer i (x is a primitive element by construction)."""
        return self.exp[i % (self.q - 1)]

    def elements(self) -> range:
        """All field elements, zero first."""
        return range(self.q)

    def nonzero(self) -> range:
        """The multiplicative group as a range of values."""
        return range(1, self.q)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def __repr__(self) -> str:
        return f"Field(m={self.m}, modulus={self.modulus:#x})"
