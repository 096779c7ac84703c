"""Ensemble bounds on the number of uncorrectable erasure patterns.

Three upper bounds on b_nu, the number of nu-subsets of columns whose
restriction is rank deficient, are evaluated for the regular strip
ensemble:

* a stopping-set bound built from the two-variable generating function
  psi_1(lambda, s) of one strip, where lambda marks active rows and s
  marks erasures: eta_w extracts the s^w slice, S_w averages over the J
  strips, and b_nu <= sum_w S_w C(n-w, nu-w);
* a random-matrix bound driven by the ensemble's bit density p = J/r,
  computed with signed powers exactly as written, since its inner base
  may turn negative for small alphabets;
* a spectral bound fed by the ensemble's average q-ary weight
  enumerator S_w^(q).

Everything is exact integer/rational arithmetic; floats appear only
at the report boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import IncompleteRange, NonIntegerStripCount, ParameterDomain

__all__ = [
    "TwoVarPolynomial",
    "BoundReport",
    "psi1",
    "strip_enumerator",
    "ensemble_stopping_spectrum",
    "new_bound_b_nu",
    "liva_bound",
    "gallager_weight_enumerator",
    "spectral_bound",
    "bound_report",
]


class TwoVarPolynomial:
    """Polynomial in (lambda, s) with integer coefficients and caps.

    Coefficients live in a map (a, w) -> int with a the lambda-degree
    and w the s-degree; products drop terms beyond (a_max, w_max), so
    powers of truncated polynomials stay truncated.  Zero coefficients
    are never stored.
    """

    __slots__ = ("coeffs", "a_max", "w_max")

    def __init__(self, coeffs: dict[tuple[int, int], int],
                 a_max: int, w_max: int):
        self.a_max = a_max
        self.w_max = w_max
        self.coeffs = {(a, w): c for (a, w), c in coeffs.items()
                       if c != 0 and a <= a_max and w <= w_max}

    @classmethod
    def one(cls, a_max: int, w_max: int) -> "TwoVarPolynomial":
        return cls({(0, 0): 1}, a_max, w_max)

    def coeff(self, a: int, w: int) -> int:
        return self.coeffs.get((a, w), 0)

    def s_slice(self, w: int) -> dict[int, int]:
        """The coefficient of s^w as a polynomial in lambda."""
        return {a: c for (a, w2), c in self.coeffs.items() if w2 == w}

    def __mul__(self, other: "TwoVarPolynomial") -> "TwoVarPolynomial":
        a_max = min(self.a_max, other.a_max)
        w_max = min(self.w_max, other.w_max)
        out: dict[tuple[int, int], int] = {}
        for (a1, w1), c1 in self.coeffs.items():
            for (a2, w2), c2 in other.coeffs.items():
                a, w = a1 + a2, w1 + w2
                if a <= a_max and w <= w_max:
                    key = (a, w)
                    out[key] = out.get(key, 0) + c1 * c2
        return TwoVarPolynomial(out, a_max, w_max)

    def pow(self, e: int) -> "TwoVarPolynomial":
        if e < 0:
            raise ParameterDomain("negative polynomial power")
        result = TwoVarPolynomial.one(self.a_max, self.w_max)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, TwoVarPolynomial)
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*l^{a}*s^{w}"
                 for (a, w), c in sorted(self.coeffs.items())]
        return " + ".join(terms) or "0"


def psi1(K: int, a_max: int = 1, w_max: int | None = None
         ) -> TwoVarPolynomial:
    """One strip row's generating function 1 + lambda((1+s)^K - 1 - Ks).

    lambda marks the row becoming active, s^j the j >= 2 erasures it
    absorbs; a row seeing exactly one erasure is excluded, which is what
    makes the counted patterns stopping sets.
    """
    if K < 2:
        raise ParameterDomain(f"row weight must be >= 2, got {K}")
    if w_max is None:
        w_max = K
    coeffs = {(0, 0): 1}
    for j in range(2, min(K, w_max) + 1):
        coeffs[(1, j)] = comb(K, j)
    return TwoVarPolynomial(coeffs, a_max, w_max)


def strip_enumerator(M: int, K: int, w: int) -> dict[int, int]:
    """eta_w: the s^w slice of psi_1^M - 1, as {lambda-degree: count}.

    Counts the ways w erasures land in one strip of M disjoint
    weight-K rows with every touched row touched at least twice; the
    lambda-degree is the number of touched (active) rows, at most
    min(M, w // 2).
    """
    if not 2 <= w <= M * K:
        raise ParameterDomain(f"need 2 <= w <= MK, got w={w}, MK={M * K}")
    power = psi1(K, a_max=min(M, w // 2), w_max=w).pow(M)
    return power.s_slice(w)


def _lambda_poly_pow(poly: dict[int, int], e: int,
                     a_cap: int) -> dict[int, int]:
    """Power of a {degree: coeff} polynomial, truncated at degree a_cap."""
    result = {0: 1}
    for _ in range(e):
        nxt: dict[int, int] = {}
        for a1, c1 in result.items():
            for a2, c2 in poly.items():
                a = a1 + a2
                if a <= a_cap:
                    nxt[a] = nxt.get(a, 0) + c1 * c2
        result = nxt
    return result


def ensemble_stopping_spectrum(n: int, M: int, J: int, K: int,
                               w: int) -> Fraction:
    """S_w: expected number of weight-w deficient stopping sets.

    Exact rational C(n,w)^(1-J) * sum_{a=1}^{w-1} [eta_w^J]_{lambda^a}
    over the strip ensemble; the cap a <= w - 1 keeps only sets with
    fewer active rows than columns.
    """
    if n != M * K:
        raise ParameterDomain(f"need n = MK, got n={n}, MK={M * K}")
    if J < 1:
        raise ParameterDomain(f"need J >= 1, got {J}")
    eta = strip_enumerator(M, K, w)
    power = _lambda_poly_pow(eta, J, w - 1)
    total = sum(c for a, c in power.items() if 1 <= a <= w - 1)
    return Fraction(total, comb(n, w) ** (J - 1))


def new_bound_b_nu(n: int, M: int, J: int, K: int, nu: int) -> float:
    """Stopping-set bound b_nu <= sum_{w=2}^{nu} S_w C(n-w, nu-w)."""
    if not 2 <= nu <= n:
        raise ParameterDomain(f"need 2 <= nu <= n, got {nu}")
    total = Fraction(0)
    for w in range(2, nu + 1):
        total += ensemble_stopping_spectrum(n, M, J, K, w) \
            * comb(n - w, nu - w)
    return float(total)


def liva_bound(n: int, nu: int, q: int, J: int, r: int) -> float:
    """Random-ensemble bound on b_nu at bit density p = J/r.

    (C(n,nu)/(q-1)) * sum_{t=1}^{nu} (q-1)^t C(nu,t)
    ((q-1)/q (1 - pq/(q-1))^t + 1/q)^r, all in exact rationals; the
    inner base may go negative for small q and is raised with its sign.
    """
    if q < 2:
        raise ParameterDomain(f"need q >= 2, got {q}")
    if not 1 <= nu <= n:
        raise ParameterDomain(f"need 1 <= nu <= n, got {nu}")
    p = Fraction(J, r)
    if not 0 < p <= 1:
        raise ParameterDomain(f"need 0 < J/r <= 1, got {p}")
    base = 1 - p * q / Fraction(q - 1)
    total = Fraction(0)
    for t in range(1, nu + 1):
        inner = Fraction(q - 1, q) * base ** t + Fraction(1, q)
        total += (q - 1) ** t * comb(nu, t) * inner ** r
    return float(comb(n, nu) * total / (q - 1))


def gallager_weight_enumerator(n: int, J: int, K: int, q: int,
                               w: int) -> Fraction:
    """S_w^(q): ensemble-average count of weight-w q-ary codewords.

    [(q-1)^w C(n,w)]^(1-J) ([g^M]_w)^J with the per-strip enumerator
    g(s) = (1/q)(1+(q-1)s)^K + ((q-1)/q)(1-s)^K and M = n/K strips of
    identities.
    """
    if q < 2:
        raise ParameterDomain(f"need q >= 2, got {q}")
    if n % K:
        raise NonIntegerStripCount(f"row weight {K} does not divide n={n}")
    if w == 0:
        return Fraction(1)
    if not 1 <= w <= n:
        raise ParameterDomain(f"need 0 <= w <= n, got {w}")
    M = n // K
    # q*g has integer coefficients; divide by q^M after raising to M.
    qg = {j: comb(K, j) * ((q - 1) ** j + (q - 1) * (-1) ** j)
          for j in range(0, K + 1)}
    power = _lambda_poly_pow(qg, M, w)
    coeff = Fraction(power.get(w, 0), q ** M)
    return coeff ** J / Fraction((q - 1) ** w * comb(n, w)) ** (J - 1)


def spectral_bound(n: int, nu: int, q: int,
                   spectrum: dict[int, Fraction]) -> float:
    """Weight-spectrum bound C(n,nu) min(1, sum_w S_w C(nu,w)/C(n,w)/(q-1))."""
    if not 1 <= nu <= n:
        raise ParameterDomain(f"need 1 <= nu <= n, got {nu}")
    inner = Fraction(0)
    for w in range(1, nu + 1):
        if w not in spectrum:
            raise IncompleteRange(f"spectrum is missing weight {w}")
        inner += spectrum[w] * Fraction(comb(nu, w), comb(n, w))
    return float(comb(n, nu) * min(Fraction(1), inner / (q - 1)))


@dataclass
class BoundReport:
    """All three bound curves over nu = 1..nu_max for one ensemble."""

    n: int
    M: int
    J: int
    K: int
    q: int
    nu_values: list[int] = field(default_factory=list)
    liva: list[float] = field(default_factory=list)
    spectral: list[float] = field(default_factory=list)
    new_bound: list[float] = field(default_factory=list)
    stopping_spectrum: dict[int, Fraction] = field(default_factory=dict)
    weight_spectrum: dict[int, Fraction] = field(default_factory=dict)


def bound_report(n: int, M: int, J: int, K: int, q: int,
                 nu_max: int) -> BoundReport:
    """Evaluate every bound at nu = 1..nu_max for the (M, J, K) ensemble."""
    if not 1 <= nu_max <= n:
        raise ParameterDomain(f"need 1 <= nu_max <= n, got {nu_max}")
    rep = BoundReport(n=n, M=M, J=J, K=K, q=q)
    rep.stopping_spectrum = {
        w: ensemble_stopping_spectrum(n, M, J, K, w)
        for w in range(2, nu_max + 1)}
    rep.weight_spectrum = {
        w: gallager_weight_enumerator(n, J, K, q, w)
        for w in range(1, nu_max + 1)}
    r = M * J
    for nu in range(1, nu_max + 1):
        rep.nu_values.append(nu)
        rep.liva.append(liva_bound(n, nu, q, J, r))
        rep.spectral.append(spectral_bound(n, nu, q, rep.weight_spectrum))
        rep.new_bound.append(
            new_bound_b_nu(n, M, J, K, nu) if nu >= 2 else 0.0)
    return rep
