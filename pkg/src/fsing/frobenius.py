"""p^e-adic decomposition of polynomials and Frobenius roots of ideals.

Over R = F_p[x_1..x_n], the monomials x^mu with mu in [0, p^e)^n form a free
basis of R over its subring of p^e-th powers: every f decomposes uniquely as

    f = sum_mu (g_mu)^{p^e} * x^mu.

The Frobenius root I^{[1/p^e]} of an ideal I is the smallest ideal J with
I contained in J^{[p^e]}; it is generated by all basis coefficients g_mu of
all generators of I, because the coefficients of any member of J^{[p^e]}
lie in J and conversely the decomposition above rebuilds each generator
from p^e-th powers of its coefficients.
"""

from __future__ import annotations

from .groebner import Ideal
from .newton import MonomialIdeal
from .ring import Exponent, Polynomial

__all__ = ["PeDecomposition", "pe_decompose", "frobenius_root", "monomial_frobenius_root"]


class PeDecomposition:
    """The coefficients g_mu of f = sum_mu (g_mu)^{p^e} x^mu, keyed by mu."""

    __slots__ = ("ring", "e", "parts")

    def __init__(self, ring, e: int, parts: dict[Exponent, Polynomial]):
        self.ring = ring
        self.e = e
        self.parts = parts

    def reconstruct(self) -> Polynomial:
        """sum_mu (g_mu)^{p^e} * x^mu; equals the decomposed polynomial."""
        total = self.ring.zero()
        for mu, g in self.parts.items():
            total = total + g.frobenius_power(self.e) * Polynomial(self.ring, {mu: 1})
        return total

    def __repr__(self) -> str:
        inner = ", ".join(f"{mu}: {g}" for mu, g in sorted(self.parts.items()))
        return f"PeDecomposition(e={self.e}, {{{inner}}})"


def _split_terms(f: Polynomial, q: int) -> dict[Exponent, dict[Exponent, int]]:
    # residue class mu -> term dict of g_mu; exact since residues of F_p are
    # their own p^e-th roots
    parts: dict[Exponent, dict[Exponent, int]] = {}
    for exp, c in f.terms.items():
        quotients = []
        remainders = []
        for a in exp:
            s, r = divmod(a, q)
            quotients.append(s)
            remainders.append(r)
        parts.setdefault(tuple(remainders), {})[tuple(quotients)] = c
    return parts


def pe_decompose(f: Polynomial, e: int) -> PeDecomposition:
    """Decompose f over the p^e-th powers with monomial basis x^mu, mu < p^e."""
    if e < 0:
        raise ValueError("negative Frobenius exponent")
    q = f.ring.p**e
    parts = {
        mu: Polynomial(f.ring, terms) for mu, terms in _split_terms(f, q).items()
    }
    return PeDecomposition(f.ring, e, parts)


def frobenius_root(I: Ideal, e: int) -> Ideal:
    """I^{[1/p^e]}: the smallest ideal J with I inside J^{[p^e]}.

    Streams the decomposition of each generator and deduplicates the
    coefficient polynomials before building the result.
    """
    if e < 0:
        raise ValueError("negative Frobenius exponent")
    if e == 0:
        return I
    ring = I.ring
    q = ring.p**e
    seen: set[tuple] = set()
    gens: list[Polynomial] = []
    for g in I.generators:
        for terms in _split_terms(g, q).values():
            key = tuple(sorted(terms.items()))
            if key not in seen:
                seen.add(key)
                gens.append(Polynomial(ring, terms))
    return Ideal(ring, gens)


def monomial_frobenius_root(a: MonomialIdeal, e: int, p: int) -> MonomialIdeal:
    """The Frobenius root of a monomial ideal: floor of each exponent by p^e."""
    if e < 0:
        raise ValueError("negative Frobenius exponent")
    q = p**e
    return MonomialIdeal(a.nvars, [tuple(x // q for x in g) for g in a.generators])
