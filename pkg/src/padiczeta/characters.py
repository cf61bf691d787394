"""Tame Dirichlet characters modulo p^v.

Only characters with values in Z_p are supported: on units they are integer
powers omega^k of the Teichmuller character (0 <= k <= p-2), and they vanish
on multiples of p.  A character formally carries a modulus exponent v >= 1;
for v >= 2 the unit values coincide with the v = 1 ones but representation
sums run over p^v residues, which several identities are sensitive to.
Characters whose order is divisible by p take values outside Q_p and are
out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArgumentOutsideZp, ParseError, PrecisionError
from .padic import PadicContext, PadicNumber, is_odd_prime

__all__ = ["DirichletCharacter", "char_eval"]


@dataclass(frozen=True)
class DirichletCharacter:
    p: int
    v: int
    k: int

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.v < 1:
            raise ValueError("modulus exponent v must be >= 1")
        if not 0 <= self.k <= self.p - 2:
            raise ValueError(f"Teichmuller exponent must lie in [0, {self.p - 2}]")

    @property
    def modulus(self) -> int:
        return self.p**self.v

    @property
    def is_trivial(self) -> bool:
        return self.k == 0

    @property
    def is_even(self) -> bool:
        """chi(-1) = (-1)^k, so even means even k."""
        return self.k % 2 == 0

    @property
    def label(self) -> str:
        return f"{self.v}:{self.k}"

    def twist(self, j: int) -> "DirichletCharacter":
        """chi * omega^j (same modulus)."""
        return DirichletCharacter(self.p, self.v, (self.k + j) % (self.p - 1))

    @staticmethod
    def trivial(p: int, v: int = 1) -> "DirichletCharacter":
        return DirichletCharacter(p, v, 0)

    @staticmethod
    def parse(text: str, p: int) -> "DirichletCharacter":
        """Parse a 'v:k' label."""
        head, sep, tail = text.partition(":")
        if not sep:
            raise ParseError(f"character must be given as 'v:k', got {text!r}")
        try:
            v, k = int(head), int(tail)
        except ValueError as exc:
            raise ParseError(f"character must be given as 'v:k', got {text!r}") from exc
        try:
            return DirichletCharacter(p, v, k)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def value(self, ctx: PadicContext, a) -> PadicNumber:
        return char_eval(ctx, self, a)


def char_eval(ctx: PadicContext, chi: DirichletCharacter, a) -> PadicNumber:
    """chi(a) for a in Z_p: omega(a)^k on units, exact zero on p | a."""
    if chi.p != ctx.p:
        raise ParseError("character prime differs from context prime")
    a = ctx.coerce(a)
    if a.is_exact_zero:
        return ctx.exact_zero()
    if a.is_bounded_zero:
        if a.valuation >= 1:
            return ctx.exact_zero()
        raise PrecisionError("cannot evaluate character: unit status unknown")
    if a.valuation < 0:
        raise ArgumentOutsideZp("character arguments must lie in Z_p")
    if a.valuation >= 1:
        return ctx.exact_zero()
    return ctx.teichmuller(a) ** chi.k
