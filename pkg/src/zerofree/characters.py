"""Dirichlet characters stored as explicit value tables."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

from zerofree.errors import CharacterError, DomainError

__all__ = [
    "DirichletCharacter",
    "validate_character",
    "kronecker_symbol",
    "is_fundamental_discriminant",
    "kronecker_character",
    "partial_sum",
    "period_sup",
    "polya_vinogradov_bound",
    "character_from_json",
    "character_to_json",
    "characters_mod_prime",
]

_TOL = 1e-9


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod q; ``values[n]`` is chi(n) for the residue n mod q."""

    modulus: int
    values: tuple
    is_trivial: bool

    def __call__(self, n: int) -> complex:
        return self.values[n % self.modulus]

    @property
    def is_real(self) -> bool:
        return all(abs(v.imag) < _TOL for v in self.values)

    def prefix_sums(self) -> list[complex]:
        """S_k = sum_{n=1}^{k} chi(n) for k = 0..q."""
        out = [0j]
        for n in range(1, self.modulus + 1):
            out.append(out[-1] + self(n))
        return out


def validate_character(q: int, table) -> DirichletCharacter:
    """Check the character axioms on a value table and wrap it.

    Raises CharacterError naming the first violated axiom.
    """
    if int(q) != q or q < 1:
        raise CharacterError(f"modulus must be a positive integer, got {q!r}")
    q = int(q)
    values = tuple(complex(v) for v in table)
    if len(values) != q:
        raise CharacterError(f"table has {len(values)} entries, expected {q}")
    for n, v in enumerate(values):
        unit = math.gcd(n, q) == 1
        if not unit and v != 0:
            raise CharacterError(f"chi({n}) = {v} but gcd({n}, {q}) > 1 requires 0")
        if unit and abs(abs(v) - 1.0) > _TOL:
            raise CharacterError(f"|chi({n})| = {abs(v)} is not 1 on a unit")
    units = [n for n in range(q) if math.gcd(n, q) == 1]
    if abs(values[1 % q] - 1.0) > _TOL:
        raise CharacterError(f"chi(1) = {values[1 % q]} must equal 1")
    for a in units:
        for b in units:
            if abs(values[(a * b) % q] - values[a] * values[b]) > _TOL:
                raise CharacterError(
                    f"not multiplicative: chi({a}*{b} mod {q}) != chi({a}) chi({b})"
                )
    trivial = all(abs(values[n] - 1.0) <= _TOL for n in units)
    return DirichletCharacter(q, values, trivial)


def _squarefree(n: int) -> bool:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    if d == 0:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) by the binary Jacobi algorithm."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # n odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_character(d: int) -> DirichletCharacter:
    """The real character n -> (d/n) modulo |d| for a fundamental discriminant d."""
    if d == 0 or not is_fundamental_discriminant(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    q = abs(d)
    return validate_character(q, [kronecker_symbol(d, n) for n in range(q)])


def partial_sum(chi: DirichletCharacter, u: float) -> complex:
    """sum_{n < u} chi(n), strict inequality."""
    if u < 0:
        raise DomainError("partial_sum needs u >= 0")
    k = max(0, math.ceil(u) - 1)
    q = chi.modulus
    full, rest = divmod(k, q)
    pref = chi.prefix_sums()
    return full * pref[q] + pref[rest]


def period_sup(chi: DirichletCharacter) -> float:
    """sup_u |sum_{n<u} chi(n)| for non-trivial chi (attained within one period)."""
    if chi.is_trivial:
        raise DomainError("partial sums of a trivial character are unbounded")
    return max(abs(s) for s in chi.prefix_sums())


def polya_vinogradov_bound(chi: DirichletCharacter) -> float:
    """2 sqrt(q) log q."""
    if chi.is_trivial:
        raise DomainError("Polya-Vinogradov needs a non-trivial character")
    q = chi.modulus
    return 2.0 * math.sqrt(q) * math.log(q)


def character_from_json(payload) -> DirichletCharacter:
    """Parse {"q": int, "values": [[re, im], ...]} (plain numbers also accepted)."""
    if isinstance(payload, (str, bytes)):
        payload = json.loads(payload)
    try:
        q = payload["q"]
        raw = payload["values"]
    except (KeyError, TypeError) as exc:
        raise CharacterError("character JSON needs keys 'q' and 'values'") from exc
    vals = []
    for v in raw:
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise CharacterError(f"complex value must be [re, im], got {v!r}")
            vals.append(complex(v[0], v[1]))
        else:
            vals.append(complex(v))
    return validate_character(q, vals)


def character_to_json(chi: DirichletCharacter) -> dict:
    return {"q": chi.modulus, "values": [[v.real, v.imag] for v in chi.values]}


def characters_mod_prime(p: int) -> list[DirichletCharacter]:
    """All p - 1 characters modulo a small prime p, trivial first."""
    if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        return [validate_character(2, [0, 1])]
    order = p - 1
    g = next(
        g for g in range(2, p)
        if all(pow(g, order // f, p) != 1 for f in range(2, order + 1)
               if order % f == 0 and all(f % d for d in range(2, f)))
    )
    log_table = {pow(g, j, p): j for j in range(order)}
    out = []
    for k in range(order):
        vals = [0j] + [cmath.exp(2j * math.pi * k * log_table[n] / order) for n in range(1, p)]
        out.append(validate_character(p, vals))
    return out
