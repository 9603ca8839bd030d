"""Descent set statistics of unsigned and signed permutations.

The central objects are the full tables beta_n(S) (number of permutations
with descent set exactly S) over every subset S, built by exact dynamic
programming plus a subset Moebius inversion, and a mod-2 fast path that gets
the parity of every beta_n(S) for n up to the low thirties without ever
materializing the exact table.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from pathlib import Path

from .errors import CacheError, ContractViolationError, ResourceLimitError
from .numbers import SubsetMask, as_mask, multinomial

__all__ = [
    "DEFAULT_LIMITS",
    "BRUTE_FORCE_LIMITS",
    "DescentTable",
    "ResidueHistogram",
    "alpha",
    "alpha_signed",
    "beta_table",
    "brute_force_table",
    "beta_parity_bitset",
    "rho",
    "residue_histogram",
    "mod_p_prediction",
    "save_table",
    "load_table",
]

# Soft ceilings: beta_table refuses larger n unless the caller raises max_n.
DEFAULT_LIMITS = {"unsigned": 24, "signed": 18}
# Hard ceilings for the factorial-time oracle.
BRUTE_FORCE_LIMITS = {"unsigned": 9, "signed": 7}

CACHE_FORMAT = "descentlab-table v1"


@dataclass(frozen=True)
class DescentTable:
    """All values beta_n(S), indexed by subset bitmask.

    ``values[k]`` is the count for the subset whose mask is k.  The subsets
    range over {1, ..., n-1} in the unsigned case and {1, ..., n} in the
    signed case.
    """

    n: int
    signed: bool
    values: tuple[int, ...]

    @property
    def universe(self) -> int:
        return self.n if self.signed else self.n - 1

    def value(self, S) -> int:
        return self.values[as_mask(S, self.universe)]

    def __post_init__(self) -> None:
        if len(self.values) != 1 << self.universe:
            raise ContractViolationError(
                f"table for n={self.n} signed={self.signed} needs "
                f"{1 << self.universe} entries, got {len(self.values)}"
            )


@dataclass(frozen=True)
class ResidueHistogram:
    """Residue class sums of a descent table modulo m.

    ``counts[r]`` sums ff(beta(S), order) over the subsets S with
    beta(S) = r mod m, where ff(v, j) = v (v-1) ... (v-j+1) is the falling
    factorial (so order 0 just counts subsets per residue class).
    """

    m: int
    order: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1 or self.order < 0 or len(self.counts) != self.m:
            raise ContractViolationError("inconsistent residue histogram")


def _gap_composition(mask: int, total: int) -> tuple[int, ...]:
    parts = []
    prev = 0
    while mask:
        low = mask & -mask
        s = low.bit_length()
        parts.append(s - prev)
        prev = s
        mask ^= low
    parts.append(total - prev)
    return tuple(parts)


def alpha(n: int, S) -> int:
    """Number of permutations of {1, ..., n} with descent set contained in S.

    Equals the multinomial coefficient of the gap composition of S in n.
    """
    if n < 1:
        raise ContractViolationError(f"n must be >= 1, got {n}")
    mask = as_mask(S, n - 1)
    return multinomial(n, _gap_composition(mask, n))


def alpha_signed(n: int, S) -> int:
    """Number of signed permutations of {1, ..., n} with descent set in S.

    Descents are read with a leading zero, so S ranges over {1, ..., n}.  The
    runs between consecutive elements of S can be filled independently; the
    run containing the leading zero forces its signs, every other run is
    sign-free, giving multinomial(n; g0 - 1, g1, ..., gk) * 2**(n + 1 - g0)
    for the gap composition (g0, ..., gk) of S in n + 1.
    """
    if n < 1:
        raise ContractViolationError(f"n must be >= 1, got {n}")
    mask = as_mask(S, n)
    gamma = _gap_composition(mask, n + 1)
    first = gamma[0]
    rest = gamma[1:] if first == 1 else (first - 1,) + gamma[1:]
    return multinomial(n, rest) << (n + 1 - first)


def _alpha_values_unsigned(n: int) -> list[int]:
    # V[m] depends only on the largest element s of m:
    # V[m] = C(s, s - s') V[m - top] with s' the next element, so the whole
    # table costs one small binomial multiply per mask.
    size = 1 << (n - 1)
    comb = math.comb
    vals = [1] * size
    for m in range(1, size):
        s = m.bit_length()
        rest = m ^ (1 << (s - 1))
        vals[m] = comb(s, s - rest.bit_length()) * vals[rest]
    for m in range(1, size):
        s = m.bit_length()
        vals[m] *= comb(n, n - s)
    return vals


def _alpha_values_signed(n: int) -> list[int]:
    size = 1 << n
    comb = math.comb
    w = [1] * size
    for m in range(1, size):
        s = m.bit_length()
        rest = m ^ (1 << (s - 1))
        prev = rest.bit_length() if rest else 1
        w[m] = comb(s - 1, s - prev) * w[rest]
    for m in range(1, size):
        s = m.bit_length()
        first = (m & -m).bit_length()
        w[m] = (comb(n, n + 1 - s) * w[m]) << (n + 1 - first)
    return w


def _subset_mobius_inplace(vals: list[int]) -> None:
    """vals[S] <- sum over T subset of S of (-1)^|S - T| vals[T], in place."""
    size = len(vals)
    step = 1
    while step < size:
        for lo in range(0, size, step * 2):
            mid = lo + step
            vals[mid : mid + step] = [
                h - l for h, l in zip(vals[mid : mid + step], vals[lo:mid])
            ]
        step *= 2


def _subset_zeta_inplace(vals: list[int]) -> None:
    """vals[S] <- sum over T subset of S of vals[T], in place."""
    size = len(vals)
    step = 1
    while step < size:
        for lo in range(0, size, step * 2):
            mid = lo + step
            vals[mid : mid + step] = [
                h + l for h, l in zip(vals[mid : mid + step], vals[lo:mid])
            ]
        step *= 2


@lru_cache(maxsize=8)
def _table(n: int, signed: bool) -> DescentTable:
    vals = _alpha_values_signed(n) if signed else _alpha_values_unsigned(n)
    _subset_mobius_inplace(vals)
    return DescentTable(n=n, signed=signed, values=tuple(vals))


def beta_table(n: int, signed: bool = False, max_n: int | None = None) -> DescentTable:
    """Exact table of beta_n(S) over all subsets.

    Size doubles per unit of n; the default ceilings (24 unsigned, 18 signed)
    can be raised with ``max_n`` by callers who accept the memory cost.
    """
    if n < 1:
        raise ContractViolationError(f"n must be >= 1, got {n}")
    limit = max_n if max_n is not None else DEFAULT_LIMITS["signed" if signed else "unsigned"]
    if n > limit:
        raise ResourceLimitError(
            f"beta_table(n={n}, signed={signed}) exceeds the limit {limit}; "
            "pass max_n to override"
        )
    return _table(n, bool(signed))


def brute_force_table(n: int, signed: bool = False) -> DescentTable:
    """The same table by direct enumeration of all (signed) permutations.

    Exists as an independent oracle for the closed-form route; refuses
    n above 9 (unsigned) or 7 (signed).
    """
    if n < 1:
        raise ContractViolationError(f"n must be >= 1, got {n}")
    limit = BRUTE_FORCE_LIMITS["signed" if signed else "unsigned"]
    if n > limit:
        raise ResourceLimitError(
            f"brute_force_table(n={n}, signed={signed}) exceeds the limit {limit}"
        )
    if not signed:
        counts = [0] * (1 << (n - 1))
        for pi in permutations(range(1, n + 1)):
            mask = 0
            for i in range(n - 1):
                if pi[i] > pi[i + 1]:
                    mask |= 1 << i
            counts[mask] += 1
        return DescentTable(n=n, signed=False, values=tuple(counts))
    counts = [0] * (1 << n)
    for pi in permutations(range(1, n + 1)):
        for signs in range(1 << n):
            mask = 0
            prev = 0
            for i in range(n):
                v = -pi[i] if signs >> i & 1 else pi[i]
                if prev > v:
                    mask |= 1 << i
                prev = v
            counts[mask] += 1
    return DescentTable(n=n, signed=True, values=tuple(counts))


def _xor_subset_zeta(bits: int, universe: int) -> int:
    """Mod-2 subset sums of a Boolean table packed into one integer.

    Bit S of the result is the XOR of the input bits over all subsets of S.
    """
    width = 1 << universe
    for b in range(universe):
        step = 1 << b
        tile = (1 << step) - 1
        span = 2 * step
        while span < width:
            tile |= tile << span
            span *= 2
        bits ^= (bits & tile) << step
    return bits


def _chain_positions(n: int) -> bytearray:
    # alpha_n(S) is odd iff the elements of S form a chain under bitwise
    # containment whose top is a proper submask of n, so the odd positions
    # are enumerated by extending chains one strict superset at a time.
    out = bytearray(max((1 << (n - 1)) >> 3, 1))

    def visit(pos: int, top: int) -> None:
        out[pos >> 3] |= 1 << (pos & 7)
        room = n & ~top
        sub = room
        while sub:
            t = top | sub
            if t != n:
                visit(pos | (1 << (t - 1)), t)
            sub = (sub - 1) & room

    visit(0, 0)
    return out


def beta_parity_bitset(n: int) -> int:
    """Parities of beta_n over all subsets, packed into one integer.

    Bit k is beta_n(S) mod 2 for the subset S with mask k.  Runs in time and
    memory proportional to 2**n bits, so n around 31 stays practical.
    """
    if n < 1:
        raise ContractViolationError(f"n must be >= 1, got {n}")
    packed = int.from_bytes(_chain_positions(n), "little")
    return _xor_subset_zeta(packed, n - 1)


@lru_cache(maxsize=None)
def rho(n: int) -> Fraction:
    """Fraction of subsets S of {1, ..., n-1} with beta_n(S) odd."""
    odd = beta_parity_bitset(n).bit_count()
    return Fraction(odd, 1 << (n - 1))


def _falling_factorial(v: int, j: int) -> int:
    out = 1
    for k in range(j):
        out *= v - k
    return out


def residue_histogram(table: DescentTable, m: int, order: int = 0) -> ResidueHistogram:
    """Sum ff(beta(S), order) over subsets, grouped by beta(S) mod m.

    Order 0 counts subsets per residue class; order j gives the residue data
    of the j-th derivative of the generating polynomial sum_S t^beta(S).
    """
    if m < 1:
        raise ContractViolationError(f"modulus must be >= 1, got {m}")
    if order < 0:
        raise ContractViolationError(f"order must be >= 0, got {order}")
    counts = [0] * m
    for v, c in Counter(table.values).items():
        counts[v % m] += c * _falling_factorial(v, order)
    return ResidueHistogram(m=m, order=order, counts=tuple(counts))


def _prime_power_base(q: int) -> int:
    if q < 2:
        raise ContractViolationError(f"need a prime power >= 2, got {q}")
    p = q
    for f in range(2, q + 1):
        if f * f > q:
            break
        if q % f == 0:
            p = f
            break
    rest = q
    while rest % p == 0:
        rest //= p
    if rest != 1:
        raise ContractViolationError(f"{q} is not a prime power")
    return p


def mod_p_prediction(n: int, q: int, S) -> int:
    """beta_n(S) mod p predicted from the smaller table beta_{n/q}.

    Requires q a prime power dividing n, with p its prime base.  Writing
    S/q for the elements of S divisible by q scaled down by q, the value is
    (-1)**|S minus the multiples of q| * beta_{n/q}(S/q) reduced mod p.
    """
    p = _prime_power_base(q)
    if n < 1 or n % q != 0:
        raise ContractViolationError(f"q={q} must divide n={n}")
    mask = as_mask(S, n - 1)
    r = n // q
    scaled = 0
    outside = 0
    for e in SubsetMask(n - 1, mask):
        if e % q == 0:
            scaled |= 1 << (e // q - 1)
        else:
            outside += 1
    small = beta_table(r).values[scaled]
    sign = -1 if outside % 2 else 1
    return (sign * small) % p


def save_table(table: DescentTable, path) -> None:
    """Write a table cache file: a header line then one decimal per subset."""
    lines = [f"{CACHE_FORMAT} n={table.n} signed={int(table.signed)}"]
    lines.extend(str(v) for v in table.values)
    Path(path).write_text("\n".join(lines) + "\n")


def load_table(path) -> DescentTable:
    """Read a cache file written by :func:`save_table`.

    Raises :class:`CacheError` on any malformation, including a value sum
    that disagrees with the permutation count.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CacheError(f"cannot read cache file {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines:
        raise CacheError(f"{path}: empty cache file")
    head = lines[0].split()
    if (
        len(head) != 4
        or " ".join(head[:2]) != CACHE_FORMAT
        or not head[2].startswith("n=")
        or not head[3].startswith("signed=")
    ):
        raise CacheError(f"{path}: bad header {lines[0]!r}")
    try:
        n = int(head[2][2:])
        signed_flag = int(head[3][7:])
    except ValueError as exc:
        raise CacheError(f"{path}: bad header {lines[0]!r}") from exc
    if n < 1 or signed_flag not in (0, 1):
        raise CacheError(f"{path}: bad header {lines[0]!r}")
    signed = bool(signed_flag)
    body = lines[1:]
    expected = 1 << (n if signed else n - 1)
    if len(body) != expected:
        raise CacheError(
            f"{path}: expected {expected} values for n={n} signed={signed_flag}, "
            f"got {len(body)}"
        )
    try:
        values = tuple(int(line) for line in body)
    except ValueError as exc:
        raise CacheError(f"{path}: non-integer table entry") from exc
    if any(v < 0 for v in values):
        raise CacheError(f"{path}: negative table entry")
    if sum(values) != math.factorial(n) << (n if signed else 0):
        raise CacheError(f"{path}: table sum does not match the permutation count")
    return DescentTable(n=n, signed=signed, values=values)
