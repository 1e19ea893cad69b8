"""Exact values of Phi(n, m), the least up/down closure size of an m-family over [n].

Two independent methods are provided: the two-step recursion on n (`phi_recursive`) and the
closed form built on the dyadic function delta (`phi_fast`). Everything on the exact path is
integer arithmetic.
"""

import logging
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from threading import RLock

import numpy as np
import numpy.typing as npt
from mashumaro.mixins.orjson import DataClassORJSONMixin

from .const import MAX_N, TABLE_MAX_N, capped
from .family import check_ground_size

_LOGGER = logging.getLogger(__name__)

type Column = npt.NDArray[np.int64]

# Phi(0, .) and Phi(1, .)
_BASE_COLUMNS: dict[int, tuple[int, ...]] = {0: (0, 1), 1: (0, 2, 2)}


@total_ordering
@dataclass(frozen=True, eq=False)
class DyadicRational:
    """The value num / 2**exp, always within [0, 1]."""

    num: int
    exp: int

    def __post_init__(self) -> None:
        if self.exp < 0 or not 0 <= self.num <= 1 << self.exp:
            msg = f"{self.num}/2^{self.exp} is not a dyadic rational in [0, 1]"
            raise OutOfRangeError(msg)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return self.num << other.exp == other.num << self.exp

    def __lt__(self, other: "DyadicRational") -> bool:
        return self.num << other.exp < other.num << self.exp

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __str__(self) -> str:
        return f"{self.num}/2^{self.exp}"

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def scaled(self, power: int) -> int:
        """Return 2**power times the value, which must be an integer."""
        value, rest = divmod(self.num << power, 1 << self.exp)
        if rest:
            raise InexactScaleError(self, power)
        return value


@dataclass(frozen=True)
class QuickParams:
    kappa: int
    c: int
    nu: int

    @property
    def scale(self) -> int:
        """kappa * 2**nu, the square root of kappa * 2**n."""
        return self.kappa << self.nu


@dataclass
class PhiTable(DataClassORJSONMixin):
    n: int
    values: list[int]

    def to_tsv(self) -> str:
        rows = [f"{m}\t{value}" for m, value in enumerate(self.values)]
        return "m\tphi\n" + "\n".join(rows) + "\n"

    def partition(self) -> list[int]:
        """The parts Phi(n, 2**n) >= ... >= Phi(n, 1)."""
        return self.values[:0:-1]


class PhiRecursion:
    """Memoized recursion Phi(n, m) = 2 Phi(n - 2, m) + m for m <= 2**(n - 2).

    Only the strictly increasing prefix Phi(n, 0..2**(n - 2)) is stored per n; larger m are
    answered as 2**n - s, where s is found by binary search over that prefix.
    """

    def __init__(self) -> None:  # noqa: D107
        self._prefixes: dict[int, Column] = {}
        self._lock = RLock()

    def value(self, n: int, m: int) -> int:
        _check_arguments(n, m)
        if n < 2:  # noqa: PLR2004
            return _BASE_COLUMNS[n][m]
        if m <= 1 << (n - 2):
            return int(self.prefix(n)[m])
        return (1 << n) - self._greatest_below(n, np.array([(1 << n) - m]))[0].item()

    def prefix(self, n: int) -> Column:
        """Phi(n, 0..2**(n - 2)) for n >= 2."""
        cached = self._prefixes.get(n)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._prefixes.get(n)
            if cached is None:
                cached = self._build_prefix(n)
                self._prefixes[n] = cached
        return cached

    def column(self, n: int) -> Column:
        """Phi(n, 0..2**n)."""
        check_ground_size(n, capped(MAX_N), "Phi")
        if n < 2:  # noqa: PLR2004
            return np.array(_BASE_COLUMNS[n], dtype=np.int64)
        prefix = self.prefix(n)
        upper = np.arange((1 << (n - 2)) + 1, (1 << n) + 1, dtype=np.int64)
        rest = (1 << n) - self._greatest_below(n, (1 << n) - upper)
        return np.concatenate((prefix, rest))

    def _greatest_below(self, n: int, targets: Column) -> Column:
        """For each target t, the greatest s <= 2**(n - 2) with Phi(n, s) <= t."""
        return np.searchsorted(self.prefix(n), targets, side="right").astype(np.int64) - 1

    def _build_prefix(self, n: int) -> Column:
        _LOGGER.debug(f"Filling the Phi prefix for n={n}.")
        quarter = 1 << (n - 2)
        lower = self.column(n - 2)[: quarter + 1]
        prefix = 2 * lower + np.arange(quarter + 1, dtype=np.int64)
        prefix.flags.writeable = False
        return prefix


_RECURSION = PhiRecursion()


def phi_recursive(n: int, m: int) -> int:
    return _RECURSION.value(n, m)


def phi_column(n: int) -> Column:
    """All of Phi(n, 0..2**n) by the recursion."""
    return _RECURSION.column(n)


def delta(k: int, x: int) -> DyadicRational:
    """Evaluate delta_k(x) exactly.

    delta_1(x) = x, and for k >= 2 the value is delta_{k // 2}(x) / 2 when x < k // 2 and
    1/2 + delta_{ceil(k / 2)}(x - k // 2) / 2 otherwise.
    """
    if k < 1 or not 0 <= x <= k:
        msg = f"delta_k(x) needs k >= 1 and 0 <= x <= k, got k={k}, x={x}"
        raise OutOfRangeError(msg)
    bits = 0
    depth = 0
    while k > 1:
        half = k // 2
        bits <<= 1
        if x < half:
            k = half
        else:
            bits |= 1
            x -= half
            k -= half
        depth += 1
    return DyadicRational(bits + x, depth)


def quick_params(n: int, m: int) -> QuickParams:
    """kappa, c and nu for 1 <= m <= 2**n, where kappa c (c - 1) <= m < kappa c (c + 1)."""
    _check_arguments(n, m)
    if m < 1:
        msg = "QuickParams are defined for m >= 1"
        raise OutOfRangeError(msg)
    kappa = 1 if n % 2 == 0 else 2
    quotient = m // kappa
    c = (math.isqrt(4 * quotient + 1) + 1) // 2
    return QuickParams(kappa=kappa, c=c, nu=n // 2)


def phi_fast(n: int, m: int) -> int:
    _check_arguments(n, m)
    if m == 0:
        return 0
    params = quick_params(n, m)
    kappa, c = params.kappa, params.c
    scale = params.scale
    fraction = delta(2 * kappa * c, m - kappa * c * (c - 1))
    # scale is a power of two, so 2 * scale * delta is exact.
    return scale * (2 * c - 1) + fraction.scaled(scale.bit_length()) - m


def phi_singleton(n: int) -> int:
    """Phi(n, 1) = (kappa + 1) * 2**nu - 1."""
    check_ground_size(n, capped(MAX_N), "Phi")
    kappa = 1 if n % 2 == 0 else 2
    return ((kappa + 1) << (n // 2)) - 1


def min_boundary(n: int, m: int) -> int:
    """Least size of F-updown minus F over m-families."""
    return phi_fast(n, m) - m


def lower_bound_f(n: int, m: int) -> tuple[int, bool]:
    """Floor of sqrt(2**(n + 2) m) - m, and whether the square root is exact."""
    _check_arguments(n, m)
    radicand = m << (n + 2)
    root = math.isqrt(radicand)
    return root - m, root * root == radicand


def satisfies_bounds(n: int, m: int, phi: int) -> bool:
    """Whether f(n, m) <= phi <= f(n, m) + sqrt(2**n), decided on integers."""
    _check_arguments(n, m)
    total = phi + m
    if total < 0 or total * total < m << (n + 2):
        return False
    # total <= sqrt(2**(n+2) m) + sqrt(2**n)  <=>  total**2 - 2**n (4m + 1) <= 2**(n+2) sqrt(m)
    excess = total * total - (1 << n) * (4 * m + 1)
    return excess <= 0 or excess * excess <= m << (2 * n + 4)


def explicit_bound_parameter(n: int, m: int) -> int:
    """Least a in 0..n with m < 2**(a + 1) and a = n mod 2."""
    _check_arguments(n, m)
    a = n % 2
    while m >= 1 << (a + 1):
        a += 2
    return a


def upper_bound_explicit(n: int, m: int) -> int:
    """The bound 2**((n + a) / 2) + 2**((n - a) / 2) m - m, or 0 when m = 0."""
    if m == 0:
        _check_arguments(n, m)
        return 0
    a = explicit_bound_parameter(n, m)
    return (1 << ((n + a) // 2)) + ((1 << ((n - a) // 2)) - 1) * m


def explicit_bound_window(n: int, m: int) -> tuple[int, int, int]:
    """The parameter a and the range of m on which `upper_bound_explicit` equals Phi."""
    a = explicit_bound_parameter(n, m)
    ceil_half, floor_half = 1 << ((a + 1) // 2), 1 << (a // 2)
    return a, (1 << a) - ceil_half - floor_half + 2, (1 << a) + ceil_half + floor_half - 1


def explicit_bound_is_tight(n: int, m: int) -> bool:
    if m == 0:
        return True
    _, low, high = explicit_bound_window(n, m)
    return low <= m <= high


def self_conjugate_s(n: int, m: int) -> int:
    """Greatest s in 0..2**n with Phi(n, s) <= 2**n - m; Phi(n, m) = 2**n - s."""
    _check_arguments(n, m)
    size = 1 << n
    return bisect_right(range(size + 1), size - m, key=lambda s: phi_fast(n, s)) - 1


def star_index(n: int, ell: int) -> int:
    """ell* = 2**n - Phi(n, ell), for 0 <= ell <= 2**(n - 2)."""
    check_ground_size(n, capped(MAX_N), "Phi")
    if ell < 0 or 4 * ell > 1 << n:
        msg = f"star_index needs 0 <= l <= 2^(n-2), got n={n}, l={ell}"
        raise OutOfRangeError(msg)
    return (1 << n) - phi_fast(n, ell)


def cross_sperner_g(n: int, m: int) -> int:
    """Largest partner size for an m-family in a cross-Sperner pair."""
    _check_arguments(n, m)
    if m < 1:
        msg = "cross_sperner_g needs m >= 1"
        raise OutOfRangeError(msg)
    return (1 << n) - phi_fast(n, m)


def cross_sperner_bound(n: int) -> int:
    """2**n - 2**ceil(n/2) - 2**floor(n/2) + 2."""
    _check_cross_sperner_n(n)
    return (1 << n) - (1 << ((n + 1) // 2)) - (1 << (n // 2)) + 2


def cross_sperner_max(n: int) -> int:
    """Largest m + g(n, m) over m >= 1 with g(n, m) >= 1."""
    _check_cross_sperner_n(n)
    check_ground_size(n, capped(TABLE_MAX_N), "Cross-Sperner maximum")
    best = 0
    for m in range(1, (1 << n) + 1):
        partner = cross_sperner_g(n, m)
        if partner < 1:
            break
        best = max(best, m + partner)
    return best


def phi_table(n: int) -> PhiTable:
    """Phi(n, 0..2**n) by the fast method, checked entry by entry against the recursion."""
    check_ground_size(n, capped(TABLE_MAX_N), "Phi table")
    values = [phi_fast(n, m) for m in range((1 << n) + 1)]
    recursive = phi_column(n)
    mismatch = np.flatnonzero(np.asarray(values, dtype=np.int64) != recursive)
    if mismatch.size:
        m = int(mismatch[0])
        raise MethodDisagreementError(n, m, values[m], int(recursive[m]))
    return PhiTable(n=n, values=values)


def _check_arguments(n: int, m: int) -> None:
    check_ground_size(n, capped(MAX_N), "Phi")
    if not 0 <= m <= 1 << n:
        msg = f"m must lie in 0..2^{n}, got m={m}"
        raise OutOfRangeError(msg)


def _check_cross_sperner_n(n: int) -> None:
    check_ground_size(n, capped(MAX_N), "Phi")
    if n < 2:  # noqa: PLR2004
        msg = f"cross-Sperner values need n >= 2, got n={n}"
        raise OutOfRangeError(msg)


class OutOfRangeError(Exception):
    """An argument lies outside the domain of the function."""


class MethodDisagreementError(Exception):
    """The fast and recursive methods produced different values."""

    def __init__(self, n: int, m: int, fast: int, recursive: int) -> None:  # noqa: D107
        super().__init__(f"Phi({n},{m}): fast={fast}, recursive={recursive}.")
        self.n = n
        self.m = m
        self.fast = fast
        self.recursive = recursive


class InexactScaleError(Exception):
    """Scaling a dyadic rational did not give an integer."""

    def __init__(self, value: DyadicRational, power: int) -> None:  # noqa: D107
        super().__init__(f"2^{power} * {value} is not an integer.")
