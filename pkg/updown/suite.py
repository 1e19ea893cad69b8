"""The invariant suite run by `updown verify`.

Each check sweeps a range of ground sizes and either returns a short summary or raises
`CheckFailedError` naming the first counterexample.
"""

import logging
from collections.abc import Callable
from itertools import combinations

from .const import (
    CHAIN_MAX_N,
    CONVEX_ORACLE_MAX_N,
    DEFAULT_VERIFY_MAX_N,
    DEFAULT_VERIFY_ORACLE_MAX,
    EXHAUSTIVE_ORACLE_MAX_N,
    MAX_N,
    capped,
)
from .family import Family, conjugate, is_convex, updown_size
from .ferrers import conjugate_partition
from .models.verification import SuiteCheck, SuiteReport
from .oracle import (
    brute_cross_sperner_max,
    brute_min_updown,
    convex_updown_profile,
    extremal_configs_m1,
)
from .phi import (
    cross_sperner_bound,
    cross_sperner_max,
    delta,
    explicit_bound_is_tight,
    lower_bound_f,
    phi_column,
    phi_fast,
    phi_singleton,
    satisfies_bounds,
    star_index,
    upper_bound_explicit,
)
from .shifting import is_strongly_shifted
from .witness import c_family, c_star_family, canonical_chain, verify_chain

_LOGGER = logging.getLogger(__name__)

SWEEP_MAX_N = 16
EXPLICIT_MAX_N = 12
CHAIN_CHECK_MAX_N = 10
CONJUGATE_WITNESS_MAX_N = 8
ODD_GAP_MAX_N = 19
DELTA_MAX_K = 256
DELTA_RECURSION_MAX_T = 8

type Check = Callable[[], str]


def run_suite(
    max_n: int = DEFAULT_VERIFY_MAX_N, oracle_max: int = DEFAULT_VERIFY_ORACLE_MAX
) -> SuiteReport:
    """Run every check whose range is nonempty for the given budget."""
    max_n = min(max_n, capped(MAX_N))
    report = SuiteReport(max_n=max_n, oracle_max=oracle_max)
    for name, check in _checks(max_n, oracle_max):
        try:
            detail = check()
        except _EmptyRangeError:
            _LOGGER.debug(f"Skipped {name}: empty range.")
            continue
        except Exception as err:  # noqa: BLE001
            report.checks.append(SuiteCheck(name=name, passed=False, detail=str(err)))
            _LOGGER.info(f"{name}: FAIL ({err})")
            continue
        report.checks.append(SuiteCheck(name=name, passed=True, detail=detail))
        _LOGGER.info(f"{name}: pass ({detail})")
    return report


def _checks(max_n: int, oracle_max: int) -> list[tuple[str, Check]]:
    sweep = min(max_n, SWEEP_MAX_N)
    chain_n = min(max_n, capped(CHAIN_MAX_N), CHAIN_CHECK_MAX_N)
    exhaustive_n = min(oracle_max, capped(EXHAUSTIVE_ORACLE_MAX_N))
    convex_n = min(oracle_max + 1, capped(CONVEX_ORACLE_MAX_N))
    return [
        ("phi methods agree", lambda: _phi_agreement(sweep)),
        ("bound sandwich", lambda: _bound_sandwich(sweep)),
        ("explicit upper bound", lambda: _explicit_bound(min(max_n, EXPLICIT_MAX_N))),
        ("self-conjugate partition", lambda: _self_conjugacy(min(max_n, EXPLICIT_MAX_N))),
        ("monotone prefix", lambda: _monotone_prefix(sweep)),
        ("odd singleton gap", lambda: _odd_singleton_gap(min(max_n, ODD_GAP_MAX_N))),
        ("delta identities", _delta_identities),
        ("delta recursion", _delta_recursion),
        ("cross-Sperner formula", lambda: _cross_sperner_formula(sweep)),
        ("anchor conjugates", lambda: _anchor_conjugates(chain_n)),
        ("witness chain", lambda: _witness_chains(chain_n)),
        (
            "conjugate witnesses",
            lambda: _conjugate_witnesses(min(chain_n, CONJUGATE_WITNESS_MAX_N)),
        ),
        ("oracle agreement", lambda: _oracle_agreement(exhaustive_n)),
        ("convex oracle agreement", lambda: _convex_oracle(convex_n)),
        ("cross-Sperner oracle", lambda: _cross_sperner_oracle(convex_n)),
        ("extremal singletons", lambda: _extremal_singletons(convex_n)),
        ("strongly shifted lower bound", lambda: _strongly_shifted_bound(exhaustive_n)),
    ]


def _phi_agreement(top: int) -> str:
    count = 0
    for n in _sizes(0, top):
        column = phi_column(n)
        for m in range((1 << n) + 1):
            fast = phi_fast(n, m)
            if fast != int(column[m]):
                msg = f"Phi({n},{m}): fast={fast}, recursive={int(column[m])}"
                raise CheckFailedError(msg)
        count += (1 << n) + 1
    return f"n<={top}, {count} values"


def _bound_sandwich(top: int) -> str:
    exact = 0
    for n in _sizes(0, top):
        for m in range((1 << n) + 1):
            value = phi_fast(n, m)
            if not satisfies_bounds(n, m, value):
                msg = f"Phi({n},{m})={value} is outside [f, f + 2^(n/2)]"
                raise CheckFailedError(msg)
            floor_f, is_exact = lower_bound_f(n, m)
            if is_exact:
                exact += 1
                if value != floor_f:
                    msg = f"Phi({n},{m})={value} differs from the exact bound {floor_f}"
                    raise CheckFailedError(msg)
    return f"n<={top}, {exact} exact cases"


def _explicit_bound(top: int) -> str:
    tight = 0
    for n in _sizes(0, top):
        for m in range((1 << n) + 1):
            value, bound = phi_fast(n, m), upper_bound_explicit(n, m)
            if bound < value:
                msg = f"explicit bound {bound} < Phi({n},{m})={value}"
                raise CheckFailedError(msg)
            if explicit_bound_is_tight(n, m):
                tight += 1
                if bound != value:
                    msg = f"explicit bound {bound} != Phi({n},{m})={value} inside its window"
                    raise CheckFailedError(msg)
    return f"n<={top}, {tight} tight cases"


def _self_conjugacy(top: int) -> str:
    for n in _sizes(0, top):
        parts = [phi_fast(n, m) for m in range(1 << n, 0, -1)]
        if conjugate_partition(parts) != parts:
            msg = f"the partition for n={n} is not self-conjugate"
            raise CheckFailedError(msg)
    return f"n<={top}"


def _monotone_prefix(top: int) -> str:
    for n in _sizes(2, top):
        quarter = 1 << (n - 2)
        values = [phi_fast(n, m) for m in range((1 << n) + 1)]
        if values[0] != 0 or values[-1] != 1 << n:
            msg = f"Phi({n},.) has wrong end points"
            raise CheckFailedError(msg)
        if any(b < a for a, b in zip(values, values[1:], strict=False)):
            msg = f"Phi({n},.) is not monotone"
            raise CheckFailedError(msg)
        if any(b <= a for a, b in zip(values[:quarter], values[1 : quarter + 1], strict=True)):
            msg = f"Phi({n},.) is not strictly increasing up to 2^(n-2)"
            raise CheckFailedError(msg)
        if values[quarter] != 3 * quarter:
            msg = f"Phi({n},{quarter})={values[quarter]}, expected {3 * quarter}"
            raise CheckFailedError(msg)
    return f"2<=n<={top}"


def _odd_singleton_gap(top: int) -> str:
    for n in _sizes(1, top, step=2):
        f_value, _ = lower_bound_f(n, 1)
        # 3 * 2**((n - 1) / 2) - 1 against 2**(n / 2 + 1) - 1
        if not phi_singleton(n) > f_value or phi_singleton(n) != phi_fast(n, 1):
            msg = f"Phi({n},1)={phi_fast(n, 1)} does not exceed f={f_value}"
            raise CheckFailedError(msg)
    return f"odd n<={top}"


def _delta_identities() -> str:
    for k in range(1, DELTA_MAX_K + 1):
        t = (k - 1).bit_length()
        values = [delta(k, x).scaled(t) for x in range(k + 1)]
        if values[0] != 0 or values[k] != 1 << t:
            msg = f"delta_{k} has wrong end points"
            raise CheckFailedError(msg)
        if k == 1 << t and values != list(range(k + 1)):
            msg = f"2^t delta_{k}(x) != x"
            raise CheckFailedError(msg)
        if k == (1 << t) - 1 and values[1:] != list(range(2, k + 2)):
            msg = f"2^t delta_{k}(x) != x + 1"
            raise CheckFailedError(msg)
        if any(values[x + 1] - (x + 1) < values[x] - x for x in range(k)):
            msg = f"2^t delta_{k}(x) - x is not monotone"
            raise CheckFailedError(msg)
    return f"k<={DELTA_MAX_K}"


def _delta_recursion() -> str:
    cases = 0
    for t in range(1, DELTA_RECURSION_MAX_T + 1):
        total = 1 << t
        for q in range(1, total):
            k = total - q
            shifted = [delta(q, r).scaled(t) - r for r in range(q + 1)]
            for ell in range(k + 1):
                greatest = next(r for r in range(q, -1, -1) if shifted[r] <= k - ell)
                expected = q - delta(k, ell).scaled(t) + ell
                if greatest != expected:
                    msg = f"t={t}, k={k}, l={ell}: greatest r={greatest}, expected {expected}"
                    raise CheckFailedError(msg)
                cases += 1
    return f"t<={DELTA_RECURSION_MAX_T}, {cases} cases"


def _cross_sperner_formula(top: int) -> str:
    for n in _sizes(2, top):
        found, bound = cross_sperner_max(n), cross_sperner_bound(n)
        if found != bound:
            msg = f"n={n}: maximum {found}, bound {bound}"
            raise CheckFailedError(msg)
    return f"2<=n<={top}"


def _anchor_conjugates(top: int) -> str:
    for n in _sizes(0, top):
        for a in range(n % 2, n + 1, 2):
            if conjugate(c_family(n, a)) != c_star_family(n, a):
                msg = f"conjugate of C_{{{n},{a}}} is not C*_{{{n},{a}}}"
                raise CheckFailedError(msg)
    return f"n<={top}"


def _witness_chains(top: int) -> str:
    for n in _sizes(0, top):
        _LOGGER.debug(f"Checking the witness chain for n={n}.")
        report = verify_chain(canonical_chain(n))
        if not report.ok:
            failing = report.failures()
            misplaced = [(str(anchor.kind), anchor.a) for anchor in report.misplaced_anchors()]
            msg = f"n={n}: failing indices {failing[:10]}, misplaced anchors {misplaced}"
            raise CheckFailedError(msg)
    return f"n<={top}"


def _conjugate_witnesses(top: int) -> str:
    for n in _sizes(2, top):
        chain = canonical_chain(n)
        for ell in range((1 << (n - 2)) + 1):
            image = conjugate(chain[ell])
            expected = (1 << n) - ell
            if not is_convex(image) or len(image) != star_index(n, ell):
                msg = f"n={n}: conjugate of F_{ell} is not a convex {star_index(n, ell)}-family"
                raise CheckFailedError(msg)
            if updown_size(image) != expected:
                msg = f"n={n}: conjugate of F_{ell} has closure {updown_size(image)}"
                raise CheckFailedError(msg)
    return f"2<=n<={top}"


def _oracle_agreement(top: int) -> str:
    for n in _sizes(0, top):
        _LOGGER.debug(f"Running the exhaustive oracle for n={n}.")
        for m in range((1 << n) + 1):
            result = brute_min_updown(n, m)
            if result.value != phi_fast(n, m):
                msg = f"oracle found {result.value} for ({n},{m}), formula {phi_fast(n, m)}"
                raise CheckFailedError(msg)
            if len(result.witness) != m or updown_size(result.witness) != result.value:
                msg = f"oracle witness for ({n},{m}) does not attain its value"
                raise CheckFailedError(msg)
    return f"n<={top}"


def _convex_oracle(top: int) -> str:
    for n in _sizes(0, top):
        profile = convex_updown_profile(n)
        expected = tuple(phi_fast(n, m) for m in range((1 << n) + 1))
        if profile != expected:
            m = next(m for m, (a, b) in enumerate(zip(profile, expected, strict=True)) if a != b)
            msg = f"convex oracle found {profile[m]} for ({n},{m}), formula {expected[m]}"
            raise CheckFailedError(msg)
    return f"n<={top}"


def _cross_sperner_oracle(top: int) -> str:
    for n in _sizes(2, top):
        found, bound = brute_cross_sperner_max(n), cross_sperner_bound(n)
        if found != bound:
            msg = f"n={n}: oracle maximum {found}, bound {bound}"
            raise CheckFailedError(msg)
    return f"2<=n<={top}"


def _extremal_singletons(top: int) -> str:
    sizes = [n for n in (2, 4, 5) if n <= top]
    if not sizes:
        raise _EmptyRangeError
    for n in sizes:
        found = {family.masks()[0].item() for family in extremal_configs_m1(n)}
        expected = {
            mask for mask in range(1 << n) if mask.bit_count() in {n // 2, (n + 1) // 2}
        }
        if found != expected:
            msg = f"n={n}: extremal single sets differ from the middle layers"
            raise CheckFailedError(msg)
    return f"n in {sizes}"


def _strongly_shifted_bound(top: int) -> str:
    checked = 0
    for n in _sizes(2, top):
        base = c_family(n, n - 2)
        for m in range((1 << (n - 2)) + 1):
            for masks in combinations(range(1 << n), m):
                family = Family.from_masks(n, masks)
                if family.issubset(base) or not is_strongly_shifted(family):
                    continue
                checked += 1
                if updown_size(family) < (1 << (n - 1)) + m:
                    msg = f"strongly shifted {sorted(masks)} over [{n}] has a small closure"
                    raise CheckFailedError(msg)
    return f"2<=n<={top}, {checked} families"


def _sizes(low: int, high: int, step: int = 1) -> range:
    sizes = range(low, high + 1, step)
    if not sizes:
        raise _EmptyRangeError
    return sizes


class _EmptyRangeError(Exception):
    """The budget leaves no ground size to check."""


class CheckFailedError(Exception):
    """A suite check found a counterexample."""
