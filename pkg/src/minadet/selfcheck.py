"""Built-in invariant suites behind the `selfcheck` command.

Each suite re-derives a different slice of the package from first
principles (ring axioms, brute-force partition counts, cross-validated
determinants, the triangularization that proves the identities) at fixed
internal seeds, so a single command can demonstrate the build is sound.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field

from .closedform import (
    StirlingTable,
    bivariate_det_closed_form,
    derivative_det_closed_form,
    iteration_det_closed_form,
    power_det_closed_form,
    superfactorial,
)
from .matrices import (
    RingMatrix,
    binomial_transform,
    bivariate_iteration_matrix,
    derivative_power_matrix,
    det_bareiss,
    det_division_free,
    det_leibniz,
    iteration_matrix,
    power_matrix,
    triangularization_check,
)
from .rings import QQ, MultiPoly, gcd_is_one
from .series import BiSeries
from .verify import (
    random_bivariate_series,
    random_iteration_series,
    random_power_series,
    random_rational,
    random_series,
)

_SEED = 20260810


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    def check(self, condition: bool, message: str) -> None:
        self.cases += 1
        if not condition:
            self.failures.append(message)

    @property
    def passed(self) -> bool:
        return not self.failures


def suite_ring_axioms() -> SuiteResult:
    """Commutative-ring axioms and normalization on 1000 random triples."""
    result = SuiteResult("ring-axioms")
    rng = random.Random(_SEED)
    for i in range(1000):
        a, b, c = (random_rational(rng) for _ in range(3))
        ok = (
            (a + b) + c == a + (b + c)
            and a * (b + c) == a * b + a * c
            and a + (-a) == 0
            and a * b == b * a
        )
        normalized = all(
            q.denominator > 0 and gcd_is_one(q)
            for q in (a + b, a * c, a - b)
        )
        result.check(ok and normalized, f"triple #{i}: ({a}, {b}, {c})")
    return result


def _random_poly(rng: random.Random) -> MultiPoly:
    poly = MultiPoly()
    for _ in range(rng.randint(1, 4)):
        term = MultiPoly.constant(random_rational(rng))
        for _ in range(rng.randint(0, 2)):
            term = term * MultiPoly.variable(rng.randint(1, 3), rng.randint(0, 2))
        poly = poly + term
    return poly


def suite_polynomial_evaluation() -> SuiteResult:
    """Evaluation is a ring homomorphism on random polynomial pairs."""
    result = SuiteResult("polynomial-evaluation")
    rng = random.Random(_SEED + 1)
    for i in range(100):
        p, q = _random_poly(rng), _random_poly(rng)
        assignment = {
            var: random_rational(rng) for var in p.variables() | q.variables()
        }
        ok = (
            (p * q).evaluate(assignment) == p.evaluate(assignment) * q.evaluate(assignment)
            and (p + q).evaluate(assignment) == p.evaluate(assignment) + q.evaluate(assignment)
        )
        result.check(ok, f"pair #{i}: ({p}) , ({q})")
    return result


def _partition_count(k: int, blocks: int) -> int:
    """Brute-force S(k, blocks) by enumerating assignments of items to blocks."""
    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for partial in partitions(rest):
            for i in range(len(partial)):
                yield partial[:i] + [partial[i] + [first]] + partial[i + 1:]
            yield [[first]] + partial

    return sum(1 for p in partitions(list(range(k))) if len(p) == blocks)


def suite_combinatorics(table: StirlingTable | None = None) -> SuiteResult:
    """Stirling table vs. brute-force enumeration, recurrence, superfactorial."""
    result = SuiteResult("combinatorics")
    if table is None:
        table = StirlingTable(20)
    top = min(table.max_k, 20)
    for k in range(min(top, 8) + 1):
        for m in range(k + 1):
            result.check(
                table.value(k, m) == _partition_count(k, m),
                f"S({k},{m}) disagrees with enumeration",
            )
    for k in range(top):
        for m in range(k + 1):
            result.check(
                table.value(k + 1, m + 1)
                == (m + 1) * table.value(k, m + 1) + table.value(k, m),
                f"recurrence fails at S({k + 1},{m + 1})",
            )
    for k in range(1, top + 1):
        result.check(table.value(k, 0) == 0, f"S({k},0) should be 0")
        result.check(table.value(k, k) == 1, f"S({k},{k}) should be 1")
    result.check(table.value(0, 0) == 1, "S(0,0) should be 1")
    for n, expected in ((0, 1), (3, 12), (5, 34560)):
        result.check(
            superfactorial(n) == expected, f"superfactorial({n}) != {expected}"
        )
    return result


def suite_determinant_oracles() -> SuiteResult:
    """Three determinant algorithms agree on 200 random rational matrices."""
    result = SuiteResult("determinant-oracles")
    rng = random.Random(_SEED + 2)
    for i in range(200):
        dim = rng.randint(1, 5)
        matrix = RingMatrix(
            QQ, dim, [random_rational(rng) for _ in range(dim * dim)]
        )
        reference = det_leibniz(matrix)
        ok = det_bareiss(matrix) == reference == det_division_free(matrix)
        result.check(ok, f"matrix #{i} (dim {dim}): algorithms disagree")
    return result


def _theorem_matrices(rng: random.Random, n: int):
    yield "powers", power_matrix(random_power_series(rng, n), n)
    yield "iterates", iteration_matrix(random_iteration_series(rng, n + 1), n)
    yield "bivariate", bivariate_iteration_matrix(
        random_bivariate_series(rng, n + 1), n
    )


def suite_triangularization() -> SuiteResult:
    """The binomial transform upper-triangularizes every theorem matrix."""
    result = SuiteResult("triangularization")
    rng = random.Random(_SEED + 3)
    for n in range(7):
        for _ in range(2):
            for label, matrix in _theorem_matrices(rng, n):
                outcome = triangularization_check(binomial_transform(n), matrix)
                expected = det_bareiss(matrix)
                result.check(
                    outcome.is_upper and outcome.diag_product == expected,
                    f"{label} matrix at n={n}: triangularization broke",
                )
    return result


def suite_specializations() -> SuiteResult:
    """The bivariate machinery degenerates to both univariate forms."""
    result = SuiteResult("specializations")
    rng = random.Random(_SEED + 4)
    for n in range(7):
        # multiplicative shape: F = t*g(x) with g(0) = 1
        g = random_power_series(rng, n)
        F = BiSeries(
            QQ, n + 1,
            {(1, j): g.coefficient(j) for j in range(n + 1)},
        )
        result.check(
            bivariate_iteration_matrix(F, n) == power_matrix(g, n),
            f"t*g(x) shape at n={n} does not reproduce the power matrix",
        )
        # compositional shape: no x part at all
        u = random_iteration_series(rng, n + 1)
        F = BiSeries(
            QQ, n + 1,
            {(m, 0): u.coefficient(m) for m in range(1, n + 2)},
        )
        result.check(
            bivariate_iteration_matrix(F, n) == iteration_matrix(u, n),
            f"pure-t shape at n={n} does not reproduce the iterate matrix",
        )
    for n in range(9):
        b20, b11 = random_rational(rng), random_rational(rng)
        result.check(
            bivariate_det_closed_form(QQ.zero, b11, n)
            == power_det_closed_form(b11, n),
            f"closed form with b20=0 at n={n}",
        )
        result.check(
            bivariate_det_closed_form(b20, QQ.zero, n)
            == iteration_det_closed_form(b20, n),
            f"closed form with b11=0 at n={n}",
        )
    return result


def suite_derivative_identity() -> SuiteResult:
    """Determinant of the derivative-power matrix equals its closed form."""
    result = SuiteResult("derivative-identity")
    rng = random.Random(_SEED + 5)
    for trial in range(3):
        f = random_series(rng, 10)
        for n in range(4):
            det = det_division_free(derivative_power_matrix(f, n))
            result.check(
                det == derivative_det_closed_form(f, n),
                f"trial {trial}, n={n}: series determinant mismatch",
            )
    return result


def run_selfcheck(stream=None, stirling_table: StirlingTable | None = None) -> int:
    """Run every suite, print one line per suite plus a total; 0 iff all pass."""
    stream = stream if stream is not None else sys.stdout
    suites = [
        suite_ring_axioms(),
        suite_polynomial_evaluation(),
        suite_combinatorics(stirling_table),
        suite_determinant_oracles(),
        suite_triangularization(),
        suite_specializations(),
        suite_derivative_identity(),
    ]
    width = max(len(s.name) for s in suites)
    total_cases = 0
    failed = 0
    for suite in suites:
        total_cases += suite.cases
        if suite.passed:
            print(f"{suite.name.ljust(width)}  PASS  ({suite.cases} cases)", file=stream)
        else:
            failed += 1
            print(
                f"{suite.name.ljust(width)}  FAIL  "
                f"({suite.cases} cases, {len(suite.failures)} failures)",
                file=stream,
            )
            for message in suite.failures[:3]:
                print(f"  - {message}", file=stream)
    total_failures = sum(len(s.failures) for s in suites)
    print(
        f"total: {len(suites)} suites, {total_cases} cases, "
        f"{total_failures} failures",
        file=stream,
    )
    return 0 if failed == 0 else 1
