"""Verification runs: build matrices, take determinants, compare closed forms.

This is the engine behind the command line: given a theorem selector and
either a fixed series or a seeded generator, it checks the determinant
identity exactly for every matrix size up to n_max and reports each case.
Identical (seed, flags, input) must produce identical reports, so nothing
here may depend on iteration order of unordered containers.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .closedform import (
    bivariate_det_closed_form,
    derivative_det_closed_form,
    iteration_det_closed_form,
    power_det_closed_form,
)
from .matrices import (
    bivariate_iteration_matrix,
    derivative_power_matrix,
    det_bareiss,
    det_division_free,
    iteration_matrix,
    power_matrix,
)
from .rings import QQ
from .series import BiSeries, UniSeries

THEOREMS = ("1", "2", "3", "mina")

# random coefficients stay single-digit: determinant magnitudes explode
# combinatorially anyway, and small inputs keep n_max = 8 runs in seconds
_MAX_NUMERATOR = 9
_MAX_DENOMINATOR = 9


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    p = rng.randint(-_MAX_NUMERATOR, _MAX_NUMERATOR)
    while nonzero and p == 0:
        p = rng.randint(-_MAX_NUMERATOR, _MAX_NUMERATOR)
    return Fraction(p, rng.randint(1, _MAX_DENOMINATOR))


def random_power_series(rng: random.Random, order: int) -> UniSeries:
    """1 + a1 x + ... with a1 forced nonzero (a meaningful power check)."""
    coeffs = [QQ.one]
    if order >= 1:
        coeffs.append(random_rational(rng, nonzero=True))
    coeffs.extend(random_rational(rng) for _ in range(order - 1))
    return UniSeries(QQ, coeffs)


def random_iteration_series(rng: random.Random, order: int) -> UniSeries:
    """x + b1 x^2 + ... (zero constant term, unit linear coefficient)."""
    if order < 1:
        raise ValueError("iteration series needs order >= 1")
    coeffs = [QQ.zero, QQ.one]
    coeffs.extend(random_rational(rng) for _ in range(order - 1))
    return UniSeries(QQ, coeffs)


def random_bivariate_series(rng: random.Random, order: int) -> BiSeries:
    """Random transformation with the forced leading coefficient b[1,0] = 1."""
    if order < 1:
        raise ValueError("bivariate series needs order >= 1")
    terms = {(1, 0): QQ.one}
    for m in range(1, order + 1):
        for n in range(order - m + 1):
            if (m, n) != (1, 0):
                terms[(m, n)] = random_rational(rng)
    return BiSeries(QQ, order, terms)


def random_series(rng: random.Random, order: int) -> UniSeries:
    """Unconstrained rational series (for the derivative-matrix identity)."""
    return UniSeries(QQ, [random_rational(rng) for _ in range(order + 1)])


def default_order(theorem: str, n_max: int) -> int:
    """Truncation used for generated inputs (the builders' minimum, plus a
    comparison window for the derivative identity)."""
    if theorem == "1":
        return n_max
    if theorem in ("2", "3"):
        return n_max + 1
    if theorem == "mina":
        return n_max + 8
    raise ValueError(f"unknown theorem selector: {theorem!r}")


def minimum_order(theorem: str, n_max: int) -> int:
    """Smallest truncation at which the n_max matrix can be built at all."""
    if theorem in ("1", "mina"):
        return n_max
    if theorem in ("2", "3"):
        return n_max + 1
    raise ValueError(f"unknown theorem selector: {theorem!r}")


def generate_input(theorem: str, rng: random.Random, order: int):
    if theorem == "1":
        return random_power_series(rng, order)
    if theorem == "2":
        return random_iteration_series(rng, order)
    if theorem == "3":
        return random_bivariate_series(rng, order)
    if theorem == "mina":
        return random_series(rng, order)
    raise ValueError(f"unknown theorem selector: {theorem!r}")


@dataclass(frozen=True)
class VerifyCase:
    trial: int
    n: int
    determinant: str
    closed_form: str
    match: bool


@dataclass
class VerifyReport:
    theorem: str
    n_max: int
    trials: int
    order: int
    seed: int | None
    input_path: str | None
    cases: list[VerifyCase] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def all_match(self) -> bool:
        return all(case.match for case in self.cases)

    def render_text(self) -> str:
        source = (
            f"input={self.input_path}" if self.input_path is not None
            else f"seed={self.seed}"
        )
        lines = [
            f"verify theorem={self.theorem} n-max={self.n_max} "
            f"trials={self.trials} order={self.order} {source}"
        ]
        headers = ("trial", "n", "determinant", "closed form", "match")
        table = [
            (str(c.trial), str(c.n), c.determinant, c.closed_form,
             "yes" if c.match else "NO")
            for c in self.cases
        ]
        widths = [
            max(len(headers[k]), max((len(r[k]) for r in table), default=0))
            for k in range(5)
        ]
        def fmt(row):
            return "  ".join(
                [row[0].rjust(widths[0]), row[1].rjust(widths[1]),
                 row[2].ljust(widths[2]), row[3].ljust(widths[3]), row[4]]
            )
        lines.append(fmt(headers))
        lines.extend(fmt(row) for row in table)
        matched = sum(1 for c in self.cases if c.match)
        verdict = "PASS" if self.all_match else "FAIL"
        lines.append(f"result: {verdict} ({matched}/{len(self.cases)} cases match)")
        lines.append(f"elapsed: {self.elapsed:.3f}s")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "n_max": self.n_max,
            "trials": self.trials,
            "order": self.order,
            "seed": self.seed,
            "input": self.input_path,
            "all_match": self.all_match,
            "cases": [
                {
                    "trial": c.trial,
                    "n": c.n,
                    "determinant": c.determinant,
                    "closed_form": c.closed_form,
                    "match": c.match,
                }
                for c in self.cases
            ],
            "elapsed_seconds": round(self.elapsed, 6),
        }

    def render_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def check_series_kind(theorem: str, series) -> None:
    if theorem == "3":
        if not isinstance(series, BiSeries):
            raise ValueError("theorem 3 needs a bivariate series input")
    elif not isinstance(series, UniSeries):
        raise ValueError(f"theorem {theorem} needs a univariate series input")


def run_case(theorem: str, series, n: int) -> tuple:
    """One (series, n) verification: returns (determinant, closed_form)."""
    if theorem == "1":
        det = det_bareiss(power_matrix(series, n))
        rhs = QQ.one if n == 0 else power_det_closed_form(series.coefficient(1), n)
    elif theorem == "2":
        det = det_bareiss(iteration_matrix(series, n))
        rhs = (
            QQ.one if n == 0
            else iteration_det_closed_form(series.coefficient(2), n)
        )
    elif theorem == "3":
        det = det_bareiss(bivariate_iteration_matrix(series, n))
        rhs = (
            QQ.one if n == 0
            else bivariate_det_closed_form(
                series.coefficient(2, 0), series.coefficient(1, 1), n
            )
        )
    elif theorem == "mina":
        det = det_division_free(derivative_power_matrix(series, n))
        rhs = derivative_det_closed_form(series, n)
    else:
        raise ValueError(f"unknown theorem selector: {theorem!r}")
    return det, rhs


def _format(value) -> str:
    return str(value) if isinstance(value, UniSeries) else QQ.format(value)


def run_verify(
    theorem: str,
    n_max: int,
    *,
    series=None,
    input_path: str | None = None,
    seed: int | None = None,
    trials: int = 1,
    order: int | None = None,
) -> VerifyReport:
    """Check the selected determinant identity for n = 0..n_max, per trial.

    With a fixed series there is a single trial; otherwise each trial draws
    a fresh random series of the requested order from the seeded generator.
    """
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem selector: {theorem!r}")
    if n_max < 0:
        raise ValueError("n-max must be nonnegative")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if order is None:
        order = series.order if series is not None else default_order(theorem, n_max)
    minimum = minimum_order(theorem, n_max)
    if order < minimum:
        raise ValueError(
            f"order {order} is below the minimum {minimum} "
            f"for theorem {theorem} at n-max {n_max}"
        )

    started = time.perf_counter()
    if series is not None:
        check_series_kind(theorem, series)
        if series.order < order:
            raise ValueError(
                f"input series order {series.order} is below requested order {order}"
            )
        series = series.truncate(order)
        trials = 1
        rng = None
        report_seed = None
    else:
        rng = random.Random(0 if seed is None else seed)
        report_seed = 0 if seed is None else seed

    report = VerifyReport(
        theorem=theorem,
        n_max=n_max,
        trials=trials,
        order=order,
        seed=report_seed,
        input_path=input_path,
    )
    for trial in range(trials):
        subject = series if series is not None else generate_input(theorem, rng, order)
        for n in range(n_max + 1):
            det, rhs = run_case(theorem, subject, n)
            report.cases.append(
                VerifyCase(
                    trial=trial,
                    n=n,
                    determinant=_format(det),
                    closed_form=_format(rhs),
                    match=det == rhs,
                )
            )
    report.elapsed = time.perf_counter() - started
    return report
