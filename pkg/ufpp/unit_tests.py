import fractions
import os
import typing

import ufpp

CORPUS_SCALE_ENVIRONMENT_VARIABLE = "UFPP_CORPUS_SCALE"
SLOW_TESTS_ENVIRONMENT_VARIABLE = "UFPP_RUN_SLOW_TESTS"


def corpus_scale() -> int:
    try:
        return max(1, int(os.environ.get(CORPUS_SCALE_ENVIRONMENT_VARIABLE, "1")))
    except ValueError:
        return 1


def run_slow_tests() -> bool:
    return bool(os.environ.get(SLOW_TESTS_ENVIRONMENT_VARIABLE))


class UfppTestCase(object):
    """Corpus builders and assertions shared by the test suite.

    Corpora use fixed seeds; their size is multiplied by ``UFPP_CORPUS_SCALE``.
    """

    corpus_size: int = 40

    def corpus_seeds(self, size: typing.Optional[int] = None) -> range:
        if size is None:
            size = self.corpus_size
        return range(size * corpus_scale())

    def random_corpus(
        self,
        max_n: int = 10,
        max_m: int = 8,
        maxcap: int = 12,
        maxdemand: int = 8,
        size: typing.Optional[int] = None,
    ) -> typing.Iterator[ufpp.Instance]:
        for seed in self.corpus_seeds(size):
            yield ufpp.generators.gen_random(
                1 + seed % max_n,
                1 + (seed * 7) % max_m,
                maxcap,
                maxdemand,
                ufpp.generators.PROFIT_STYLE_TUPLE[seed % 2],
                seed,
            )

    def large_corpus(
        self, k: int = 2, max_n: int = 10, max_m: int = 8, maxcap: int = 16, size=None
    ) -> typing.Iterator[ufpp.Instance]:
        for seed in self.corpus_seeds(size):
            yield ufpp.generators.gen_large(
                1 + seed % max_n,
                1 + (seed * 5) % max_m,
                maxcap,
                k,
                ufpp.generators.PROFIT_STYLE_TUPLE[seed % 2],
                seed,
            )

    def small_corpus(
        self,
        delta: ufpp.utilities.Rational = fractions.Fraction(1, 2),
        max_n: int = 10,
        max_m: int = 8,
        maxcap: int = 40,
        size=None,
    ) -> typing.Iterator[ufpp.Instance]:
        for seed in self.corpus_seeds(size):
            yield ufpp.generators.gen_small(
                1 + seed % max_n,
                1 + (seed * 3) % max_m,
                maxcap,
                delta,
                ufpp.generators.PROFIT_STYLE_TUPLE[seed % 2],
                seed,
            )

    def unit_demand_corpus(
        self, max_n: int = 10, max_m: int = 8, maxcap: int = 4, size=None
    ) -> typing.Iterator[ufpp.Instance]:
        for seed in self.corpus_seeds(size):
            yield ufpp.generators.gen_unit_demand(
                1 + seed % max_n, 1 + (seed * 3) % max_m, maxcap, seed
            )

    def tight_instance(self, k: int = 2, profits=None) -> ufpp.Instance:
        return ufpp.its.tight_instance(k, profits)

    def assertFeasible(
        self,
        inst: ufpp.Instance,
        selected: typing.Iterable[int],
        capacities: typing.Optional[typing.Sequence[ufpp.utilities.Rational]] = None,
    ):
        report = ufpp.check_feasible(inst, selected, capacities)
        self.assertTrue(report.feasible, msg=str(report.violations))

    def assertIts(self, inst: ufpp.Instance, selected: typing.Iterable[int]):
        self.assertTrue(ufpp.its.is_its(inst, selected))

    def assertRatioAtLeast(
        self, profit: int, opt: int, bound: ufpp.utilities.Rational, msg=None
    ):
        """``profit >= opt / bound`` compared exactly."""

        bound = fractions.Fraction(bound)
        self.assertGreaterEqual(
            profit * bound.numerator,
            opt * bound.denominator,
            msg=msg or f"profit {profit} below {opt}/{bound}",
        )
