"""Test the vertex sweep and the medium task solver"""

import fractions
import os
import unittest
from unittest import mock

import ufpp


class SolveExactBoundedTest(unittest.TestCase):
    def setUp(self):
        self.inst = ufpp.Instance(1, (10,), tuple(ufpp.Task(0, 1, 1, 1, i) for i in range(3)))

    def test_crossing_bound(self):
        for bound, profit in ((1, 1), (2, 2), (None, 3)):
            solution = ufpp.medium_dp.solve_exact_bounded(self.inst, crossing_bound=bound)
            self.assertEqual(solution.profit, profit)

    def test_rational_capacities(self):
        solution = ufpp.medium_dp.solve_exact_bounded(
            self.inst, capacities=(fractions.Fraction(5, 2),)
        )
        self.assertEqual(solution.profit, 2)

    def test_task_subset(self):
        solution = ufpp.medium_dp.solve_exact_bounded(self.inst, task_ids=[2], algorithm_tag="sub")
        self.assertEqual((solution.selected, solution.algorithm_tag), (frozenset([2]), "sub"))

    def test_state_budget(self):
        with mock.patch.dict(os.environ, {ufpp.constants.STATE_BUDGET_ENVIRONMENT_VARIABLE: "1"}):
            with self.assertRaises(ufpp.medium_dp.StateBudgetExceededError) as context:
                ufpp.medium_dp.solve_exact_bounded(self.inst)
        self.assertIsInstance(context.exception, ufpp.ResourceLimitError)
        self.assertEqual(context.exception.budget, 1)


class SolveMediumTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    corpus_size = 30

    def test_halves_meet_modified_capacities(self):
        beta = fractions.Fraction(1, 16)
        for inst in self.small_corpus(fractions.Fraction(1, 2), max_n=9, maxcap=40):
            plan = ufpp.group(inst, 3, 5, beta, fractions.Fraction(1, 64))
            for k in plan.occupied:
                medium_ids = plan.members(k)
                group_solution = ufpp.medium_dp.solve_medium(inst, plan, k, medium_ids)
                self.assertTrue(ufpp.check_modified(inst, plan, k, group_solution.selected))
                self.assertEqual(group_solution.alpha, 2)
                optimum = ufpp.medium_dp.solve_exact_bounded(inst, medium_ids)
                self.assertRatioAtLeast(inst.profit(group_solution.selected), optimum.profit, 2)

    def test_two_partition(self):
        inst = ufpp.Instance(
            2, (16, 16), tuple(ufpp.Task(0, 2, 4, 1, i) for i in range(4))
        )
        plan = ufpp.group(inst, 1, 2, fractions.Fraction(1, 4), fractions.Fraction(1, 64))
        (k,) = plan.occupied
        first, second = ufpp.medium_dp.two_partition(inst, plan, k, inst.task_ids)
        self.assertEqual(first | second, inst.task_ids)
        self.assertEqual(first, frozenset([0, 1, 2]))

    def test_two_partition_fails_for_large_tasks(self):
        inst = ufpp.Instance(1, (16,), (ufpp.Task(0, 1, 16, 1, 0),))
        plan = ufpp.group(inst, 1, 2, fractions.Fraction(1, 4), fractions.Fraction(1, 64))
        with self.assertRaises(ufpp.PreconditionError):
            ufpp.medium_dp.two_partition(inst, plan, 4, inst.task_ids)

    def test_needs_delta(self):
        inst = ufpp.Instance(1, (16,), (ufpp.Task(0, 1, 2, 1, 0),))
        plan = ufpp.group(inst, 1, 2)
        with self.assertRaises(ufpp.PreconditionError):
            ufpp.medium_dp.solve_medium(inst, plan, 4, inst.task_ids)


if __name__ == "__main__":
    unittest.main()
