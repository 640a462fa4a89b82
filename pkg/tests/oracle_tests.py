"""Test exact reference solvers"""

import unittest

import ufpp


def knapsack_instance() -> ufpp.Instance:
    return ufpp.Instance(1, (10,), tuple(ufpp.Task(0, 1, d, d, d) for d in (6, 5, 4)))


class BruteForceTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    def test_knapsack(self):
        result = ufpp.brute_force(knapsack_instance())
        self.assertEqual(result.profit, 9)
        self.assertEqual(result.witness, frozenset([4, 5]))
        self.assertEqual(result.method, "subset_brute")

    def test_empty(self):
        self.assertEqual(ufpp.brute_force(ufpp.Instance(1, (3,), ())).profit, 0)

    def test_tight_instance(self):
        self.assertEqual(ufpp.brute_force(self.tight_instance(2)).profit, 4)

    def test_ties_prefer_smallest_witness(self):
        inst = ufpp.Instance(1, (1,), (ufpp.Task(0, 1, 1, 3, 0), ufpp.Task(0, 1, 1, 3, 1)))
        self.assertEqual(ufpp.brute_force(inst).witness, frozenset([0]))

    def test_cap(self):
        inst = ufpp.Instance(1, (1,), tuple(ufpp.Task(0, 1, 1, 1, i) for i in range(25)))
        with self.assertRaises(ufpp.OracleCapExceededError):
            ufpp.brute_force(inst)
        with self.assertRaises(ufpp.ResourceLimitError):
            ufpp.max_its_brute(knapsack_instance(), cap=2)

    def test_to_solution(self):
        solution = ufpp.brute_force(knapsack_instance()).to_solution()
        solution.validate(knapsack_instance())
        self.assertEqual(solution.algorithm_tag, "exact")


class ExactSweepTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    corpus_size = 60

    def test_disjoint_chain(self):
        inst = ufpp.Instance(
            4, (1, 1, 1, 1), tuple(ufpp.Task(e, e + 1, 1, e + 2, e) for e in range(4))
        )
        self.assertEqual(ufpp.oracle.exact_sweep(inst).profit, 2 + 3 + 4 + 5)

    def test_single_edge(self):
        self.assertEqual(ufpp.oracle.exact_sweep(knapsack_instance()).profit, 9)

    def test_agrees_with_brute_force(self):
        for inst in self.random_corpus(max_n=10, max_m=7):
            sweep = ufpp.oracle.exact_sweep(inst)
            self.assertEqual(sweep.profit, ufpp.brute_force(inst).profit)
            self.assertFeasible(inst, sweep.witness)
            self.assertEqual(inst.profit(sweep.witness), sweep.profit)


class MaxItsBruteTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    corpus_size = 40

    def test_tight_instance(self):
        result = ufpp.max_its_brute(self.tight_instance(2, (4, 3, 2, 1)))
        self.assertEqual((result.profit, result.witness), (4, frozenset([0])))

    def test_compatible_tasks(self):
        inst = ufpp.Instance(2, (3, 3), (ufpp.Task(0, 1, 3, 1, 0), ufpp.Task(1, 2, 3, 1, 1)))
        self.assertEqual(ufpp.max_its_brute(inst).witness, inst.task_ids)

    def test_its_optimum_is_at_most_optimum(self):
        for inst in self.random_corpus(max_n=9):
            self.assertLessEqual(ufpp.max_its_brute(inst).profit, ufpp.brute_force(inst).profit)

    def test_large_optimum_is_bounded(self):
        for inst in self.large_corpus(k=2, max_n=9):
            self.assertRatioAtLeast(
                ufpp.max_its_brute(inst).profit, ufpp.brute_force(inst).profit, 4
            )


class ExactTest(unittest.TestCase):
    def test_methods(self):
        inst = knapsack_instance()
        self.assertEqual(ufpp.oracle.exact(inst, "brute").method, "subset_brute")
        self.assertEqual(ufpp.oracle.exact(inst, "sweep").method, "sweep_dp")
        self.assertEqual(ufpp.oracle.exact(inst, "its").method, "its_brute")

    def test_unknown_method(self):
        with self.assertRaises(ufpp.UnknownAlgorithmError):
            ufpp.oracle.exact(knapsack_instance(), "ilp")


if __name__ == "__main__":
    unittest.main()
