"""Test associated rectangles, the corner recursion and the large task solver"""

import itertools
import os
import tempfile
import time
import unittest

import ufpp


class RectangleTest(unittest.TestCase):
    def setUp(self):
        self.inst = ufpp.Instance(3, (4, 2, 5), (ufpp.Task(0, 2, 1, 3, 0), ufpp.Task(2, 3, 6, 1, 1)))

    def test_rectangle(self):
        self.assertEqual(ufpp.its.rectangle(self.inst, self.inst.task(0)), ufpp.its.Rect(0, 2, 2, 1))

    def test_undeliverable_rectangle(self):
        with self.assertRaises(ufpp.PreconditionError):
            ufpp.its.rectangle(self.inst, self.inst.task(1))

    def test_compatible(self):
        Rect = ufpp.its.Rect
        self.assertTrue(ufpp.its.compatible(Rect(0, 2, 2, 1), Rect(2, 5, 3, 1)))
        self.assertTrue(ufpp.its.compatible(Rect(0, 4, 3, 2), Rect(1, 2, 2, 0)))
        self.assertFalse(ufpp.its.compatible(Rect(0, 4, 3, 1), Rect(1, 3, 2, 0)))

    def test_degenerate_rectangle(self):
        with self.assertRaises(ufpp.InvalidInstanceError):
            ufpp.its.Rect(2, 1, 2, 0)

    def test_dump_rectangles(self):
        with tempfile.TemporaryDirectory() as directory_path:
            file_path = os.path.join(directory_path, "rects.txt")
            ufpp.its.dump_rectangles(self.inst, file_path)
            with open(file_path) as rectangle_file:
                line_list = rectangle_file.read().splitlines()
        self.assertEqual(
            line_list,
            ["# ufpp rectangles v1", "0 0 2 2 1", "profile 0,4 1,4 1,2 2,2 2,5 3,5"],
        )


class TightInstanceTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    def test_tight_family(self):
        for k in range(2, 6):
            inst = self.tight_instance(k)
            self.assertEqual(inst.n, 2 * k)
            for task in inst.tasks:
                self.assertGreater(task.d * k, inst.meta[task.id].b)
            self.assertFeasible(inst, inst.task_ids)
            for task_a, task_b in itertools.combinations(inst.tasks, 2):
                self.assertFalse(ufpp.its.tasks_compatible(inst, task_a, task_b))
            self.assertEqual(len(ufpp.its.max_its(inst).selected), 1)

    def test_tight_profits(self):
        inst = self.tight_instance(2, (4, 3, 2, 1))
        self.assertEqual(ufpp.its.max_its(inst).selected, frozenset([0]))

    def test_invalid_k(self):
        with self.assertRaises(ufpp.PreconditionError):
            self.tight_instance(1)


class MaxItsTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    corpus_size = 60

    def test_empty(self):
        self.assertEqual(ufpp.its.max_its(ufpp.Instance(2, (1, 1), ())).profit, 0)

    def test_compatible_tasks_are_all_taken(self):
        inst = ufpp.Instance(
            3, (2, 2, 2), tuple(ufpp.Task(edge, edge + 1, 2, 1, edge) for edge in range(3))
        )
        self.assertEqual(ufpp.its.max_its(inst).selected, inst.task_ids)

    def test_undeliverable_tasks_are_ignored(self):
        inst = ufpp.Instance(1, (2,), (ufpp.Task(0, 1, 3, 9, 0), ufpp.Task(0, 1, 1, 1, 1)))
        with self.assertWarns(ufpp.UndeliverableTaskWarning):
            solution = ufpp.its.max_its(inst)
        self.assertEqual(solution.selected, frozenset([1]))

    def test_agrees_with_enumeration(self):
        for inst in self.random_corpus(max_n=9, max_m=7):
            solution = ufpp.its.max_its(inst)
            self.assertEqual(solution.profit, ufpp.max_its_brute(inst).profit)
            self.assertIts(inst, solution.selected)
            self.assertFeasible(inst, solution.selected)
            self.assertTrue(ufpp.its.its_chain_holds(inst, solution.selected))

    def test_corner_table_size(self):
        for inst in self.random_corpus(max_n=10, max_m=8, size=10):
            compacted, _ = ufpp.compact(inst)
            distinct = ufpp.its.rectangle_safe_perturbation(compacted)
            program = ufpp.its.CornerProgram(distinct)
            program.solve(distinct.m, 0, distinct.u_max)
            m = distinct.m
            self.assertLessEqual(len(program.memo_table), (m + 1) * (m + 2) ** 2)

    def test_corner_program_needs_distinct_capacities(self):
        with self.assertRaises(ufpp.PreconditionError):
            ufpp.its.CornerProgram(ufpp.Instance(2, (3, 3), ()))

    @unittest.skipUnless(ufpp.unit_tests.run_slow_tests(), "slow")
    def test_performance(self):
        inst = ufpp.generators.gen_random(200, 399, 1000, 400, seed=1)
        start = time.perf_counter()
        ufpp.its.max_its(inst)
        self.assertLess(time.perf_counter() - start, 60)


class RectangleSafePerturbationTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    corpus_size = 30

    def test_relations_are_kept(self):
        for inst in self.random_corpus(max_n=6, max_m=6):
            perturbed = ufpp.its.rectangle_safe_perturbation(inst)
            self.assertEqual(len(set(perturbed.capacities)), perturbed.m)
            for task_a, task_b in itertools.combinations(inst.tasks, 2):
                self.assertEqual(
                    ufpp.its.tasks_compatible(inst, task_a, task_b),
                    ufpp.its.tasks_compatible(
                        perturbed, perturbed.task(task_a.id), perturbed.task(task_b.id)
                    ),
                )
            for size in range(inst.n + 1):
                for subset in itertools.combinations(sorted(inst.task_ids), size):
                    self.assertEqual(
                        ufpp.check_feasible(inst, subset).feasible,
                        ufpp.check_feasible(perturbed, subset).feasible,
                    )


class SolveLargeTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    corpus_size = 40

    def test_rejects_small_task(self):
        inst = ufpp.Instance(1, (10,), (ufpp.Task(0, 1, 5, 1, 0),))
        with self.assertRaises(ufpp.PreconditionError):
            ufpp.its.solve_large(inst, 2)

    def test_ratio(self):
        for inst in self.large_corpus(k=2, max_n=10):
            solution = ufpp.its.solve_large(inst, 2)
            self.assertEqual(solution.algorithm_tag, "large")
            self.assertFeasible(inst, solution.selected)
            self.assertRatioAtLeast(solution.profit, ufpp.brute_force(inst).profit, 4)

    def test_ratio_for_k_three(self):
        for inst in self.large_corpus(k=3, max_n=9, size=20):
            solution = ufpp.its.solve_large(inst, 3)
            self.assertRatioAtLeast(solution.profit, ufpp.brute_force(inst).profit, 6)


if __name__ == "__main__":
    unittest.main()
