import fractions
import unittest

import ufpp
from ufpp import generators


class Xorshift64Test(unittest.TestCase):
    def test_deterministic(self):
        first, second = generators.Xorshift64(42), generators.Xorshift64(42)
        self.assertEqual([first.next() for _ in range(10)], [second.next() for _ in range(10)])

    def test_seeds_differ(self):
        self.assertNotEqual(generators.Xorshift64(1).next(), generators.Xorshift64(2).next())

    def test_randint_range(self):
        rng = generators.Xorshift64(0)
        value_set = {rng.randint(3, 5) for _ in range(200)}
        self.assertEqual(value_set, {3, 4, 5})
        self.assertEqual(rng.randint(7, 7), 7)

    def test_empty_range(self):
        with self.assertRaises(ufpp.PreconditionError):
            generators.Xorshift64(0).randint(2, 1)


class GenRandomTest(unittest.TestCase):
    def test_same_seed_same_instance(self):
        self.assertEqual(
            generators.gen_random(12, 6, 10, 5, seed=9),
            generators.gen_random(12, 6, 10, 5, seed=9),
        )

    def test_different_seed(self):
        self.assertNotEqual(
            generators.gen_random(12, 6, 10, 5, seed=1),
            generators.gen_random(12, 6, 10, 5, seed=2),
        )

    def test_instance_invariants(self):
        for seed in range(20):
            inst = generators.gen_random(15, 7, 6, 9, seed=seed)
            self.assertEqual((inst.n, inst.m), (15, 7))
            self.assertEqual([task.id for task in inst.tasks], list(range(15)))
            for capacity in inst.capacities:
                self.assertTrue(1 <= capacity <= 6)
            for task in inst.tasks:
                self.assertTrue(0 <= task.s < task.t <= 7)
                self.assertTrue(1 <= task.d <= inst.meta[task.id].b)
                self.assertTrue(1 <= task.w <= generators.UNIFORM_PROFIT_MAX)

    def test_proportional_profit(self):
        inst = generators.gen_random(10, 5, 10, 5, profit_style="proportional", seed=4)
        for task in inst.tasks:
            self.assertEqual(task.w, task.d * (task.t - task.s))

    def test_errors(self):
        with self.assertRaises(ufpp.PreconditionError):
            generators.gen_random(0, 5, 10, 5)
        with self.assertRaises(ufpp.PreconditionError):
            generators.gen_random(3, 5, 10, 5, profit_style="random")


class GenVariantTest(unittest.TestCase):
    def test_large(self):
        for k in (2, 3):
            inst = generators.gen_large(12, 6, 20, k=k, seed=k)
            for task in inst.tasks:
                self.assertGreater(k * task.d, inst.meta[task.id].b)
        with self.assertRaises(ufpp.PreconditionError):
            generators.gen_large(3, 3, 10, k=1)

    def test_small(self):
        delta = fractions.Fraction(1, 4)
        inst = generators.gen_small(12, 6, 40, delta=delta, seed=5)
        for capacity in inst.capacities:
            self.assertGreaterEqual(capacity, 4)
        for task in inst.tasks:
            self.assertLessEqual(task.d, delta * inst.meta[task.id].b)

    def test_small_needs_room(self):
        with self.assertRaises(ufpp.PreconditionError):
            generators.gen_small(3, 3, 3, delta=fractions.Fraction(1, 4))

    def test_unit_demand(self):
        inst = generators.gen_unit_demand(10, 5, 3, seed=8)
        self.assertEqual({task.d for task in inst.tasks}, {1})


if __name__ == "__main__":
    unittest.main()
