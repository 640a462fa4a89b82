import csv
import fractions
import os
import tempfile
import unittest
from unittest import mock

import ufpp
from ufpp import bench


class BenchTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        for seed in range(3):
            ufpp.write_instance(
                ufpp.generators.gen_random(6, 4, 10, 6, seed=seed),
                os.path.join(self.directory.name, f"random_{seed}.ufpp"),
            )
        with open(os.path.join(self.directory.name, "notes.txt"), "w") as notes_file:
            notes_file.write("not an instance")

    def tearDown(self):
        self.directory.cleanup()

    def test_records(self):
        record_list = bench.run_bench(self.directory.name, ("main", "exact"))
        self.assertEqual(len(record_list), 6)
        self.assertEqual(
            [(record.instance_id, record.algorithm) for record in record_list],
            [(f"random_{seed}", algorithm) for seed in range(3) for algorithm in ("exact", "main")],
        )
        for record in record_list:
            self.assertIsNotNone(record.opt)
            self.assertLessEqual(record.profit, record.opt)
            if record.algorithm == "exact":
                self.assertEqual(record.ratio, 1)

    def test_csv(self):
        record_list = bench.run_bench(self.directory.name, ("large",))
        csv_file_path = os.path.join(self.directory.name, "bench.csv")
        bench.write_csv(record_list, csv_file_path)
        with open(csv_file_path, newline="") as csv_file:
            row_list = list(csv.DictReader(csv_file))
        self.assertEqual(tuple(row_list[0]), bench.CSV_FIELD_TUPLE)
        self.assertEqual(len(row_list), 3)
        self.assertEqual({row["schema"] for row in row_list}, {ufpp.constants.BENCH_SCHEMA})
        self.assertEqual(row_list[0]["instance"], "random_0")

    def test_oracle_skipped(self):
        with mock.patch.dict(os.environ, {ufpp.constants.STATE_BUDGET_ENVIRONMENT_VARIABLE: "1"}):
            with self.assertWarns(bench.OracleSkippedWarning):
                record_list = bench.run_bench(self.directory.name, ("fast",), oracle_cap=0)
        for record in record_list:
            self.assertIsNone(record.opt)
            self.assertIsNone(record.ratio)
            self.assertEqual(record.to_row()["ratio"], "")

    def test_augmented_records(self):
        record_list = bench.run_bench(self.directory.name, ("ra",))
        self.assertEqual(len(record_list), 3)
        for record in record_list:
            self.assertEqual(record.augmentation, fractions.Fraction(1, 2))
            self.assertIsNone(record.ratio)
            self.assertEqual(record.to_row()["augmentation"], "1/2")

    def test_augmented_profit_above_optimum(self):
        # Both tasks fit once capacities grow by half, not before.
        with open(os.path.join(self.directory.name, "random_0.ufpp"), "w") as instance_file:
            instance_file.write("ufpp v1\nm 3\ncap 4 2 5\ntask 0 2 1 3\ntask 1 3 2 4\n")
        augmented = ufpp.Solution(frozenset([0, 1]), 7, "ra", fractions.Fraction(1, 2))
        with mock.patch("ufpp.solve", return_value=augmented):
            record_list, _ = bench.bench_instance(
                os.path.join(self.directory.name, "random_0.ufpp"), ("ra",)
            )
        (record,) = record_list
        self.assertEqual((record.profit, record.opt), (7, 4))
        self.assertIsNone(record.ratio)

    def test_unknown_algorithm(self):
        with self.assertRaises(ufpp.UnknownAlgorithmError):
            bench.run_bench(self.directory.name, ("greedy",))


class BenchRecordTest(unittest.TestCase):
    def test_ratio(self):
        record = bench.BenchRecord("a", 2, 1, "main", 3, 4, 0.5)
        self.assertEqual(record.to_row()["ratio"], "0.750000")
        self.assertEqual(bench.BenchRecord("a", 0, 1, "main", 0, 0, 0.5).ratio, 1)

    def test_profit_above_optimum(self):
        with self.assertRaises(ufpp.UfppError):
            bench.BenchRecord("a", 2, 1, "main", 5, 4, 0.5)

    def test_augmented_record_may_beat_optimum(self):
        record = bench.BenchRecord("a", 2, 1, "ra", 5, 4, 0.5, fractions.Fraction(1, 2))
        self.assertIsNone(record.ratio)
        self.assertEqual(record.to_row()["ratio"], "")


if __name__ == "__main__":
    unittest.main()
