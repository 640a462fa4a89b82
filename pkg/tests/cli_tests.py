"""Test the command line and its exit codes"""

import json
import logging
import os
import tempfile
import unittest

import ufpp
from ufpp import __main__ as cli

INFEASIBLE_INSTANCE_TEXT = "ufpp v1\nm 3\ncap 4 2 5\ntask 0 2 1 3\ntask 1 3 2 4\n"


class CliTest(ufpp.unit_tests.UfppTestCase, unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.tight_path = self.path("tight_k2.ufpp")
        ufpp.write_instance(self.tight_instance(2), self.tight_path)

    def tearDown(self):
        self.directory.cleanup()
        ufpp.parsers.set_logging_level("info")

    def path(self, file_name: str) -> str:
        return os.path.join(self.directory.name, file_name)

    def read(self, file_name: str) -> str:
        with open(self.path(file_name), "r") as text_file:
            return text_file.read()

    def write(self, file_name: str, text: str) -> str:
        with open(self.path(file_name), "w") as text_file:
            text_file.write(text)
        return self.path(file_name)

    def test_solve_and_check(self):
        exit_code = cli.run(
            ["solve", "--algo", "main", "--eps", "1", "-i", self.tight_path, "-o", self.path("main.json")]
        )
        self.assertEqual(exit_code, cli.EXIT_SUCCESS)
        payload = json.loads(self.read("main.json"))
        self.assertEqual(payload["schema"], ufpp.constants.SOLUTION_SCHEMA)
        self.assertEqual(payload["algorithm"], "main")
        self.assertTrue(payload["feasible"])
        self.assertEqual(
            payload["profit"], ufpp.solve_main(self.tight_instance(2)).profit
        )
        self.assertEqual(
            cli.run(["check", "-i", self.tight_path, "-s", self.path("main.json")]),
            cli.EXIT_SUCCESS,
        )

    def test_solve_with_config(self):
        config_path = self.write("solve.toml", '[solve]\nalgorithm = "large"\n')
        exit_code = cli.run(
            ["solve", "--config", config_path, "-i", self.tight_path, "-o", self.path("large.json")]
        )
        self.assertEqual(exit_code, cli.EXIT_SUCCESS)
        self.assertEqual(json.loads(self.read("large.json"))["algorithm"], "large")

    def test_log_level_survives_config(self):
        config_path = self.write("solve.toml", '[solve]\nalgorithm = "large"\n')
        exit_code = cli.run(
            [
                "--log-level",
                "error",
                "solve",
                "--config",
                config_path,
                "-i",
                self.tight_path,
                "-o",
                self.path("large.json"),
            ]
        )
        self.assertEqual(exit_code, cli.EXIT_SUCCESS)
        self.assertEqual(ufpp.constants.LOGGER.level, logging.ERROR)

    def test_dump_rects(self):
        exit_code = cli.run(
            [
                "solve",
                "-i",
                self.tight_path,
                "-o",
                self.path("main.json"),
                "--dump-rects",
                self.path("rects.txt"),
            ]
        )
        self.assertEqual(exit_code, cli.EXIT_SUCCESS)
        self.assertTrue(self.read("rects.txt").startswith("# ufpp rectangles v1"))

    def test_check_infeasible(self):
        instance_path = self.write("infeasible.ufpp", INFEASIBLE_INSTANCE_TEXT)
        solution_path = self.write(
            "infeasible.json", json.dumps({"selected": [0, 1], "profit": 7})
        )
        self.assertEqual(
            cli.run(["check", "-i", instance_path, "-s", solution_path]), cli.EXIT_INVALID
        )

    def test_exact(self):
        exit_code = cli.run(
            ["exact", "--method", "brute", "-i", self.tight_path, "-o", self.path("exact.json")]
        )
        self.assertEqual(exit_code, cli.EXIT_SUCCESS)
        self.assertEqual(json.loads(self.read("exact.json"))["profit"], 4)

    def test_exact_over_cap(self):
        inst_path = self.path("big.ufpp")
        ufpp.write_instance(ufpp.generators.gen_random(25, 4, 10, 5, seed=1), inst_path)
        self.assertEqual(
            cli.run(["exact", "--method", "brute", "-i", inst_path]), cli.EXIT_RESOURCE
        )

    def test_usage_errors(self):
        for argv in (
            ["solve", "--frobnicate", "-i", self.tight_path],
            ["solve", "--algo", "greedy", "-i", self.tight_path],
            ["solve", "--eps", "abc", "-i", self.tight_path],
            ["solve"],
        ):
            self.assertEqual(cli.run(argv), cli.EXIT_USAGE, msg=str(argv))

    def test_invalid_instance(self):
        instance_path = self.write("bad.ufpp", "ufpp v2\nm 1\ncap 1\n")
        self.assertEqual(cli.run(["solve", "-i", instance_path]), cli.EXIT_INVALID)

    def test_gen_random_is_deterministic(self):
        for file_name in ("first.ufpp", "second.ufpp"):
            exit_code = cli.run(["gen", "random", "--seed", "7", "-o", self.path(file_name)])
            self.assertEqual(exit_code, cli.EXIT_SUCCESS)
        self.assertEqual(self.read("first.ufpp"), self.read("second.ufpp"))
        self.assertEqual(ufpp.read_instance(self.path("first.ufpp")).n, 10)

    def test_gen_hardness(self):
        graph_path = self.write("edge.graph", "graph v1\nn 2\nedge 1 2\n")
        exit_code = cli.run(["gen", "hardness", "--graph", graph_path, "-o", self.path("edge.ufpp")])
        self.assertEqual(exit_code, cli.EXIT_SUCCESS)
        self.assertEqual(self.read("edge.ufpp.cert"), "expected_opt = 17\n")
        self.assertEqual(ufpp.read_instance(self.path("edge.ufpp")).n, 8)

        exit_code = cli.run(
            ["gen", "hardness", "--graph", graph_path, "--uniform", "-o", self.path("uniform.ufpp")]
        )
        self.assertEqual(exit_code, cli.EXIT_SUCCESS)
        self.assertEqual(self.read("uniform.ufpp.cert"), "expected_opt = 122\n")

    def test_bench(self):
        os.mkdir(self.path("corpus"))
        ufpp.write_instance(self.tight_instance(2), os.path.join(self.path("corpus"), "tight.ufpp"))
        exit_code = cli.run(
            ["bench", "--dir", self.path("corpus"), "--algos", "main,exact", "--csv", self.path("bench.csv")]
        )
        self.assertEqual(exit_code, cli.EXIT_SUCCESS)
        line_list = self.read("bench.csv").splitlines()
        self.assertEqual(line_list[0], ",".join(ufpp.bench.CSV_FIELD_TUPLE))
        self.assertEqual(len(line_list), 3)

    def test_bench_unknown_algorithm(self):
        os.mkdir(self.path("corpus"))
        exit_code = cli.run(
            ["bench", "--dir", self.path("corpus"), "--algos", "greedy", "--csv", self.path("bench.csv")]
        )
        self.assertEqual(exit_code, cli.EXIT_INVALID)


if __name__ == "__main__":
    unittest.main()
