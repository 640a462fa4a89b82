import fractions
import logging
import os
import tempfile
import unittest

import ufpp
from ufpp import parsers


class TomlTest(unittest.TestCase):
    def tearDown(self):
        parsers.set_logging_level("info")

    def test_solve_block(self):
        config = parsers.toml_str_to_solve_config(
            r"""
[configure]
logging_level = "warning"

[solve]
algorithm = "small"
eps = "1/2"
gamma = "1/4"
ell = 3
"""
        )
        self.assertEqual(config.algorithm, "small")
        self.assertEqual(config.eps, fractions.Fraction(1, 2))
        self.assertEqual(config.gamma, fractions.Fraction(1, 4))
        self.assertEqual(config.ell, 3)

    def test_empty_string(self):
        self.assertEqual(parsers.toml_str_to_solve_config(), ufpp.SolveConfig())

    def test_override(self):
        config = parsers.toml_str_to_solve_config(
            '[solve]\nalgorithm = "ra"\neps = 2', algorithm="fast", eps=None
        )
        self.assertEqual((config.algorithm, config.eps), ("fast", 2))

    def test_unused_specification(self):
        with self.assertWarns(parsers.UnusedSpecificationWarning):
            parsers.toml_str_to_solve_config('[solve]\nalpha = 3')
        with self.assertWarns(parsers.UnusedSpecificationWarning):
            parsers.toml_str_to_solve_config('[sequencer]\nname = "a"')

    def test_level_kept_without_configure_block(self):
        parsers.set_logging_level("error")
        parsers.toml_str_to_solve_config('[solve]\nalgorithm = "fast"')
        self.assertEqual(ufpp.constants.LOGGER.level, logging.ERROR)

    def test_invalid_logging_level(self):
        with self.assertRaises(ufpp.PreconditionError):
            parsers.toml_str_to_solve_config('[configure]\nlogging_level = "loud"')

    def test_invalid_value(self):
        with self.assertRaises(ufpp.PreconditionError):
            parsers.toml_str_to_solve_config("[solve]\nk_large = 1")


class FileTest(unittest.TestCase):
    def tearDown(self):
        parsers.set_logging_level("info")

    def test_toml_file(self):
        with tempfile.TemporaryDirectory() as directory_path:
            file_path = os.path.join(directory_path, "solve.toml")
            with open(file_path, "w") as toml_file:
                toml_file.write('[solve]\nalgorithm = "large"\nk_large = 3\n')
            config = parsers.file_path_to_solve_config(file_path)
        self.assertEqual((config.algorithm, config.k_large), ("large", 3))

    def test_jinja2_file(self):
        # The template loader is rooted in the working directory.
        with tempfile.TemporaryDirectory(dir=".") as directory_path:
            directory_name = os.path.basename(directory_path)
            with open(os.path.join(directory_path, "solve.toml.j2"), "w") as jinja2_file:
                jinja2_file.write(
                    '[solve]\n{% set q = 2 + 1 %}q = {{ q }}\nalgorithm = "{{ "ra" }}"\n'
                )
            config = parsers.file_path_to_solve_config(f"{directory_name}/solve.toml.j2")
            self.assertTrue(os.path.exists(os.path.join(directory_path, ".solve.toml")))
        self.assertEqual((config.algorithm, config.q), ("ra", 3))


if __name__ == "__main__":
    unittest.main()
