"""Compare solvers with the exact optimum on a directory of instances."""

from __future__ import annotations

import concurrent.futures
import csv
import dataclasses
import fractions
import os
import time
import typing
import warnings

import ufpp

__all__ = (
    "OracleSkippedWarning",
    "BenchRecord",
    "bench_instance",
    "run_bench",
    "write_csv",
)

INSTANCE_SUFFIX = ".ufpp"
CSV_FIELD_TUPLE = (
    "schema",
    "instance",
    "n",
    "m",
    "algorithm",
    "profit",
    "opt",
    "ratio",
    "wall_time",
    "augmentation",
)


class OracleSkippedWarning(Warning):
    def __init__(self, instance_id: str, reason: str):
        super().__init__(
            f"No exact optimum for instance '{instance_id}' ({reason}); "
            "its ratios are left empty."
        )


@dataclasses.dataclass(frozen=True)
class BenchRecord:
    instance_id: str
    n: int
    m: int
    algorithm: str
    profit: int
    opt: typing.Optional[int]
    wall_time: float
    # certified for capacities u_e * (1 + augmentation)
    augmentation: fractions.Fraction = fractions.Fraction(0)

    def __post_init__(self):
        if self.opt is not None and not self.augmentation and self.profit > self.opt:
            raise ufpp.UfppError(
                f"Algorithm '{self.algorithm}' reports profit {self.profit} above "
                f"the optimum {self.opt} on instance '{self.instance_id}'."
            )

    @property
    def ratio(self) -> typing.Optional[fractions.Fraction]:
        if self.opt is None or self.augmentation:
            return None
        if self.opt == 0:
            return fractions.Fraction(1)
        return fractions.Fraction(self.profit, self.opt)

    def to_row(self) -> dict[str, str]:
        ratio = self.ratio
        return {
            "schema": ufpp.constants.BENCH_SCHEMA,
            "instance": self.instance_id,
            "n": str(self.n),
            "m": str(self.m),
            "algorithm": self.algorithm,
            "profit": str(self.profit),
            "opt": "" if self.opt is None else str(self.opt),
            "ratio": "" if ratio is None else f"{float(ratio):.6f}",
            "augmentation": str(self.augmentation),
            "wall_time": f"{self.wall_time:.6f}",
        }


def _oracle_opt(
    inst: ufpp.Instance, oracle_cap: int
) -> tuple[typing.Optional[int], typing.Optional[str]]:
    try:
        if inst.n <= oracle_cap:
            return ufpp.brute_force(inst, oracle_cap).profit, None
        return ufpp.oracle.exact_sweep(inst).profit, None
    except ufpp.ResourceLimitError as error:
        return None, str(error)


def bench_instance(
    file_path: str,
    algorithm_sequence: typing.Sequence[str],
    eps: ufpp.utilities.Rational = 1,
    oracle_cap: typing.Optional[int] = None,
) -> tuple[list[BenchRecord], typing.Optional[str]]:
    """Records of one instance file and the reason the oracle was skipped, if any."""

    if oracle_cap is None:
        oracle_cap = ufpp.constants.BRUTE_FORCE_TASK_CAP
    instance_id = os.path.basename(file_path).removesuffix(INSTANCE_SUFFIX)
    inst = ufpp.read_instance(file_path)
    opt, skip_reason = _oracle_opt(inst, oracle_cap)
    record_list = []
    for algorithm in algorithm_sequence:
        config = ufpp.SolveConfig(algorithm=algorithm, eps=eps)
        start = time.perf_counter()
        solution = ufpp.solve(inst, config)
        wall_time = time.perf_counter() - start
        record_list.append(
            BenchRecord(
                instance_id,
                inst.n,
                inst.m,
                algorithm,
                solution.profit,
                opt,
                wall_time,
                solution.augmentation,
            )
        )
    return record_list, skip_reason


def run_bench(
    directory_path: str,
    algorithm_sequence: typing.Sequence[str],
    eps: ufpp.utilities.Rational = 1,
    oracle_cap: typing.Optional[int] = None,
    jobs: int = 1,
) -> list[BenchRecord]:
    """Run every ``*.ufpp`` file of a directory, optionally on several processes.

    Records are sorted by instance id and algorithm regardless of ``jobs``.
    """

    for algorithm in algorithm_sequence:
        if algorithm not in ufpp.constants.ALGORITHM_TUPLE:
            raise ufpp.UnknownAlgorithmError(algorithm, ufpp.constants.ALGORITHM_TUPLE)
    file_path_list = sorted(
        os.path.join(directory_path, file_name)
        for file_name in os.listdir(directory_path)
        if file_name.endswith(INSTANCE_SUFFIX)
    )
    ufpp.constants.LOGGER.info(
        f"Bench {len(file_path_list)} instances from '{directory_path}' "
        f"with {', '.join(algorithm_sequence)} on {jobs} process(es)."
    )
    argument_tuple = (
        file_path_list,
        [tuple(algorithm_sequence)] * len(file_path_list),
        [eps] * len(file_path_list),
        [oracle_cap] * len(file_path_list),
    )
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            result_list = list(executor.map(bench_instance, *argument_tuple))
    else:
        result_list = list(map(bench_instance, *argument_tuple))

    record_list = []
    for file_path, (instance_record_list, skip_reason) in zip(file_path_list, result_list):
        if skip_reason is not None:
            warnings.warn(OracleSkippedWarning(os.path.basename(file_path), skip_reason))
        record_list.extend(instance_record_list)
    return sorted(record_list, key=lambda record: (record.instance_id, record.algorithm))


def write_csv(record_sequence: typing.Sequence[BenchRecord], file_path: str):
    with open(file_path, "w", newline="", encoding="utf-8") as csv_file:
        writer = csv.DictWriter(csv_file, fieldnames=CSV_FIELD_TUPLE)
        writer.writeheader()
        for record in record_sequence:
            writer.writerow(record.to_row())
