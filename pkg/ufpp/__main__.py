import logging
import sys
import typing

import click

import ufpp

EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3

CERTIFICATE_SUFFIX = ".cert"


def _write_or_echo(text: str, output_path: typing.Optional[str]):
    if output_path is None:
        click.echo(text, nl=False)
    else:
        with open(output_path, "w", encoding="utf-8") as output_file:
            output_file.write(text)


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(tuple(ufpp.parsers.LOGGING_LEVEL_NAME_TO_LOGGING_LEVEL)),
    default=None,
    help="Logging level of the ufpp logger",
)
def main(log_level: typing.Optional[str]):
    if log_level is not None:
        ufpp.parsers.set_logging_level(log_level)


@main.command()
@click.option("--algo", type=click.Choice(ufpp.constants.ALGORITHM_TUPLE), default=None)
@click.option("--eps", default=None, help="Accuracy, a rational like '1' or '1/2'")
@click.option("--gamma", default=None, help="Smallness of the 'small' algorithm")
@click.option("--ell", type=int, default=None, help="Group width override")
@click.option("--q", type=int, default=None, help="Offset period override")
@click.option("--k-large", type=int, default=None, help="1/k-largeness of 'large'")
@click.option("--beta-aug", default=None, help="Capacity augmentation of 'ra'")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="TOML (or jinja2 '.j2') solve configuration; options override it",
)
@click.option("-i", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "output_path", type=click.Path(dir_okay=False), default=None)
@click.option(
    "--dump-rects",
    type=click.Path(dir_okay=False),
    default=None,
    help="Write the associated rectangles of the instance to this file",
)
@click.option(
    "--log-repairs",
    is_flag=True,
    default=False,
    help="Log every feasibility repair of tiny task rounding",
)
def solve(
    algo, eps, gamma, ell, q, k_large, beta_aug, config_path, input_path, output_path, dump_rects, log_repairs
):
    """Approximate an instance and print the solution as JSON."""

    if log_repairs:
        ufpp.constants.REPAIR_LOGGER.setLevel(logging.INFO)
    override = dict(
        algorithm=algo, eps=eps, gamma=gamma, ell=ell, q=q, k_large=k_large, beta_aug=beta_aug
    )
    if config_path is None:
        config = ufpp.SolveConfig(
            **{key: value for key, value in override.items() if value is not None}
        )
    else:
        config = ufpp.parsers.file_path_to_solve_config(config_path, **override)
    inst = ufpp.read_instance(input_path)
    if dump_rects is not None:
        ufpp.its.dump_rectangles(inst, dump_rects)
    solution = ufpp.solve(inst, config)
    ufpp.constants.LOGGER.info(
        f"Algorithm '{solution.algorithm_tag}' found profit {solution.profit} "
        f"with {len(solution.selected)} tasks."
    )
    _write_or_echo(ufpp.emit_solution(solution, inst), output_path)


@main.command()
@click.option(
    "--method", type=click.Choice(ufpp.constants.EXACT_METHOD_TUPLE), default="sweep"
)
@click.option("--cap", type=int, default=None, help="Task cap of exhaustive search")
@click.option("-i", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "output_path", type=click.Path(dir_okay=False), default=None)
def exact(method, cap, input_path, output_path):
    """Solve an instance exactly with one of the oracles."""

    inst = ufpp.read_instance(input_path)
    result = ufpp.oracle.exact(inst, method, cap)
    ufpp.constants.LOGGER.info(f"Oracle '{result.method}' found optimum {result.profit}.")
    solution = result.to_solution()
    solution.validate(inst)
    _write_or_echo(ufpp.emit_solution(solution, inst), output_path)


@main.command()
@click.option("-i", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-s", "solution_path", type=click.Path(exists=True, dir_okay=False), required=True)
def check(input_path, solution_path):
    """Verify a solution file against an instance."""

    inst = ufpp.read_instance(input_path)
    with open(solution_path, "r", encoding="utf-8") as solution_file:
        solution = ufpp.parse_solution(solution_file.read(), inst)
    solution.validate(inst)
    click.echo(f"feasible: profit {solution.profit}, {len(solution.selected)} tasks")


@main.group()
def gen():
    """Generate instances."""


@gen.command("random")
@click.option("--n", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--m", type=click.IntRange(min=1), default=8, show_default=True)
@click.option("--maxcap", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--maxdemand", type=click.IntRange(min=1), default=5, show_default=True)
@click.option(
    "--profit-style",
    type=click.Choice(ufpp.generators.PROFIT_STYLE_TUPLE),
    default="uniform",
    show_default=True,
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "output_path", type=click.Path(dir_okay=False), default=None)
def gen_random(n, m, maxcap, maxdemand, profit_style, seed, output_path):
    inst = ufpp.generators.gen_random(n, m, maxcap, maxdemand, profit_style, seed)
    _write_or_echo(ufpp.emit_instance(inst), output_path)


@gen.command("hardness")
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--uniform", is_flag=True, default=False, help="Equalise capacities with dummy tasks")
@click.option("-o", "output_path", type=click.Path(dir_okay=False), default=None)
def gen_hardness(graph_path, uniform, output_path):
    """Reduce a subcubic graph; the certified optimum goes to '<output>.cert'."""

    graph = ufpp.hardness.read_graph(graph_path)
    inst, certificate = ufpp.hardness.reduce(graph)
    if uniform:
        inst, certificate = ufpp.hardness.uniformize_with_certificate(inst, certificate)
    expected_opt = certificate.expected_opt
    certificate_line = f"expected_opt = {'UNKNOWN' if expected_opt is None else expected_opt}\n"
    _write_or_echo(ufpp.emit_instance(inst), output_path)
    if output_path is None:
        click.echo(certificate_line, nl=False, err=True)
    else:
        with open(output_path + CERTIFICATE_SUFFIX, "w", encoding="utf-8") as certificate_file:
            certificate_file.write(certificate_line)


@main.command()
@click.option("--dir", "directory_path", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--algos", default="main,fast", show_default=True, help="Comma separated algorithms")
@click.option("--eps", default="1", show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), required=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--oracle-cap", type=click.IntRange(min=0), default=None)
def bench(directory_path, algos, eps, csv_path, jobs, oracle_cap):
    """Run algorithms on every '*.ufpp' file of a directory and write a CSV."""

    algorithm_tuple = tuple(name.strip() for name in algos.split(",") if name.strip())
    record_list = ufpp.bench.run_bench(
        directory_path, algorithm_tuple, ufpp.utilities.parse_rational(eps), oracle_cap, jobs
    )
    ufpp.bench.write_csv(record_list, csv_path)
    ufpp.constants.LOGGER.info(f"Wrote {len(record_list)} records to '{csv_path}'.")


def run(argv: typing.Sequence[str]) -> int:
    """Run the command line and map failures to exit codes.

    0 on success, 1 for usage errors, 2 for invalid input or infeasible
    solutions, 3 if a resource budget ran out.
    """

    try:
        result = main.main(args=list(argv), prog_name=ufpp.constants.NAME, standalone_mode=False)
    except click.ClickException as error:
        error.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except ufpp.ResourceLimitError as error:
        click.echo(f"Error: {error}", err=True)
        return EXIT_RESOURCE
    except (ufpp.UfppError, ufpp.utilities.IntegerOverflowError) as error:
        click.echo(f"Error: {error}", err=True)
        return EXIT_INVALID
    except ValueError as error:
        click.echo(f"Error: {error}", err=True)
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_SUCCESS


def console_main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    console_main()
