import logging
import os
import typing
import warnings

import jinja2
import tomli

import ufpp

CONFIGURE_KEY = "configure"
CONFIGURE_LOGGING_LEVEL_KEY = "logging_level"

SOLVE_KEY = "solve"
SOLVE_FIELD_TUPLE = (
    "algorithm",
    "eps",
    "gamma",
    "k_large",
    "beta_aug",
    "ell",
    "q",
    "exact_method",
)


LOGGING_LEVEL_NAME_TO_LOGGING_LEVEL = {
    "notset": logging.NOTSET,
    "error": logging.ERROR,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


class UnusedSpecificationWarning(Warning):
    def __init__(self, toml_block: dict, block_name: str):
        formatted_toml_block = "\t>>> ".join(str(toml_block).splitlines(True))
        super().__init__(
            "UFPP ignored the following invalid specifications "
            f"in '{block_name.upper()}':\n{formatted_toml_block}"
        )


def warn_not_used_configuration_content(toml_block: dict, block_name: str):
    if toml_block:
        warnings.warn(UnusedSpecificationWarning(toml_block, block_name))


def set_logging_level(logging_level: str):
    try:
        level = LOGGING_LEVEL_NAME_TO_LOGGING_LEVEL[logging_level.lower()]
    except KeyError:
        raise ufpp.PreconditionError(
            f"Unknown logging level '{logging_level}'; use one of "
            f"{', '.join(LOGGING_LEVEL_NAME_TO_LOGGING_LEVEL)}."
        )
    ufpp.constants.LOGGER.info(f"Set logging level to '{logging_level.upper()}'.")
    ufpp.constants.LOGGER.setLevel(level)


def configure_block_to_logging_level(configure_block: dict) -> typing.Optional[str]:
    logging_level = configure_block.pop(CONFIGURE_LOGGING_LEVEL_KEY, None)
    warn_not_used_configuration_content(configure_block, CONFIGURE_KEY)
    return logging_level


def solve_block_to_keyword_dict(solve_block: dict) -> dict[str, typing.Any]:
    keyword_dict = {}
    for field in SOLVE_FIELD_TUPLE:
        value = solve_block.pop(field, None)
        if value is not None:
            keyword_dict[field] = value
    warn_not_used_configuration_content(solve_block, SOLVE_KEY)
    return keyword_dict


def toml_str_to_solve_config(
    toml_str: str = "", **override: typing.Any
) -> ufpp.SolveConfig:
    """Solve configuration from TOML; keyword arguments that aren't ``None`` win.

    **Example:**

    >>> from ufpp import parsers
    >>> parsers.toml_str_to_solve_config('[solve]\\neps = "1/2"', algorithm="fast").eps
    Fraction(1, 2)
    """

    toml_dictionary = tomli.loads(toml_str)

    configure_block = toml_dictionary.pop(CONFIGURE_KEY, {})
    solve_block = toml_dictionary.pop(SOLVE_KEY, {})
    warn_not_used_configuration_content(toml_dictionary, "global")

    logging_level = configure_block_to_logging_level(configure_block)
    if logging_level is not None:
        set_logging_level(logging_level)
    keyword_dict = solve_block_to_keyword_dict(solve_block)
    keyword_dict.update({key: value for key, value in override.items() if value is not None})
    return ufpp.SolveConfig(**keyword_dict)


def toml_file_path_to_solve_config(toml_file_path: str, **override: typing.Any) -> ufpp.SolveConfig:
    with open(toml_file_path, "r") as toml_file:
        toml_str = toml_file.read()
    return toml_str_to_solve_config(toml_str, **override)


def jinja2_file_path_to_solve_config(
    jinja2_file_path: str, **override: typing.Any
) -> ufpp.SolveConfig:
    """Render a template relative to the working directory, keep the result as ``.<name>.toml``."""

    loader = jinja2.FileSystemLoader("./")
    toml_str = jinja2.Environment(loader=loader).get_template(jinja2_file_path).render()
    directory_path, file_name = os.path.split(jinja2_file_path)
    rendered_file_path = os.path.join(directory_path or ".", f".{file_name.split('.')[0]}.toml")
    with open(rendered_file_path, "w", encoding="utf-8") as rendered_file:
        rendered_file.write(toml_str)
    ufpp.constants.LOGGER.info(
        f"Rendered solve template '{jinja2_file_path}' to '{rendered_file_path}'."
    )
    return toml_str_to_solve_config(toml_str, **override)


def file_path_to_solve_config(file_path: str, **override: typing.Any) -> ufpp.SolveConfig:
    """Dispatch on the file suffix: ``.j2`` templates are rendered first."""

    if file_path.endswith(".j2"):
        return jinja2_file_path_to_solve_config(file_path, **override)
    return toml_file_path_to_solve_config(file_path, **override)
