import sys

from matchstream._utils.logger import cli_logger, enable_verbose_logging
from matchstream._utils.shellart import bold_green, bold_red, bold_white
from matchstream.constants import (
    EXIT_BUDGET_VIOLATION,
    EXIT_ORACLE_OVERSIZE,
    EXIT_PARAMETER_ERROR,
    MATCHSTREAM_VERSION,
)
from matchstream.exceptions import (
    BaseMatchstreamError,
    BudgetViolationError,
    OracleOversizeError,
    ParameterError,
    ValidationError,
)
from matchstream.parser import parser

ENTRY_DESCRIPTION = "Weighted matchings from unweighted augmentations in edge streams. "


def exit_code_for(error: BaseMatchstreamError) -> int:
    if isinstance(error, BudgetViolationError):
        return EXIT_BUDGET_VIOLATION
    if isinstance(error, OracleOversizeError):
        return EXIT_ORACLE_OVERSIZE
    # EnumerationGuardError is a ParameterError
    if isinstance(error, (ParameterError, ValidationError)):
        return EXIT_PARAMETER_ERROR
    return 1


def main() -> None:
    cli_logger.info(
        f"\n{bold_white('matchstream')}: {ENTRY_DESCRIPTION}v{bold_green(MATCHSTREAM_VERSION)}\n"
    )
    args = parser.parse_args()
    if "verbose" in args and args.verbose:
        enable_verbose_logging()

    if not hasattr(args, "func"):
        parser.error(
            "%s is an invalid command. Use `matchstream --help` to "
            "see the list of available commands." % args.command
        )
    try:
        args.func(args)
    except BaseMatchstreamError as error:
        cli_logger.error(f"{bold_red(type(error).__name__)}: {error}")
        sys.exit(exit_code_for(error))
