import logging
import sys
from typing import List, Optional

import click
from pydantic import ValidationError

# Load environment variables BEFORE importing commands
import config

from CRUD.graph_files import GraphFormatError
from CRUD.result_files import ResultFormatError
from models.state import StateInvariantError

# Import commands AFTER loading environment variables
from commands import export_dot, fit, generate, schema

# Configure logging
logging.basicConfig(level=config.LOG_LEVEL, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INVARIANT = 3


@click.group()
@click.version_option(config.VERSION, prog_name="hiercore")
@click.option("--log-level", default=config.LOG_LEVEL, show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
def cli(log_level: str):
    """Hierarchical core-periphery inference for undirected networks."""
    logging.getLogger().setLevel(log_level.upper())


cli.add_command(fit.command)
cli.add_command(generate.command)
cli.add_command(export_dot.command)
cli.add_command(schema.command)


def run_cli(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and map failures to exit codes: 1 usage, 2 I/O or parse, 3 invariant failure."""
    try:
        result = cli.main(args=argv, prog_name="hiercore", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except StateInvariantError as e:
        logger.error(f"Internal invariant failure: {e}")
        return EXIT_INVARIANT
    except (OSError, GraphFormatError, ResultFormatError, ValidationError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_IO
    except click.ClickException as e:
        e.show()
        return EXIT_IO
    except click.exceptions.Abort:
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run_cli())
