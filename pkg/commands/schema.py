import json

import click

from schemas.result import ResultDocument


@click.command("schema")
def command():
    """Print the JSON schema of result documents."""
    click.echo(json.dumps(ResultDocument.model_json_schema(), indent=2))
