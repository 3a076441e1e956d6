import logging

import click

from CRUD.dot_export import write_dot
from CRUD.graph_files import load_graph
from CRUD.result_files import read_result

logger = logging.getLogger(__name__)


@click.command("export-dot")
@click.argument("result_path", type=click.Path(dir_okay=False))
@click.argument("graph_path", type=click.Path(dir_okay=False))
@click.option("--format", "input_format", type=click.Choice(["edgelist", "gml"]), default="edgelist",
              show_default=True, help="Format of the network file")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), required=True, help="DOT path")
def command(result_path: str, graph_path: str, input_format: str, output_path: str):
    """Render a fitted structure as Graphviz DOT, edges colored by group."""
    document = read_result(result_path)
    graph, labels, _ = load_graph(graph_path, input_format)
    with open(output_path, "w", encoding="utf-8") as handle:
        write_dot(document, graph, labels, handle)
    logger.info(f"DOT written to {output_path}")
