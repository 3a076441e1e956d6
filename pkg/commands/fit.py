import logging
from typing import Optional

import click
from pydantic import ValidationError

import config
from chain_worker import ChainPool
from CRUD.graph_files import load_graph
from CRUD.result_files import best_trace, build_result_document, membership_by_label, write_result
from Evaluation.recovery import best_group_match
from schemas.generator import GroundTruthDocument
from schemas.result import RecoveryReport
from schemas.sampler import SamplerConfig, SamplerMode, SnapshotMode

logger = logging.getLogger(__name__)


def _recovery_report(truth_path: str, fitted) -> RecoveryReport:
    with open(truth_path, "r", encoding="utf-8") as handle:
        truth = GroundTruthDocument.model_validate_json(handle.read())
    group, accuracy = best_group_match(truth.memberships, fitted, truth_group=1)
    logger.info(f"Planted group 1 best matched by fitted group {group}: accuracy {accuracy:.3f}")
    return RecoveryReport(truth_file=truth_path, matched_group=group, accuracy=accuracy)


@click.command("fit")
@click.argument("input_path", type=click.Path(dir_okay=False))
@click.option("--format", "input_format", type=click.Choice(["edgelist", "gml"]), default="edgelist",
              show_default=True, help="Network file format")
@click.option("--k", type=int, default=None, help="Fixed number of groups (default 2)")
@click.option("--vary-k", is_flag=True, help="Let the number of groups vary")
@click.option("--steps", type=int, default=config.DEFAULT_STEPS, show_default=True, help="Monte Carlo steps")
@click.option("--burn-in", type=int, default=None, help="Steps discarded before recording (default steps/10)")
@click.option("--thin", type=int, default=None, help="Record interval (default max(1, n*k))")
@click.option("--seed", type=int, default=0, show_default=True, help="RNG seed")
@click.option("--chains", type=int, default=1, show_default=True, help="Independent chains; best MAP is reported")
@click.option("--snapshots", type=click.Choice(["none", "thin"]), default="none", show_default=True,
              help="Record full memberships with each sample")
@click.option("--truth", "truth_path", type=click.Path(dir_okay=False), default=None,
              help="Ground-truth JSON from `generate`; adds a recovery report")
@click.option("--debug", is_flag=True, help="Cross-check statistics against a full recomputation")
@click.option("--progress/--no-progress", default=False, help="Show progress bars")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), required=True, help="Result JSON path")
def command(input_path: str, input_format: str, k: Optional[int], vary_k: bool, steps: int,
            burn_in: Optional[int], thin: Optional[int], seed: int, chains: int, snapshots: str,
            truth_path: Optional[str], debug: bool, progress: bool, output_path: str):
    """Fit the hierarchical core-periphery model to a network file."""
    if vary_k and k is not None:
        raise click.UsageError("--k and --vary-k are mutually exclusive")
    if chains < 1:
        raise click.UsageError("--chains must be at least 1")

    try:
        sampler_config = SamplerConfig(
            mode=SamplerMode.VARY if vary_k else SamplerMode.FIXED,
            k=None if vary_k else (k if k is not None else 2),
            steps=steps,
            burn_in=burn_in,
            thin=thin,
            seed=seed,
            snapshots=SnapshotMode(snapshots),
            check_interval=config.DEBUG_CHECK_INTERVAL if debug else config.INVARIANT_CHECK_INTERVAL,
        )
    except ValidationError as e:
        raise click.UsageError(f"Invalid sampler settings: {e}")

    graph, labels, report = load_graph(input_path, input_format)
    logger.info(f"Fitting {input_path}: n={graph.n}, m={graph.m_total}, "
                f"{report.isolated_nodes} isolated nodes, {chains} chain(s)")

    pool = ChainPool(num_workers=config.CHAIN_WORKERS, show_progress=progress)
    traces = pool.run_chains(graph, sampler_config, chains)

    recovery = None
    if truth_path:
        fitted = membership_by_label(best_trace(traces).map_state.membership, labels)
        recovery = _recovery_report(truth_path, fitted)

    document = build_result_document(graph, labels, traces, sampler_config, input_path, input_format, recovery)
    write_result(document, output_path)
    structure = document.map_structure
    logger.info(f"MAP structure: k={structure.k}, sizes={structure.group_sizes}, "
                f"log-posterior {structure.log_posterior:.4f}"
                + (f", {structure.structure_type.value}" if structure.structure_type else ""))
