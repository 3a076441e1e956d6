import logging
from typing import List, Optional

import click
from pydantic import ValidationError

from CRUD.graph_files import write_edge_list
from generator import generate, planted_core_periphery, sample_membership_from_prior
from models.graph import LabelMap
from models.membership import Membership
from schemas.generator import GeneratorParams, GroundTruthDocument

logger = logging.getLogger(__name__)


def _floats(text: str, option: str) -> List[float]:
    try:
        return [float(value) for value in text.split(",") if value.strip()]
    except ValueError:
        raise click.UsageError(f"{option} expects comma-separated numbers, got '{text}'")


def _read_membership(path: str, n: int, k: int) -> Membership:
    with open(path, "r", encoding="utf-8") as handle:
        truth = GroundTruthDocument.model_validate_json(handle.read())
    if (truth.n, truth.k) != (n, k):
        raise click.UsageError(f"{path} describes n={truth.n}, k={truth.k}; --n and --k give n={n}, k={k}")
    groups = {}
    for label, node_groups in truth.memberships.items():
        if not label.isdecimal() or int(label) >= n:
            raise click.UsageError(f"{path}: node label '{label}' is not an integer in 0..{n - 1}")
        for group in node_groups:
            if not 0 <= group < k:
                raise click.UsageError(f"{path}: node '{label}' lists group {group} outside 0..{k - 1}")
            groups.setdefault(group, []).append(int(label))
    return Membership.from_groups(n, k, groups)


@click.command("generate")
@click.option("--n", type=click.IntRange(min=0), default=None, help="Node count")
@click.option("--k", type=click.IntRange(min=1), default=1, show_default=True, help="Group count")
@click.option("--omega", type=str, default=None, help="Comma-separated omega_0,...,omega_{k-1}")
@click.option("--membership", "membership_path", type=click.Path(dir_okay=False), default=None,
              help="Ground-truth JSON whose memberships are planted (default: drawn from the prior)")
@click.option("--planted", type=str, default=None, help="n,core_size,omega0,omega1 two-group benchmark")
@click.option("--seed", type=int, default=0, show_default=True, help="RNG seed")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), required=True, help="Edge-list path")
@click.option("--truth", "truth_path", type=click.Path(dir_okay=False), default=None,
              help="Ground-truth JSON path (default: <out>.truth.json)")
def command(n: Optional[int], k: int, omega: Optional[str], membership_path: Optional[str],
            planted: Optional[str], seed: int, output_path: str, truth_path: Optional[str]):
    """Sample a synthetic network from the model."""
    if planted:
        if n is not None or omega is not None or membership_path is not None:
            raise click.UsageError("--planted cannot be combined with --n, --omega or --membership")
        values = _floats(planted, "--planted")
        if len(values) != 4:
            raise click.UsageError("--planted expects n,core_size,omega0,omega1")
        n, core_size = int(values[0]), int(values[1])
        omega_values = values[2:]
        k = 2
        try:
            graph, membership = planted_core_periphery(n, core_size, omega_values[0], omega_values[1], seed)
        except (ValueError, ValidationError) as e:
            raise click.UsageError(f"Invalid planted settings: {e}")
    else:
        if n is None or omega is None:
            raise click.UsageError("generate needs --n and --omega, or --planted")
        omega_values = _floats(omega, "--omega")
        if membership_path:
            membership = _read_membership(membership_path, n, k)
        else:
            membership = sample_membership_from_prior(n, k, seed)
        try:
            params = GeneratorParams(n=n, k=k, membership=membership, omega=omega_values)
        except ValidationError as e:
            raise click.UsageError(f"Invalid generator settings: {e}")
        graph = generate(params, seed)

    labels = LabelMap.identity(graph.n)
    with open(output_path, "w", encoding="utf-8") as handle:
        write_edge_list(graph, labels, handle)
    isolated = int((graph.degrees() == 0).sum()) if graph.n else 0
    if isolated:
        logger.warning(f"{isolated} isolated nodes are absent from {output_path} but listed in the ground truth")

    truth = GroundTruthDocument(
        n=graph.n,
        k=k,
        omega=omega_values,
        seed=seed,
        memberships={labels.label(u): membership.groups_of(u) for u in range(graph.n)},
    )
    truth_path = truth_path or f"{output_path}.truth.json"
    with open(truth_path, "w", encoding="utf-8") as handle:
        handle.write(truth.model_dump_json(indent=2))
        handle.write("\n")
    logger.info(f"Wrote {graph.m_total} edges to {output_path} and ground truth to {truth_path}")
