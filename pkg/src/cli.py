import click
import json
import csv
import logging
import sys
from pathlib import Path
from datetime import datetime
from typing import Dict, Any, List, Optional, Tuple

import networkx as nx

from .acceptance import CriterionResult, reproduce_all
from .bridging import (
    BridgeStep, ac_script, as_script, bridge, clique_script, is_bridging_constructible,
    supersaturation_identity_check,
)
from .checkpoint import CheckpointManager
from .cnf import CnfInstance, encode_cnf, parse_model
from .coloring import color_restricted_subset, column_coloring, find_colored_pattern
from .config import Caps, RunConfig
from .embed import contains, count_embeddings, find_coclique, is_embedding, is_n_diverse, max_coclique
from .grid import COLUMN, ROW, GridError, GridSubgraph, canonical_form, from_dict, to_dict, validate
from .hyper import (
    ThreeGraph, count_embeddings_3, fg_to_grid, from_json_dict, star_ramsey_bound, tight_cycle,
    to_json_dict, vertex_bridge,
)
from .patterns import alternating_cycle, parse_pattern
from .progress import SearchProgress
from .ramsey import (
    KNOWN_DIAGONAL_RAMSEY, INCONCLUSIVE, find_ac6_or_coclique, gr_exact, product_lower_bound,
    uniform_subgrid, uniform_subgrid_threshold, verify_certificate,
)

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

EXIT_VERIFICATION_FAILED = 1


def save_json_output(data: Dict[str, Any], output_path: Path) -> None:
    """Save results as JSON."""
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
    logger.info(f"Results saved to {output_path}")


def save_csv_output(results: List[CriterionResult], output_path: Path, include_timing: bool = True) -> None:
    """Save the acceptance pass/fail table as CSV."""
    rows = [r.to_dict(include_timing=include_timing) for r in results]

    if rows:
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.DictWriter(f, fieldnames=rows[0].keys())
            writer.writeheader()
            writer.writerows(rows)
        logger.info(f"Results saved to {output_path}")
    else:
        logger.warning("No data to write to CSV")


def save_report_output(results: List[CriterionResult], output_path: Path, seed: int,
                       include_timing: bool = True) -> None:
    """Generate and save a human-readable acceptance report."""
    passed = sum(1 for r in results if r.passed)
    report_lines = [
        "Grid Ramsey Acceptance Report",
        "=" * 29,
    ]
    if include_timing:
        report_lines.append(f"Generated: {datetime.now().isoformat()}")
    report_lines += [
        f"Seed: {seed}",
        "",
        "Summary",
        "-" * 7,
        f"Criteria passed: {passed}/{len(results)}",
    ]
    if include_timing:
        report_lines.append(f"Total time: {sum(r.seconds for r in results):.2f}s")
    report_lines += [
        "",
        "Criteria",
        "-" * 8,
    ]

    for r in results:
        timing = f" {r.seconds:7.2f}s" if include_timing else ""
        report_lines.append(f"{r.number:>2} {'PASS' if r.passed else 'FAIL'}{timing}  {r.name}: {r.detail}")

    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, 'w', encoding='utf-8') as f:
        f.write('\n'.join(report_lines))
    logger.info(f"Report saved to {output_path}")


def generate_output_path(out_dir: Path, stem: str, output_format: str, timestamped: bool = True) -> Path:
    """Generate output file path based on format, and on the time unless the run is deterministic."""
    if not timestamped:
        return Path(out_dir) / f'{stem}.{output_format}'
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    return Path(out_dir) / f'{stem}_{timestamp}.{output_format}'


def emit(data: Dict[str, Any], out: Optional[str]) -> None:
    """Write an artifact to --out, or print it on stdout."""
    if out:
        save_json_output(data, Path(out))
    else:
        click.echo(json.dumps(data, indent=2, ensure_ascii=False))


def load_json(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding='utf-8') as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise click.BadParameter(f"Cannot read {path}: {e}")


def load_pattern(arg: str) -> GridSubgraph:
    """A pattern JSON file, or a pattern spec such as ac:8."""
    try:
        if Path(arg).exists():
            return from_dict(load_json(arg))
        return parse_pattern(arg)
    except GridError as e:
        raise click.BadParameter(str(e))


def load_three_graph(path: str) -> ThreeGraph:
    try:
        return from_json_dict(load_json(path))
    except (GridError, KeyError, TypeError) as e:
        raise click.BadParameter(f"Invalid 3-graph file {path}: {e}")


def parse_pair(text: str) -> Tuple[int, int]:
    try:
        a, b = (int(part) for part in text.split(','))
    except ValueError:
        raise click.BadParameter(f"Expected 'a,b', got '{text}'")
    return a, b


def fail_verification(message: str) -> None:
    logger.error(message)
    sys.exit(EXIT_VERIFICATION_FAILED)


class GridGroup(click.Group):
    """Group that turns library errors into logged ClickExceptions."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except GridError as e:
            logger.error(f"An error occurred: {str(e)}", exc_info=logger.isEnabledFor(logging.DEBUG))
            raise click.ClickException(str(e))


@click.group(cls=GridGroup)
@click.option('--seed', default=0, type=int, help='Seed for randomized suites (default: 0)')
@click.option('--workers', default=1, type=click.IntRange(min=1), help='Worker processes (default: 1)')
@click.option('--out-dir', default='data', type=click.Path(file_okay=False), help='Artifact directory (default: data)')
@click.option('--caps', 'caps_text', default=None, help='Cap overrides such as "backtrack_n=6" (adds to GRIDRAM_CAPS)')
@click.option(
    '--log-level',
    default='INFO',
    type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR']),
    help='Logging level (default: INFO)'
)
@click.option('--deterministic/--no-deterministic', default=True,
              help='Keep timestamps and timings out of artifacts (default: on)')
@click.pass_context
def main(ctx, seed: int, workers: int, out_dir: str, caps_text: Optional[str], log_level: str,
         deterministic: bool) -> None:
    """
    Grid Ramsey workbench.

    Patterns, embeddings, bridging, exact small grid Ramsey numbers and the
    3-graph correspondence.
    """
    logging.getLogger().setLevel(getattr(logging, log_level))
    try:
        caps = Caps.from_env()
        if caps_text:
            extra = Caps.parse(caps_text)
            caps = Caps(**{name: max(getattr(caps, name), getattr(extra, name)) for name in Caps.minimums()})
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint='--caps / GRIDRAM_CAPS')
    ctx.obj = RunConfig(seed=seed, worker_count=workers, caps=caps, output_dir=Path(out_dir),
                        deterministic=deterministic)


@main.command()
@click.argument('spec')
@click.option('--out', help='Write the pattern JSON here instead of stdout')
def pattern(spec: str, out: Optional[str]) -> None:
    """Generate a pattern from a spec such as ac:8, as:3, nz_stool."""
    emit(to_dict(load_pattern(spec)), out)


@main.command(name='validate')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
def validate_command(path: str) -> None:
    """Check a grid subgraph file; exit 1 when it is invalid."""
    report = validate(load_json(path))
    click.echo(report.summary())
    if not report.ok:
        fail_verification(f"{path} is not a valid grid subgraph")


@main.command()
@click.argument('source')
@click.option('--transpose/--no-transpose', default=False, help='Allow transposition')
@click.pass_obj
def canonical(config: RunConfig, source: str, transpose: bool) -> None:
    """Print the canonical form of a pattern."""
    code = canonical_form(load_pattern(source), allow_transpose=transpose, caps=config.caps)
    click.echo(json.dumps(code))


@main.group()
def embed() -> None:
    """Embedding search and counting."""


@embed.command(name='count')
@click.argument('pattern_arg', metavar='H')
@click.argument('host', metavar='G')
@click.pass_obj
def embed_count(config: RunConfig, pattern_arg: str, host: str) -> None:
    """Count labeled embeddings t_g(H, G)."""
    click.echo(count_embeddings(load_pattern(pattern_arg), load_pattern(host), workers=config.worker_count))


@embed.command(name='find')
@click.argument('pattern_arg', metavar='H')
@click.argument('host', metavar='G')
@click.option('--out', help='Write the embedding JSON here')
def embed_find(pattern_arg: str, host: str, out: Optional[str]) -> None:
    """Print the first embedding of H into G."""
    emb = contains(load_pattern(pattern_arg), load_pattern(host))
    emit({"embedding": emb.to_dict() if emb else None}, out)


@main.command()
@click.argument('host', metavar='G')
@click.option('--k', type=click.IntRange(min=1), help='Look for a coclique of this size instead of the maximum')
@click.pass_obj
def coclique(config: RunConfig, host: str, k: Optional[int]) -> None:
    """Maximum coclique of a spanning grid, or a k-coclique."""
    g = load_pattern(host)
    if k is None:
        size, found = max_coclique(g, config.caps)
        emit({"size": size, "coclique": found.to_dict()}, None)
    else:
        found = find_coclique(g, k, config.caps)
        emit({"k": k, "coclique": found.to_dict() if found else None}, None)


@main.command()
@click.argument('host', metavar='G')
@click.option('--tree', 'tree_arg', required=True, help='Simple tree pattern (file or spec)')
@click.option('--vertex', 'host_vertex', required=True, help='Host vertex as x,y')
@click.option('--tree-vertex', required=True, help='Tree vertex as x,y')
@click.option('--n', 'n', required=True, type=click.IntRange(min=0))
@click.pass_obj
def diverse(config: RunConfig, host: str, tree_arg: str, host_vertex: str, tree_vertex: str, n: int) -> None:
    """Decide whether a host vertex is n-diverse for a tree vertex."""
    found, witnesses = is_n_diverse(load_pattern(host), parse_pair(host_vertex), load_pattern(tree_arg),
                                    parse_pair(tree_vertex), n, config.caps)
    emit({"n_diverse": found, "witnesses": [w.to_dict() for w in witnesses]}, None)


@main.group(name='bridge')
def bridge_group() -> None:
    """Bridging operations and constructibility."""


AXES = {'col': COLUMN, 'column': COLUMN, 'row': ROW}

SCRIPT_BUILDERS = {
    'ac': ac_script,
    'as': as_script,
    'row_clique': lambda m: clique_script(m, ROW),
    'column_clique': lambda m: clique_script(m, COLUMN),
}


@bridge_group.command(name='apply')
@click.argument('source')
@click.option('--axis', type=click.Choice(sorted(AXES)), required=True, help='Axis of the duplicated line')
@click.option('--src', 'src_line', type=int, required=True, help='Line to duplicate')
@click.option('--anchor', type=int, required=True, help='Line of the other axis carrying the bridge edge')
@click.option('--out', help='Write the result here')
def bridge_apply(source: str, axis: str, src_line: int, anchor: int, out: Optional[str]) -> None:
    """Apply one bridging step."""
    emit(to_dict(bridge(load_pattern(source), BridgeStep(AXES[axis], src_line, anchor))), out)


@bridge_group.command(name='constructible')
@click.argument('source')
@click.option('--exact', is_flag=True, help='Require the replay to equal the pattern')
@click.option('--out', help='Write the script here')
@click.pass_obj
def bridge_constructible(config: RunConfig, source: str, exact: bool, out: Optional[str]) -> None:
    """Search for a bridging script that builds the pattern."""
    progress = SearchProgress("constructible")
    script = is_bridging_constructible(load_pattern(source), exact=exact, caps=config.caps,
                                       progress=progress, workers=config.worker_count)
    emit({
        "constructible": script is not None,
        "script": script.to_dict() if script else None,
        "progress": progress.get_status(include_timing=not config.deterministic),
    }, out)


@bridge_group.command(name='script')
@click.argument('spec', metavar='FAMILY:SIZE')
@click.option('--replay', is_flag=True, help='Also replay the script and check it contains the pattern')
@click.option('--out', help='Write the script here')
def bridge_script(spec: str, replay: bool, out: Optional[str]) -> None:
    """Print the bridging script of ac:t, as:d, row_clique:m or column_clique:m."""
    family, _, size = spec.partition(':')
    if family not in SCRIPT_BUILDERS or not size.isdigit():
        raise click.BadParameter(f"Expected one of {', '.join(f'{f}:N' for f in SCRIPT_BUILDERS)}, got '{spec}'")
    script = SCRIPT_BUILDERS[family](int(size))
    if not replay:
        emit(script.to_dict(), out)
        return
    grid = script.replay()
    found = is_embedding(load_pattern(spec), grid, script.witness)
    emit({"script": script.to_dict(), "replay": to_dict(grid), "contains_pattern": found}, out)
    if not found:
        fail_verification(f"Replay of {spec} does not contain the pattern under the script witness")


@bridge_group.command(name='supersat')
@click.argument('source', metavar='H')
@click.argument('host', metavar='G')
@click.option('--line', 'line', type=int, default=1, help='Column of H to bridge')
@click.option('--anchor', type=int, default=1, help='Row of the bridge edge')
@click.option('--k', type=click.IntRange(min=2), help='Also check the Turan bound for this k')
@click.pass_obj
def bridge_supersat(config: RunConfig, source: str, host: str, line: int, anchor: int, k: Optional[int]) -> None:
    """Check the embedding-count identity for one column bridging; exit 1 if it fails."""
    report = supersaturation_identity_check(load_pattern(source), line, anchor, load_pattern(host), k,
                                            workers=config.worker_count)
    emit(report.to_dict(), None)
    if not (report.equal and report.turan_ok):
        fail_verification("Supersaturation identity check failed")


@main.group()
def ramsey() -> None:
    """Exact grid Ramsey numbers, CNF export and certificates."""


@ramsey.command(name='exact')
@click.argument('source', metavar='H')
@click.option('--k', type=click.IntRange(min=1), required=True)
@click.option('--nmax', type=click.IntRange(min=1), required=True)
@click.option('--resume', type=click.Path(exists=True, dir_okay=False), help='Resume from checkpoint file')
@click.option('--checkpoint-dir', default='checkpoints', help='Checkpoint directory (default: checkpoints)')
@click.option('--out', help='Write the result JSON here')
@click.pass_obj
def ramsey_exact(config: RunConfig, source: str, k: int, nmax: int, resume: Optional[str],
                 checkpoint_dir: str, out: Optional[str]) -> None:
    """Compute gr(H, K_k) for grids up to nmax x nmax."""
    H = load_pattern(source)
    manager = CheckpointManager(checkpoint_dir)
    state = None
    if resume:
        state = manager.load_checkpoint(resume)
        if state is None:
            raise click.BadParameter(f"Cannot restore checkpoint {resume}", param_hint='--resume')
        if state.get("k") != k or state.get("pattern") != to_dict(H):
            raise click.BadParameter("Checkpoint was written for a different pattern or k", param_hint='--resume')
        logger.info(f"Restored state from checkpoint: {resume}")
    progress = SearchProgress("gr_exact")
    result = gr_exact(H, k, nmax, caps=config.caps, workers=config.worker_count,
                      checkpoint=manager, resume=state, progress=progress)
    manager.clean_old_checkpoints()
    data = result.to_dict()
    data["progress"] = progress.get_status(include_timing=not config.deterministic)
    if result.value is not None:
        click.echo(f"gr = {result.value}", err=out is None)
    else:
        click.echo(f"gr >= {result.lower_bound}", err=out is None)
    emit(data, out)


@ramsey.command(name='cnf')
@click.argument('source', metavar='H')
@click.option('--k', type=click.IntRange(min=1), required=True)
@click.option('--n', 'n', type=click.IntRange(min=1), required=True)
@click.option('--out', required=True, type=click.Path(dir_okay=False), help='DIMACS output file')
def ramsey_cnf(source: str, k: int, n: int, out: str) -> None:
    """Export the avoidance formula in DIMACS format."""
    instance = encode_cnf(load_pattern(source), k, n)
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    with open(out, 'w', encoding='utf-8') as f:
        f.write(instance.to_dimacs())
    logger.info(f"CNF with {instance.num_vars} variables and {len(instance.clauses)} clauses saved to {out}")


@ramsey.command(name='decode')
@click.argument('cnf_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('model_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--out', help='Write the witness grid here')
def ramsey_decode(cnf_file: str, model_file: str, out: Optional[str]) -> None:
    """Decode a solver model into a witness grid; exit 1 if it does not satisfy the formula."""
    with open(cnf_file, encoding='utf-8') as f:
        instance = CnfInstance.from_dimacs(f.read())
    with open(model_file, encoding='utf-8') as f:
        model = parse_model(f.read())
    if model is None:
        emit({"satisfiable": False, "witness": None}, out)
        return
    if not instance.satisfies(model):
        fail_verification("Model does not satisfy the formula")
    emit({"satisfiable": True, "witness": to_dict(instance.decode(model))}, out)


@ramsey.command(name='lower')
@click.option('--col-graph', required=True, type=click.Path(exists=True, dir_okay=False),
              help='Edge list of the column graph')
@click.option('--k', type=click.IntRange(min=2), required=True)
@click.option('--out', help='Write the product grid here')
@click.pass_obj
def ramsey_lower(config: RunConfig, col_graph: str, k: int, out: Optional[str]) -> None:
    """Build col_graph x K_N and check it as a lower-bound witness for AC_6."""
    graph = nx.read_edgelist(col_graph, nodetype=int)
    grid, report = product_lower_bound(graph, k, config.caps)
    emit({"report": report.to_dict(), "grid": to_dict(grid)}, out)
    if not report.certifies:
        fail_verification("Product grid does not certify a lower bound")


@ramsey.command(name='find-ac6')
@click.argument('host', metavar='G')
@click.option('--k', type=click.IntRange(min=2), required=True)
@click.pass_obj
def ramsey_find_ac6(config: RunConfig, host: str, k: int) -> None:
    """Find AC_6 or a k-coclique in a spanning grid."""
    G = load_pattern(host)
    cert = find_ac6_or_coclique(G, k, config.caps)
    emit(cert.to_dict(), None)
    if cert.kind != INCONCLUSIVE and not verify_certificate(cert, G, alternating_cycle(6), k, config.caps):
        fail_verification("Certificate failed verification")


@ramsey.command(name='subgrid')
@click.argument('coloring', metavar='COLORING')
@click.option('--m', 'm', type=click.IntRange(min=1), required=True)
def ramsey_subgrid(coloring: str, m: int) -> None:
    """Uniform M x M subgrid of a 2-colouring (given as its colour-1 grid)."""
    sub = uniform_subgrid(load_pattern(coloring), m)
    emit({"subgrid": sub.to_dict() if sub else None}, None)


@ramsey.command(name='threshold')
@click.option('--m', 'm', type=click.IntRange(min=1), required=True)
def ramsey_threshold(m: int) -> None:
    """Grid size guaranteeing a uniform M x M subgrid, from known Ramsey values."""
    report = uniform_subgrid_threshold(m, KNOWN_DIAGONAL_RAMSEY)
    emit(report.to_dict(), None)


@main.group()
def hyper() -> None:
    """3-graphs with Property B and their grid images."""


@hyper.command(name='fg')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@click.option('--out', help='Write the grid pattern here')
def hyper_fg(path: str, out: Optional[str]) -> None:
    """Grid image of a Property-B 3-graph."""
    emit(to_dict(fg_to_grid(load_three_graph(path))), out)


@hyper.command(name='tight')
@click.argument('t', type=click.IntRange(min=4))
@click.option('--out', help='Write the 3-graph here')
def hyper_tight(t: int, out: Optional[str]) -> None:
    """Tight cycle on t vertices with its odd/even bipartition."""
    emit(to_json_dict(tight_cycle(t)), out)


@hyper.command(name='count')
@click.argument('pattern_path', metavar='H', type=click.Path(exists=True, dir_okay=False))
@click.argument('host_path', metavar='G', type=click.Path(exists=True, dir_okay=False))
@click.option('--respect-bipartition', is_flag=True, help='Map X into X and Y into Y')
@click.pass_obj
def hyper_count(config: RunConfig, pattern_path: str, host_path: str, respect_bipartition: bool) -> None:
    """Count embeddings t_3(H, G)."""
    click.echo(count_embeddings_3(load_three_graph(pattern_path), load_three_graph(host_path),
                                  respect_bipartition, config.caps))


@hyper.command(name='bridge')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@click.option('--v', 'v', required=True, help='Vertex to blow up')
@click.option('--w', 'w', required=True, help='Third vertex of the new edge')
@click.option('--out', help='Write the 3-graph here')
def hyper_bridge(path: str, v: str, w: str, out: Optional[str]) -> None:
    """Vertex bridging of a 3-graph."""
    h = load_three_graph(path)
    labels = {str(u): u for u in h.vertices}
    if v not in labels or w not in labels:
        raise click.BadParameter(f"Vertices must be among {sorted(labels)}")
    emit(to_json_dict(vertex_bridge(h, labels[v], labels[w])), out)


@hyper.command(name='star-bound')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@click.option('--k', type=click.IntRange(min=1), required=True)
@click.option('--nmax', type=click.IntRange(min=1), default=3, help='Largest N for the exact search (default: 3)')
@click.pass_obj
def hyper_star_bound(config: RunConfig, path: str, k: int, nmax: int) -> None:
    """Bound R(H, S_k) through the grid Ramsey number of the grid image."""
    report = star_ramsey_bound(load_three_graph(path), k, nmax, config.caps, config.worker_count)
    emit(report.to_dict(), None)


@main.group()
def meh() -> None:
    """Column colourings and coloured pattern search."""


@meh.command(name='color')
@click.argument('host', metavar='G')
@click.pass_obj
def meh_color(config: RunConfig, host: str) -> None:
    """Colour every column pair by the rows joining it."""
    emit(column_coloring(load_pattern(host), config.caps).to_dict(), None)


@meh.command(name='find')
@click.argument('host', metavar='G')
@click.argument('pattern_arg', metavar='H')
@click.pass_obj
def meh_find(config: RunConfig, host: str, pattern_arg: str) -> None:
    """Column injection embedding a horizontal-only pattern with rows fixed."""
    chi = column_coloring(load_pattern(host), config.caps)
    phi = find_colored_pattern(chi, load_pattern(pattern_arg), workers=config.worker_count)
    emit({"column_map": list(phi) if phi is not None else None}, None)


@meh.command(name='avoid')
@click.argument('host', metavar='G')
@click.option('--color', 'color', required=True, help='Forbidden colour as comma-separated rows, "" for empty')
@click.pass_obj
def meh_avoid(config: RunConfig, host: str, color: str) -> None:
    """Largest column set with no pair coloured exactly the given colour."""
    try:
        forbidden = [int(part) for part in color.split(',') if part.strip()]
    except ValueError:
        raise click.BadParameter(f"Colour must be comma-separated rows, got '{color}'")
    chi = column_coloring(load_pattern(host), config.caps)
    subset = color_restricted_subset(chi, forbidden, config.caps)
    emit({"columns": list(subset.columns), "size": subset.size, "exact": subset.exact}, None)


@main.command()
@click.option('--pattern-file', 'pattern_files', multiple=True, type=click.Path(dir_okay=False),
              help='Extra pattern file for the validation criterion (repeatable)')
@click.option(
    '--output-format',
    type=click.Choice(['json', 'csv', 'report']),
    multiple=True,
    default=('json', 'report'),
    help='Artifacts to write (default: json and report)'
)
@click.option('--out', help='Exact path for the JSON artifact')
@click.pass_obj
def reproduce(config: RunConfig, pattern_files: Tuple[str, ...], output_format: Tuple[str, ...],
              out: Optional[str]) -> None:
    """Run the acceptance suite; exit 1 if any criterion fails."""
    results = reproduce_all(config, [Path(p) for p in pattern_files], show_progress=sys.stderr.isatty())
    out_dir = config.ensure_output_dir()
    timed = not config.deterministic
    if 'json' in output_format:
        data = {
            "seed": config.seed,
            "criteria": [r.to_dict(include_timing=timed) for r in results],
            "passed": all(r.passed for r in results),
        }
        save_json_output(data, Path(out) if out else generate_output_path(out_dir, 'acceptance', 'json', timed))
    if 'csv' in output_format:
        save_csv_output(results, generate_output_path(out_dir, 'acceptance', 'csv', timed), timed)
    if 'report' in output_format:
        save_report_output(results, generate_output_path(out_dir, 'acceptance', 'txt', timed), config.seed, timed)

    for r in results:
        click.echo(f"{r.number:>2} {'PASS' if r.passed else 'FAIL'}  {r.name}")
    if not all(r.passed for r in results):
        fail_verification("Acceptance suite failed")
    logger.info("Processing completed successfully")


if __name__ == '__main__':
    main()
