# fgwalk/cli.py
"""
fgw: command-line interface to fgwalk.

Every command prints one schema-versioned envelope (see docs/output-schema.md)
on stdout. Domain errors exit with status 1, usage errors with status 2.
"""
import logging
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import numpy as np

from .core import config
from .core.config import VERSION, enable_console_logging, logger
from .core.errors import FgwError, PreconditionError
from .features.chebyshev.polynomials import cheb
from .features.chebyshev.symmetrized import symmetrized, verify_positivity
from .features.entropy.topological import entropy, min_entropy_weights, rho_gradient
from .features.enumeration.conjugacy import burnside_oracle, free_group_counts
from .features.enumeration.zeta import (
    cycle_counts_from_zeta,
    directed_zeta_identity,
    ihara_identity_check,
    primitive_cycle_counts,
    zeta,
)
from .features.freegroup.homology import (
    exact_moments,
    homoenum_closed_form_check,
    homology_gf,
)
from .features.freegroup.model import build_gr
from .features.freegroup.words import brute_force_cyclic_words, count_cyclically_reduced
from .features.homodist.clt import free_group_clt
from .features.homodist.modp import bias_ranking, equidistribution_gap, modp_counts
from .features.linegraph.analysis import (
    ata_structure,
    imdel_check,
    vertex_backtrackless_variance,
)
from .features.linegraph.line import line_digraph
from .features.walkstats.groups import (
    BUILTIN_GROUPS,
    GroupLabeling,
    abelian_tv_bound,
    group_walk_distribution,
    load_group,
)
from .features.walkstats.modp import modp_walk_distribution
from .features.walkstats.variance import (
    exact_walk_moments,
    monte_carlo_walk_sample,
    walk_variance,
)
from .graphcore import families
from .graphcore.graph import Graph, emit_graph, load_graph
from .utils.json_utils import OUTPUT_FORMATS, make_envelope, render
from .utils.string_utils import parse_rational, parse_value_list

FAMILIES = tuple(families.FAMILIES)


class _DiagnosticsHandler(logging.Handler):
    """Collects warnings logged while a command runs."""

    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.messages: List[str] = []

    def emit(self, record):
        self.messages.append(record.getMessage())


@contextmanager
def _collect_diagnostics():
    handler = _DiagnosticsHandler()
    logger.addHandler(handler)
    try:
        yield handler.messages
    finally:
        logger.removeHandler(handler)


def _emit(ctx: click.Context, command: str, params: Dict[str, Any], compute):
    """Runs ``compute`` and prints its result in the selected format."""
    fmt = ctx.obj["format"]
    try:
        with _collect_diagnostics() as diagnostics:
            result = compute()
        click.echo(render(make_envelope(command, params, result, diagnostics), fmt))
    except FgwError as e:
        logger.debug(f"{command} failed: {e}", exc_info=True)
        raise click.ClickException(str(e))


def _values(text: Optional[str], graph: Graph) -> List[Fraction]:
    if text is not None:
        try:
            values = parse_value_list(text)
        except ValueError as e:
            raise PreconditionError(str(e)) from e
    else:
        values = graph.label_vector()
    if len(values) != graph.n:
        raise PreconditionError(f"expected {graph.n} vertex values, got {len(values)}")
    return values


def _read_weights(path: str) -> List[Fraction]:
    text = Path(path).read_text(encoding="utf-8")
    tokens = [
        t
        for line in text.splitlines()
        for t in line.split("#", 1)[0].replace(",", " ").split()
    ]
    try:
        return [parse_rational(t) for t in tokens]
    except ValueError as e:
        raise PreconditionError(f"weights file '{path}': {e}") from e


def _rational(_ctx, _param, value):
    if value is None:
        return None
    try:
        return parse_rational(value)
    except ValueError as e:
        raise click.BadParameter(str(e))


graph_file = click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))


# --- top-level group ---


@click.group(context_settings=dict(help_option_names=["-h", "--help"]))
@click.option(
    "--format",
    "fmt",
    type=click.Choice(OUTPUT_FORMATS, case_sensitive=False),
    default="json",
    show_default=True,
    help="Output format; csv only for tabular results.",
)
@click.option("--debug", is_flag=True, default=False, help="Verbose logging on stderr.")
@click.option(
    "--tol",
    type=click.FloatRange(min=0, min_open=True),
    default=None,
    help="Base spectral tolerance for this run (default FGW_TOL).",
)
@click.version_option(VERSION, prog_name="fgw")
@click.pass_context
def main_cli(ctx: click.Context, fmt: str, debug: bool, tol: Optional[float]):
    """Free-group words, walk statistics and graph zeta functions."""
    if debug:
        enable_console_logging()
    if tol is not None:
        config.BASE_TOL = tol
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt.lower()


@main_cli.command()
@click.option("--rank", "r", type=int, required=True, help="Rank r of the free group.")
@click.option("--length", "m", type=int, required=True, help="Word length m.")
@click.option("--brute-force", is_flag=True, help="Also enumerate the words.")
@click.pass_context
def count(ctx, r: int, m: int, brute_force: bool):
    """Number of cyclically reduced words of length m in F_r."""

    def compute():
        result = {"count": count_cyclically_reduced(r, m)}
        if brute_force:
            result["brute_force"] = len(brute_force_cyclic_words(r, m))
        return result

    _emit(ctx, "count", {"rank": r, "length": m}, compute)


@main_cli.command()
@click.option("--rank", "r", type=int, required=True)
@click.option("--length", "k", type=int, required=True)
@click.option("--check", is_flag=True, help="Compare with the Chebyshev closed form.")
@click.pass_context
def homology(ctx, r: int, k: int, check: bool):
    """Cyclically reduced words of length k counted by abelianization."""

    def compute():
        gf = homology_gf(r, k)
        rows = [{"class": list(e), "count": c} for e, c in gf]
        result: Dict[str, Any] = {
            "rows": rows,
            "classes": len(rows),
            "total": gf.total(),
        }
        if check:
            result["closed_form"] = homoenum_closed_form_check(r, k)
        return result

    _emit(ctx, "homology", {"rank": r, "length": k, "check": check}, compute)


def _residue_rows(counts) -> List[Dict[str, int]]:
    return [{"residue": q, "count": c} for q, c in enumerate(counts)]


@main_cli.command()
@click.option("--rank", "r", type=int, required=True)
@click.option("--length", "n", type=int, required=True)
@click.option("--prime", "p", type=int, required=True)
@click.option("--bias", is_flag=True, help="Rank residues against the predicted order.")
@click.pass_context
def modp(ctx, r: int, n: int, p: int, bias: bool):
    """Words of length n counted by total exponent mod p."""

    def compute():
        if p == 2:
            return {"rows": _residue_rows(modp_counts(r, n, p).counts)}
        report = equidistribution_gap(r, n, p)
        result: Dict[str, Any] = {
            "rows": _residue_rows(report.distribution.counts),
            "gap": report.gap,
            "bound": report.bound,
        }
        if bias:
            ranking = bias_ranking(r, n, p)
            result["bias"] = {
                "observed": ranking.observed,
                "predicted": ranking.predicted,
                "in_regime": ranking.in_regime,
                "matches_prediction": ranking.matches_prediction,
            }
        return result

    _emit(ctx, "modp", {"rank": r, "length": n, "prime": p}, compute)


@main_cli.command()
@click.option("--rank", "r", type=int, required=True)
@click.option(
    "--per-coordinate", is_flag=True, help="Variance of one coordinate (k = r)."
)
@click.option(
    "--exact",
    "n",
    type=int,
    default=None,
    help="Also compute the exact variance / n at length n.",
)
@click.pass_context
def clt(ctx, r: int, per_coordinate: bool, n: Optional[int]):
    """Limiting variance of the total exponent (or one coordinate)."""

    def compute():
        params = free_group_clt(r, per_coordinate)
        result = {
            "c": params.c,
            "k": params.k,
            "sigma2": params.sigma2,
            "printed_sigma2": params.printed_sigma2,
        }
        if n is not None:
            if per_coordinate:
                raise PreconditionError(
                    "--exact is only available for the total exponent"
                )
            words, mean, variance = exact_moments(r, n)
            result.update(
                words=words, mean=mean, variance_per_length=float(variance) / n
            )
        return result

    params = {"rank": r, "per_coordinate": per_coordinate, "exact": n}
    _emit(ctx, "clt", params, compute)


@main_cli.command()
@click.option("--rank", "k", type=int, required=True)
@click.option("--max-length", "r_max", type=int, required=True)
@click.option(
    "--burnside", is_flag=True, help="Cross-check every CC value by orbit enumeration."
)
@click.pass_context
def conj(ctx, k: int, r_max: int, burnside: bool):
    """Elements, cyclically reduced words and conjugacy classes by length."""

    def compute():
        counts = free_group_counts(k, r_max)
        rows = []
        for r in range(1, r_max + 1):
            row = {"length": r, "N": counts.N[r], "C": counts.C[r], "CC": counts.CC[r]}
            if burnside:
                row["burnside"] = burnside_oracle(k, r)
            rows.append(row)
        return {"rows": rows}

    _emit(ctx, "conj", {"rank": k, "max_length": r_max}, compute)


# --- graph commands ---


@main_cli.group()
def graph():
    """Commands on graph files."""


@graph.command("build")
@click.option("--free-rank", "r", type=int, default=None, help="Build G_r for F_r.")
@click.option("--family", type=click.Choice(FAMILIES), default=None)
@click.option(
    "--n",
    "n",
    type=int,
    default=None,
    help="Vertex count (or word length m for de-bruijn).",
)
@click.option("--d", "d", type=int, default=None, help="Degree or alphabet size.")
@click.option("--seed", type=int, default=None, help="Seed for random families.")
@click.option("--labels", default=None, help="Comma separated vertex labels.")
@click.option(
    "-o", "--output", type=click.Path(dir_okay=False, writable=True), default=None
)
def build(r, family, n, d, seed, labels, output):
    """Emit a graph file (G_r or a named family)."""
    try:
        if (r is None) == (family is None):
            raise click.UsageError("give exactly one of --free-rank and --family")
        if r is not None:
            G = build_gr(r)
        else:
            G = _build_family(family, n, d, seed)
        if labels is not None:
            values = _values(labels, G)
            G = G.with_labels(dict(enumerate(values)))
    except FgwError as e:
        raise click.ClickException(str(e))
    text = emit_graph(G)
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"graph written to {output}")
    else:
        click.echo(text, nl=False)


def _build_family(
    family: str, n: Optional[int], d: Optional[int], seed: Optional[int]
) -> Graph:
    def need(value, name):
        if value is None:
            raise click.UsageError(f"--family {family} needs --{name}")
        return value

    if family == "cycle":
        return families.cycle_graph(need(n, "n"))
    if family == "complete":
        return families.complete_graph(need(n, "n"))
    if family == "petersen":
        return families.petersen_graph()
    if family == "directed-cycle":
        return families.directed_cycle(need(n, "n"))
    if family == "de-bruijn":
        return families.de_bruijn(need(d, "d"), need(n, "n"))
    if family == "random-regular":
        return families.random_regular_graph(need(d, "d"), need(n, "n"), seed)
    return families.random_regular_digraph(need(d, "d"), need(n, "n"), seed)


@graph.command("zeta")
@graph_file
@click.option(
    "--cycles",
    "n_max",
    type=int,
    default=0,
    help="Also list N_i and P_i for i <= this.",
)
@click.pass_context
def graph_zeta(ctx, graph_file: str, n_max: int):
    """det(I - uA) and optionally cycle / primitive cycle counts."""

    def compute():
        G = load_graph(graph_file)
        z = zeta(G)
        result: Dict[str, Any] = {"zeta": z.format(), "coeffs": list(z.coeffs)}
        if n_max > 0:
            cycles = cycle_counts_from_zeta(z, n_max)
            primitive = primitive_cycle_counts(G, n_max)
            result["rows"] = [
                {"length": i, "cycles": c, "primitive": p}
                for i, (c, p) in enumerate(zip(cycles, primitive), start=1)
            ]
        return result

    _emit(ctx, "graph zeta", {"graph": graph_file, "cycles": n_max}, compute)


@graph.command("ihara")
@graph_file
@click.pass_context
def graph_ihara(ctx, graph_file: str):
    """Ihara vertex determinant vs the line-digraph determinant."""

    def compute():
        G = load_graph(graph_file)
        report = directed_zeta_identity(G) if G.directed else ihara_identity_check(G)
        return {
            "ihara": report.ihara.format(),
            "bass": report.bass.format(),
            "equal": report.equal,
        }

    _emit(ctx, "graph ihara", {"graph": graph_file}, compute)


@graph.command("linegraph")
@graph_file
@click.option(
    "--emit",
    "emit_file",
    is_flag=True,
    help="Print the line digraph file instead of the report.",
)
@click.pass_context
def graph_linegraph(ctx, graph_file: str, emit_file: bool):
    """Line digraph structure: A^T A spectrum and eigenspace checks."""
    if emit_file:
        try:
            click.echo(emit_graph(line_digraph(load_graph(graph_file)).L), nl=False)
        except FgwError as e:
            raise click.ClickException(str(e))
        return

    def compute():
        ld = line_digraph(load_graph(graph_file))
        ata = ata_structure(ld)
        imdel = imdel_check(ld)
        return {
            "arcs": ld.size,
            "degree": ld.degree,
            "ata_eigenvalues": {str(k): v for k, v in ata.eigenvalues.items()},
            "ata_ok": ata.ok,
            "mean_zero_norm": ata.mean_zero_norm,
            "lift_is_eigenspace": imdel.lift_is_eigenspace,
            "laplacian_maps_lift_to_gradients": imdel.laplacian_maps_lift_to_gradients,
            "forbidden_dimension": imdel.forbidden_dimension,
            "bipartite": imdel.bipartite,
        }

    _emit(ctx, "graph linegraph", {"graph": graph_file}, compute)


@graph.command("walk-variance")
@graph_file
@click.option(
    "--values",
    default=None,
    help="Comma separated vertex values (default: file labels).",
)
@click.option(
    "--backtrackless", is_flag=True, help="Variance along backtrackless walks."
)
@click.option(
    "--exact",
    "N",
    type=int,
    default=None,
    help="Exact variance / N over closed walks of length N.",
)
@click.option(
    "--simulate",
    "steps",
    type=int,
    default=None,
    help="Monte-Carlo demo with walks of this length.",
)
@click.option("--samples", type=int, default=2000, show_default=True)
@click.option("--seed", type=int, default=None)
@click.pass_context
def graph_walk_variance(
    ctx, graph_file, values, backtrackless, N, steps, samples, seed
):
    """Limiting variance per step of sum(f) along walks."""

    def compute():
        G = load_graph(graph_file)
        f = _values(values, G)
        if backtrackless:
            result: Dict[str, Any] = {"sigma2": vertex_backtrackless_variance(G, f)}
        else:
            report = walk_variance(G, f)
            result = {
                "sigma2": report.sigma2,
                "mean": report.mean,
                "mean_zero_norm": report.mean_zero_norm,
            }
        if N is not None:
            moments = exact_walk_moments(G.big(), f, N)
            result["exact_variance_per_step"] = moments.per_step(N)[1]
        if steps is not None:
            sample = monte_carlo_walk_sample(G, f, steps, samples, seed)
            result["simulated_variance_per_step"] = sample.variance_per_step
        return result

    params = {
        "graph": graph_file,
        "backtrackless": backtrackless,
        "exact": N,
        "simulate": steps,
        "seed": seed,
    }
    _emit(ctx, "graph walk-variance", params, compute)


@graph.command("modp")
@graph_file
@click.option("--prime", "p", type=int, required=True)
@click.option("--length", "N", type=int, required=True)
@click.option("--values", default=None, help="Comma separated integer vertex values.")
@click.pass_context
def graph_modp(ctx, graph_file: str, p: int, N: int, values: Optional[str]):
    """Closed walks of length N counted by sum(f) mod p."""

    def compute():
        G = load_graph(graph_file)
        dist = modp_walk_distribution(G, _values(values, G), p, N)
        return {"rows": _residue_rows(dist.counts), "gap": dist.gap, "rate": dist.rate}

    _emit(ctx, "graph modp", {"graph": graph_file, "prime": p, "length": N}, compute)


@graph.command("group-dist")
@graph_file
@click.option(
    "--group",
    "group_name",
    default=None,
    help="Built-in group, e.g. cyclic:3 or symmetric:3.",
)
@click.option(
    "--group-file", type=click.Path(exists=True, dir_okay=False), default=None
)
@click.option(
    "--labels", default=None, help="Comma separated element indices per vertex."
)
@click.option("--length", "N", type=int, required=True)
@click.option(
    "--bound", is_flag=True, help="Also the character bound (abelian groups)."
)
@click.pass_context
def graph_group_dist(ctx, graph_file, group_name, group_file, labels, N, bound):
    """Closed walks counted by the product of group labels."""

    def compute():
        G = load_graph(graph_file)
        labeling = _labeling(G, group_name, group_file, labels)
        dist = group_walk_distribution(G, labeling, N)
        rows = [
            {"element": labeling.group.name(g), "count": c}
            for g, c in enumerate(dist.counts)
        ]
        result: Dict[str, Any] = {
            "rows": rows,
            "tv_distance": dist.tv_distance,
            "rate": dist.rate,
            "hypotheses_ok": dist.hypotheses.ok,
        }
        if bound:
            result["tv_bound"] = abelian_tv_bound(G, labeling, N).tv_bound
        return result

    params = {"graph": graph_file, "group": group_name or group_file, "length": N}
    _emit(ctx, "graph group-dist", params, compute)


def _labeling(G: Graph, group_name, group_file, labels) -> GroupLabeling:
    if (group_name is None) == (group_file is None):
        raise PreconditionError("give exactly one of --group and --group-file")
    file_labels: Dict[int, int] = {}
    if group_file is not None:
        group, file_labels = load_group(group_file)
    else:
        kind, _, size = group_name.partition(":")
        if kind not in BUILTIN_GROUPS or not size.isdigit():
            raise PreconditionError(
                f"unknown group '{group_name}', expected cyclic:<m> or symmetric:<n>"
            )
        group = BUILTIN_GROUPS[kind](int(size))
    if labels is not None:
        try:
            file_labels = {v: int(x) for v, x in enumerate(labels.split(","))}
        except ValueError as e:
            raise PreconditionError(f"labels must be integers: {e}") from e
    return GroupLabeling.from_dict(group, file_labels, G.n)


@graph.command("entropy")
@graph_file
@click.option(
    "--weights",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Positive vertex weights file.",
)
@click.option(
    "--minimize", is_flag=True, help="Entropy-minimizing weights on the simplex."
)
@click.pass_context
def graph_entropy(ctx, graph_file: str, weights: Optional[str], minimize: bool):
    """Entropy s0 of cycle counting with vertex weights."""

    def compute():
        G = load_graph(graph_file)
        A = G.float_matrix()
        if minimize:
            if weights is not None:
                raise PreconditionError("--weights and --minimize are exclusive")
            best = min_entropy_weights(A)
            f, s0 = best.f, best.s
            extra = {"closed_form_exact": best.closed_form_exact, "agree": best.agree}
        else:
            raw = _read_weights(weights) if weights else _values(None, G)
            f = np.array([float(x) for x in raw])
            s0 = entropy(A, f).s0
            extra = {}
        gradient = rho_gradient(A, f, s0)
        return {
            "s0": s0,
            "f": f,
            "gradient_norm": float(np.linalg.norm(gradient)),
            **extra,
        }

    params = {"graph": graph_file, "weights": weights, "minimize": minimize}
    _emit(ctx, "graph entropy", params, compute)


# --- Chebyshev commands ---


@main_cli.group("cheb")
def cheb_group():
    """Chebyshev polynomials and their symmetrized Laurent forms."""


@cheb_group.command("coeffs")
@click.argument("kind", type=click.Choice(["T", "U"]))
@click.argument("n", type=int)
@click.pass_context
def cheb_coeffs(ctx, kind: str, n: int):
    """Integer coefficients of T_n or U_n."""

    def compute():
        poly = cheb(kind, n)
        return {"rows": [{"power": j, "coeff": c} for j, c in enumerate(poly.coeffs)]}

    _emit(ctx, "cheb coeffs", {"kind": kind, "n": n}, compute)


c_option = click.option(
    "--c", "c", required=True, callback=_rational, help="Positive rational c, e.g. 3/2."
)
k_option = click.option(
    "--k", "k", type=int, default=1, show_default=True, help="Number of variables."
)


@cheb_group.command("symmetrized")
@click.argument("kind", type=click.Choice(["R", "S"]))
@click.argument("n", type=int)
@c_option
@k_option
@click.pass_context
def cheb_symmetrized(ctx, kind: str, n: int, c: Fraction, k: int):
    """Laurent coefficients of R_n(c; x) or S_n(c; x)."""

    def compute():
        expansion = symmetrized(kind, n, c, k)
        rows = [{"exponent": list(e), "coeff": v} for e, v in expansion.coeffs]
        return {"rows": rows}

    _emit(ctx, "cheb symmetrized", {"kind": kind, "n": n, "c": c, "k": k}, compute)


@cheb_group.command("verify-positivity")
@click.argument("kind", type=click.Choice(["R", "S"]))
@click.argument("n", type=int)
@c_option
@k_option
@click.pass_context
def cheb_verify_positivity(ctx, kind: str, n: int, c: Fraction, k: int):
    """Check that every coefficient in the parity support is positive."""
    params = {"kind": kind, "n": n, "c": c, "k": k}
    _emit(
        ctx,
        "cheb verify-positivity",
        params,
        lambda: verify_positivity(kind, n, c, k),
    )


if __name__ == "__main__":
    main_cli()
