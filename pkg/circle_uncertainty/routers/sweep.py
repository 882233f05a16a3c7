import click

from .. import dependencies, experiments, schemas, utils

LAMBDA_COLUMNS = ["lambda", "circ_variance", "difference", "kr_angle", "closed_form"]
EPSILON_COLUMNS = ["epsilon", "u2_magnitude", "u2_closed_form", "kr_angle", "circ_variance"]


@click.command(name="sweep", help="Move the integration origin over a packet, or vary the arc width.")
@click.option("--packet", "packet_kind", type=click.Choice(["char", "uniform", "two-arc"]), default="char", show_default=True)
@click.option("--epsilon", type=float, default=None, help="Arc width in radians (lambda sweeps).")
@click.option("--lambda-grid", default=None, metavar="START:STOP:COUNT")
@click.option("--epsilon-grid", default=None, metavar="START:STOP:COUNT")
@utils.global_options
def command(packet_kind, epsilon, lambda_grid, epsilon_grid, output, seed, n_range, fmt, config_path):
    dependencies.record_command(
        schemas.Verb.sweep,
        {"packet": packet_kind, "epsilon": epsilon, "lambda_grid": lambda_grid, "epsilon_grid": epsilon_grid},
        output,
    )
    config = dependencies.get_config(config_path, seed, n_range, output,
                                     lambda_grid=lambda_grid, epsilon_grid=epsilon_grid)

    if epsilon_grid is not None:
        report = experiments.epsilon_sweep(config)
        header = EPSILON_COLUMNS
        rows = [[r.epsilon, r.u2_magnitude, r.u2_closed_form, r.kr_angle, r.circ_variance] for r in report.epsilon_rows]
    else:
        report = experiments.lambda_sweep(dependencies.get_packet(packet_kind, epsilon), config)
        header = LAMBDA_COLUMNS
        rows = [[r.lambda_, r.circ_variance, r.difference, r.kr_angle, r.closed_form] for r in report.lambda_rows]

    if fmt == "json":
        utils.write_output(utils.to_json(report), config.output_path)
    else:
        utils.write_output(utils.to_csv(header, rows), config.output_path)
