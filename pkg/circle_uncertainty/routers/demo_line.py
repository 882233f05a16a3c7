import click

from .. import dependencies, experiments, schemas, utils


@click.command(name="demo-line", help="Box and split-box variances on the line, plus the Gaussian x/p sum.")
@click.option("--L", "length", type=float, default=1.0, show_default=True)
@click.option("--sigma2-grid", default=None, metavar="START:STOP:COUNT")
@utils.global_options
def command(length, sigma2_grid, output, seed, n_range, fmt, config_path):
    dependencies.record_command(schemas.Verb.demo_line, {"L": length, "sigma2_grid": sigma2_grid}, output)
    config = dependencies.get_config(config_path, seed, n_range, output, sigma2_grid=sigma2_grid)
    report = experiments.line_demo(length, config)

    if fmt == "csv":
        rows = [[point.sigma2, point.sum] for point in report.heisenberg_curve]
        utils.write_output(utils.to_csv(["sigma2", "sum"], rows), config.output_path)
    else:
        utils.write_output(utils.to_json(report), config.output_path)
