import click

from .. import dependencies, experiments, schemas, utils


@click.command(
    name="minimize",
    help="Search for the smallest uncertainty sum on a small lattice. "
    "The lattice must span at least -6:6 around n = 0 so the coherent and cat seeds fit.",
)
@click.option("--restarts", type=int, default=None)
@click.option("--max-iters", type=int, default=None)
@click.option("--step-tol", type=float, default=None)
@click.option("--random-samples", type=int, default=None, help="Random states in the side sweep (0 disables it).")
@click.option("--workers", type=int, default=None, help="Processes used for restarts.")
@click.option("--l-grid", default=None, metavar="START:STOP:COUNT", help="Centres l of the coherent-family comparison rows.")
@utils.global_options
def command(restarts, max_iters, step_tol, random_samples, workers, l_grid, output, seed, n_range, fmt, config_path):
    dependencies.record_command(
        schemas.Verb.minimize,
        {"restarts": restarts, "max_iters": max_iters, "step_tol": step_tol,
         "random_samples": random_samples, "workers": workers, "l_grid": l_grid},
        output,
    )
    optimizer = {"restarts": restarts, "max_iters": max_iters, "step_tol": step_tol, "workers": workers}
    config = dependencies.get_config(
        config_path, seed, n_range, output,
        random_samples=random_samples,
        l_grid=l_grid,
        optimizer={k: v for k, v in optimizer.items() if v is not None},
    )
    report = experiments.minimize_uncertainty_sum(config)

    if fmt == "csv":
        header = ["index", "seed_kind", "start_value", "final_value", "iterations", "converged"]
        rows = [[r.index, r.seed_kind.value, r.start_value, r.final_value, r.iterations, r.converged] for r in report.restarts]
        utils.write_output(utils.to_csv(header, rows), config.output_path)
    else:
        utils.write_output(utils.to_json(report), config.output_path)
