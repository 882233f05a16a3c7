import click

from .. import dependencies, experiments, schemas, utils

TRAJECTORY_COLUMNS = ["t", "phase_estimate", "u1_magnitude", "windowed_mean", "norm",
                      "circ_variance", "kr_angle", "j_variance", "sum_kr"]


@click.command(name="evolve", help="Free evolution under J^2/2 with phase and uncertainty tracking.")
@utils.state_options
@click.option("--time-grid", default=None, metavar="START:STOP:COUNT")
@click.option("--hamiltonian-scale", type=float, default=None, help="H = scale * J^2 / 2.")
@utils.global_options
def command(state_kind, l, alpha, s, phase, n, state_file, time_grid, hamiltonian_scale,
            output, seed, n_range, fmt, config_path):
    dependencies.record_command(
        schemas.Verb.evolve,
        {"state": state_kind, "l": l, "alpha": alpha, "s": s, "phase": phase, "n": n,
         "state_file": state_file, "time_grid": time_grid, "hamiltonian_scale": hamiltonian_scale},
        output,
    )
    config = dependencies.get_config(config_path, seed, n_range, output,
                                     time_grid=time_grid, hamiltonian_scale=hamiltonian_scale)
    state = dependencies.get_state(state_kind or "coherent", config, l, alpha, s, phase, n, state_file)
    trajectory = experiments.free_evolution(state, config)

    if fmt == "json":
        utils.write_output(utils.to_json(trajectory), config.output_path)
        return
    rows = [
        [t, angle, u1, mean, norm, rep.circ_variance, rep.kr_angle, rep.j_variance, rep.sum_kr]
        for t, angle, u1, mean, norm, rep in zip(
            trajectory.times, trajectory.phase_estimate, trajectory.u1_magnitude,
            trajectory.windowed_mean, trajectory.norm, trajectory.report_per_time,
        )
    ]
    utils.write_output(utils.to_csv(TRAJECTORY_COLUMNS, rows), config.output_path)
