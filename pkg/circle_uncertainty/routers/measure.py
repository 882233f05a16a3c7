import click

from .. import circle_state, dependencies, schemas, utils
from ..uncertainty_measures import build_report


@click.command(name="measure", help="Evaluate every uncertainty measure on one state or packet.")
@utils.state_options
@click.option("--packet", "packet_kind", type=click.Choice(["char", "uniform", "two-arc"]), default=None)
@click.option("--epsilon", type=float, default=None, help="Arc width in radians.")
@click.option("--lambda", "lam", type=float, default=0.0, show_default=True, help="Origin of the integration window.")
@click.option("--dump-state", type=click.Path(dir_okay=False), default=None, help="Also write the lattice state here.")
@utils.global_options
def command(state_kind, l, alpha, s, phase, n, state_file, packet_kind, epsilon, lam, dump_state,
            output, seed, n_range, fmt, config_path):
    dependencies.record_command(
        schemas.Verb.measure,
        {"state": state_kind, "packet": packet_kind, "l": l, "alpha": alpha, "s": s, "phase": phase,
         "n": n, "epsilon": epsilon, "lambda": lam, "state_file": state_file, "dump_state": dump_state},
        output,
    )
    if (state_kind is None) == (packet_kind is None):
        raise click.UsageError("give exactly one of --state or --packet")
    config = dependencies.get_config(config_path, seed, n_range, output)

    if packet_kind is not None:
        if dump_state:
            raise click.UsageError("--dump-state applies to lattice states only")
        target = dependencies.get_packet(packet_kind, epsilon)
    else:
        target = dependencies.get_state(state_kind, config, l, alpha, s, phase, n, state_file)
        if dump_state:
            utils.write_output(utils.to_json(circle_state.to_dump(target)), dump_state)

    report = build_report(target, lam)
    if fmt == "csv":
        header = ["lambda", "circ_variance", "kr_angle", "j_variance", "sum_kr", "u2_magnitude"]
        row = [report.lambda_, report.circ_variance, report.kr_angle, report.j_variance, report.sum_kr, report.u2_magnitude]
        utils.write_output(utils.to_csv(header, [row]), config.output_path)
    else:
        utils.write_output(utils.to_json(report), config.output_path)
