"""Command-line surface: one binary with subcommands tying the modules
together.

    wpcsim link      --distance 19.64 [--device smartphone]
    wpcsim fig4      [--powers 5,10,20,50]
    wpcsim ubid      [--distance D] [--power P --mode beamed --aperture-m2 A]
    wpcsim scavenge  [--area 0.01]
    wpcsim beam      [--unsynchronized]
    wpcsim coverage  [--jobs N]

Global flags: --scenario <path>, --seed <int>, --format {csv,json},
--out <path>.  All emission is data-only (CSV/JSON); plotting is left to
external tools.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .beamsim import ArrayLayout, coordinated_beacons
from .devices import pt_range, scavenged_power, builtin_ambient_table
from .linkphys import (
    Aperture,
    LinkGeometry,
    beam_efficiency,
    beta,
    end_to_end_efficiency,
    EfficiencyChain,
)
from .netcov import coverage
from .safety import BEAMED, OMNI, max_duty_cycle, ubid
from .scenario import (
    ResultTable,
    Scenario,
    ScenarioError,
    default_scenario,
    load_scenario,
)


def _meta(scenario: Scenario, seed: int | None = None) -> dict:
    meta = {"tool_version": __version__, "scenario_hash": scenario.source_hash}
    if seed is not None:
        meta["seed"] = seed
    return meta


def cmd_link(scenario: Scenario, args) -> ResultTable:
    if args.distance is None or args.distance <= 0:
        raise ScenarioError("link: --distance must be a positive number of meters")
    dev = scenario.device(args.device)
    tx = scenario.transmitter
    geom = LinkGeometry(tx.aperture, dev.receive_aperture, args.distance)
    b = beta(geom, tx.carrier)
    eta_b = beam_efficiency(b)
    chain = EfficiencyChain(dc_to_rf=tx.dc_to_rf, rf_to_dc=dev.rf_to_dc)
    table = ResultTable(
        columns=[
            "device",
            "distance_m",
            "beta",
            "beam_efficiency",
            "end_to_end_efficiency",
            "harvested_w",
        ],
        meta=_meta(scenario),
    )
    table.append(
        dev.name,
        args.distance,
        b,
        eta_b,
        end_to_end_efficiency(b, chain),
        dev.rf_to_dc * tx.radiated_power_w * eta_b,
    )
    return table


def cmd_fig4(scenario: Scenario, args) -> ResultTable:
    from dataclasses import replace

    powers = [float(p) for p in args.powers.split(",")]
    table = ResultTable(
        columns=["power_w", "device", "range_m", "ratio_to_laptop", "feasible"],
        meta=_meta(scenario),
    )
    for p in powers:
        tx = replace(scenario.transmitter, radiated_power_w=p)
        ranges = {dev.name: pt_range(tx, dev) for dev in scenario.devices}
        laptop = ranges.get("laptop")
        for dev in scenario.devices:
            r = ranges[dev.name]
            ratio = r / laptop if (r is not None and laptop) else None
            table.append(p, dev.name, r, ratio, r is not None)
    return table


def cmd_ubid(scenario: Scenario, args) -> ResultTable:
    limit = scenario.safety
    carrier = scenario.carrier
    rows: list[tuple[float, str, Aperture | None]] = [
        (50.0, OMNI, None),
        (10.0, BEAMED, Aperture(3.0)),
        (50.0, BEAMED, Aperture(3.0)),
    ]
    if args.power is not None:
        ap = Aperture(args.aperture_m2) if args.mode == BEAMED else None
        rows.append((args.power, args.mode, ap))
    columns = ["power_w", "mode", "aperture_m2", "ubid_m"]
    if args.distance is not None:
        columns += ["distance_m", "duty_cycle"]
    table = ResultTable(columns=columns, meta=_meta(scenario))
    for p, mode, ap in rows:
        report = ubid(p, mode, aperture=ap, carrier=carrier, limit=limit)
        cells = [p, mode, ap.area_m2 if ap else None, report.ubid_m]
        if args.distance is not None:
            cells += [
                args.distance,
                max_duty_cycle(
                    p, mode, args.distance, aperture=ap, carrier=carrier, limit=limit
                ),
            ]
        table.append(*cells)
    return table


def cmd_scavenge(scenario: Scenario, args) -> ResultTable:
    if args.area <= 0:
        raise ScenarioError("scavenge: --area must be positive")
    table = ResultTable(
        columns=[
            "spectrum",
            "environment",
            "density_low_w_per_m2",
            "density_high_w_per_m2",
            "incident_low_w",
            "incident_high_w",
        ],
        meta=_meta(scenario),
    )
    for source in builtin_ambient_table():
        low, high = scavenged_power(source, args.area)
        table.append(
            source.spectrum_label,
            source.environment_label,
            source.density_low_w_per_m2,
            source.density_high_w_per_m2,
            low,
            high,
        )
    return table


def build_beacons(scenario: Scenario) -> tuple[list[ArrayLayout], np.ndarray]:
    """Beacon arrays on a ring around the configured mobile position."""
    cfg = scenario.beam
    carrier = scenario.carrier
    mobile = np.array([cfg.mobile_x_m, cfg.mobile_y_m, cfg.mobile_z_m])
    spacing = carrier.wavelength_m / 2
    beacons = []
    for k in range(cfg.beacon_count):
        angle = 2 * math.pi * k / cfg.beacon_count
        center = mobile + cfg.beacon_ring_radius_m * np.array(
            [math.cos(angle), math.sin(angle), 0.0]
        )
        beacons.append(
            ArrayLayout.uniform_grid(
                cfg.elements_x, cfg.elements_y, spacing, carrier, center=center
            )
        )
    return beacons, mobile


def cmd_beam(scenario: Scenario, args) -> ResultTable:
    cfg = scenario.beam
    beacons, mobile = build_beacons(scenario)
    power, sampler = coordinated_beacons(
        beacons,
        mobile,
        phase_synchronized=not args.unsynchronized,
        per_beacon_power=cfg.per_beacon_power_w,
    )
    axis = np.linspace(-cfg.map_extent_m, cfg.map_extent_m, cfg.map_points)
    gx, gy = np.meshgrid(axis + mobile[0], axis + mobile[1], indexing="ij")
    points = np.column_stack(
        [gx.ravel(), gy.ravel(), np.full(gx.size, mobile[2])]
    )
    values = sampler(points)
    table = ResultTable(
        columns=["x_m", "y_m", "z_m", "relative_power"],
        meta={**_meta(scenario), "on_target_power": power},
    )
    for pt, v in zip(points, values):
        table.append(float(pt[0]), float(pt[1]), float(pt[2]), float(v))
    return table


def cmd_coverage(scenario: Scenario, args) -> ResultTable:
    net = scenario.network_scenario(seed=args.seed)
    result = coverage(net, n_jobs=args.jobs)
    table = ResultTable(
        columns=[
            "pt_coverage",
            "pt_half_width",
            "it_coverage",
            "it_half_width",
            "joint_coverage",
            "joint_half_width",
            "replications",
        ],
        meta=_meta(scenario, seed=net.seed),
    )
    table.append(
        result.pt_coverage,
        result.pt_half_width,
        result.it_coverage,
        result.it_half_width,
        result.joint_coverage,
        result.joint_half_width,
        result.replications_used,
    )
    return table


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS defaults let the flags appear before or after the subcommand
    # without the subparser overwriting an already-parsed value.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--scenario", default=argparse.SUPPRESS, help="TOML scenario file (defaults built in)"
    )
    common.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS, help="override the Monte Carlo seed"
    )
    common.add_argument(
        "--format", choices=["csv", "json"], default=argparse.SUPPRESS
    )
    common.add_argument("--out", default=argparse.SUPPRESS, help="output path (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="wpcsim",
        description="Microwave power transfer / WPC engineering toolkit",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("link", help="single-link budget at a distance", parents=[common])
    p.add_argument("--distance", type=float, required=True, help="link distance [m]")
    p.add_argument("--device", default="smartphone")
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("fig4", help="power-transfer ranges per device and power", parents=[common])
    p.add_argument("--powers", default="5,10,20,50", help="comma-separated watts")
    p.set_defaults(func=cmd_fig4)

    p = sub.add_parser("ubid", help="unsafe beam-interception distances", parents=[common])
    p.add_argument("--distance", type=float, help="also report duty cycle at this distance [m]")
    p.add_argument("--power", type=float, help="extra row: radiated power [W]")
    p.add_argument("--mode", choices=[OMNI, BEAMED], default=BEAMED)
    p.add_argument("--aperture-m2", type=float, default=3.0)
    p.set_defaults(func=cmd_ubid)

    p = sub.add_parser("scavenge", help="ambient RF scavenging estimates", parents=[common])
    p.add_argument("--area", type=float, default=0.01, help="device aperture [m^2]")
    p.set_defaults(func=cmd_scavenge)

    p = sub.add_parser("beam", help="coordinated-beacon field map (CSV grid)", parents=[common])
    p.add_argument("--unsynchronized", action="store_true")
    p.set_defaults(func=cmd_beam)

    p = sub.add_parser("coverage", help="Monte Carlo network coverage", parents=[common])
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_coverage)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for flag, fallback in (("scenario", None), ("seed", None), ("format", "csv"), ("out", None)):
        if not hasattr(args, flag):
            setattr(args, flag, fallback)
    try:
        scenario = load_scenario(args.scenario) if args.scenario else default_scenario()
        table = args.func(scenario, args)
    except (ScenarioError, ValueError) as exc:
        print(f"wpcsim: error: {exc}", file=sys.stderr)
        return 2
    output = table.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
