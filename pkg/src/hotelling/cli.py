"""Command-line front end.

Exit codes are a stable contract: 0 success / verdict true, 1 verdict
false, 2 input error, 3 construction unavailable, 4 search capped.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import equilibrium as eq
from . import serialize as ser
from .core import Game, PureProfile, PureStrategy, as_fraction, has_dominant_player
from .errors import (
    ConstructionUnavailable,
    HotellingError,
    InvalidGame,
    InvalidInput,
    SearchTooLarge,
)
from .mixed import MixedProfile, mixed_payoff
from .oracle import DEFAULT_SEARCH_CAP, best_response, certify_no_deviation, grid_search
from .payoff import masses, social_cost
from .svg import render_profile

EXIT_OK = 0
EXIT_VERDICT_FALSE = 1
EXIT_INPUT_ERROR = 2
EXIT_UNAVAILABLE = 3
EXIT_CAPPED = 4


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: command, paths and numeric knobs."""

    command: str
    out: str | None
    grid: int | None
    cap: int
    seed: int

    def __post_init__(self) -> None:
        if self.grid is not None and self.grid < 2:
            raise InvalidInput(f"--grid must be at least 2, got {self.grid}")
        if self.cap < 1:
            raise InvalidInput(f"--cap must be positive, got {self.cap}")


def _parse_game(text: str) -> Game:
    try:
        counts = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InvalidInput(f"--game: expected comma-separated integers, got {text!r}") from exc
    return Game(tuple(counts))


def _parse_inline_profile(text: str) -> PureProfile:
    strategies = []
    for i, chunk in enumerate(text.split(";")):
        locs = [part.strip() for part in chunk.split(",") if part.strip()]
        if not locs:
            raise InvalidInput(f"--against: player {i} has no locations in {text!r}")
        strategies.append(PureStrategy(tuple(as_fraction(x) for x in locs)))
    return PureProfile(tuple(strategies))


def _load_document(path_or_inline: str):
    path = Path(path_or_inline)
    if path.exists():
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{path}: not valid JSON ({exc})") from exc
        return ser.parse_profile_document(data)
    profile = _parse_inline_profile(path_or_inline)
    game = Game(tuple(len(s) for s in profile.strategies))
    return game, profile


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_construct(args: argparse.Namespace, config: RunConfig) -> int:
    game = _parse_game(args.game)
    if args.kind == "pure":
        profile = eq.construct_pure(game)
        _emit(ser.profile_document(game, profile), config.out)
        return EXIT_OK
    if args.kind == "mixed":
        dom = has_dominant_player(game)
        if dom is None:
            raise ConstructionUnavailable(
                "mixed construction targets games with a dominant player; "
                "use --kind pure instead"
            )
        plan = eq.find_partition(game)
        if plan is None:
            raise ConstructionUnavailable(
                "no integral block partition exists for this game"
            )
        profile = eq.construct_mixed(game, plan)
        _emit(ser.profile_document(game, profile), config.out)
        return EXIT_OK
    # two-player
    profile = eq.two_player_equilibrium(game)
    _emit(ser.profile_document(game, profile), config.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    game, profile = _load_document(args.profile)
    if isinstance(profile, PureProfile):
        report = eq.verify_multi_unit(game, profile)
    else:
        if game.num_players != 2:
            raise InvalidInput("mixed verification is supported for two-player games")
        report = eq.verify_two_player(game, profile.strategies[0], profile.strategies[1])
    payload = ser.report_to_json(report)
    if not report.verdict and isinstance(profile, PureProfile):
        # attach the strongest refutation: a concrete beneficial deviation
        results = certify_no_deviation(game, profile, cap=config.cap, seed=config.seed)
        player = max(range(game.num_players), key=lambda i: results[i].gain)
        payload["deviation"] = {"player": player, **ser.deviation_to_json(results[player])}
    _emit(payload, config.out)
    for cond in report.conditions:
        status = "pass" if cond.passed else "FAIL"
        print(f"[{status}] {cond.condition}: {eq.CONDITION_NAMES[cond.condition]}", file=sys.stderr)
    return EXIT_OK if report.verdict else EXIT_VERDICT_FALSE


def cmd_payoff(args: argparse.Namespace, config: RunConfig) -> int:
    game, profile = _load_document(args.profile)
    if isinstance(profile, PureProfile):
        report = masses(profile)
        if args.full:
            _emit(ser.mass_report_to_json(report), config.out)
            return EXIT_OK
        payoffs = report.payoffs
    else:
        if args.full:
            raise InvalidInput("--full needs a pure profile; mixed profiles have no single mass report")
        payoffs = mixed_payoff(game, profile)
    _emit([ser.format_fraction(u) for u in payoffs], config.out)
    return EXIT_OK


def cmd_social_cost(args: argparse.Namespace, config: RunConfig) -> int:
    locations = [as_fraction(part.strip()) for part in args.locations.split(",") if part.strip()]
    _emit(ser.format_fraction(social_cost(locations)), config.out)
    return EXIT_OK


def cmd_best_response(args: argparse.Namespace, config: RunConfig) -> int:
    game, profile = _load_document(args.against)
    if isinstance(profile, PureProfile):
        profile = MixedProfile.from_pure(profile)
    result = best_response(
        list(profile.strategies), args.m, cap=config.cap, seed=config.seed
    )
    payload = ser.deviation_to_json(result)
    if config.grid is not None:
        payload["grid_max"] = ser.format_fraction(
            grid_search(list(profile.strategies), args.m, config.grid, cap=config.cap)
        )
    _emit(payload, config.out)
    return EXIT_OK if result.exhaustive else EXIT_CAPPED


def _atlas_multisets(max_n: int):
    def partitions(total: int, cap: int):
        if total == 0:
            yield ()
            return
        for first in range(1, min(total, cap) + 1):
            for rest in partitions(total - first, first):
                yield rest + (first,)

    for n in range(2, max_n + 1):
        for counts in sorted(partitions(n, n)):
            if len(counts) >= 2:
                yield counts


def _atlas_row(counts: tuple[int, ...]) -> dict:
    game = Game(counts)
    existence = eq.exists_pure(game)
    row: dict = {
        "counts": list(counts),
        "n": game.n,
        "players": game.num_players,
        "dominant_player": has_dominant_player(game),
        "pure_exists": existence.exists,
        "reason": existence.reason,
    }
    try:
        profile = eq.construct_pure(game)
        row["construction"] = ser.pure_profile_to_json(profile)["strategies"]
        row["verified"] = eq.verify_multi_unit(game, profile).verdict
    except ConstructionUnavailable:
        row["construction"] = None
        row["verified"] = None
    if row["dominant_player"] is not None:
        plan = eq.find_partition(game)
        row["partition_plan"] = None if plan is None else ser.partition_to_json(plan)
    else:
        row["partition_plan"] = None
    return row


def cmd_atlas(args: argparse.Namespace, config: RunConfig) -> int:
    rows = [_atlas_row(counts) for counts in _atlas_multisets(args.max_n)]
    if args.svg:
        svg_dir = Path(args.svg)
        svg_dir.mkdir(parents=True, exist_ok=True)
        for row in rows:
            if row["construction"] is None:
                continue
            counts = tuple(row["counts"])
            game = Game(counts)
            profile = PureProfile.of(*row["construction"])
            name = "game_" + "_".join(str(c) for c in counts)
            (svg_dir / f"{name}.svg").write_text(
                render_profile(game, profile, title=f"counts={counts}")
            )
    if config.out and config.out.endswith(".csv"):
        with open(config.out, "w", newline="") as handle:
            writer = csv.DictWriter(
                handle,
                fieldnames=[
                    "counts", "n", "players", "dominant_player",
                    "pure_exists", "reason", "construction", "verified", "partition_plan",
                ],
            )
            writer.writeheader()
            for row in rows:
                flat = dict(row)
                for key in ("counts", "construction", "partition_plan"):
                    flat[key] = json.dumps(flat[key])
                writer.writerow(flat)
        return EXIT_OK
    _emit({"max_n": args.max_n, "games": rows}, config.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hotelling",
        description="Exact multi-unit location games on [0,1]: construct, "
        "evaluate and verify equilibria.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON output to this path instead of stdout")
    common.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP,
                        help="cap on exhaustive search size")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for capped-search restarts")
    common.add_argument("--grid", type=int, default=None,
                        help="grid resolution for the best-response cross-check")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="construct an equilibrium profile", parents=[common])
    p.add_argument("--game", required=True, help="facility counts, e.g. 1,2,2")
    p.add_argument("--kind", choices=("pure", "mixed", "two-player"), default="pure")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a profile document", parents=[common])
    p.add_argument("--profile", required=True, help="path to a profile JSON document")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("payoff", help="exact payoffs of a profile document", parents=[common])
    p.add_argument("--profile", required=True)
    p.add_argument("--full", action="store_true",
                   help="emit the full per-facility mass report (pure profiles)")
    p.set_defaults(func=cmd_payoff)

    p = sub.add_parser("social-cost", help="social cost of a location set", parents=[common])
    p.add_argument("--locations", required=True, help="comma-separated rationals")
    p.set_defaults(func=cmd_social_cost)

    p = sub.add_parser("best-response", help="exact best response against a profile", parents=[common])
    p.add_argument("--against", required=True,
                   help="profile document path, or inline like '1/4' or '1/8,3/8;1/2'")
    p.add_argument("--m", type=int, required=True, help="number of facilities to place")
    p.set_defaults(func=cmd_best_response)

    p = sub.add_parser("atlas", help="existence/construction table over all games", parents=[common])
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.add_argument("--svg", help="directory for per-game SVG plots")
    p.set_defaults(func=cmd_atlas)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            out=args.out,
            grid=args.grid,
            cap=args.cap,
            seed=args.seed,
        )
        return args.func(args, config)
    except (InvalidInput, InvalidGame) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ConstructionUnavailable as exc:
        print(f"construction unavailable: {exc}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    except SearchTooLarge as exc:
        print(f"search capped: {exc}", file=sys.stderr)
        return EXIT_CAPPED
    except HotellingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
