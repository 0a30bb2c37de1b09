"""Exact best-response search and no-beneficial-deviation certification.

Against finitely many opponent facility positions, a player's payoff is
piecewise linear in each of her own coordinates with breakpoints exactly at
opponent positions. Its supremum over a gap is reached in the one-sided
limit at the gap's ends, so the candidate family {just below, exactly at,
just above each opponent position} is exhaustive: the true supremum equals
the best value over ordered subsets of that family, evaluated as eps -> 0+
limits. This family argument is validated empirically against dense-grid
search in the test suite.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import ONE, ZERO, Game, PureProfile
from .errors import SearchTooLarge
from .mixed import (
    DEFAULT_SUPPORT_CAP,
    MixedProfile,
    MixedStrategy,
    mixed_payoff,
    optimal_locations,
)
from .payoff import OffsetLocation

DEFAULT_SEARCH_CAP = 10**5
ASCENT_STARTS = 32

# An opponent draw: probability plus sorted (position, #players) pairs.
_Combo = tuple[Fraction, tuple[tuple[Fraction, int], ...]]


@dataclass(frozen=True)
class DeviationResult:
    """Best achievable payoff for one player against fixed opponents.

    ``attained`` tells whether some all-exact witness reaches the supremum;
    otherwise the witness carries one-sided limits. ``gain`` is relative to
    the player's payoff in the profile under certification (None when no
    baseline was supplied). ``exhaustive`` is False when the candidate
    search was capped and fell back to coordinate ascent, in which case the
    supremum is only a lower bound.
    """

    supremum_payoff: Fraction
    attained: bool
    witness: tuple[OffsetLocation, ...]
    gain: Fraction | None = None
    exhaustive: bool = True


def _opponent_combos(opponents: Sequence[MixedStrategy]) -> list[_Combo]:
    combos: list[_Combo] = []
    for drawn in itertools.product(*(x.support for x in opponents)):
        prob = math.prod((p for _, p in drawn), start=ONE)
        counts: dict[Fraction, int] = {}
        for strategy, _ in drawn:
            for loc in strategy:
                counts[loc] = counts.get(loc, 0) + 1
        combos.append((prob, tuple(sorted(counts.items()))))
    return combos


def _deviator_mass(candidates: Sequence[OffsetLocation], opponents: tuple[tuple[Fraction, int], ...]) -> Fraction:
    """Limit customer mass of the candidate facilities against one draw."""
    # merge the two sorted streams into (position, players, deviator-here)
    events: list[tuple[Fraction, int, bool]] = []
    i = j = 0
    while i < len(candidates) and j < len(opponents):
        cand = candidates[i]
        opp_pos = opponents[j][0]
        ckey = cand.sort_key()
        okey = (opp_pos, ZERO)
        if ckey == okey:  # exact co-location shares the cell
            events.append((opp_pos, opponents[j][1] + 1, True))
            i += 1
            j += 1
        elif ckey < okey:
            events.append((cand.position, 1, True))
            i += 1
        else:
            events.append((opp_pos, opponents[j][1], False))
            j += 1
    for cand in candidates[i:]:
        events.append((cand.position, 1, True))
    for opp_pos, count in opponents[j:]:
        events.append((opp_pos, count, False))

    total = ZERO
    prev = ZERO
    for k, (pos, count, dev) in enumerate(events):
        bound = (pos + events[k + 1][0]) / 2 if k + 1 < len(events) else ONE
        if dev:
            cell = bound - prev
            total += cell if count == 1 else cell / count
        prev = bound
    return total


def _expected_value(candidates: Sequence[OffsetLocation], combos: Sequence[_Combo]) -> Fraction:
    total = ZERO
    for prob, opp in combos:
        total += prob * _deviator_mass(candidates, opp)
    return total


def candidate_family(positions: Iterable[Fraction]) -> tuple[OffsetLocation, ...]:
    """All one-sided and exact placements around the given positions."""
    family: list[OffsetLocation] = []
    for x in sorted(set(positions)):
        if x > ZERO:
            family.append(OffsetLocation(x, "below"))
        family.append(OffsetLocation(x, "exact"))
        if x < ONE:
            family.append(OffsetLocation(x, "above"))
    return tuple(family)


def _gap_fillers(positions: Sequence[Fraction], needed: int) -> list[OffsetLocation]:
    """Deterministic exact points strictly inside unoccupied gaps.

    Used when the player has more facilities than the candidate family has
    slots; interior extras never change the achievable mass once both ends
    of every gap are approached, so they only pad the witness.
    """
    pts = sorted(set(positions))
    gaps = [(ZERO, pts[0])] + list(zip(pts, pts[1:])) + [(pts[-1], ONE)]
    gaps = [(a, b) for a, b in gaps if a < b]
    fillers: list[OffsetLocation] = []
    depth = 1
    while len(fillers) < needed:
        denom = 2**depth
        for a, b in gaps:
            for num in range(1, denom, 2):
                fillers.append(OffsetLocation(a + (b - a) * Fraction(num, denom), "exact"))
                if len(fillers) == needed:
                    return fillers
        depth += 1
    return fillers


def _coordinate_ascent(
    family: tuple[OffsetLocation, ...],
    m: int,
    combos: Sequence[_Combo],
    seed: int,
) -> tuple[Fraction, tuple[OffsetLocation, ...]]:
    """Deterministic local search used when exhaustive enumeration is capped."""
    rng = random.Random(seed)
    indices = list(range(len(family)))
    best_value: Fraction | None = None
    best_subset: tuple[OffsetLocation, ...] | None = None
    for _ in range(ASCENT_STARTS):
        current = sorted(rng.sample(indices, m))
        value = _expected_value([family[i] for i in current], combos)
        improved = True
        while improved:
            improved = False
            for slot in range(m):
                for replacement in indices:
                    if replacement in current:
                        continue
                    trial = sorted(current[:slot] + current[slot + 1 :] + [replacement])
                    trial_value = _expected_value([family[i] for i in trial], combos)
                    if trial_value > value:
                        current, value = trial, trial_value
                        improved = True
        subset = tuple(family[i] for i in current)
        if best_value is None or value > best_value or (value == best_value and subset < best_subset):
            best_value, best_subset = value, subset
    assert best_value is not None and best_subset is not None
    return best_value, best_subset


def best_response(
    opponents: Sequence[MixedStrategy],
    m: int,
    current_payoff: Fraction | None = None,
    cap: int = DEFAULT_SEARCH_CAP,
    seed: int = 0,
) -> DeviationResult:
    """Exact supremum payoff of an m-facility player against the opponents.

    Enumerates ordered m-subsets of the offset candidate family and
    evaluates each in the eps -> 0+ limit. Ties are broken toward the
    lexicographically smallest witness; when the supremum is attained, the
    witness reported is the smallest all-exact maximizer.
    """
    if m < 1:
        raise SearchTooLarge(f"player must place at least one facility, got m={m}")
    positions = sorted({loc for x in opponents for s, _ in x.support for loc in s})
    if not positions:
        # no competition: every strategy collects the whole customer mass
        witness = tuple(OffsetLocation(x, "exact") for x in optimal_locations(m))
        gain = None if current_payoff is None else ONE - current_payoff
        return DeviationResult(ONE, True, witness, gain, True)

    combos = _opponent_combos(opponents)
    family = candidate_family(positions)

    if m > len(family):
        witness = tuple(sorted(family + tuple(_gap_fillers(positions, m - len(family)))))
        value = _expected_value(witness, combos)
        gain = None if current_payoff is None else value - current_payoff
        # exact strategies always leave opponents positive mass, limits do not
        return DeviationResult(value, False, witness, gain, True)

    if math.comb(len(family), m) > cap:
        value, witness = _coordinate_ascent(family, m, combos, seed)
        gain = None if current_payoff is None else value - current_payoff
        return DeviationResult(value, False, witness, gain, exhaustive=False)

    best: Fraction | None = None
    best_witness: tuple[OffsetLocation, ...] | None = None
    best_exact: tuple[OffsetLocation, ...] | None = None
    for subset in itertools.combinations(family, m):
        value = _expected_value(subset, combos)
        if best is None or value > best:
            best = value
            best_witness = subset
            best_exact = subset if all(c.side == "exact" for c in subset) else None
        elif value == best and best_exact is None and all(c.side == "exact" for c in subset):
            best_exact = subset
    assert best is not None and best_witness is not None

    attained = best_exact is not None
    witness = best_exact if attained else best_witness
    gain = None if current_payoff is None else best - current_payoff
    return DeviationResult(best, attained, witness, gain, True)


def certify_no_deviation(
    game: Game,
    profile: MixedProfile | PureProfile,
    cap: int = DEFAULT_SEARCH_CAP,
    support_cap: int = DEFAULT_SUPPORT_CAP,
    seed: int = 0,
) -> tuple[DeviationResult, ...]:
    """Best response for every player; all gains <= 0 certifies equilibrium.

    Any strictly positive gain is a constructive refutation: its witness is
    a beneficial deviation for that player.
    """
    if isinstance(profile, PureProfile):
        profile = MixedProfile.from_pure(profile)
    current = mixed_payoff(game, profile, support_cap)
    results = []
    for player in range(game.num_players):
        opponents = [x for i, x in enumerate(profile.strategies) if i != player]
        results.append(
            best_response(
                opponents,
                game.counts[player],
                current_payoff=current[player],
                cap=cap,
                seed=seed,
            )
        )
    return tuple(results)


def is_equilibrium(results: Sequence[DeviationResult]) -> bool:
    return all(r.gain is not None and r.gain <= 0 for r in results)


def grid_search(
    opponents: Sequence[MixedStrategy],
    m: int,
    resolution: int,
    cap: int = DEFAULT_SEARCH_CAP,
) -> Fraction:
    """Best expected payoff over m-subsets of the uniform grid {i/resolution}.

    A blunt cross-check for the offset oracle: its maximum can trail the
    true supremum by at most one grid cell per side.
    """
    if resolution < 2:
        raise SearchTooLarge(f"grid resolution must be at least 2, got {resolution}")
    if math.comb(resolution + 1, m) > cap:
        raise SearchTooLarge(
            f"grid search over C({resolution + 1},{m}) points exceeds cap {cap}"
        )
    combos = _opponent_combos(opponents)
    grid = [OffsetLocation(Fraction(i, resolution), "exact") for i in range(resolution + 1)]
    best = ZERO
    for subset in itertools.combinations(grid, m):
        value = _expected_value(subset, combos)
        if value > best:
            best = value
    return best
