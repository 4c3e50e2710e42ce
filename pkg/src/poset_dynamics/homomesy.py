"""Statistics on order ideals, exact orbit averages and homomesy verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .poset import Poset, PosetError
from .toggles import Action, Orbit, orbit_decomposition


@dataclass(frozen=True)
class Statistic:
    name: str
    func: Callable[[int], int] = field(compare=False)

    def __call__(self, ideal: int) -> int:
        return self.func(ideal)


def toggleability_statistic(P: Poset, p: int) -> Statistic:
    """+1 if ``p`` can be toggled in, -1 if it can be toggled out, else 0."""
    if not 0 <= p < P.size:
        raise PosetError(f"element {p} outside 0..{P.size - 1}")
    bit = 1 << p
    lower, upper = P.lower_covers(p), P.upper_covers(p)

    def value(ideal: int) -> int:
        if ideal & bit:
            return -1 if upper & ideal == 0 else 0
        return 1 if lower & ~ideal == 0 else 0

    return Statistic(f"toggleability:{p}", value)


def ideal_size_statistic() -> Statistic:
    return Statistic("ideal-size", lambda ideal: ideal.bit_count())


def antichain_size_statistic(P: Poset) -> Statistic:
    return Statistic("antichain-size", lambda ideal: P.ideal_max(ideal).bit_count())


def orbit_average(stat: Statistic, orb: Orbit | Sequence[int]) -> Fraction:
    ideals = orb.ideals if isinstance(orb, Orbit) else tuple(orb)
    if not ideals:
        raise ValueError("cannot average over an empty orbit")
    return Fraction(sum(stat(i) for i in ideals), len(ideals))


@dataclass
class HomomesyReport:
    statistic: str
    action: str
    orbit_averages: list[tuple[Fraction, int]]
    global_average: Fraction
    homomesic: bool
    c: Fraction | None = None
    witness: tuple[int, int] | None = None  # indices of two orbits with different averages

    def to_json(self) -> dict:
        return {
            "statistic": self.statistic,
            "action": self.action,
            "orbit_averages": [[fraction_str(a), size] for a, size in self.orbit_averages],
            "global_average": fraction_str(self.global_average),
            "homomesic": self.homomesic,
            "c": fraction_str(self.c) if self.c is not None else None,
            "witness": list(self.witness) if self.witness else None,
        }


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def check_homomesy(action, stat: Statistic, P: Poset, orbits: Sequence[Orbit] | None = None) -> HomomesyReport:
    if isinstance(action, str):
        action = Action.parse(action)
    if orbits is None:
        orbits = orbit_decomposition(action, P)
    averages = [(orbit_average(stat, o), len(o)) for o in orbits]
    total = sum(stat(i) for o in orbits for i in o)
    count = sum(len(o) for o in orbits)
    global_avg = Fraction(total, count)
    witness = None
    for k, (avg, _) in enumerate(averages[1:], start=1):
        if avg != averages[0][0]:
            witness = (0, k)
            break
    homomesic = witness is None
    return HomomesyReport(
        statistic=stat.name,
        action=action.name if isinstance(action, Action) else str(action),
        orbit_averages=averages,
        global_average=global_avg,
        homomesic=homomesic,
        c=global_avg if homomesic else None,
        witness=witness,
    )


# Transition structure of the toggleability statistic along orbits.

MINUS, PLUS, ZERO_IN, ZERO_OUT = "-1", "+1", "0,in", "0,out"

# Successor states of an even-rank element under gyr (odd-rank elements obey
# the same diagram under the inverse action).
GYR_TRANSITIONS = {
    MINUS: {PLUS, ZERO_OUT},
    PLUS: {MINUS, ZERO_IN},
    ZERO_IN: {MINUS, ZERO_IN},
    ZERO_OUT: {PLUS, ZERO_OUT},
}


def toggle_state(P: Poset, p: int, ideal: int) -> str:
    t = toggleability_statistic(P, p)(ideal)
    if t == 1:
        return PLUS
    if t == -1:
        return MINUS
    return ZERO_IN if ideal >> p & 1 else ZERO_OUT


def transitions_ok(states: Sequence[str], allowed: dict[str, set[str]]) -> bool:
    """Check every cyclic successor pair of ``states`` against ``allowed``."""
    n = len(states)
    return all(states[(k + 1) % n] in allowed[states[k]] for k in range(n))


def nonzero_alternates(values: Sequence[int]) -> bool:
    """Nonzero entries alternate in sign around the cycle."""
    nz = [v for v in values if v]
    return all(nz[k] == -nz[(k + 1) % len(nz)] for k in range(len(nz)))


def row_plus_then_minus(values: Sequence[int]) -> bool:
    """Under rowmotion a +1 is immediately followed by a -1."""
    n = len(values)
    return all(values[(k + 1) % n] == -1 for k in range(n) if values[k] == 1)


def gyr_diagram_holds(P: Poset, p: int, orb: Orbit | Sequence[int]) -> bool:
    """Check the four-state transition diagram for ``p`` along a gyr orbit.

    Odd-rank elements are checked along the reversed orbit, i.e. under gyr^-1.
    """
    ideals = list(orb.ideals if isinstance(orb, Orbit) else orb)
    states = [toggle_state(P, p, i) for i in ideals]
    if P.rank_function()[p] % 2:
        states.reverse()
    return transitions_ok(states, GYR_TRANSITIONS)
