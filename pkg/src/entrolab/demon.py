"""Event-driven two-chamber kinetic gas with a demon-controlled gate.

Particles are non-interacting points in a 2D box, so every trajectory is
piecewise ballistic and each particle's next wall or partition crossing is
solvable in closed form.  Reflections only flip a velocity component, which
conserves kinetic energy to the bit; the gate is massless and does no work.

Entropy bookkeeping uses the 2D free-particle closed form per chamber,
S = N k [ln(A / (N Lambda^2)) + 2], with the chamber's instantaneous kinetic
temperature T = KE / (N k) (two degrees of freedom).  Treating each chamber
as an equilibrium gas at its instantaneous (N, A, T) is an idealization and
the reports flag it as such.

The paper-style ledger accumulates only heat (none: the box is isolated) and
the material term of inter-chamber transfers; treating a transfer through
the gate as "material change" is an interpretive choice, recorded per
transfer as mu_from/T_from - mu_to/T_to with mu_from evaluated just before
and mu_to just after the move, which keeps both ends finite when a chamber
empties or fills from empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ledger import LN2
from .units import REDUCED, Constants


class StallError(RuntimeError):
    """No particle has any pending event (all velocities degenerate)."""


@dataclass
class Gate:
    """Aperture in the partition: open is the demon's last decision."""

    center: float
    half_width: float
    open: bool = False

    def __post_init__(self) -> None:
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")


@dataclass
class KineticGas:
    """Mutable simulation state: positions, velocities, chamber membership.

    sides is authoritative for chamber counts; a particle sitting exactly on
    the partition plane after a pass belongs to the side it is moving into.
    """

    box: tuple[float, float]
    positions: np.ndarray
    velocities: np.ndarray
    partition_x: float
    gate: Gate
    mass: float = 1.0
    time: float = 0.0
    sides: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        lx, ly = self.box
        if lx <= 0 or ly <= 0:
            raise ValueError("box dimensions must be positive")
        if not 0.0 < self.partition_x < lx:
            raise ValueError("partition must sit strictly inside the box")
        if self.gate.center - self.gate.half_width < 0 or self.gate.center + self.gate.half_width > ly:
            raise ValueError("gate aperture must lie within the box height")
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        self.positions = np.asarray(self.positions, dtype=float)
        self.velocities = np.asarray(self.velocities, dtype=float)
        if self.positions.shape != self.velocities.shape or self.positions.ndim != 2:
            raise ValueError("positions and velocities must share shape (N, 2)")
        if np.any(self.positions[:, 0] < 0) or np.any(self.positions[:, 0] > lx) \
                or np.any(self.positions[:, 1] < 0) or np.any(self.positions[:, 1] > ly):
            raise ValueError("particles must start inside the box")
        if self.sides is None:
            self.sides = np.where(self.positions[:, 0] < self.partition_x, 0, 1).astype(np.int8)

    @property
    def n_particles(self) -> int:
        return self.positions.shape[0]

    def kinetic_energy(self) -> float:
        return float(0.5 * self.mass * np.sum(self.velocities**2))

    def side_counts(self) -> tuple[int, int]:
        right = int(np.sum(self.sides))
        return self.n_particles - right, right

    def side_kinetic(self, side: int) -> float:
        mask = self.sides == side
        return float(0.5 * self.mass * np.sum(self.velocities[mask] ** 2))


@dataclass(frozen=True)
class AlwaysOpen:
    """Plain hole: passes everything, measures nothing."""

    name: str = field(default="always_open", init=False)
    measures: bool = field(default=False, init=False)

    def decide(self, side_from: int, velocity: np.ndarray, speed: float) -> bool:
        return True


@dataclass(frozen=True)
class AlwaysClosed:
    """Solid partition: the aperture behaves as wall."""

    name: str = field(default="always_closed", init=False)
    measures: bool = field(default=False, init=False)

    def decide(self, side_from: int, velocity: np.ndarray, speed: float) -> bool:
        return False


@dataclass(frozen=True)
class PressureDemon:
    """One-way valve: passes particles moving toward the chosen side."""

    direction: str = "right"
    name: str = field(default="pressure_demon", init=False)
    measures: bool = field(default=True, init=False)

    def __post_init__(self) -> None:
        if self.direction not in ("left", "right"):
            raise ValueError('direction must be "left" or "right"')

    def decide(self, side_from: int, velocity: np.ndarray, speed: float) -> bool:
        heading = "right" if velocity[0] > 0 else "left"
        return heading == self.direction


@dataclass(frozen=True)
class TemperatureDemon:
    """Sorts by speed: fast particles may go right, slow ones left."""

    speed_threshold: float
    name: str = field(default="temperature_demon", init=False)
    measures: bool = field(default=True, init=False)

    def __post_init__(self) -> None:
        if self.speed_threshold <= 0:
            raise ValueError("speed_threshold must be positive")

    def decide(self, side_from: int, velocity: np.ndarray, speed: float) -> bool:
        heading_right = velocity[0] > 0
        if speed > self.speed_threshold:
            return heading_right
        return not heading_right


GatePolicy = AlwaysOpen | AlwaysClosed | PressureDemon | TemperatureDemon


@dataclass(frozen=True)
class Event:
    time: float
    kind: str  # wall | gate-attempt | gate-pass | gate-reject
    particle: int
    bit_recorded: bool = False
    side_from: int = -1


@dataclass(frozen=True)
class DemonLedger:
    """Cumulative accountings since the start of the run."""

    bits_recorded: int
    bits_erased: int
    landauer_heat: float
    dS_sides: float
    dS_thermo_part: float
    material_term: float
    boltzmann_k: float

    @property
    def dS_st_paper(self) -> float:
        """Statistical-entropy ledger: heat part plus material part."""
        return self.dS_thermo_part + self.material_term

    @property
    def brillouin_balance(self) -> float:
        """Delta(entropy) - Delta(information), information at k ln2 per bit."""
        return self.dS_sides + self.bits_recorded * self.boltzmann_k * LN2


@dataclass(frozen=True)
class DemonSample:
    time: float
    n_left: int
    n_right: int
    temp_left: float
    temp_right: float
    kinetic_energy: float
    ledger: DemonLedger


@dataclass(frozen=True)
class DemonTrace:
    events: tuple[Event, ...]
    ledger_series: tuple[DemonSample, ...]
    policy_name: str
    n_particles: int
    box: tuple[float, float]
    t0: float
    duration: float
    seed: int
    memory_capacity: int | None
    constants: Constants

    def __post_init__(self) -> None:
        times = [e.time for e in self.events]
        if any(b < a for a, b in zip(times, times[1:])):
            raise ValueError("event times must be non-decreasing")

    @property
    def final_ledger(self) -> DemonLedger:
        return self.ledger_series[-1].ledger


def _thermal_wavelength_sq(mass: float, temperature: float, c: Constants) -> float:
    return c.planck_h**2 / (2.0 * math.pi * mass * c.boltzmann_k * temperature)


def chamber_entropy(n: int, area: float, kinetic_energy: float, mass: float,
                    c: Constants) -> float:
    """2D ideal-gas entropy at instantaneous (N, A, T = KE/(N k)); 0 if empty."""
    if n == 0:
        return 0.0
    temp = kinetic_energy / (n * c.boltzmann_k)
    if temp <= 0:
        raise ValueError("chamber kinetic temperature must be positive")
    lam_sq = _thermal_wavelength_sq(mass, temp, c)
    return n * c.boltzmann_k * (math.log(area / (n * lam_sq)) + 2.0)


def _chamber_mu_over_t(n: int, area: float, kinetic_energy: float, mass: float,
                       c: Constants) -> float:
    """mu/T for a chamber at its instantaneous kinetic temperature."""
    temp = kinetic_energy / (n * c.boltzmann_k)
    lam_sq = _thermal_wavelength_sq(mass, temp, c)
    return c.boltzmann_k * math.log(n * lam_sq / area)


def advance_to_next_event(
    gas: KineticGas,
    policy: GatePolicy,
    horizon: float | None = None,
) -> tuple[Event | None, KineticGas]:
    """Advance to the earliest wall or partition crossing and resolve it.

    All positions move ballistically to the event time; the event particle's
    touched coordinate is snapped exactly onto its boundary and the others
    are clamped to their chamber, so rounding can never leak a particle
    through a wall.  Returns (None, gas) when the next event falls beyond
    the horizon (positions then advance exactly to the horizon).
    """
    lx, ly = gas.box
    p = gas.partition_x
    x, y = gas.positions[:, 0], gas.positions[:, 1]
    vx, vy = gas.velocities[:, 0], gas.velocities[:, 1]

    # Next x-boundary per particle: partition plane or outer wall.
    with np.errstate(divide="ignore", invalid="ignore"):
        x_target = np.where(vx > 0, np.where(gas.sides == 0, p, lx),
                            np.where(gas.sides == 0, 0.0, p))
        dt_x = np.where(vx != 0, (x_target - x) / vx, np.inf)
        y_target = np.where(vy > 0, ly, 0.0)
        dt_y = np.where(vy != 0, (y_target - y) / vy, np.inf)
    dt_x = np.where(dt_x < 0, np.inf, dt_x)
    dt_y = np.where(dt_y < 0, np.inf, dt_y)

    axis_is_x = dt_x <= dt_y
    dt_particle = np.where(axis_is_x, dt_x, dt_y)
    i = int(np.argmin(dt_particle))
    dt = float(dt_particle[i])
    if not math.isfinite(dt):
        raise StallError("no pending event for any particle")

    if horizon is not None and gas.time + dt > horizon:
        step = horizon - gas.time
        gas.positions += gas.velocities * step
        _clamp(gas)
        gas.time = horizon
        return None, gas

    gas.positions += gas.velocities * dt
    gas.time += dt
    _clamp(gas)

    if axis_is_x[i]:
        target = float(x_target[i])
        gas.positions[i, 0] = target
        return _resolve_x_event(gas, policy, i, target)
    gas.positions[i, 1] = float(y_target[i])
    gas.velocities[i, 1] = -gas.velocities[i, 1]
    return Event(time=gas.time, kind="wall", particle=i), gas


def _clamp(gas: KineticGas) -> None:
    lx, ly = gas.box
    p = gas.partition_x
    np.clip(gas.positions[:, 1], 0.0, ly, out=gas.positions[:, 1])
    left = gas.sides == 0
    gas.positions[left, 0] = np.clip(gas.positions[left, 0], 0.0, p)
    gas.positions[~left, 0] = np.clip(gas.positions[~left, 0], p, lx)


def _resolve_x_event(gas: KineticGas, policy: GatePolicy, i: int,
                     target: float) -> tuple[Event, KineticGas]:
    p = gas.partition_x
    if target != p:
        gas.velocities[i, 0] = -gas.velocities[i, 0]
        return Event(time=gas.time, kind="wall", particle=i), gas

    yi = float(gas.positions[i, 1])
    in_aperture = abs(yi - gas.gate.center) <= gas.gate.half_width
    if not in_aperture:
        gas.velocities[i, 0] = -gas.velocities[i, 0]
        return Event(time=gas.time, kind="wall", particle=i), gas

    side_from = int(gas.sides[i])
    v = gas.velocities[i]
    speed = float(math.hypot(v[0], v[1]))
    opened = policy.decide(side_from, v, speed)
    gas.gate.open = opened
    if opened:
        gas.sides[i] = 1 - side_from
        kind = "gate-pass"
    else:
        gas.velocities[i, 0] = -gas.velocities[i, 0]
        kind = "gate-reject"
    return Event(time=gas.time, kind=kind, particle=i,
                 bit_recorded=policy.measures, side_from=side_from), gas


def run_demon(
    n: int,
    box: tuple[float, float],
    t0: float,
    policy: GatePolicy,
    duration: float,
    seed: int,
    gate: Gate | None = None,
    partition_x: float | None = None,
    memory_capacity: int | None = None,
    sample_interval: float | None = None,
    mass: float = 1.0,
    c: Constants = REDUCED,
) -> DemonTrace:
    """Simulate the two-chamber gas under a gate policy.

    Velocities are Maxwell-Boltzmann at t0, positions uniform, both drawn
    from a Philox generator keyed by the seed, so traces are pure functions
    of (inputs, seed).  The ledger series is sampled at a fixed cadence.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if t0 <= 0 or duration <= 0:
        raise ValueError("t0 and duration must be positive")
    if memory_capacity is not None and memory_capacity < 1:
        raise ValueError("memory_capacity must be positive when given")
    lx, ly = box
    part = partition_x if partition_x is not None else lx / 2.0
    the_gate = gate if gate is not None else Gate(center=ly / 2.0, half_width=0.125 * ly)
    interval = sample_interval if sample_interval is not None else duration / 80.0
    if interval <= 0:
        raise ValueError("sample_interval must be positive")

    rng = np.random.Generator(np.random.Philox(key=seed))
    positions = rng.random((n, 2)) * np.array([lx, ly])
    sigma = math.sqrt(c.boltzmann_k * t0 / mass)
    velocities = rng.normal(0.0, sigma, (n, 2))
    gas = KineticGas(box=box, positions=positions, velocities=velocities,
                     partition_x=part, gate=the_gate, mass=mass)

    area_left = part * ly
    area_right = (lx - part) * ly
    k = c.boltzmann_k

    bits_recorded = 0
    bits_erased = 0
    landauer_heat = 0.0
    ds_sides = 0.0
    material = 0.0

    def ledger() -> DemonLedger:
        return DemonLedger(
            bits_recorded=bits_recorded, bits_erased=bits_erased,
            landauer_heat=landauer_heat, dS_sides=ds_sides,
            dS_thermo_part=0.0, material_term=material, boltzmann_k=k,
        )

    def sample(at: float) -> DemonSample:
        n_left, n_right = gas.side_counts()
        ke_left, ke_right = gas.side_kinetic(0), gas.side_kinetic(1)
        return DemonSample(
            time=at,
            n_left=n_left, n_right=n_right,
            temp_left=ke_left / (n_left * k) if n_left else 0.0,
            temp_right=ke_right / (n_right * k) if n_right else 0.0,
            kinetic_energy=gas.kinetic_energy(),
            ledger=ledger(),
        )

    events: list[Event] = []
    series: list[DemonSample] = [sample(0.0)]
    next_sample = interval

    while True:
        ev, _ = advance_to_next_event(gas, policy, horizon=duration)
        if ev is None:
            break
        while next_sample < ev.time and next_sample <= duration:
            series.append(sample(next_sample))
            next_sample += interval

        if ev.kind in ("gate-pass", "gate-reject"):
            events.append(Event(time=ev.time, kind="gate-attempt", particle=ev.particle,
                                bit_recorded=ev.bit_recorded, side_from=ev.side_from))
            if ev.bit_recorded:
                bits_recorded += 1
                if memory_capacity is not None and bits_recorded - bits_erased > memory_capacity:
                    bits_erased += 1  # FIFO memory slot reclaimed
                    landauer_heat += k * t0 * LN2
            events.append(Event(time=ev.time, kind=ev.kind, particle=ev.particle,
                                bit_recorded=False, side_from=ev.side_from))
        else:
            events.append(ev)

        if ev.kind == "gate-pass":
            # The pass already flipped sides; reconstruct both chambers'
            # before/after books from the authoritative arrays.
            side_to = 1 - ev.side_from
            eps = 0.5 * mass * float(np.sum(gas.velocities[ev.particle] ** 2))
            counts = gas.side_counts()
            n_from_post, n_to_post = counts[ev.side_from], counts[side_to]
            ke_from_post = gas.side_kinetic(ev.side_from)
            ke_to_post = gas.side_kinetic(side_to)
            n_from_pre, ke_from_pre = n_from_post + 1, ke_from_post + eps
            n_to_pre, ke_to_pre = n_to_post - 1, ke_to_post - eps
            areas = (area_left, area_right)
            a_from, a_to = areas[ev.side_from], areas[side_to]
            s_before = (chamber_entropy(n_from_pre, a_from, ke_from_pre, mass, c)
                        + chamber_entropy(n_to_pre, a_to, ke_to_pre, mass, c))
            s_after = (chamber_entropy(n_from_post, a_from, ke_from_post, mass, c)
                       + chamber_entropy(n_to_post, a_to, ke_to_post, mass, c))
            ds_sides += s_after - s_before
            material += (_chamber_mu_over_t(n_from_pre, a_from, ke_from_pre, mass, c)
                         - _chamber_mu_over_t(n_to_post, a_to, ke_to_post, mass, c))

    while next_sample <= duration:
        series.append(sample(next_sample))
        next_sample += interval
    if series[-1].time != duration:
        series.append(sample(duration))

    return DemonTrace(
        events=tuple(events),
        ledger_series=tuple(series),
        policy_name=policy.name,
        n_particles=n,
        box=box,
        t0=t0,
        duration=duration,
        seed=seed,
        memory_capacity=memory_capacity,
        constants=c,
    )


@dataclass(frozen=True)
class AccountingRow:
    """One sample's entropy/information books, side by side."""

    time: float
    bits_recorded: int
    bits_erased: int
    dS_sides: float
    szilard_measurement_cost: float
    brillouin_balance: float
    landauer_heat_over_t0: float
    paper_dS_st: float
    paper_material_term: float
    paper_margin: float


@dataclass(frozen=True)
class AccountingReport:
    """Descriptive comparison of the four accountings; none is endorsed.

    paper_margin is the generalized-inequality slack dS_st - (q/T + material);
    the box exchanges no heat, so the slack is exactly the heat ledger (zero)
    and the inequality holds with equality even while dS_st itself is
    negative.
    """

    rows: tuple[AccountingRow, ...]
    t0: float

    @property
    def brillouin_nonnegative(self) -> bool:
        return all(r.brillouin_balance >= -1e-12 for r in self.rows)

    @property
    def paper_inequality_satisfied(self) -> bool:
        return all(r.paper_margin >= -1e-12 for r in self.rows)


def accounting_report(trace: DemonTrace) -> AccountingReport:
    """Tabulate Szilard, Brillouin, Landauer-Bennett, and ledger accountings."""
    if not trace.ledger_series:
        raise ValueError("trace has no ledger samples")
    k = trace.constants.boltzmann_k
    rows = []
    for s in trace.ledger_series:
        led = s.ledger
        paper_margin = led.dS_st_paper - (0.0 + led.material_term)
        rows.append(AccountingRow(
            time=s.time,
            bits_recorded=led.bits_recorded,
            bits_erased=led.bits_erased,
            dS_sides=led.dS_sides,
            szilard_measurement_cost=led.bits_recorded * k * LN2,
            brillouin_balance=led.brillouin_balance,
            landauer_heat_over_t0=led.landauer_heat / trace.t0,
            paper_dS_st=led.dS_st_paper,
            paper_material_term=led.material_term,
            paper_margin=paper_margin,
        ))
    return AccountingReport(rows=tuple(rows), t0=trace.t0)
