"""Optimal beamformer search for both eavesdropper models, plus oracles.

The single-user-decoding optimum lives on the power-gain-region boundary
that suppresses the primary receiver and boosts the other two, at full
power.  The joint-decoding optimum is the best of three candidate pools,
one per branch of the piecewise secrecy rate, each restricted by its branch
condition and the secondary QoS constraint.

Both solvers run a coarse simplex lattice first and then shrink a local
lattice around the incumbent a few times; the refinement is what pushes the
worst-case gap to the continuous optimum below the millibit level, since
constrained optima sit on QoS or branch boundaries that a fixed lattice
straddles.  Brute-force oracles maximize the same objectives over dense
angular (and power) grids and exist purely to validate the boundary
parameterization; they share nothing with it but the rate formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ChannelSet, DegenerateChannelError, SystemParams
from .pgr import (
    DIRECTION_SUPPRESS_PRIMARY,
    DIRECTION_SUPPRESS_PRIMARY_AND_EVE,
    DIRECTION_TWO_TERM,
    INTERVAL_GRID_POINTS,
    SweepResult,
    boundary_sweep,
    sample_simplex,
)
from .rates import (
    RegimeLabel,
    jd_secrecy_from_gains,
    required_rate,
    sd_secrecy_from_gains,
    secondary_rate,
    secondary_rate_from_gain,
    secrecy_rate_jd,
    secrecy_rate_sd,
)

__all__ = [
    "OptResult",
    "UnitSweeps",
    "unit_sweeps",
    "solve_sd",
    "solve_jd",
    "solve_cell",
    "brute_force_sd",
    "brute_force_jd",
]

# Absolute slack on every rate constraint; grids land near boundaries.
RATE_SLACK = 1e-9

DEFAULT_RESOLUTION = 100
DEFAULT_RESOLUTION_TWO_TERM = 400

# Local refinement: each round walks a +/- REFINE_SPAN-step box around the
# incumbent (recentering while the winner keeps improving, so a ridge along
# a constraint boundary can be followed arbitrarily far), then shrinks the
# lattice spacing by REFINE_FACTOR.  Three rounds take a 1/100 lattice down
# to ~2e-6.
REFINE_ROUNDS = 3
REFINE_FACTOR = 8
REFINE_SPAN = 2
MAX_WALK_MOVES = 40
# Extra walk starts from well-separated high-value feasible rows: the value
# along an active QoS boundary is nearly flat with several local bumps, so
# a single start can stall one bump short of the best.
NUM_SEEDS = 4
SEED_SEPARATION = 3.0  # in units of the coarse lattice spacing

# Rows whose top eigenvalue is within this many lattice spacings of zero
# (times the channel power scale) get the full power grid: the power
# interval that opens exactly at lambda == 0 is never hit by a lattice, so
# nearby rows stand in for it.
INTERVAL_BAND = 4.0

_POOLS = ("S1", "S2", "S3")
_POOL_RANK = {"S1": 0.0, "S2": 1.0, "S3": 2.0}


@dataclass(frozen=True)
class OptResult:
    """A solver (or oracle) outcome with everything needed to audit it."""

    w: np.ndarray
    secrecy_bits: float
    secondary_bits: float
    regime: RegimeLabel
    mu: tuple | None
    power: float
    candidate: str  # S1 | S2 | S3 | SINGLE_USER | BRUTE_FORCE
    feasible: bool


@dataclass(frozen=True)
class UnitSweeps:
    """Per-channel boundary sweeps at unit power, reusable across powers.

    Eigenvectors depend only on the channels and weights, never on the
    transmit powers, so one UnitSweeps serves every (SNR, alpha, decoder)
    cell that shares the channel realization.
    """

    s1: SweepResult
    s2: SweepResult
    s3: SweepResult
    m: int
    m2: int

    def sweep(self, pool: str) -> SweepResult:
        return {"S1": self.s1, "S2": self.s2, "S3": self.s3}[pool]


def _require_general_position(ch: ChannelSet) -> None:
    if not ch.general_position():
        raise DegenerateChannelError("channel vectors are not in general position")


def unit_sweeps(
    ch: ChannelSet,
    m: int = DEFAULT_RESOLUTION,
    m2: int = DEFAULT_RESOLUTION_TWO_TERM,
) -> UnitSweeps:
    """All three candidate-family sweeps for one channel realization."""
    _require_general_position(ch)
    return UnitSweeps(
        s1=boundary_sweep(sample_simplex(3, m), DIRECTION_SUPPRESS_PRIMARY, ch),
        s2=boundary_sweep(sample_simplex(3, m), DIRECTION_SUPPRESS_PRIMARY_AND_EVE, ch),
        s3=boundary_sweep(sample_simplex(2, m2), DIRECTION_TWO_TERM, ch),
        m=m,
        m2=m2,
    )


def _local_simplex(center: np.ndarray, spacing: float) -> np.ndarray:
    """Weight rows on a finer lattice around center, clipped to the simplex.

    The returned rows use spacing/REFINE_FACTOR steps and cover a box of
    +/- REFINE_SPAN * spacing per coordinate (moves sum to zero, so every
    row still sums to one).
    """
    k = len(center)
    h = spacing / REFINE_FACTOR
    d = REFINE_SPAN * REFINE_FACTOR
    steps = np.arange(-d, d + 1)
    if k == 3:
        i, j = np.meshgrid(steps, steps, indexing="ij")
        l = -(i + j)
        ok = np.abs(l) <= d
        moves = np.column_stack([i[ok], j[ok], l[ok]])
    else:
        moves = np.column_stack([steps, -steps])
    rows = center[None, :] + h * moves
    rows = rows[np.all(rows >= -1e-12, axis=1)]
    rows = np.clip(rows, 0.0, None)
    return rows / rows.sum(axis=1, keepdims=True)


def _lambda_scale(ch: ChannelSet) -> float:
    return max(1.0, max(float(np.linalg.norm(h) ** 2) for h in ch.secondary_vectors()))


@dataclass
class _Best:
    """Running winner of a candidate enumeration (deterministic order)."""

    value: float = -np.inf
    rss: float = -np.inf
    sweep: SweepResult | None = None
    row: int = -1
    power: float = 0.0

    def consider(self, value, rss, powers, rows, keep, sweep) -> None:
        """Fold a candidate batch in; ties keep the incumbent."""
        idx = np.flatnonzero(keep)
        if idx.size == 0:
            return
        order = np.lexsort((idx, -rss[idx], -value[idx]))
        i = idx[order[0]]
        if (value[i], rss[i]) > (self.value, self.rss):
            self.value = float(value[i])
            self.rss = float(rss[i])
            self.sweep = sweep
            self.row = int(rows[i])
            self.power = float(powers[i])

    @property
    def found(self) -> bool:
        return self.sweep is not None


def _sd_scores(gains: np.ndarray, r_min: float, ch, p):
    """(value, rss, keep, keep_relaxed) for single-user-decoding candidates.

    keep_relaxed drops only the QoS bound; it exists to seed a second
    refinement pass, because the constrained optimum often hugs the QoS
    boundary near the unconstrained maximum rather than near the best
    feasible lattice row.
    """
    rss = secondary_rate_from_gain(gains[:, 2], ch, p)
    value = sd_secrecy_from_gains(gains[:, 0], gains[:, 1], ch, p)
    keep = rss >= r_min - RATE_SLACK
    return value, rss, keep, np.ones_like(keep)


def _jd_scores(gains: np.ndarray, r_min: float, pool: str, ch, p):
    """(value, rss, keep, keep_relaxed) for one joint-decoding pool.

    keep applies the pool's branch condition (closed at both ends, so
    boundary points stay in both adjacent pools) plus the QoS bound;
    keep_relaxed applies the branch condition alone.
    """
    rss = secondary_rate_from_gain(gains[:, 2], ch, p)
    s2e = p.sigma2_e
    ape = float(np.abs(ch.h_pe) ** 2 * p.p_p)
    r_se_jd = np.log2(1.0 + gains[:, 1] / s2e)
    r_se_sd = np.log2(1.0 + gains[:, 1] / (s2e + ape))
    if pool == "S1":
        in_branch = r_se_jd <= rss + RATE_SLACK
    elif pool == "S2":
        in_branch = (r_se_sd <= rss + RATE_SLACK) & (rss <= r_se_jd + RATE_SLACK)
    else:
        in_branch = rss <= r_se_sd + RATE_SLACK
    value, _ = jd_secrecy_from_gains(gains[:, 0], gains[:, 1], gains[:, 2], ch, p)
    return value, rss, in_branch & (rss >= r_min - RATE_SLACK), in_branch


def _pool_powers(sweep: SweepResult, pool: str, ch, p, band: float):
    """(powers, rows) candidate expansion implementing the power rule.

    S1 uses the budget alone.  S2 uses the budget where the top eigenvalue
    is clearly positive (or always, with three or more antennas), zero where
    clearly negative, and the whrole power grid within the band around
    zero.  S3 always sweeps the power grid.
    """
    L = len(sweep.lam)
    if pool == "S1":
        return np.full(L, p.p_s_max), np.arange(L)
    grid = np.linspace(0.0, p.p_s_max, INTERVAL_GRID_POINTS)
    if pool == "S3":
        return np.tile(grid, L), np.repeat(np.arange(L), grid.size)
    tol = band * _lambda_scale(ch)
    if ch.n_t >= 3:
        kind = np.zeros(L, dtype=int)
    else:
        kind = np.where(sweep.lam > tol, 0, np.where(sweep.lam < -tol, 2, 1))
    rows_list = [np.flatnonzero(kind == 0)]
    powers_list = [np.full(rows_list[0].size, p.p_s_max)]
    interval = np.flatnonzero(kind == 1)
    if interval.size:
        rows_list.append(np.repeat(interval, grid.size))
        powers_list.append(np.tile(grid, interval.size))
    zero = np.flatnonzero(kind == 2)
    if zero.size:
        rows_list.append(zero)
        powers_list.append(np.zeros(zero.size))
    return np.concatenate(powers_list), np.concatenate(rows_list)


def _run_pool(
    coarse: SweepResult,
    expand,
    scores,
    ch: ChannelSet,
    spacing: float,
    rounds: int = REFINE_ROUNDS,
    seeds: int = NUM_SEEDS,
    collector: list | None = None,
) -> _Best:
    """Coarse pass plus local refinement for one candidate pool.

    expand maps (sweep, spacing) to flattened (powers, rows) candidates;
    scores maps a (n, 3) gain array to (value, rss, keep, keep_relaxed).
    Refinement runs twice when the seeds differ: once centered on feasible
    winners and once on winners of the QoS-relaxed problem, harvesting only
    feasible candidates from both.
    """

    def evaluate(sweep, spc):
        powers, rows = expand(sweep, spc)
        if collector is not None:
            collector.append((sweep, powers, rows))
        gains = sweep.unit_gains[rows] * powers[:, None]
        value, rss, keep, keep_relaxed = scores(gains)
        return value, rss, powers, rows, keep, keep_relaxed

    value, rss, powers, rows, keep, keep_relaxed = evaluate(coarse, spacing)
    best = _Best()
    best.consider(value, rss, powers, rows, keep, coarse)
    if not best.found and not np.any(keep_relaxed):
        return best

    def walk(start_mu: np.ndarray, use_relaxed: bool) -> None:
        """Refine around one seed, harvesting feasible candidates into best."""
        center = _Best()
        center_mu = start_mu
        spc = spacing
        for _ in range(rounds):
            fine = spc / REFINE_FACTOR
            for _ in range(MAX_WALK_MOVES):
                sweep = boundary_sweep(_local_simplex(center_mu, spc), coarse.e, ch)
                v, r, pw, rw, k, k_rel = evaluate(sweep, fine)
                incumbent = (center.value, center.rss)
                center.consider(v, r, pw, rw, k_rel if use_relaxed else k, sweep)
                best.consider(v, r, pw, rw, k, sweep)
                if (center.value, center.rss) == incumbent:
                    break
                center_mu = np.asarray(center.sweep.mu[center.row])
            spc = fine

    for seed_mu in _seed_rows(coarse.mu, rows, value, rss, keep, spacing, seeds):
        walk(seed_mu, use_relaxed=False)
    if np.any(keep_relaxed & ~keep):
        for seed_mu in _seed_rows(coarse.mu, rows, value, rss, keep_relaxed,
                                  spacing, 1):
            walk(seed_mu, use_relaxed=True)
    return best


def _seed_rows(mu, rows, value, rss, keep, spacing, count: int = NUM_SEEDS):
    """Up to count high-value weight rows under keep, pairwise well separated."""
    idx = np.flatnonzero(keep)
    if idx.size == 0:
        return []
    order = idx[np.lexsort((idx, -rss[idx], -value[idx]))]
    seeds: list[np.ndarray] = []
    min_sep = SEED_SEPARATION * spacing
    for i in order:
        row = np.asarray(mu[rows[i]])
        if all(np.max(np.abs(row - s)) >= min_sep for s in seeds):
            seeds.append(row)
            if len(seeds) >= count:
                break
    return seeds


def solve_sd(
    ch: ChannelSet,
    p: SystemParams,
    m: int = DEFAULT_RESOLUTION,
    power_levels=None,
    sweeps: UnitSweeps | None = None,
    refine: bool = True,
) -> OptResult:
    """Best beamformer against a single-user-decoding eavesdropper.

    Enumerates the three-weight boundary family at full power (then refines
    locally) and keeps the feasible point with the largest secrecy rate.
    power_levels exists only to let callers verify that transmit powers
    below the budget never help; the default searches the budget alone.
    """
    if sweeps is not None:
        coarse, spacing = sweeps.s1, 1.0 / sweeps.m
    else:
        _require_general_position(ch)
        coarse = boundary_sweep(sample_simplex(3, m), DIRECTION_SUPPRESS_PRIMARY, ch)
        spacing = 1.0 / m
    levels = (
        np.array([p.p_s_max]) if power_levels is None
        else np.asarray(power_levels, dtype=float)
    )
    r_min = required_rate(ch, p)

    def expand(sweep, _spc):
        L = len(sweep.lam)
        return np.tile(levels, L), np.repeat(np.arange(L), levels.size)

    best = _run_pool(
        coarse,
        expand,
        lambda g: _sd_scores(g, r_min, ch, p),
        ch,
        spacing,
        rounds=REFINE_ROUNDS if refine else 0,
    )
    assert best.found, "full-power MRT always satisfies the QoS constraint"
    w = best.sweep.beamformer(best.row, best.power)
    return OptResult(
        w=w,
        secrecy_bits=secrecy_rate_sd(w, ch, p),
        secondary_bits=secondary_rate(w, ch, p),
        regime=RegimeLabel.SINGLE_USER,
        mu=tuple(float(x) for x in best.sweep.mu[best.row]),
        power=best.power,
        candidate="SINGLE_USER",
        feasible=True,
    )


def solve_jd(
    ch: ChannelSet,
    p: SystemParams,
    m: int = DEFAULT_RESOLUTION,
    m2: int = DEFAULT_RESOLUTION_TWO_TERM,
    sweeps: UnitSweeps | None = None,
    refine: bool = True,
) -> OptResult:
    """Best beamformer against a joint-decoding eavesdropper.

    Each pool (three-weight family suppressing the primary; the same with
    the eavesdropper suppressed too, with its power rule; the two-weight
    family over the primary and secondary channels with a free power) is
    filtered by its branch condition and the QoS constraint, scored with
    the piecewise secrecy rate, refined, and the best survivor wins.
    """
    if sweeps is None:
        sweeps = unit_sweeps(ch, m, m2)
    r_min = required_rate(ch, p)

    results: dict[str, _Best] = {}
    for pool in _POOLS:
        results[pool] = _run_pool(
            sweeps.sweep(pool),
            lambda sweep, spc, pool=pool: _pool_powers(
                sweep, pool, ch, p, INTERVAL_BAND * spc
            ),
            lambda g, pool=pool: _jd_scores(g, r_min, pool, ch, p),
            ch,
            1.0 / (sweeps.m2 if pool == "S3" else sweeps.m),
            rounds=REFINE_ROUNDS if refine else 0,
        )
    assert any(b.found for b in results.values()), "MRT belongs to every pool"
    pool = max(
        (pl for pl in _POOLS if results[pl].found),
        key=lambda pl: (results[pl].value, results[pl].rss, -_POOL_RANK[pl]),
    )
    winner = results[pool]
    w = winner.sweep.beamformer(winner.row, winner.power)
    secrecy, regime = secrecy_rate_jd(w, ch, p)
    return OptResult(
        w=w,
        secrecy_bits=secrecy,
        secondary_bits=secondary_rate(w, ch, p),
        regime=regime,
        mu=tuple(float(x) for x in winner.sweep.mu[winner.row]),
        power=winner.power,
        candidate=pool,
        feasible=True,
    )


# Angular zoom for the two-antenna oracles: recenter a finer (theta, phi)
# window on the best grid point a few times.  Still a direct search on the
# raw objective; it shares nothing with the boundary parameterization.
ZOOM_ROUNDS = 2
ZOOM_POINTS = 41
ZOOM_SPAN = 2.0  # window half-width in units of the previous grid step


def solve_cell(
    ch: ChannelSet,
    base: SystemParams,
    alphas,
    decoders=("SD", "JD"),
    sweeps: UnitSweeps | None = None,
    walk_seeds: int = 1,
    walk_rounds: int = 2,
) -> dict:
    """Solve every (decoder, alpha) cell of one channel draw coherently.

    All cells rescore one shared candidate superset (the coarse sweeps plus
    every locally refined lattice any cell's search visited).  That makes
    the cross-cell comparisons exact instead of racing refinement noise:
    the joint-decoding value can never exceed the single-user value, and
    raising alpha can never raise either, because each answer is an argmax
    over the same candidates under nested feasibility filters and pointwise
    ordered objectives.  Returns {(decoder, alpha): OptResult}.
    """
    if sweeps is None:
        sweeps = unit_sweeps(ch)
    alphas = tuple(alphas)
    batches: dict = {}  # (id(sweep), pool) -> (sweep, powers, rows, pool)

    def collect(pool):
        class _Collector(list):
            def append(self, triple):
                # Collected sweeps stay referenced here, so ids are unique.
                batches.setdefault((id(triple[0]), pool), triple + (pool,))

        return _Collector()

    def full_power_expand(sweep, _spc):
        L = len(sweep.lam)
        return np.full(L, base.p_s_max), np.arange(L)

    for alpha in alphas:
        p = _with_alpha(base, alpha)
        r_min = required_rate(ch, p)
        if "SD" in decoders:
            _run_pool(
                sweeps.s1, full_power_expand,
                lambda g, p=p, r=r_min: _sd_scores(g, r, ch, p),
                ch, 1.0 / sweeps.m, rounds=walk_rounds, seeds=walk_seeds,
                collector=collect("S1full"),
            )
        if "JD" in decoders:
            for pool in _POOLS:
                _run_pool(
                    sweeps.sweep(pool),
                    lambda sweep, spc, pool=pool, p=p: _pool_powers(
                        sweep, pool, ch, p, INTERVAL_BAND * spc
                    ),
                    lambda g, pool=pool, p=p, r=r_min: _jd_scores(g, r, pool, ch, p),
                    ch, 1.0 / (sweeps.m2 if pool == "S3" else sweeps.m),
                    rounds=walk_rounds, seeds=walk_seeds,
                    collector=collect(pool),
                )

    results = {}
    batch_list = list(batches.values())
    for alpha in alphas:
        p = _with_alpha(base, alpha)
        r_min = required_rate(ch, p)
        for dec in decoders:
            best = _Best()
            best_pool = None
            for sweep, powers, rows, pool in batch_list:
                gains = sweep.unit_gains[rows] * powers[:, None]
                rss = secondary_rate_from_gain(gains[:, 2], ch, p)
                if dec == "SD":
                    value = sd_secrecy_from_gains(gains[:, 0], gains[:, 1], ch, p)
                else:
                    value, _ = jd_secrecy_from_gains(
                        gains[:, 0], gains[:, 1], gains[:, 2], ch, p
                    )
                before = (best.value, best.rss)
                best.consider(value, rss, powers, rows,
                              rss >= r_min - RATE_SLACK, sweep)
                if (best.value, best.rss) != before:
                    best_pool = pool
            assert best.found, "full-power MRT always satisfies the QoS bound"
            w = best.sweep.beamformer(best.row, best.power)
            if dec == "SD":
                secrecy, regime = secrecy_rate_sd(w, ch, p), RegimeLabel.SINGLE_USER
                candidate = "SINGLE_USER"
            else:
                secrecy, regime = secrecy_rate_jd(w, ch, p)
                candidate = "S1" if best_pool == "S1full" else best_pool
            results[(dec, alpha)] = OptResult(
                w=w,
                secrecy_bits=secrecy,
                secondary_bits=secondary_rate(w, ch, p),
                regime=regime,
                mu=tuple(float(x) for x in best.sweep.mu[best.row]),
                power=best.power,
                candidate=candidate,
                feasible=True,
            )
    return results


def _with_alpha(base: SystemParams, alpha: float) -> SystemParams:
    return SystemParams(
        p_p=base.p_p, p_s_max=base.p_s_max, sigma2_p=base.sigma2_p,
        sigma2_s=base.sigma2_s, sigma2_e=base.sigma2_e, alpha=alpha,
        n_t=base.n_t,
    )


def _angular_gain_window(ch: ChannelSet, theta: np.ndarray, phi: np.ndarray):
    """Unit-power gains of w(theta, phi) = [cos(theta), sin(theta) e^{i phi}]."""
    ct = np.cos(theta)[:, None]
    st_conj = np.sin(theta)[:, None] * np.exp(-1j * phi)[None, :]
    gains = [
        np.abs(ct * h[0] + st_conj * h[1]) ** 2 for h in ch.secondary_vectors()
    ]
    return np.stack(gains, axis=-1)  # (n_theta, n_phi, 3)


def _angular_maximize(ch: ChannelSet, score, n_theta: int, n_phi: int):
    """Maximize score(unit_gains) over the angular grid, then zoom in.

    score maps a (..., 3) unit-gain array to a masked objective (-inf where
    infeasible).  Returns (best score, theta, phi); the score is -inf only
    if no point anywhere was feasible.
    """
    theta = np.linspace(0.0, np.pi / 2.0, n_theta)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    val = score(_angular_gain_window(ch, theta, phi))
    ti, pi = np.unravel_index(int(np.argmax(val)), val.shape)
    best = (float(val[ti, pi]), float(theta[ti]), float(phi[pi]))
    if not np.isfinite(best[0]):
        return best
    return _angular_zoom(ch, score, best, theta[1] - theta[0], phi[1] - phi[0])


def _angular_zoom(ch: ChannelSet, score, best: tuple, d_theta: float, d_phi: float):
    """Shrink a recentered (theta, phi) window around the incumbent."""
    for _ in range(ZOOM_ROUNDS):
        theta = np.clip(
            np.linspace(best[1] - ZOOM_SPAN * d_theta, best[1] + ZOOM_SPAN * d_theta,
                        ZOOM_POINTS),
            0.0,
            np.pi / 2.0,
        )
        phi = np.linspace(best[2] - ZOOM_SPAN * d_phi, best[2] + ZOOM_SPAN * d_phi,
                          ZOOM_POINTS)
        val = score(_angular_gain_window(ch, theta, phi))
        ti, pi = np.unravel_index(int(np.argmax(val)), val.shape)
        if float(val[ti, pi]) > best[0]:
            best = (float(val[ti, pi]), float(theta[ti]), float(phi[pi]))
        d_theta = 2.0 * ZOOM_SPAN * d_theta / (ZOOM_POINTS - 1)
        d_phi = 2.0 * ZOOM_SPAN * d_phi / (ZOOM_POINTS - 1)
    return best


def _random_unit_gains(ch: ChannelSet, n_dirs: int, seed: int, chunk: int = 1 << 17):
    """Unit gains of random directions; yields (dirs, gains) chunks."""
    rng = np.random.Generator(np.random.PCG64(seed))
    H = ch.secondary_vectors()
    remaining = n_dirs
    while remaining > 0:
        size = min(chunk, remaining)
        remaining -= size
        w = rng.standard_normal((size, ch.n_t)) + 1j * rng.standard_normal(
            (size, ch.n_t)
        )
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        yield w, np.abs(np.conj(w) @ H.T) ** 2


def _oracle_result(w, ch, p, power, jd=False, feasible=True) -> OptResult:
    if jd:
        secrecy_val, regime = secrecy_rate_jd(w, ch, p)
    else:
        secrecy_val, regime = secrecy_rate_sd(w, ch, p), RegimeLabel.SINGLE_USER
    return OptResult(
        w=w,
        secrecy_bits=secrecy_val,
        secondary_bits=secondary_rate(w, ch, p),
        regime=regime,
        mu=None,
        power=power,
        candidate="BRUTE_FORCE",
        feasible=feasible,
    )


def brute_force_sd(
    ch: ChannelSet,
    p: SystemParams,
    n_theta: int = 601,
    n_phi: int = 1200,
    n_random: int = 10**6,
    seed: int = 0,
) -> OptResult:
    """Direct full-power maximization of the single-user secrecy rate.

    Exhaustive over (theta, phi) for two antennas; random unit directions
    otherwise (only good for one-sided sanity checks in that case).
    """
    r_min = required_rate(ch, p)
    if ch.n_t == 2:

        def score(unit):
            gains = p.p_s_max * unit
            rss = secondary_rate_from_gain(gains[..., 2], ch, p)
            rsec = sd_secrecy_from_gains(gains[..., 0], gains[..., 1], ch, p)
            return np.where(rss >= r_min - RATE_SLACK, rsec, -np.inf)

        val, theta, phi = _angular_maximize(ch, score, n_theta, n_phi)
        feasible = bool(np.isfinite(val))
        if not feasible:  # no grid point meets the QoS bound; report the closest
            grid_t = np.linspace(0.0, np.pi / 2.0, n_theta)
            grid_p = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
            rss = secondary_rate_from_gain(
                p.p_s_max * _angular_gain_window(ch, grid_t, grid_p)[..., 2], ch, p
            )
            ti, pi = np.unravel_index(int(np.argmax(rss)), rss.shape)
            theta, phi = float(grid_t[ti]), float(grid_p[pi])
        w = np.sqrt(p.p_s_max) * np.array(
            [np.cos(theta), np.sin(theta) * np.exp(1j * phi)]
        )
        return _oracle_result(w, ch, p, p.p_s_max, feasible=feasible)
    best_val = -np.inf
    best_w = None
    for w_chunk, unit in _random_unit_gains(ch, n_random, seed):
        gains = p.p_s_max * unit
        rss = secondary_rate_from_gain(gains[:, 2], ch, p)
        rsec = sd_secrecy_from_gains(gains[:, 0], gains[:, 1], ch, p)
        rsec = np.where(rss >= r_min - RATE_SLACK, rsec, -np.inf)
        i = int(np.argmax(rsec))
        if rsec[i] > best_val:
            best_val = float(rsec[i])
            best_w = np.sqrt(p.p_s_max) * w_chunk[i]
    if best_w is None or not np.isfinite(best_val):
        return _oracle_result(
            np.sqrt(p.p_s_max) * ch.h_ss / np.linalg.norm(ch.h_ss), ch, p,
            p.p_s_max, feasible=False,
        )
    return _oracle_result(best_w, ch, p, p.p_s_max)


def brute_force_jd(
    ch: ChannelSet,
    p: SystemParams,
    n_theta: int = 401,
    n_phi: int = 800,
    n_power: int = INTERVAL_GRID_POINTS,
    n_random: int = 10**5,
    seed: int = 0,
) -> OptResult:
    """Direct maximization of the joint-decoding secrecy rate over
    (direction, transmit power); the power axis matters because partial
    power is occasionally optimal against a joint decoder."""
    r_min = required_rate(ch, p)
    powers = np.linspace(0.0, p.p_s_max, n_power)

    def score_at(power):
        def score(unit):
            g = power * unit
            rss = secondary_rate_from_gain(g[..., 2], ch, p)
            val, _ = jd_secrecy_from_gains(g[..., 0], g[..., 1], g[..., 2], ch, p)
            return np.where(rss >= r_min - RATE_SLACK, val, -np.inf)

        return score

    def scan(unit_gains):
        """Best (value, rss, power index, flat index) over the power grid."""
        flat = unit_gains.reshape(-1, 3)
        best = (-np.inf, -np.inf, 0, 0)
        for k, power in enumerate(powers):
            g = power * flat
            rss = secondary_rate_from_gain(g[:, 2], ch, p)
            val, _ = jd_secrecy_from_gains(g[:, 0], g[:, 1], g[:, 2], ch, p)
            val = np.where(rss >= r_min - RATE_SLACK, val, -np.inf)
            i = int(np.argmax(val))
            cand = (float(val[i]), float(rss[i]), k, i)
            if (cand[0], cand[1]) > (best[0], best[1]):
                best = cand
        return best

    if ch.n_t == 2:
        grid_t = np.linspace(0.0, np.pi / 2.0, n_theta)
        grid_p = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
        unit = _angular_gain_window(ch, grid_t, grid_p)
        val, _rss, k, i = scan(unit)
        feasible = bool(np.isfinite(val))
        if not feasible:  # no grid point meets the QoS bound
            i = int(np.argmax(unit.reshape(-1, 3)[:, 2]))
            ti, pi = np.unravel_index(i, unit.shape[:2])
            w = np.sqrt(p.p_s_max) * np.array(
                [np.cos(grid_t[ti]), np.sin(grid_t[ti]) * np.exp(1j * grid_p[pi])]
            )
            return _oracle_result(w, ch, p, p.p_s_max, jd=True, feasible=False)
        # Zoom the angular window at the winning power and its neighbors;
        # the power axis itself stays on the shared grid.
        ti, pi = np.unravel_index(i, unit.shape[:2])
        best = (val, float(grid_t[ti]), float(grid_p[pi]), k)
        d_theta = grid_t[1] - grid_t[0]
        d_phi = grid_p[1] - grid_p[0]
        for kk in range(max(0, k - 1), min(n_power, k + 2)):
            cand = _angular_zoom(
                ch, score_at(powers[kk]), (best[0], best[1], best[2]),
                d_theta, d_phi,
            )
            if cand[0] > best[0]:
                best = (cand[0], cand[1], cand[2], kk)
        w = np.sqrt(powers[best[3]]) * np.array(
            [np.cos(best[1]), np.sin(best[1]) * np.exp(1j * best[2])]
        )
        return _oracle_result(
            w, ch, p, float(powers[best[3]]), jd=True, feasible=True
        )
    best = (-np.inf, -np.inf, 0, 0)
    best_w = None
    for w_chunk, unit in _random_unit_gains(ch, n_random, seed):
        val, rss, k, i = scan(unit)
        if (val, rss) > (best[0], best[1]):
            best = (val, rss, k, i)
            best_w = np.sqrt(powers[k]) * w_chunk[i]
    if best_w is None or not np.isfinite(best[0]):
        return _oracle_result(
            np.sqrt(p.p_s_max) * ch.h_ss / np.linalg.norm(ch.h_ss), ch, p,
            p.p_s_max, jd=True, feasible=False,
        )
    return _oracle_result(best_w, ch, p, float(powers[best[2]]), jd=True)
