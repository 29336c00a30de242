"""Monte Carlo implementation of the iterative feedback coding scheme.

The encoder maps each message onto a point of a uniform grid in (-1/2, 1/2],
spends one channel use per user to plant a scaled copy of its message point,
and from then on transmits a power-normalized linear combination of the two
receivers' current estimation errors.  Each receiver refines its estimate
with a one-step scalar LMMSE update from its newest output.  The deterministic
moment schedule that generates the combining and estimation coefficients is
shared, read-only, by every trial.

Three operating modes share one engine: single-encoder broadcast, the
two-transmitter interference variant in which each transmitter emits its own
receiver's error term and the channel adds them, and a limited-feedback mode
where the encoder observes a single receiver's outputs and reconstructs the
other's (possible only for perfectly correlated or anti-correlated noises).

Numerical note: the error process is independent of the transmitted messages,
so trials propagate the errors directly and decode through the integer
message offset nearest to eps * L.  This reproduces exact-arithmetic
nearest-point decoding even when the grid is finer than float64 resolution
(n * rate beyond ~53 bits), which a float message-point estimate could not
represent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

from .analysis import ErrorState, gamma, solve_fixed_point, step_error_state
from .channel import (
    ChannelParams,
    RngSpec,
    broadcast_output,
    interference_output,
    make_generator,
    reconstruct_other_output,
    sample_noise_pair,
)
from .errors import (
    DegenerateMessageError,
    NumericalIntegrityError,
    ParameterError,
    UnsupportedConfigurationError,
)

_VECTOR_LEVEL_LIMIT = 1 << 62  # beyond this, message indices live in floats
_MODES = ("broadcast", "interference", "limited")


# ---------------------------------------------------------------------------
# messages
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MessageConfig:
    """Block length and per-user rates in bits per channel use."""

    n: int
    rate1: float
    rate2: float

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and self.n >= 3):
            raise ParameterError(f"block length must be an integer >= 3, got {self.n}")
        for name, rate in (("rate1", self.rate1), ("rate2", self.rate2)):
            if not (rate >= 0.0 and np.isfinite(rate)):
                raise ParameterError(f"{name} must be a nonnegative finite real, got {rate}")
            if self.n * rate > 512.0:
                raise ParameterError(f"{name} gives an alphabet beyond 2**512; not supported")

    @property
    def levels1(self) -> int:
        return level_count(self.n, self.rate1)

    @property
    def levels2(self) -> int:
        return level_count(self.n, self.rate2)


def level_count(n: int, rate: float) -> int:
    """Number of message points carried by a block: ceil(2**(n*rate))."""
    return max(1, math.ceil(2.0 ** (n * rate)))


@dataclass(frozen=True)
class MessagePoint:
    """A message mapped onto the uniform grid in (-1/2, 1/2]."""

    theta: float
    level_count: int


def map_message(m: int, levels: int) -> MessagePoint:
    """Injective mapping of message index m in {1..levels} onto the grid."""
    if levels < 1:
        raise ParameterError(f"level count must be >= 1, got {levels}")
    if not (1 <= m <= levels):
        raise ParameterError(f"message index {m} outside [1, {levels}]")
    return MessagePoint(theta=0.5 - (m - 1) / levels, level_count=levels)


def message_point_variance(levels: int) -> float:
    """Exact variance of the uniform grid of ``levels`` points: (L^2-1)/(12 L^2)."""
    if levels < 1:
        raise ParameterError(f"level count must be >= 1, got {levels}")
    return (levels * levels - 1) / (12 * levels * levels)


def decode(theta_estimate: float, levels: int) -> int:
    """Nearest grid point to the estimate; ties go to the smaller index,
    estimates beyond the grid clamp to the nearest endpoint."""
    if levels < 1:
        raise ParameterError(f"level count must be >= 1, got {levels}")
    u = (0.5 - theta_estimate) * levels + 1.0
    if not math.isfinite(u):
        return 1 if u < 0 else levels
    m = math.ceil(u - 0.5)
    return min(max(m, 1), levels)


def _decode_from_error(eps_final: float, m: int, levels: int) -> int:
    # Exact-arithmetic nearest-point decision expressed as an integer offset;
    # round-half-up on the offset matches decode()'s smaller-index tie rule.
    val = eps_final * float(levels)
    if not math.isfinite(val):
        return 1 if val > 0 else levels
    d = math.floor(val + 0.5)
    return min(max(m - d, 1), levels)


def _draw_message(gen: np.random.Generator, levels: int) -> int:
    """Exact uniform draw from {1..levels}, including beyond-int64 alphabets."""
    if levels <= 1:
        return 1
    if levels <= _VECTOR_LEVEL_LIMIT:
        return int(gen.integers(1, levels, endpoint=True, dtype=np.int64))
    nbits = (levels - 1).bit_length()
    nwords = (nbits + 63) // 64
    mask = (1 << nbits) - 1
    while True:
        value = 0
        for _ in range(nwords):
            value = (value << 64) | int(gen.integers(0, 2**64 - 1, endpoint=True, dtype=np.uint64))
        value &= mask
        if value < levels:
            return value + 1


# ---------------------------------------------------------------------------
# encoder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoderState:
    """Current estimation errors together with the analytic moments the
    combining coefficients are derived from."""

    eps1: float
    eps2: float
    schedule_index: int
    moments: ErrorState


def encode_init(theta1: MessagePoint, theta2: MessagePoint, params: ChannelParams):
    """Inputs of the two dedicated channel uses that plant the message points."""
    for i, point in ((1, theta1), (2, theta2)):
        if point.level_count < 2:
            raise DegenerateMessageError(
                f"message {i} has a single-point alphabet; its variance is zero and the "
                "power normalization of the dedicated channel use divides by it"
            )
    x1 = math.sqrt(params.power / message_point_variance(theta1.level_count)) * theta1.theta
    x2 = math.sqrt(params.power / message_point_variance(theta2.level_count)) * theta2.theta
    return x1, x2


def encode_terms(state: CoderState, params: ChannelParams):
    """The two summands of the feedback-iteration input, separated so the
    interference-channel transmitters can each emit exactly one of them."""
    mom = state.moments
    if not (mom.alpha1 > 0.0 and mom.alpha2 > 0.0):
        raise NumericalIntegrityError("encode_step needs strictly positive error variances")
    g = gamma(params.noise)
    ar = abs(mom.rho)
    sgn = 1.0 if mom.rho >= 0.0 else -1.0
    psi = math.sqrt(params.power / (1.0 + g * g + 2.0 * g * ar))
    t1 = psi * (state.eps1 / math.sqrt(mom.alpha1))
    t2 = psi * g * sgn * (state.eps2 / math.sqrt(mom.alpha2))
    return t1, t2


def encode_step(state: CoderState, params: ChannelParams) -> float:
    """Feedback-iteration channel input; its analytic second moment is the
    block power whenever the moment schedule matches the true moments."""
    t1, t2 = encode_terms(state, params)
    return t1 + t2


def receiver_update(eps_prev: float, y: float, coeff: float) -> float:
    """Subtract the scalar LMMSE estimate of the current error built from the
    newest channel output."""
    return eps_prev - coeff * y


# ---------------------------------------------------------------------------
# coefficient schedule
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientSchedule:
    """Deterministic per-step data shared read-only by all trials.

    Index convention: ``alpha1[k-2]`` etc. are the moments after output k for
    k = 2..n; ``psi[k-3]``, ``c1[k-3]``, ``c2[k-3]`` drive feedback step k for
    k = 3..n, and are derived from the moments at k-1 (same array index).
    """

    n: int
    var_theta1: float
    var_theta2: float
    init_rho: float
    alpha1: np.ndarray
    alpha2: np.ndarray
    rho: np.ndarray
    psi: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    var_y1: float
    var_y2: float

    def moments_at(self, k: int) -> ErrorState:
        """Analytic error moments after output k (k = 2..n)."""
        i = k - 2
        return ErrorState(
            alpha1=float(self.alpha1[i]),
            alpha2=float(self.alpha2[i]),
            rho=float(self.rho[i]),
            step_index=k,
        )


def lmmse_coefficient_schedule(
    params: ChannelParams,
    n: int,
    var_theta1: float,
    var_theta2: float,
    init_rho: float = 0.0,
) -> CoefficientSchedule:
    """Closed-form scalar LMMSE coefficient for every receiver and step.

    For step k, receiver v applies c_v = Cov(eps_v, Y_v) / Var(Y_v) with all
    moments taken from the analytic schedule; the moments induced by that
    projection reproduce the closed-form variance and correlation recursions
    exactly, which is the defining cross-check of the scheme implementation.
    The natural initial state after the two dedicated channel uses has
    uncorrelated errors; ``init_rho`` can pin it elsewhere (e.g. at the fixed
    point) for studying the pinned regime.
    """
    if n < 3:
        raise ParameterError(f"block length must be >= 3, got {n}")
    if not (var_theta1 > 0.0 and var_theta2 > 0.0):
        raise DegenerateMessageError("message-point variances must be positive")
    p = params.power
    s1, s2 = params.noise.sigma1, params.noise.sigma2
    g = gamma(params.noise)
    pi1, pi2 = p + s1 * s1, p + s2 * s2
    state = ErrorState(
        alpha1=var_theta1 * s1 * s1 / p,
        alpha2=var_theta2 * s2 * s2 / p,
        rho=init_rho,
        step_index=2,
    )
    alpha1 = [state.alpha1]
    alpha2 = [state.alpha2]
    rho = [state.rho]
    psi, c1, c2 = [], [], []
    for _ in range(3, n + 1):
        if not (state.alpha1 > 0.0 and state.alpha2 > 0.0):
            raise NumericalIntegrityError(
                f"error variance underflowed at step {state.step_index}; "
                "the block length is too large for this power"
            )
        ar = abs(state.rho)
        sgn = 1.0 if state.rho >= 0.0 else -1.0
        scale = math.sqrt(p / (1.0 + g * g + 2.0 * g * ar))
        psi.append(scale)
        c1.append(scale * math.sqrt(state.alpha1) * (1.0 + g * ar) / pi1)
        c2.append(scale * math.sqrt(state.alpha2) * sgn * (g + ar) / pi2)
        state = step_error_state(state, params)
        alpha1.append(state.alpha1)
        alpha2.append(state.alpha2)
        rho.append(state.rho)
    return CoefficientSchedule(
        n=n,
        var_theta1=var_theta1,
        var_theta2=var_theta2,
        init_rho=init_rho,
        alpha1=np.array(alpha1),
        alpha2=np.array(alpha2),
        rho=np.array(rho),
        psi=np.array(psi),
        c1=np.array(c1),
        c2=np.array(c2),
        var_y1=pi1,
        var_y2=pi2,
    )


def _make_schedule(config: MessageConfig, params: ChannelParams, fixpoint_init: bool):
    levels1, levels2 = config.levels1, config.levels2
    if levels1 < 2 or levels2 < 2:
        raise DegenerateMessageError(
            "both users need at least two message points (n * rate must give "
            "an alphabet of size >= 2)"
        )
    init_rho = solve_fixed_point(params).rho_star if fixpoint_init else 0.0
    return lmmse_coefficient_schedule(
        params,
        config.n,
        message_point_variance(levels1),
        message_point_variance(levels2),
        init_rho=init_rho,
    )


# ---------------------------------------------------------------------------
# single trials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrialRecord:
    """Everything observable about one simulated block."""

    message1: int
    message2: int
    decoded1: int
    decoded2: int
    success: bool
    inputs: np.ndarray  # channel input per use (sum of both transmitters)
    eps1: np.ndarray  # receiver-1 estimation error after outputs k = 2..n
    eps2: np.ndarray
    tx1: np.ndarray | None = None  # per-transmitter inputs, interference mode
    tx2: np.ndarray | None = None

    @property
    def powers(self) -> np.ndarray:
        """Per-use transmitted power samples."""
        return self.inputs**2


def _run_trial(
    config: MessageConfig,
    params: ChannelParams,
    rng: RngSpec,
    mode: str,
    fed_back_receiver: int,
    schedule: CoefficientSchedule | None = None,
    fixpoint_init: bool = False,
) -> TrialRecord:
    if mode not in _MODES:
        raise ParameterError(f"mode must be one of {_MODES}, got {mode!r}")
    noise = params.noise
    if mode == "limited":
        if not noise.is_degenerate:
            raise UnsupportedConfigurationError(
                "limited feedback needs |rho_z| = 1 to reconstruct the unobserved output"
            )
        if fed_back_receiver not in (1, 2):
            raise ParameterError(f"fed_back_receiver must be 1 or 2, got {fed_back_receiver}")
    if schedule is None:
        schedule = _make_schedule(config, params, fixpoint_init)
    n = config.n
    p = params.power
    levels1, levels2 = config.levels1, config.levels2
    var1, var2 = schedule.var_theta1, schedule.var_theta2

    gen = make_generator(rng)
    m1 = _draw_message(gen, levels1)
    m2 = _draw_message(gen, levels2)
    theta1 = map_message(m1, levels1)
    theta2 = map_message(m2, levels2)
    x_init1, x_init2 = encode_init(theta1, theta2, params)

    inputs = np.zeros(n)
    tx1_arr = np.zeros(n) if mode == "interference" else None
    tx2_arr = np.zeros(n) if mode == "interference" else None
    eps1_rec = np.zeros(n - 1)
    eps2_rec = np.zeros(n - 1)

    # t = 1: user 1's dedicated use (transmitter 1 in interference mode).
    z1_t1, z2_t1 = sample_noise_pair(noise, gen)
    _, y2_t1 = broadcast_output(x_init1, z1_t1, z2_t1)
    inputs[0] = x_init1
    if mode == "interference":
        tx1_arr[0] = x_init1
    # t = 2: user 2's dedicated use.
    z1_t2, z2_t2 = sample_noise_pair(noise, gen)
    y1_t2, _ = broadcast_output(x_init2, z1_t2, z2_t2)
    inputs[1] = x_init2
    if mode == "interference":
        tx2_arr[1] = x_init2

    # Receiver-side errors after the dedicated uses; receiver 1 ignores t=2
    # and receiver 2 ignores t=1, so the initial errors are uncorrelated.
    eps1 = math.sqrt(var1 / p) * z1_t1
    eps2 = math.sqrt(var2 / p) * z2_t2
    eps1_rec[0], eps2_rec[0] = eps1, eps2

    # Encoder-side error estimates.  With full feedback they coincide with
    # the receiver values; with limited feedback the unobserved receiver's
    # chain is rebuilt from reconstructed outputs.
    eps1_enc, eps2_enc = eps1, eps2
    if mode == "limited":
        if fed_back_receiver == 1:
            y2_t2_rec = reconstruct_other_output(x_init2, y1_t2, 1, noise)
            eps2_enc = math.sqrt(var2 / p) * y2_t2_rec - theta2.theta
        else:
            y1_t1_rec = reconstruct_other_output(x_init1, y2_t1, 2, noise)
            eps1_enc = math.sqrt(var1 / p) * y1_t1_rec - theta1.theta

    for k in range(3, n + 1):
        i = k - 3
        state = CoderState(
            eps1=eps1_enc,
            eps2=eps2_enc,
            schedule_index=k,
            moments=schedule.moments_at(k - 1),
        )
        t1, t2 = encode_terms(state, params)
        z1, z2 = sample_noise_pair(noise, gen)
        if mode == "interference":
            tx1_arr[k - 1] = t1
            tx2_arr[k - 1] = t2
            y1, y2 = interference_output(t1, t2, z1, z2)
            x = t1 + t2
        else:
            x = t1 + t2
            y1, y2 = broadcast_output(x, z1, z2)
        inputs[k - 1] = x
        c1k, c2k = float(schedule.c1[i]), float(schedule.c2[i])
        eps1 = receiver_update(eps1, y1, c1k)
        eps2 = receiver_update(eps2, y2, c2k)
        if mode == "limited":
            if fed_back_receiver == 1:
                eps1_enc = eps1
                eps2_enc = receiver_update(eps2_enc, reconstruct_other_output(x, y1, 1, noise), c2k)
            else:
                eps2_enc = eps2
                eps1_enc = receiver_update(eps1_enc, reconstruct_other_output(x, y2, 2, noise), c1k)
        else:
            eps1_enc, eps2_enc = eps1, eps2
        eps1_rec[k - 2], eps2_rec[k - 2] = eps1, eps2

    decoded1 = _decode_from_error(eps1, m1, levels1)
    decoded2 = _decode_from_error(eps2, m2, levels2)
    return TrialRecord(
        message1=m1,
        message2=m2,
        decoded1=decoded1,
        decoded2=decoded2,
        success=(decoded1 == m1 and decoded2 == m2),
        inputs=inputs,
        eps1=eps1_rec,
        eps2=eps2_rec,
        tx1=tx1_arr,
        tx2=tx2_arr,
    )


def run_broadcast_trial(
    config: MessageConfig,
    params: ChannelParams,
    rng: RngSpec,
    schedule: CoefficientSchedule | None = None,
    fixpoint_init: bool = False,
) -> TrialRecord:
    """One block through the single-encoder broadcast channel."""
    return _run_trial(config, params, rng, "broadcast", 0, schedule, fixpoint_init)


def run_interference_trial(
    config: MessageConfig,
    params: ChannelParams,
    rng: RngSpec,
    schedule: CoefficientSchedule | None = None,
    fixpoint_init: bool = False,
) -> TrialRecord:
    """One block with the two transmitters mimicking the broadcast encoder.

    Transmitter v emits the summand of the broadcast input built from its own
    receiver's error; the unit-gain channel adds the two inputs, so under a
    shared random stream the output trajectories coincide with the broadcast
    trial's.
    """
    return _run_trial(config, params, rng, "interference", 0, schedule, fixpoint_init)


def run_limited_feedback_trial(
    config: MessageConfig,
    params: ChannelParams,
    rng: RngSpec,
    fed_back_receiver: int = 1,
    schedule: CoefficientSchedule | None = None,
    fixpoint_init: bool = False,
) -> TrialRecord:
    """One broadcast block where the encoder sees only one receiver's outputs
    and reconstructs the other's (requires |rho_z| = 1)."""
    return _run_trial(config, params, rng, "limited", fed_back_receiver, schedule, fixpoint_init)


# ---------------------------------------------------------------------------
# campaigns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class McSummary:
    """Aggregate of N independent trials: per-step empirical error moments
    next to their analytic schedule values, power accounting, and the block
    error rate with a binomial confidence interval."""

    mode: str
    trials: int
    n: int
    master_seed: int
    steps: np.ndarray  # k = 2..n
    mean1: np.ndarray
    mean2: np.ndarray
    var1: np.ndarray
    var2: np.ndarray
    corr: np.ndarray
    alpha1: np.ndarray
    alpha2: np.ndarray
    rho: np.ndarray
    power_per_step: np.ndarray  # t = 1..n
    mean_power: float
    errors: int
    error_rate: float
    confidence: float
    ci_low: float
    ci_high: float
    tx1_mean_power: float | None = None
    tx2_mean_power: float | None = None

    def moment_z_scores(self) -> dict[str, np.ndarray]:
        """Per-step deviation of each empirical moment from its analytic
        value, in units of that moment's standard error."""
        n_tr = self.trials
        se_m1 = np.sqrt(self.alpha1 / n_tr)
        se_m2 = np.sqrt(self.alpha2 / n_tr)
        se_v1 = self.alpha1 * math.sqrt(2.0 / (n_tr - 1))
        se_v2 = self.alpha2 * math.sqrt(2.0 / (n_tr - 1))
        se_c = np.maximum(1.0 - self.rho**2, 1e-12) / math.sqrt(n_tr)
        return {
            "mean1": self.mean1 / se_m1,
            "mean2": self.mean2 / se_m2,
            "var1": (self.var1 - self.alpha1) / se_v1,
            "var2": (self.var2 - self.alpha2) / se_v2,
            "corr": (self.corr - self.rho) / se_c,
        }


def _wilson_interval(errors: int, trials: int, confidence: float):
    z = NormalDist().inv_cdf(0.5 + 0.5 * confidence)
    phat = errors / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4.0 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _draw_messages_array(gen: np.random.Generator, levels: int, n_trials: int) -> np.ndarray:
    if levels <= _VECTOR_LEVEL_LIMIT:
        return gen.integers(1, levels, size=n_trials, endpoint=True, dtype=np.int64)
    # Index identity beyond 2**62 points is statistically irrelevant; keep the
    # draws exact but store them as floats for vector arithmetic.
    return np.array([float(_draw_message(gen, levels)) for _ in range(n_trials)])


def run_broadcast_campaign(
    config: MessageConfig,
    params: ChannelParams,
    trials: int,
    master_seed: int,
    mode: str = "broadcast",
    fed_back_receiver: int = 1,
    fixpoint_init: bool = False,
    confidence: float = 0.95,
) -> McSummary:
    """Aggregate ``trials`` independent blocks, vectorized across trials.

    Deterministic for a given master seed; aggregation order is fixed, so
    identical invocations produce bitwise-identical summaries.
    """
    if trials < 100:
        raise ParameterError(f"need at least 100 trials, got {trials}")
    if mode not in _MODES:
        raise ParameterError(f"mode must be one of {_MODES}, got {mode!r}")
    if not (0.0 < confidence < 1.0):
        raise ParameterError(f"confidence must lie in (0, 1), got {confidence}")
    noise = params.noise
    if mode == "limited":
        if not noise.is_degenerate:
            raise UnsupportedConfigurationError(
                "limited feedback needs |rho_z| = 1 to reconstruct the unobserved output"
            )
        if fed_back_receiver not in (1, 2):
            raise ParameterError(f"fed_back_receiver must be 1 or 2, got {fed_back_receiver}")
    schedule = _make_schedule(config, params, fixpoint_init)
    n = config.n
    p = params.power
    levels1, levels2 = config.levels1, config.levels2
    var1, var2 = schedule.var_theta1, schedule.var_theta2
    g = gamma(noise)

    gen = make_generator(RngSpec(master_seed, 0))
    m1 = _draw_messages_array(gen, levels1, trials)
    m2 = _draw_messages_array(gen, levels2, trials)
    theta1 = 0.5 - (m1 - 1) / levels1
    theta2 = 0.5 - (m2 - 1) / levels2

    x1 = math.sqrt(p / var1) * theta1
    x2 = math.sqrt(p / var2) * theta2

    mean1 = np.zeros(n - 1)
    mean2 = np.zeros(n - 1)
    var1_emp = np.zeros(n - 1)
    var2_emp = np.zeros(n - 1)
    corr_emp = np.zeros(n - 1)
    power_per_step = np.zeros(n)
    tx1_power_sum = 0.0
    tx2_power_sum = 0.0

    z1_t1, z2_t1 = sample_noise_pair(noise, gen, size=trials)
    y2_t1 = x1 + z2_t1
    power_per_step[0] = float(np.mean(x1**2))
    z1_t2, z2_t2 = sample_noise_pair(noise, gen, size=trials)
    y1_t2 = x2 + z1_t2
    power_per_step[1] = float(np.mean(x2**2))
    if mode == "interference":
        tx1_power_sum += float(np.sum(x1**2))
        tx2_power_sum += float(np.sum(x2**2))

    eps1 = math.sqrt(var1 / p) * z1_t1
    eps2 = math.sqrt(var2 / p) * z2_t2
    eps1_enc, eps2_enc = eps1, eps2
    if mode == "limited":
        if fed_back_receiver == 1:
            ratio = noise.rho_z * (noise.sigma2 / noise.sigma1)
            y2_rec = x2 + ratio * (y1_t2 - x2)
            eps2_enc = math.sqrt(var2 / p) * y2_rec - theta2
        else:
            ratio = noise.rho_z * (noise.sigma1 / noise.sigma2)
            y1_rec = x1 + ratio * (y2_t1 - x1)
            eps1_enc = math.sqrt(var1 / p) * y1_rec - theta1

    def record(i: int, e1: np.ndarray, e2: np.ndarray) -> None:
        mean1[i] = e1.mean()
        mean2[i] = e2.mean()
        var1_emp[i] = e1.var(ddof=1)
        var2_emp[i] = e2.var(ddof=1)
        corr_emp[i] = float(np.corrcoef(e1, e2)[0, 1])

    record(0, eps1, eps2)

    for k in range(3, n + 1):
        i = k - 3
        a1, a2, rk = float(schedule.alpha1[i]), float(schedule.alpha2[i]), float(schedule.rho[i])
        psi = float(schedule.psi[i])
        sgn = 1.0 if rk >= 0.0 else -1.0
        t1 = psi / math.sqrt(a1) * eps1_enc
        t2 = (psi * g * sgn / math.sqrt(a2)) * eps2_enc
        x = t1 + t2
        power_per_step[k - 1] = float(np.mean(x**2))
        if mode == "interference":
            tx1_power_sum += float(np.sum(t1**2))
            tx2_power_sum += float(np.sum(t2**2))
        z1, z2 = sample_noise_pair(noise, gen, size=trials)
        y1, y2 = x + z1, x + z2
        c1k, c2k = float(schedule.c1[i]), float(schedule.c2[i])
        eps1 = eps1 - c1k * y1
        eps2 = eps2 - c2k * y2
        if mode == "limited":
            if fed_back_receiver == 1:
                ratio = noise.rho_z * (noise.sigma2 / noise.sigma1)
                eps1_enc = eps1
                eps2_enc = eps2_enc - c2k * (x + ratio * (y1 - x))
            else:
                ratio = noise.rho_z * (noise.sigma1 / noise.sigma2)
                eps2_enc = eps2
                eps1_enc = eps1_enc - c1k * (x + ratio * (y2 - x))
        else:
            eps1_enc, eps2_enc = eps1, eps2
        record(k - 2, eps1, eps2)

    lv1 = float(levels1) if levels1 > _VECTOR_LEVEL_LIMIT else levels1
    lv2 = float(levels2) if levels2 > _VECTOR_LEVEL_LIMIT else levels2
    val1 = eps1 * float(levels1)
    val2 = eps2 * float(levels2)
    d1 = np.floor(val1 + 0.5)
    d2 = np.floor(val2 + 0.5)
    dec1 = np.clip(m1 - d1, 1, lv1)
    dec2 = np.clip(m2 - d2, 1, lv2)
    bad1 = ~np.isfinite(val1)
    bad2 = ~np.isfinite(val2)
    if np.any(bad1):
        dec1 = np.where(bad1, np.where(val1 > 0, 1, lv1), dec1)
    if np.any(bad2):
        dec2 = np.where(bad2, np.where(val2 > 0, 1, lv2), dec2)
    success = (dec1 == m1) & (dec2 == m2)
    errors = int(trials - np.count_nonzero(success))
    ci_low, ci_high = _wilson_interval(errors, trials, confidence)

    return McSummary(
        mode=mode,
        trials=trials,
        n=n,
        master_seed=master_seed,
        steps=np.arange(2, n + 1),
        mean1=mean1,
        mean2=mean2,
        var1=var1_emp,
        var2=var2_emp,
        corr=corr_emp,
        alpha1=schedule.alpha1.copy(),
        alpha2=schedule.alpha2.copy(),
        rho=schedule.rho.copy(),
        power_per_step=power_per_step,
        mean_power=float(np.mean(power_per_step)),
        errors=errors,
        error_rate=errors / trials,
        confidence=confidence,
        ci_low=ci_low,
        ci_high=ci_high,
        tx1_mean_power=(tx1_power_sum / (trials * n)) if mode == "interference" else None,
        tx2_mean_power=(tx2_power_sum / (trials * n)) if mode == "interference" else None,
    )
