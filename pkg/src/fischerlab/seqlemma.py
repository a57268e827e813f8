"""Finite-data checks for the sequence lemma behind Fischer uniqueness.

The lemma: a nonnegative sequence with

  (i)  a_m <= A (m+D)^alpha max_{j in E} a_{m+j}           for all m >= 0
  (ii) a_m <= A0 (m+D0)^alpha0 b0^(-m) m^(-m/sigma)          for all m >= 1

vanishes identically when 0 <= alpha < min(E)/sigma, or alpha < 0 and
alpha < max(E)/sigma; at alpha = min(E)/sigma > 0 it needs A < b0^min(E).

Nothing here proves anything. The checks test hypotheses on a finite window,
classify parameter regimes, and trace the decisive quantity
p_{m,j}^(alpha/k_j) k_j^(-1/sigma) along extreme index chains.
All comparisons happen in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

LOG_TOL = 1e-12
SLOPE_THRESHOLD = -1e-3

NONNEG_STRICT = "nonneg_strict"
BOUNDARY = "boundary"
NEGATIVE = "negative"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LemmaConfig:
    E: frozenset[int]
    A: float = 1.0
    D: float = 0.0
    alpha: float = 0.0
    A0: float = 1.0
    b0: float = 1.0
    D0: float = 0.0
    alpha0: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        E = frozenset(int(j) for j in self.E)
        object.__setattr__(self, "E", E)
        if not E:
            raise ValueError("E must be nonempty")
        if min(E) < 1:
            raise ValueError("E must contain positive integers only")
        if self.A < 1 or self.D < 0:
            raise ValueError("need A >= 1 and D >= 0")
        if self.A0 <= 0 or self.b0 <= 0:
            raise ValueError("need A0 > 0 and b0 > 0")
        if self.D0 < 0 or self.alpha0 < 0:
            raise ValueError("need D0 >= 0 and alpha0 >= 0")
        if self.sigma == 0:
            raise ValueError("sigma must be nonzero")

    @property
    def beta_lower(self) -> int:
        return min(self.E)

    @property
    def beta_upper(self) -> int:
        return max(self.E)

    def to_dict(self) -> dict:
        return dict(E=sorted(self.E), A=self.A, D=self.D, alpha=self.alpha, A0=self.A0,
                    b0=self.b0, D0=self.D0, alpha0=self.alpha0, sigma=self.sigma)

    @classmethod
    def from_dict(cls, d: dict) -> "LemmaConfig":
        keys = ("A", "D", "alpha", "A0", "b0", "D0", "alpha0", "sigma")
        return cls(frozenset(d["E"]), **{k: float(d[k]) for k in keys if k in d})


@dataclass
class HypothesisReport:
    hypothesis: str
    degrees: list[int]
    passed: list[bool]
    tightest_A: float | None = None

    @property
    def all_passed(self) -> bool:
        return all(self.passed)

    @property
    def failures(self) -> list[int]:
        return [m for m, ok in zip(self.degrees, self.passed) if not ok]


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def _leq(log_lhs: float, log_rhs: float) -> bool:
    if log_lhs == -math.inf:
        return True
    if log_rhs == math.inf:
        return True
    if log_rhs == -math.inf:
        return False
    return log_lhs <= log_rhs + LOG_TOL * max(1.0, abs(log_rhs))


def _log_power(base: float, exponent: float) -> float:
    """log(base^exponent) with 0^0 = 1."""
    if base > 0:
        return exponent * math.log(base)
    if exponent == 0:
        return 0.0
    return -math.inf if exponent > 0 else math.inf


def check_hypothesis_i(a, cfg: LemmaConfig, m_max: int) -> HypothesisReport:
    """Test a_m <= A (m+D)^alpha max_{j in E} a_{m+j} for m = 0..m_max.

    ``tightest_A`` is the smallest constant that would make every tested m pass.
    """
    a = [float(x) for x in a]
    if any(x < 0 for x in a):
        raise ValueError("sequence entries must be nonnegative")
    if len(a) < m_max + cfg.beta_upper + 1:
        raise ValueError(f"need at least {m_max + cfg.beta_upper + 1} entries")
    passed, worst = [], -math.inf
    for m in range(m_max + 1):
        log_lhs = _log(a[m])
        log_tail = _log(max(a[m + j] for j in cfg.E))
        log_factor = _log_power(m + cfg.D, cfg.alpha) + log_tail
        passed.append(_leq(log_lhs, math.log(cfg.A) + log_factor))
        if log_lhs > -math.inf:
            worst = max(worst, log_lhs - log_factor if log_factor > -math.inf else math.inf)
    tightest = 0.0 if worst == -math.inf else math.exp(worst) if worst < 700 else math.inf
    return HypothesisReport("i", list(range(m_max + 1)), passed, tightest)


def check_hypothesis_ii(a, cfg: LemmaConfig, m_max: int) -> HypothesisReport:
    """Test a_m <= A0 (m+D0)^alpha0 b0^(-m) m^(-m/sigma) for m = 1..m_max."""
    a = [float(x) for x in a]
    if any(x < 0 for x in a):
        raise ValueError("sequence entries must be nonnegative")
    if len(a) < m_max + 1:
        raise ValueError(f"need at least {m_max + 1} entries")
    passed = []
    for m in range(1, m_max + 1):
        log_rhs = (math.log(cfg.A0) + cfg.alpha0 * math.log(m + cfg.D0)
                   - m * math.log(cfg.b0) - (m / cfg.sigma) * math.log(m))
        passed.append(_leq(_log(a[m]), log_rhs))
    return HypothesisReport("ii", list(range(1, m_max + 1)), passed)


@dataclass(frozen=True)
class RegimeVerdict:
    regime: str
    conclusion_applies: bool
    reason: str


def classify_regime(cfg: LemmaConfig) -> RegimeVerdict:
    alpha, sigma = cfg.alpha, cfg.sigma
    lo, hi = cfg.beta_lower, cfg.beta_upper
    if alpha >= 0 and alpha < lo / sigma:
        return RegimeVerdict(NONNEG_STRICT, True, f"0 <= alpha={alpha} < min(E)/sigma={lo / sigma}")
    if alpha > 0 and math.isclose(alpha, lo / sigma, rel_tol=LOG_TOL, abs_tol=LOG_TOL):
        if cfg.A < cfg.b0 ** lo:
            return RegimeVerdict(BOUNDARY, True, f"alpha = min(E)/sigma and A={cfg.A} < b0^min(E)={cfg.b0 ** lo}")
        return RegimeVerdict(INCONCLUSIVE, False, f"alpha = min(E)/sigma but A={cfg.A} >= b0^min(E)={cfg.b0 ** lo}")
    if alpha < 0 and alpha < hi / sigma:
        return RegimeVerdict(NEGATIVE, True, f"alpha={alpha} < 0 and alpha < max(E)/sigma={hi / sigma}")
    if alpha >= 0 and sigma < 0:
        return RegimeVerdict(INCONCLUSIVE, False, "alpha >= 0 with sigma < 0: no branch of the lemma covers this")
    return RegimeVerdict(INCONCLUSIVE, False, f"alpha={alpha} outside every admissible range")


@dataclass
class ProbeTrace:
    regime: str
    m: int
    chains: dict[int, list[float]] = field(repr=False)
    slopes: dict[int, float] = field(default_factory=dict)
    tail_max: dict[int, float] = field(default_factory=dict)

    @property
    def tends_to_zero(self) -> bool:
        """Every chain's log trace decreases on the tail (slope below the threshold)."""
        return all(s < SLOPE_THRESHOLD for s in self.slopes.values())

    @property
    def below_one(self) -> bool:
        """Every chain's log trace stays negative on the tail (boundary-regime criterion)."""
        return all(t < 0 for t in self.tail_max.values())

    @property
    def supports_conclusion(self) -> bool:
        return self.below_one if self.regime == BOUNDARY else self.tends_to_zero


def limit_probe(cfg: LemmaConfig, m: int = 1, j_max: int = 200) -> ProbeTrace:
    """Trace log(p_{m,j}^(alpha/k_j) k_j^(-1/sigma)) for j = 1..j_max.

    p_{m,j} = prod_{s<j} (m + D + l_1 + ... + l_s), k_j = m + l_1 + ... + l_j,
    evaluated on the two extreme chains where every l_i equals min(E) or max(E).
    The slope is the least-squares slope of the log values against log k_j
    over the last half of the trace.

    In the boundary regime the quantity tends to a positive constant rather
    than 0, so the trace there includes the remaining j-dependent factor
    A^(j/k_j) / b0 and the criterion is that it stays below 1.
    """
    verdict = classify_regime(cfg)
    if not verdict.conclusion_applies:
        raise ValueError(f"lemma does not apply: {verdict.reason}")
    if m < 1:
        raise ValueError("m must be at least 1")
    if j_max < 4:
        raise ValueError("j_max must be at least 4")
    boundary = verdict.regime == BOUNDARY
    chains, slopes, tails = {}, {}, {}
    for step in sorted({cfg.beta_lower, cfg.beta_upper}):
        log_p = 0.0
        logs, log_k = [], []
        for j in range(1, j_max + 1):
            log_p += math.log(m + cfg.D + (j - 1) * step)
            k_j = m + j * step
            v = cfg.alpha / k_j * log_p - math.log(k_j) / cfg.sigma
            if boundary:
                v += j / k_j * math.log(cfg.A) - math.log(cfg.b0)
            logs.append(v)
            log_k.append(math.log(k_j))
        half = j_max // 2
        x, y = np.array(log_k[half:]), np.array(logs[half:])
        slope = float(np.polyfit(x, y, 1)[0])
        chains[step], slopes[step], tails[step] = logs, slope, float(y.max())
    return ProbeTrace(verdict.regime, m, chains, slopes, tails)


@dataclass(frozen=True)
class ConsistencyVerdict:
    status: str  # "not_applicable" | "consistent" | "alert"
    reason: str
    positive_indices: tuple[int, ...] = ()


def conclusion_consistency(a, cfg: LemmaConfig, m_max: int) -> ConsistencyVerdict:
    """Flag positive entries of a sequence that passes both hypotheses on [0, m_max].

    An alert means the finite data look like a counterexample; since the
    hypotheses were only checked on a window it is not a disproof.
    """
    verdict = classify_regime(cfg)
    if not verdict.conclusion_applies:
        return ConsistencyVerdict("not_applicable", verdict.reason)
    h1 = check_hypothesis_i(a, cfg, m_max)
    if not h1.all_passed:
        return ConsistencyVerdict("not_applicable", f"hypothesis (i) fails at m={h1.failures[0]}")
    h2 = check_hypothesis_ii(a, cfg, m_max)
    if not h2.all_passed:
        return ConsistencyVerdict("not_applicable", f"hypothesis (ii) fails at m={h2.failures[0]}")
    positive = tuple(m for m in range(m_max + 1) if float(a[m]) > 0)
    if positive:
        return ConsistencyVerdict("alert", "positive entries despite both hypotheses holding", positive)
    return ConsistencyVerdict("consistent", "sequence vanishes on the window")


def uniqueness_config(E, beta2: int, tau: float, A: float, d: int, rho_plus_eps: float,
                      C_d: float = 1.0) -> LemmaConfig:
    """Lemma constants as assembled in the uniqueness argument for a_m = ||phi_m||_a.

    alpha = (beta2 - tau)/2, D = 1, and (ii) from the slice-norm bound of an
    entire function of order < rho + eps:
    A0 = 2 sqrt(pi) C_d, D0 = d - 1, alpha0 = d/2, b0 = e^(1/2),
    1/sigma = 1/(rho+eps) - 1/2.
    """
    inv_sigma = 1.0 / rho_plus_eps - 0.5
    if inv_sigma == 0:
        raise ValueError("rho + eps = 2 gives no finite sigma")
    return LemmaConfig(frozenset(E), A=max(1.0, A), D=1.0, alpha=(beta2 - tau) / 2,
                       A0=2 * math.sqrt(math.pi) * C_d, b0=math.exp(0.5), D0=d - 1.0,
                       alpha0=d / 2, sigma=1.0 / inv_sigma)
