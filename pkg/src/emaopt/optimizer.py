"""Closed-loop EMA optimizer with a corrected accumulated-norm statistic.

One step consumes exactly one stochastic gradient and runs, in order:
statistics update -> EMA weight selection -> moment updates -> stepsize ->
parameter update. Two variants share the pipeline and differ in where the
adaptivity sits:

* variant M: adaptive first-moment decay ``alpha_t = rho_t``, fixed ``beta``;
* variant V: fixed ``alpha``, adaptive second-moment decay
  ``beta_t = rho_t / (1 + mu * g_hat^2)``.

The statistic ``rho_t = sqrt((1 + (tau/t) * G_t) / (1 + G_t))`` with
``G_t = sum_{i<=t} ||g_i||^2`` corrects plain accumulated-norm decay
(``tau = 0`` recovers it) by a historical-average numerator, so an isolated
gradient spike cannot permanently suppress later stepsizes. No quantity here
depends on a smoothness constant of the objective.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

import numpy as np

from .errors import ConfigError, DegenerateStepWarning, GradientError
from .records import StepRecord, Trajectory


class Variant(str, Enum):
    """Which EMA coefficient is driven by the trajectory."""

    M = "M"  # adaptive first moment, fixed second-moment decay
    V = "V"  # fixed first moment, adaptive second-moment decay


@dataclass(frozen=True)
class Hyperparameters:
    """Run parameters. Defaults: theta=1, tau=1, eps=1e-5, mu=1e-8.

    ``alpha`` is the fixed first-moment decay used by variant V; ``beta`` is
    the fixed second-moment decay used by variant M. ``beta_sqrt_rho`` is a
    comparison mode for variant V that uses sqrt(rho_t) instead of rho_t in
    the adaptive second-moment decay.
    """

    theta: float = 1.0
    tau: float = 1.0
    eps: float = 1e-5
    mu: float = 1e-8
    alpha: float = 0.9
    beta: float = 0.999
    variant: Variant = Variant.M
    beta_sqrt_rho: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise ConfigError(f"theta must be positive, got {self.theta}")
        if not (0.0 <= self.tau <= 1.0):
            raise ConfigError(f"tau must lie in [0, 1], got {self.tau}")
        if not (0.0 < self.eps < 1.0):
            raise ConfigError(f"eps must lie in (0, 1), got {self.eps}")
        if not (0.0 < self.mu < 1.0):
            raise ConfigError(f"mu must lie in (0, 1), got {self.mu}")
        if not (0.0 < self.alpha < 1.0):
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (0.0 < self.beta < 1.0):
            raise ConfigError(f"beta must lie in (0, 1), got {self.beta}")
        if not isinstance(self.variant, Variant):
            object.__setattr__(self, "variant", Variant(self.variant))


@dataclass
class OptimizerState:
    """Full mutable state of one run.

    ``g_sq_sum`` and the momentum-energy accumulators carry Kahan
    compensation terms so long runs do not drift; ``m_energy_weighted``
    (sum of ||m_j||^2 / alpha_j) is maintained for variant M only,
    ``m_energy`` (sum of ||m_j||^2) for variant V only.
    """

    t: int
    x: np.ndarray
    m: np.ndarray
    v: np.ndarray
    g_sq_sum: float
    g_hat: float
    m_energy_weighted: float
    m_energy: float
    hyper: Hyperparameters
    _gsq_comp: float = field(default=0.0, repr=False)
    _energy_comp: float = field(default=0.0, repr=False)


class AdaptiveEMA:
    """Strictly sequential state machine; one instance owns one parameter vector."""

    def __init__(self, x1, hyper: Hyperparameters | None = None):
        hyper = hyper if hyper is not None else Hyperparameters()
        if not isinstance(hyper, Hyperparameters):
            raise ConfigError("hyper must be a Hyperparameters instance")
        x = np.array(x1, dtype=np.float64)
        if x.ndim != 1 or x.size < 1:
            raise ConfigError("initial point must be a 1-D vector of length >= 1")
        if not np.isfinite(x).all():
            raise ConfigError("initial point must be finite")
        n = x.size
        self.state = OptimizerState(
            t=0,
            x=x,
            m=np.zeros(n),
            v=np.zeros(n),
            g_sq_sum=0.0,
            g_hat=0.0,
            m_energy_weighted=0.0,
            m_energy=0.0,
            hyper=hyper,
        )
        self._last_g_norm = 0.0
        self._last_m_norm = 0.0

    @property
    def hyper(self) -> Hyperparameters:
        return self.state.hyper

    @property
    def x(self) -> np.ndarray:
        return self.state.x

    def _check_gradient(self, g) -> np.ndarray:
        g = np.asarray(g, dtype=np.float64)
        if g.shape != self.state.x.shape:
            raise GradientError(
                f"gradient shape {g.shape} does not match parameters {self.state.x.shape}"
            )
        if not np.isfinite(g).all():
            raise GradientError("gradient contains non-finite entries")
        return g

    def update_statistics(self, g) -> tuple[float, float]:
        """Fold ||g||^2 and ||g|| into the accumulators, then return (rho_t, g_hat_t).

        Advances the iteration counter; the sums defining rho_t run through
        the new index t inclusive.
        """
        g = self._check_gradient(g)
        st = self.state
        gn2 = float(g @ g)
        gn = math.sqrt(gn2)
        # Kahan-compensated accumulation of the squared-norm sum.
        y = gn2 - st._gsq_comp
        s = st.g_sq_sum + y
        st._gsq_comp = (s - st.g_sq_sum) - y
        st.g_sq_sum = s
        if gn > st.g_hat:
            st.g_hat = gn
        st.t += 1
        t = st.t
        G = st.g_sq_sum
        if math.isinf(G):
            # Saturated accumulator: use the G -> inf limit of the ratio.
            rho = math.sqrt(st.hyper.tau / t)
        else:
            rho = math.sqrt((1.0 + (st.hyper.tau / t) * G) / (1.0 + G))
        self._last_g_norm = gn
        return rho, st.g_hat

    def select_ema_weights(self, rho: float, g_hat: float) -> tuple[float, float]:
        """EMA coefficients (alpha_t, beta_t) for the current step, each in (0, 1]."""
        hyper = self.state.hyper
        if hyper.variant is Variant.M:
            return rho, hyper.beta
        num = math.sqrt(rho) if hyper.beta_sqrt_rho else rho
        return hyper.alpha, num / (1.0 + hyper.mu * g_hat * g_hat)

    def update_moments(self, g, alpha_t: float, beta_t: float) -> tuple[np.ndarray, np.ndarray]:
        """Convex-combination updates of m and v; folds ||m_t||^2 into the energy sum."""
        st = self.state
        g = np.asarray(g, dtype=np.float64)
        m, v = st.m, st.v
        m *= 1.0 - alpha_t
        m += alpha_t * g
        v *= 1.0 - beta_t
        v += beta_t * (g * g)
        mn2 = float(m @ m)
        self._last_m_norm = math.sqrt(mn2)
        if st.hyper.variant is Variant.M:
            # alpha_t can reach 0 only through accumulator saturation; the
            # weighted energy then saturates too and gamma degenerates to 0.
            term = mn2 / alpha_t if alpha_t > 0.0 else math.inf
        else:
            term = mn2
        y = term - st._energy_comp
        if st.hyper.variant is Variant.M:
            s = st.m_energy_weighted + y
            st._energy_comp = (s - st.m_energy_weighted) - y
            st.m_energy_weighted = s
        else:
            s = st.m_energy + y
            st._energy_comp = (s - st.m_energy) - y
            st.m_energy = s
        return m, v

    def compute_stepsize(self, alpha_t: float) -> float:
        """Closed-loop stepsize gamma_t in (0, 1], non-increasing within a run."""
        st = self.state
        mu = st.hyper.mu
        # mu * g_hat * g_hat saturates to +inf instead of overflowing mid-product.
        denom = 1.0 + mu * st.g_hat * st.g_hat
        if st.hyper.variant is Variant.M:
            energy_term = (1.0 + st.m_energy_weighted) ** -0.5
            if math.isinf(denom):
                gamma = energy_term
            else:
                gamma = min(alpha_t / denom, energy_term)
        else:
            gamma = (1.0 / denom) * (1.0 + st.m_energy) ** -0.5
        if gamma <= 0.0:
            warnings.warn(
                "stepsize underflowed to zero; parameters are frozen",
                DegenerateStepWarning,
                stacklevel=2,
            )
        return gamma

    def apply_update(self, gamma: float) -> np.ndarray:
        """x <- x - theta * gamma * m / (eps + sqrt(v)), elementwise division."""
        st = self.state
        st.x -= st.hyper.theta * gamma * (st.m / (st.hyper.eps + np.sqrt(st.v)))
        return st.x

    def step(self, g) -> StepRecord:
        """Run one full iteration on gradient ``g``; state is untouched on error."""
        rho, g_hat = self.update_statistics(g)  # validates g before any mutation
        alpha_t, beta_t = self.select_ema_weights(rho, g_hat)
        _, v = self.update_moments(g, alpha_t, beta_t)
        gamma = self.compute_stepsize(alpha_t)
        self.apply_update(gamma)
        return StepRecord(
            t=self.state.t,
            g_norm=self._last_g_norm,
            rho=rho,
            alpha_t=alpha_t,
            beta_t=beta_t,
            gamma=gamma,
            m_norm=self._last_m_norm,
            v_norm=math.sqrt(float(v @ v)),
            g_hat=g_hat,
        )


def run_stream(opt, gradients: Iterable[np.ndarray]) -> Trajectory:
    """Drive any step-interface optimizer over explicit gradient vectors."""
    records = [opt.step(g) for g in gradients]
    hyper = getattr(opt, "hyper", None)
    if isinstance(hyper, Hyperparameters):
        return Trajectory.from_records(records, tau=hyper.tau, variant=hyper.variant.value)
    return Trajectory.from_records(records, tau=0.0, variant=None)
