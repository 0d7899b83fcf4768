"""Reference optimizers for comparison runs: SGD (constant or 1/sqrt(t)
stepsize), SGD with heavy-ball momentum, bias-corrected Adam, and the
accumulated-norm scalar-stepsize method (AdaGrad-Norm).

All baselines expose the same ``step(g) -> StepRecord`` interface as the
adaptive optimizer. Record fields that have no meaning for a given method
are set to 1; the AdaGrad-Norm ``rho``/``gamma`` columns carry its effective
stepsize factor 1/sqrt(b0^2 + sum ||g_i||^2), which with b0=1 coincides with
the corrected statistic at tau=0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError, GradientError
from .records import StepRecord


class BaselineKind(str, Enum):
    SGD = "sgd"
    SGD_MOMENTUM = "sgd-momentum"
    ADAM = "adam"
    ADAGRAD_NORM = "adagrad-norm"


@dataclass(frozen=True)
class BaselineConfig:
    kind: BaselineKind = BaselineKind.SGD
    lr: float = 0.1
    momentum: float = 0.9
    beta1: float = 0.9
    beta2: float = 0.999
    eps_adam: float = 1e-8
    b0: float = 1.0
    schedule: str = "const"  # "const" or "inv_sqrt"; SGD kinds only

    def __post_init__(self):
        if not isinstance(self.kind, BaselineKind):
            object.__setattr__(self, "kind", BaselineKind(self.kind))
        if not (math.isfinite(self.lr) and self.lr > 0):
            raise ConfigError(f"lr must be positive, got {self.lr}")
        for name in ("momentum", "beta1", "beta2", "eps_adam"):
            val = getattr(self, name)
            if not (0.0 < val < 1.0):
                raise ConfigError(f"{name} must lie in (0, 1), got {val}")
        if not (math.isfinite(self.b0) and self.b0 > 0):
            raise ConfigError(f"b0 must be positive, got {self.b0}")
        if self.schedule not in ("const", "inv_sqrt"):
            raise ConfigError(f"unknown schedule {self.schedule!r}")


class Baseline:
    """Sequential state machine mirroring the adaptive optimizer's interface."""

    def __init__(self, config: BaselineConfig, x1):
        if not isinstance(config, BaselineConfig):
            raise ConfigError("config must be a BaselineConfig instance")
        x = np.array(x1, dtype=np.float64)
        if x.ndim != 1 or x.size < 1:
            raise ConfigError("initial point must be a 1-D vector of length >= 1")
        if not np.isfinite(x).all():
            raise ConfigError("initial point must be finite")
        self.config = config
        self.x = x
        self.t = 0
        self.g_hat = 0.0
        self.g_sq_sum = 0.0
        self.m = np.zeros_like(x)
        self.v = np.zeros_like(x)

    def _schedule_factor(self, t: int) -> float:
        if self.config.schedule == "inv_sqrt":
            return 1.0 / math.sqrt(t)
        return 1.0

    def step(self, g) -> StepRecord:
        g = np.asarray(g, dtype=np.float64)
        if g.shape != self.x.shape:
            raise GradientError(
                f"gradient shape {g.shape} does not match parameters {self.x.shape}"
            )
        if not np.isfinite(g).all():
            raise GradientError("gradient contains non-finite entries")
        cfg = self.config
        self.t += 1
        t = self.t
        gn = math.sqrt(float(g @ g))
        if gn > self.g_hat:
            self.g_hat = gn
        rho = alpha_t = beta_t = gamma = 1.0
        v_norm = 0.0
        m_norm = gn

        if cfg.kind is BaselineKind.SGD:
            gamma = self._schedule_factor(t)
            self.x -= cfg.lr * gamma * g
        elif cfg.kind is BaselineKind.SGD_MOMENTUM:
            self.m = cfg.momentum * self.m + g
            m_norm = float(np.linalg.norm(self.m))
            gamma = self._schedule_factor(t)
            self.x -= cfg.lr * gamma * self.m
        elif cfg.kind is BaselineKind.ADAM:
            self.m = cfg.beta1 * self.m + (1.0 - cfg.beta1) * g
            self.v = cfg.beta2 * self.v + (1.0 - cfg.beta2) * g * g
            m_hat = self.m / (1.0 - cfg.beta1**t)
            v_hat = self.v / (1.0 - cfg.beta2**t)
            self.x -= cfg.lr * m_hat / (np.sqrt(v_hat) + cfg.eps_adam)
            alpha_t = 1.0 - cfg.beta1
            beta_t = 1.0 - cfg.beta2
            m_norm = float(np.linalg.norm(self.m))
            v_norm = float(np.linalg.norm(self.v))
        else:  # ADAGRAD_NORM
            self.g_sq_sum += gn * gn
            rho = 1.0 / math.sqrt(cfg.b0**2 + self.g_sq_sum)
            gamma = rho
            self.x -= cfg.lr * rho * g

        return StepRecord(
            t=t,
            g_norm=gn,
            rho=rho,
            alpha_t=alpha_t,
            beta_t=beta_t,
            gamma=gamma,
            m_norm=m_norm,
            v_norm=v_norm,
            g_hat=self.g_hat,
        )
