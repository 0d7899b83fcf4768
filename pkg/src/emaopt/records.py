"""Per-iteration telemetry: step records, trajectories, and their CSV form.

The trajectory CSV column order is a stability contract:
t, f, true_grad_norm, g_norm, rho, alpha_t, beta_t, gamma, m_norm, v_norm, g_hat.
Floats are printed with ``repr`` (shortest round-trip), so parsing a printed
value recovers the double exactly. Missing optional metrics are empty cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

CSV_COLUMNS = (
    "t",
    "f",
    "true_grad_norm",
    "g_norm",
    "rho",
    "alpha_t",
    "beta_t",
    "gamma",
    "m_norm",
    "v_norm",
    "g_hat",
)


@dataclass(slots=True)
class StepRecord:
    """Telemetry for one optimizer iteration (1-based index ``t``)."""

    t: int
    g_norm: float
    rho: float
    alpha_t: float
    beta_t: float
    gamma: float
    m_norm: float
    v_norm: float
    g_hat: float
    f_value: float | None = None
    true_grad_norm: float | None = None


@dataclass
class Trajectory:
    """Column-oriented view of a run, consumed by checkers and the harness.

    ``tau`` and ``variant`` describe the optimizer that produced the run;
    baselines carry ``tau=0.0`` and ``variant=None``. Optional metrics are
    NaN where absent.
    """

    t: np.ndarray
    g_norm: np.ndarray
    rho: np.ndarray
    alpha_t: np.ndarray
    beta_t: np.ndarray
    gamma: np.ndarray
    m_norm: np.ndarray
    v_norm: np.ndarray
    g_hat: np.ndarray
    f: np.ndarray
    true_grad_norm: np.ndarray
    tau: float | None = None
    variant: str | None = None

    def __len__(self) -> int:
        return len(self.t)

    @classmethod
    def from_records(
        cls,
        records: Sequence[StepRecord],
        tau: float | None = None,
        variant: str | None = None,
    ) -> "Trajectory":
        n = len(records)
        t = np.empty(n, dtype=np.int64)
        cols = [np.empty(n) for _ in range(10)]
        g_norm, rho, alpha_t, beta_t, gamma, m_norm, v_norm, g_hat, f, tgn = cols
        for i, r in enumerate(records):
            t[i] = r.t
            g_norm[i] = r.g_norm
            rho[i] = r.rho
            alpha_t[i] = r.alpha_t
            beta_t[i] = r.beta_t
            gamma[i] = r.gamma
            m_norm[i] = r.m_norm
            v_norm[i] = r.v_norm
            g_hat[i] = r.g_hat
            f[i] = math.nan if r.f_value is None else r.f_value
            tgn[i] = math.nan if r.true_grad_norm is None else r.true_grad_norm
        return cls(t, g_norm, rho, alpha_t, beta_t, gamma, m_norm,
                   v_norm, g_hat, f, tgn, tau=tau, variant=variant)

    def thinned(self, every: int) -> "Trajectory":
        """Keep every ``every``-th record plus the final one (for CSV output)."""
        if every <= 1 or len(self) == 0:
            return self
        idx = np.arange(0, len(self), every)
        if idx[-1] != len(self) - 1:
            idx = np.append(idx, len(self) - 1)
        return Trajectory(
            self.t[idx], self.g_norm[idx], self.rho[idx], self.alpha_t[idx],
            self.beta_t[idx], self.gamma[idx], self.m_norm[idx], self.v_norm[idx],
            self.g_hat[idx], self.f[idx], self.true_grad_norm[idx],
            tau=self.tau, variant=self.variant,
        )


def format_float(x: float) -> str:
    """Shortest decimal string that parses back to exactly ``x``."""
    if math.isnan(x):
        return ""
    return repr(float(x))


def trajectory_to_csv(traj: Trajectory) -> str:
    lines = [",".join(CSV_COLUMNS)]
    cols = (traj.f, traj.true_grad_norm, traj.g_norm, traj.rho, traj.alpha_t,
            traj.beta_t, traj.gamma, traj.m_norm, traj.v_norm, traj.g_hat)
    for i in range(len(traj)):
        fields = [str(int(traj.t[i]))]
        fields.extend(format_float(float(c[i])) for c in cols)
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def write_trajectory_csv(traj: Trajectory, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(trajectory_to_csv(traj))


def read_trajectory_csv(path) -> Trajectory:
    with open(path) as fh:
        header = fh.readline().strip()
        if header != ",".join(CSV_COLUMNS):
            raise ValueError(f"unexpected CSV header in {path}")
        rows = [line.rstrip("\n").split(",") for line in fh if line.strip()]

    def col(j: int) -> np.ndarray:
        return np.array([math.nan if r[j] == "" else float(r[j]) for r in rows])

    t = np.array([int(r[0]) for r in rows], dtype=np.int64)
    f, tgn = col(1), col(2)
    g_norm, rho, alpha_t, beta_t = col(3), col(4), col(5), col(6)
    gamma, m_norm, v_norm, g_hat = col(7), col(8), col(9), col(10)
    return Trajectory(t, g_norm, rho, alpha_t, beta_t, gamma, m_norm,
                      v_norm, g_hat, f, tgn)
