"""Naive reference implementations used as test oracles.

Deliberately slow and independent of the package's incremental code paths:
every cumulative quantity is recomputed from stored per-step history with
plain numpy reductions.
"""

import math

import numpy as np


def naive_run(x1, hyper, gradients):
    """Replay a run, recomputing every sum/max from full history each step.

    Returns a dict with the final state plus per-step lists of the derived
    quantities (rho, alpha_t, beta_t, gamma).
    """
    x = np.array(x1, dtype=float)
    m = np.zeros_like(x)
    v = np.zeros_like(x)
    g_norms2 = []
    energy_terms = []
    rho_l, alpha_l, beta_l, gamma_l = [], [], [], []
    variant = hyper.variant.value
    for t, g in enumerate(gradients, start=1):
        g = np.asarray(g, dtype=float)
        g_norms2.append(float(np.dot(g, g)))
        G = float(np.sum(np.asarray(g_norms2)))
        g_hat = math.sqrt(float(np.max(np.asarray(g_norms2))))
        rho = math.sqrt((1.0 + (hyper.tau / t) * G) / (1.0 + G))
        if variant == "M":
            a_t, b_t = rho, hyper.beta
        else:
            a_t = hyper.alpha
            b_t = rho / (1.0 + hyper.mu * g_hat**2)
        m = (1.0 - a_t) * m + a_t * g
        v = (1.0 - b_t) * v + b_t * g * g
        mn2 = float(np.dot(m, m))
        energy_terms.append(mn2 / a_t if variant == "M" else mn2)
        energy = float(np.sum(np.asarray(energy_terms)))
        if variant == "M":
            gamma = min(a_t / (1.0 + hyper.mu * g_hat**2), (1.0 + energy) ** -0.5)
        else:
            gamma = (1.0 / (1.0 + hyper.mu * g_hat**2)) * (1.0 + energy) ** -0.5
        x = x - hyper.theta * gamma * m / (hyper.eps + np.sqrt(v))
        rho_l.append(rho)
        alpha_l.append(a_t)
        beta_l.append(b_t)
        gamma_l.append(gamma)
    return {
        "x": x,
        "m": m,
        "v": v,
        "g_sq_sum": float(np.sum(np.asarray(g_norms2))),
        "g_hat": math.sqrt(float(np.max(np.asarray(g_norms2)))) if g_norms2 else 0.0,
        "energy": float(np.sum(np.asarray(energy_terms))),
        "rho": rho_l,
        "alpha_t": alpha_l,
        "beta_t": beta_l,
        "gamma": gamma_l,
    }


def random_gradients(rng, length, dim, lo=1e-3, hi=1e2):
    """Gradient vectors with per-step norms log-uniform in [lo, hi]."""
    dirs = rng.standard_normal((length, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    norms = np.exp(rng.uniform(math.log(lo), math.log(hi), size=length))
    return dirs * norms[:, None]
