"""Empirically pin the sign/scale constants tying omega and varpi to H.

Evaluates the exterior-derivative identities
    d omega = (pullback of H to a conjugacy class)  and
    p1*H - p2*H = d varpi  (biconjugacy class in SU(2) x SU(2))
at random points and frames, and solves for the constants that make the
residuals vanish.  The fitted values are hardcoded in lienum/classes.py;
run this script to re-derive them.
"""

import random

import numpy as np

from gerbecalc.lienum import classes as cl
from gerbecalc.lienum.classes import BiconjugacyChart, ConjugacyChart, varpi
from gerbecalc.lienum.core import random_group
from gerbecalc.lienum.forms import calibrate_H, eval_H, fd_exterior_derivative


def fit_omega_sign(seed=0, samples=5):
    rng = random.Random(seed)
    nprng = np.random.default_rng(seed)
    kappa = calibrate_H()
    h0 = cl.exp_alcove([0.31, 0.05, -0.36])  # regular SU(3) class point
    chart = ConjugacyChart(h0)
    ratios = []
    for _ in range(samples):
        p = 0.2 * nprng.standard_normal(8)
        ws = [nprng.standard_normal(8) for _ in range(3)]
        lhs = fd_exterior_derivative(chart.omega_sampler(kappa), p, ws)
        rhs = chart.h_sampler(kappa)(p, *ws)
        ratios.append(rhs / lhs if abs(lhs) > 1e-12 else float("nan"))
    return ratios


def fit_varpi_cross(seed=1, samples=5, level=1):
    nprng = np.random.default_rng(seed)
    kappa = calibrate_H()
    h1 = cl.exp_alcove([0.23, -0.23])
    h2 = cl.exp_alcove([0.11, -0.11]) @ random_group(2, random.Random(5), 0.4)
    chart = BiconjugacyChart(h1, h2)
    fits = []
    for _ in range(samples):
        p = 0.2 * nprng.standard_normal(chart.dim)
        ws = [nprng.standard_normal(chart.dim) for _ in range(3)]

        def h_diff(q, w1, w2, w3):
            g1, g2 = chart.point(q)
            t1 = [chart.tangent(q, w)[0] for w in (w1, w2, w3)]
            t2 = [chart.tangent(q, w)[1] for w in (w1, w2, w3)]
            return eval_H(g1, *t1, kappa=kappa) - eval_H(g2, *t2, kappa=kappa)

        def mu_omega(q, w1, w2):
            g1, g2 = chart.point(q)
            m = g1 @ g2.conj().T
            dm = []
            for w in (w1, w2):
                v1, v2 = chart.tangent(q, w)
                dm.append(v1 @ g2.conj().T - m @ v2 @ g2.conj().T)
            return cl._omega_on_tangents(m, dm[0], dm[1], kappa)

        def cross(q, w1, w2):
            g1, g2 = chart.point(q)
            ta, tb = chart.tangent(q, w1), chart.tangent(q, w2)
            th = lambda g, v: cl._project_algebra(np.linalg.solve(g, v))
            from gerbecalc.lienum.core import inner

            return kappa * (
                inner(th(g1, ta[0]), th(g2, tb[1]))
                - inner(th(g1, tb[0]), th(g2, ta[1]))
            )

        target = h_diff(p, *ws)
        d_mu = fd_exterior_derivative(mu_omega, p, ws)
        d_cross = fd_exterior_derivative(cross, p, ws)
        # target = d_mu - c * d_cross  =>  c = (d_mu - target) / d_cross
        fits.append((d_mu - target) / d_cross if abs(d_cross) > 1e-12 else float("nan"))
    return fits


if __name__ == "__main__":
    print("omega sign/scale (d omega vs pulled-back H):")
    for r in fit_omega_sign():
        print(f"  H / d(omega) = {r:+.6f}")
    print("varpi cross-term scale (units of kappa):")
    for c in fit_varpi_cross():
        print(f"  c = {c:+.6f}")
