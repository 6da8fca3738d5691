"""
The identity suite behind ``kirchlab verify``.

Each check reduces a sampled identity to one number and compares it with a
fixed bound.  Most checks are residuals (``value <= tol``); the negative
controls for the octonions are lower bounds (``value >= tol``) because a
vanishing value there would mean the measurement is broken.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import algebra
from .acs import (AcsField, AlgebraAcs, calabi_defect, chart_matrix, contract_j,
                  chart_tensor_to_ambient, nijenhuis_chart, nijenhuis_fd, octonionic_acs,
                  quaternionic_acs, rotated_octonionic_acs, sample_chart_points, tau_chart)
from .errors import UsageError
from .geometry import DEFAULT_H, EPS_POLE, Chart, decompose, pole, sample_sphere, sample_tangent
from .hspace import HMultiplication, associativity_defect, moufang_defect, multiply_h
from .kirchhoff import extended_matrices, frame_field, kirchhoff_frame, sigma_tilde_matrices
from .parallelism import (classical_bracket_closed_form, classical_frame, constancy_scan,
                          frame_brackets, structure_functions_fd)

MODELS = ("octonion", "quaternion", "rotated")


def make_acs(model: str, seed: int = 42) -> AcsField:
    if model == "octonion":
        return octonionic_acs()
    if model == "quaternion":
        return quaternionic_acs()
    if model == "rotated":
        return rotated_octonionic_acs(seed)
    raise UsageError(f"unknown model {model!r}; choose from {MODELS}")


@dataclass
class Check:
    name: str
    anchor: str
    value: float
    tolerance: float
    bound: str = "upper"

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        return self.value <= self.tolerance if self.bound == "upper" else self.value >= self.tolerance


@dataclass
class VerificationSummary:
    model: str
    samples: int
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, *args, **kw):
        self.checks.append(Check(*args, **kw))

    def table(self) -> str:
        rows = [f"{'identity':<28} {'anchor':<28} {'value':>11} {'bound':>13}  result"]
        for c in self.checks:
            op = "<=" if c.bound == "upper" else ">="
            rows.append(f"{c.name:<28} {c.anchor:<28} {c.value:>11.3e} {op} {c.tolerance:<10.1e}  "
                        f"{'PASS' if c.passed else 'FAIL'}")
        return "\n".join(rows)

    def to_dict(self) -> dict:
        return {"model": self.model, "samples": self.samples, "seed": self.seed, "passed": self.passed,
                "checks": [dict(asdict(c), passed=c.passed) for c in self.checks]}


def _imag_assoc(a, b, c):
    return algebra.imag_part(algebra.associator(*(algebra.from_imag(v) for v in (a, b, c))))


def _exact_nijenhuis(J: AcsField, a, b, c):
    """``2[a, b, c]`` transported by the rotation for a rotated algebra J."""
    if isinstance(J, AlgebraAcs):
        return 2 * _imag_assoc(a, b, c)
    g = J.g
    return 2 * g @ _imag_assoc(g.T @ a, g.T @ b, g.T @ c)


def run_suite(model: str, samples: int = 200, seed: int = 42, h: float = DEFAULT_H,
              eps_pole: float = EPS_POLE, sections=None, tolerances=None) -> VerificationSummary:
    """Run the checks of ``sections`` (default: all) for one model.

    ``tolerances`` maps check names to replacement bounds; names that do not
    occur in the run are rejected.
    """
    if samples < 1:
        raise UsageError("samples must be positive")
    J = make_acs(model, seed)
    rng = np.random.default_rng(seed)
    out = VerificationSummary(model, samples, seed)
    for name in sections or SECTIONS:
        SECTIONS[name](out, J, model, rng, samples, seed, h, eps_pole)
    tolerances = dict(tolerances or {})
    unknown = set(tolerances) - {c.name for c in out.checks}
    if unknown:
        raise UsageError(f"no such check for model {model!r}: {', '.join(sorted(unknown))}")
    for c in out.checks:
        c.tolerance = float(tolerances.get(c.name, c.tolerance))
    return out


def acs_checks(out, J, model, rng, samples, seed, h, eps_pole):
    m = J.ambient_dim
    res = J.check(samples, seed)
    out.add("acs-square", "J^2 = -Id", res["square"], 1e-10)
    out.add("acs-tangency", "J maps T_y to T_y", res["tangency"], 1e-10)
    if J.hermitian:
        out.add("acs-hermitian", "<Jb,Jc> = <b,c>", res["orthogonality"], 1e-10)

    # Nijenhuis tensor from differentials against the associator
    worst_n = worst_eq = 0.0
    for a in sample_sphere(rng, samples, m):
        b, c = sample_tangent(rng, a), sample_tangent(rng, a)
        N = nijenhuis_fd(J, a, b, c, h)
        worst_n = max(worst_n, float(np.linalg.norm(N)))
        worst_eq = max(worst_eq, float(np.linalg.norm(N - _exact_nijenhuis(J, a, b, c))))
    out.add("nijenhuis-associator", "N_a(b,c) = 2[a,b,c]", worst_eq, 1e-5)
    if model == "quaternion":
        out.add("nijenhuis-zero", "N = 0 (integrable)", worst_n, 1e-5)

    # chart tensors
    chart = Chart(np.eye(m)[-1])
    worst_tau_jn = worst_tau = worst_chart = worst_cal = 0.0
    for u in sample_chart_points(rng, samples, J.n):
        N = nijenhuis_chart(J, chart, u, h)
        T = tau_chart(J, chart, u, h)
        worst_tau_jn = max(worst_tau_jn, float(np.abs(T + contract_j(chart_matrix(J, chart, u), N)).max()))
        worst_tau = max(worst_tau, float(np.abs(T).max()))
        x = chart.inverse(u)
        b, c = sample_tangent(rng, x), sample_tangent(rng, x)
        worst_chart = max(worst_chart, float(np.linalg.norm(
            chart_tensor_to_ambient(chart, u, N, b, c) - nijenhuis_fd(J, x, b, c, h))))
        worst_cal = max(worst_cal, float(np.abs(calabi_defect(J, lambda v: v[0], chart, u, h)).max()))
    out.add("tau-equals-minus-JN", "tau = -J.N", worst_tau_jn, 1e-4)
    out.add("nijenhuis-chart-vs-fd", "chart N = ambient N", worst_chart, 1e-4)
    if model == "quaternion":
        out.add("tau-zero", "tau = 0 (integrable)", worst_tau, 1e-5)
        out.add("calabi-zero", "(dJdJ - JdJd)f = 0", worst_cal, 1e-4)
    else:
        out.add("calabi-nonzero", "(dJdJ - JdJd)f != 0", worst_cal, 1e-2, "lower")


def kirchhoff_checks(out, J, model, rng, samples, seed, h, eps_pole):
    m = J.ambient_dim
    dim = m + 1
    xs = sample_sphere(rng, samples, dim)
    S = sigma_tilde_matrices(J, xs)
    e = pole(dim)
    out.add("sigma-e-equals-x", "sigma~_x(e) = x", float(np.abs(S @ e - xs).max()), 1e-12)
    if J.hermitian:
        amb = rng.standard_normal((samples, dim))
        Sa = sigma_tilde_matrices(J, amb)
        gram = Sa @ np.swapaxes(Sa, 1, 2) - np.einsum("s,ij->sij", np.sum(amb ** 2, axis=1), np.eye(dim))
        out.add("sigma-orthogonal", "sigma~ sigma~^T = |x|^2 Id", float(np.abs(gram).max()), 1e-10)
    alpha, beta, y = decompose(xs)
    inv = alpha[:, None, None] * np.eye(dim) - beta[:, None, None] * extended_matrices(J, y)
    out.add("sigma-inverse", "alpha Id - beta J~_y", float(np.abs(inv @ S - np.eye(dim)).max()), 1e-10)
    worst_ff = max(float(np.abs(frame_field(J, i, x) - S[s, :, i]).max())
                   for s, x in enumerate(xs) for i in range(1, m + 1))
    out.add("frame-closed-form", "X_i explicit = sigma_x(e_i)", worst_ff, 1e-12)
    out.add("frame-tangent", "<X_i(x), x> = 0",
            float(np.abs(np.einsum("si,sij->sj", xs, S[:, :, 1:])).max()), 1e-12)
    if isinstance(J, AlgebraAcs):
        out.add("sigma-equals-Rx", "sigma~_x = R_x",
                float(np.abs(S - algebra.right_matrix(xs)).max()), 1e-12)


def hspace_checks(out, J, model, rng, samples, seed, h, eps_pole):
    dim = J.ambient_dim + 1
    e = pole(dim)
    mhat = HMultiplication(J, normalize=False)
    mult = HMultiplication(J, normalize=True)
    ys = sample_sphere(rng, samples, dim)
    ident = max(float(np.abs(multiply_h(mult, np.broadcast_to(e, ys.shape), ys) - ys).max()),
                float(np.abs(multiply_h(mult, ys, np.broadcast_to(e, ys.shape)) - ys).max()))
    out.add("hspace-identity", "m(e,y) = y = m(y,e)", ident, 1e-12)
    if J.hermitian:
        a_, b_ = rng.standard_normal((2, samples, dim))
        normres = np.abs(np.linalg.norm(multiply_h(mhat, a_, b_), axis=1)
                         - np.linalg.norm(a_, axis=1) * np.linalg.norm(b_, axis=1)).max()
        out.add("norm-product", "|m^(x,y)| = |x||y|", float(normres), 1e-10)
    if isinstance(J, AlgebraAcs):
        a_, b_ = rng.standard_normal((2, samples, dim))
        out.add("mhat-reversed-product", "m^(x,y) = y x",
                float(np.abs(multiply_h(mhat, a_, b_) - algebra.multiply(b_, a_)).max()), 1e-12)
    defect_n = 50 * samples
    if model == "quaternion":
        out.add("assoc-defect-zero", "(xy)z = x(yz)", associativity_defect(mhat, defect_n, seed).max, 1e-9)
    else:
        out.add("assoc-defect-large", "(xy)z != x(yz)", associativity_defect(mhat, defect_n, seed).max,
                0.5, "lower")
    out.add("moufang-defect", "(xy)(zx) = (x(yz))x", moufang_defect(mhat, defect_n, seed).max, 1e-9)


def parallelism_checks(out, J, model, rng, samples, seed, h, eps_pole):
    m = J.ambient_dim
    dim = m + 1
    e = pole(dim)
    if isinstance(J, AlgebraAcs):
        cf = classical_frame(J.level)
        worst4 = 0.0
        for x in sample_sphere(rng, samples, dim):
            _, B = frame_brackets(cf, x, h, eps_pole)
            for i in range(1, m + 1):
                for j in range(i + 1, m + 1):
                    worst4 = max(worst4, float(np.abs(B[:, i - 1, j - 1]
                                                      - classical_bracket_closed_form(i, j, x)).max()))
        out.add("classical-brackets", "closed form = FD bracket", worst4, 1e-5)
    if model == "quaternion":
        rep = constancy_scan(kirchhoff_frame(J), samples, seed, h, eps_pole)
        out.add("constancy-kirchhoff-S3", "T constant (Lie group)", rep.max_deviation, 1e-4)
        return
    if model == "octonion":
        rep = constancy_scan(classical_frame(3), samples, seed, h, eps_pole)
        out.add("constancy-classical-S7", "T not constant", rep.max_deviation, 0.1, "lower")
    kf = kirchhoff_frame(J)
    tmin = min(float(np.linalg.norm(structure_functions_fd(kf, x, h, eps_pole).T))
               for x in sample_sphere(rng, samples, dim, avoid=(e, -e), eps=eps_pole))
    out.add("torsion-nonvanishing", "T != 0 everywhere", tmin, 0.5, "lower")


SECTIONS = {"acs": acs_checks, "kirchhoff": kirchhoff_checks, "hspace": hspace_checks,
            "parallelism": parallelism_checks}
