"""Self-verification suite: every identity the toolkit relies on, checked numerically.

Each case returns ``(residual, tolerance)``; it passes when
``residual <= tolerance * tol_factor``.  Cases draw their randomness from
``numpy.random.default_rng([seed, crc32(case_id)])``, so the report is a pure
function of ``(seed, tol_factor, budget)`` and does not depend on the order in
which cases run.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass
from importlib import resources
from typing import Callable

import numpy as np

from . import __version__, conjspace, norms, psumming, states, teleport, tensor
from .linalg import svd

DEFAULT_BUDGET = 150


def _crandn(rng, *shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _unit(rng, n) -> np.ndarray:
    v = _crandn(rng, n)
    return v / np.linalg.norm(v)


def _unitary(rng, n) -> np.ndarray:
    q, r = np.linalg.qr(_crandn(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _random_density(rng, n) -> np.ndarray:
    g = _crandn(rng, n, int(rng.integers(1, n + 1)))
    d = g @ g.conj().T
    return d / np.trace(d).real


@dataclass(frozen=True)
class Case:
    id: str
    run: Callable  # (rng, budget) -> (residual, tolerance)


# -- teleportation ---------------------------------------------------------------


def _teleport_unitarity(rng, budget):
    t = teleport.explicit_teleport_array()
    return float(np.linalg.norm(t.conj().T @ t - np.eye(8))), 1e-14


def _teleport_factorization(rng, budget):
    t = teleport.explicit_teleport_array()
    return float(np.abs(t - teleport.factorized_teleport_array()).max()), 0.0


def _teleport_real_orthogonal(rng, budget):
    t = teleport.explicit_teleport_array()
    return float(max(np.abs(t.imag).max(), np.abs(t.T @ t - np.eye(8)).max())), 1e-15


def _teleport_entries(rng, batch):
    t = teleport.explicit_teleport_array()
    r = 1 / np.sqrt(2)
    return float(max(abs(t[0, 6] - r), abs(t[4, 6] + r))), 0.0


def _random_xis(rng, count=1000):
    return [_unit(rng, 2) for _ in range(count)]


def _teleport_equation(rng, budget):
    return max(teleport.teleportation_equation_residual(xi) for xi in _random_xis(rng)), 1e-12


def _teleport_corrections(rng, budget):
    worst = 0.0
    for xi in _random_xis(rng):
        for out in teleport.teleport(xi):
            worst = max(worst, float(np.linalg.norm(out.corrected - xi)))
    return worst, 1e-10


def _teleport_probabilities(rng, budget):
    worst = 0.0
    for xi in _random_xis(rng, 200):
        probs = [o.probability for o in teleport.teleport(xi)]
        worst = max(worst, max(abs(p - 0.25) for p in probs), abs(sum(probs) - 1))
    return worst, 1e-12


def _teleport_closed_form(rng, budget):
    r = 0.0
    for xi, expected in (([1, 0], [1, 0, 0, 1, 1, 0, 0, 1]), ([0, 1], [0, 1, 1, 0, 0, -1, -1, 0])):
        w = teleport.teleport_state(np.array(xi, dtype=complex))
        r = max(r, float(np.abs(w - np.array(expected) / 2).max()))
    return r, 1e-15


def _gates_unitary(rng, budget):
    worst = 0.0
    for g in teleport.standard_gates().values():
        m = g.matrix
        worst = max(worst, float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]))))
    return worst, 1e-12


# -- norms -----------------------------------------------------------------------


def _rank2_projection(rng, budget):
    p = np.diag([1, 1, 0]).astype(complex)
    return max(abs(norms.nuclear_norm(p) - 2), abs(norms.hs_norm(p) - np.sqrt(2))), 1e-12


def _trace_duality(rng, budget):
    worst = 0.0
    for _ in range(100):
        a = _crandn(rng, int(rng.integers(1, 9)), int(rng.integers(1, 7)))
        value, b = norms.trace_duality_max(a, check_samples=0)
        comp = _crandn(rng, 100, a.shape[1], a.shape[0])
        comp /= np.linalg.norm(comp, axis=(1, 2))[:, None, None]
        beaten = float(np.abs(np.einsum("ij,kji->k", a, comp)).max() - value)
        attained = abs(abs(np.trace(a @ b)) - value)
        worst = max(worst, abs(value - np.linalg.norm(a)), attained, beaten)
    return worst, 1e-12


def _nuclear_composition(rng, budget):
    worst = -np.inf
    for _ in range(1000):
        m, k, n = (int(v) for v in rng.integers(1, 9, size=3))
        nuc, bound = norms.composition_nuclear_bound(_crandn(rng, m, k), _crandn(rng, k, n))
        worst = max(worst, nuc - bound)
    return max(float(worst), 0.0), 1e-10


# -- Schmidt / states ------------------------------------------------------------


def _schmidt_phi_plus(rng, budget):
    z = tensor.TensorElement.from_kron_vector(teleport.phi_plus(), 2, 2)
    c = states.schmidt(z).coeffs
    r = 1 / np.sqrt(2)
    return float(max(np.abs(c - r).max(), abs(np.sum(c**2) - 1))), 1e-12


def _schmidt_random(rng, budget):
    worst = 0.0
    for _ in range(200):
        n, m = (int(v) for v in rng.integers(1, 9, size=2))
        z = tensor.TensorElement.from_kron_vector(_crandn(rng, n * m), n, m)
        s = states.schmidt(z)
        rec = np.abs(s.reconstruct().matrix_rep - z.matrix_rep).max()
        worst = max(worst, float(rec), abs(float(np.sum(s.probabilities())) - z.norm() ** 2))
    return worst, 1e-9


def _phi_plus_entangled(rng, budget):
    z = tensor.TensorElement.from_kron_vector(teleport.phi_plus(), 2, 2)
    c = states.schmidt(z).coeffs
    return (0.0 if states.is_entangled(z) else 1.0) + abs(c[1] - 1 / np.sqrt(2)), 1e-12


def _gleason_cases(rng):
    for dim in range(3, 7):
        for _ in range(20):
            yield dim, _random_density(rng, dim)


def _gleason_roundtrip(rng, budget):
    worst = 0.0
    for dim, d in _gleason_cases(rng):
        rec = states.gleason_reconstruct(states.measure_from_state(d), dim, holdout=0)
        worst = max(worst, float(np.linalg.norm(rec.matrix - d)))
    return worst, 1e-9


def _gleason_holdout(rng, budget):
    worst = 0.0
    for dim, d in _gleason_cases(rng):
        mu = states.measure_from_state(d)
        rec = states.gleason_reconstruct(mu, dim, holdout=0)
        checks = states.random_projections(dim, 50, rng)
        worst = max(worst, states.max_holdout_residual(rec, mu, checks))
    return worst, 1e-8


# -- no-cloning ------------------------------------------------------------------


def _nocloning_pairs(rng):
    for _ in range(100):
        n = int(rng.integers(2, 6))
        x, y = _unit(rng, n), _unit(rng, n)
        e = _unit(rng, n)
        yield x, y, e


def _nocloning_formula(rng, budget):
    worst = 0.0
    for x, y, e in _nocloning_pairs(rng):
        ip = np.vdot(y, x)
        gap = teleport.no_cloning_certificate(x, y, e)[2]
        worst = max(worst, abs(gap - np.sqrt(2) * abs(ip - ip**2)))
    return float(worst), 1e-10


def _nocloning_positive(rng, budget):
    smallest = min(teleport.no_cloning_certificate(x, y, e)[2] for x, y, e in _nocloning_pairs(rng))
    # ratio form: passes iff every gap is at least 1e-12
    return 1e-12 / smallest if smallest > 0 else np.finfo(float).max, 1.0


def _nocloning_controls(rng, budget):
    e1, e2, e3 = np.eye(3, dtype=complex)
    orth = teleport.no_cloning_certificate(e1, e2, (e1 + e3) / np.sqrt(2))[2]
    x = _unit(rng, 3)
    par = teleport.no_cloning_certificate(x, x, e3 if abs(x[2]) < 0.99 else e1)[2]
    return max(orth, par), 1e-12


# -- Kronecker calculus ----------------------------------------------------------


def _kron_basis(rng, budget):
    worst = 0.0
    for m in range(1, 7):
        for n in range(1, 7):
            for j in range(1, n + 1):
                for i in range(1, m + 1):
                    lhs = tensor.kron(tensor.basis_vector(j, n), tensor.basis_vector(i, m))
                    rhs = tensor.basis_vector((j - 1) * m + i, n * m)
                    worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst, 0.0


def _commutation(rng, budget):
    worst = 0.0
    for m in range(1, 6):
        for n in range(1, 6):
            k = tensor.commutation_matrix(m, n)
            worst = max(worst, float(np.abs(k.conj().T @ k - np.eye(m * n)).max()))
            for _ in range(3):
                x = rng.integers(-3, 4, n) + 1j * rng.integers(-3, 4, n)
                y = rng.integers(-3, 4, m) + 1j * rng.integers(-3, 4, m)
                worst = max(worst, float(np.abs(k @ tensor.kron(x, y) - tensor.kron(y, x)).max()))
    return worst, 0.0


def _vec_dyad(rng, budget):
    worst = 0.0
    for _ in range(200):
        n, m = (int(v) for v in rng.integers(1, 9, size=2))
        x, y = _crandn(rng, n), _crandn(rng, m)
        v = tensor.vec(tensor.dyad(x, y).matrix_rep)
        worst = max(worst, float(np.abs(v - tensor.kron(x, y)).max()))
    return worst, 1e-12


# -- conjugate space -------------------------------------------------------------


def _conj_samples(rng):
    for _ in range(100):
        n = int(rng.integers(1, 17))
        yield n, conjspace.Ket(_crandn(rng, n)), _unitary(rng, n)


def _conj_norm_identity(rng, budget):
    worst = 0.0
    for _, x, b in _conj_samples(rng):
        re, im = conjspace.re_im_parts(x, b)
        lhs = np.linalg.norm(x.coords) ** 2
        worst = max(worst, abs(lhs - re.norm() ** 2 - im.norm() ** 2) / max(1.0, lhs))
    return float(worst), 1e-10


def _conj_involution(rng, budget):
    worst = 0.0
    for _, x, b in _conj_samples(rng):
        jj = conjspace.semilinear_conjugation(conjspace.semilinear_conjugation(x, b), b)
        worst = max(worst, float(np.linalg.norm(jj.coords - x.coords)))
    return worst, 1e-10


def _riesz(rng, budget):
    worst = 0.0
    for n, x, _ in _conj_samples(rng):
        y = conjspace.Ket(_crandn(rng, n))
        lam, mu = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        combo = conjspace.riesz_map(x.scale(lam) + y.scale(mu)).coeffs
        split = lam * conjspace.riesz_map(x).coeffs + mu * conjspace.riesz_map(y).coeffs
        iso = abs(conjspace.riesz_map(x).norm() - x.norm())
        worst = max(worst, float(np.linalg.norm(combo - split)), iso)
    return worst, 1e-10


# -- p-summing -------------------------------------------------------------------


def _pi2_hs(rng, budget):
    worst = 0.0
    for _ in range(100):
        a = _crandn(rng, int(rng.integers(1, 9)), int(rng.integers(1, 9)))
        worst = max(worst, abs(psumming.pi2_certify(a).lower_bound - norms.hs_norm(a)))
    return worst, 1e-10


def _pi1_scalar(rng, budget):
    return abs(psumming.pi1_lower_bound(np.eye(1), budget, 0).lower_bound - 1.0), 0.0


def _pi1_qubit(rng, budget):
    # pi_1(Id on C^2) = 1 / E|z_1| over the unit sphere of C^2 = 3/2
    est = psumming.pi1_lower_bound(np.eye(2), budget, int(rng.integers(2**31)))
    lb = est.lower_bound
    replay = psumming.family_ratio(np.eye(2), est.witness_family, 1, certified=True)
    return max(0.0, 1.0 - lb, lb - 1.5, abs(replay - lb)), 1e-9


# -- factorizations --------------------------------------------------------------


def _svd_reconstruction(rng, budget):
    worst = 0.0
    for _ in range(50):
        a = _crandn(rng, int(rng.integers(1, 9)), int(rng.integers(1, 9)))
        res = svd(a)
        rel = np.linalg.norm(res.reconstruct() - a) / np.linalg.norm(a)
        ortho = np.linalg.norm(res.left.conj().T @ res.left - np.eye(res.rank))
        worst = max(worst, float(rel), float(ortho))
    return worst, 1e-12


CASES = [
    Case("conjspace.involution", _conj_involution),
    Case("conjspace.norm_identity", _conj_norm_identity),
    Case("conjspace.riesz_linear_isometry", _riesz),
    Case("gleason.holdout", _gleason_holdout),
    Case("gleason.roundtrip", _gleason_roundtrip),
    Case("kron.commutation_matrix", _commutation),
    Case("kron.standard_basis", _kron_basis),
    Case("kron.vec_dyad", _vec_dyad),
    Case("linalg.svd_reconstruction", _svd_reconstruction),
    Case("nocloning.controls", _nocloning_controls),
    Case("nocloning.gap_formula", _nocloning_formula),
    Case("nocloning.gap_positive", _nocloning_positive),
    Case("norms.nuclear_composition", _nuclear_composition),
    Case("norms.rank2_projection", _rank2_projection),
    Case("norms.trace_duality", _trace_duality),
    Case("psumming.pi1_qubit_identity", _pi1_qubit),
    Case("psumming.pi1_scalar_identity", _pi1_scalar),
    Case("psumming.pi2_equals_hs", _pi2_hs),
    Case("schmidt.phi_plus", _schmidt_phi_plus),
    Case("schmidt.phi_plus_entangled", _phi_plus_entangled),
    Case("schmidt.random_states", _schmidt_random),
    Case("teleport.closed_form", _teleport_closed_form),
    Case("teleport.corrections", _teleport_corrections),
    Case("teleport.entries", _teleport_entries),
    Case("teleport.equation", _teleport_equation),
    Case("teleport.factorization", _teleport_factorization),
    Case("teleport.gates_unitary", _gates_unitary),
    Case("teleport.probabilities", _teleport_probabilities),
    Case("teleport.real_orthogonal", _teleport_real_orthogonal),
    Case("teleport.unitarity", _teleport_unitarity),
]


def run_case(case: Case, seed: int, tol_factor: float = 1.0, budget: int = DEFAULT_BUDGET) -> dict:
    rng = np.random.default_rng([seed, zlib.crc32(case.id.encode())])
    entry = {"id": case.id, "seed": seed}
    try:
        residual, tolerance = case.run(rng, budget)
    except Exception as exc:  # failures are reported, not raised
        entry.update(passed=False, residual=None, tolerance=None, error=f"{type(exc).__name__}: {exc}")
        return entry
    residual, tolerance = float(residual), float(tolerance) * tol_factor
    entry.update(passed=bool(residual <= tolerance), residual=residual, tolerance=tolerance)
    return entry


def verify_suite(seed: int = 42, tol_factor: float = 1.0, budget: int = DEFAULT_BUDGET) -> dict:
    """Run every case and return the report dictionary, ordered by case id."""
    suite = [run_case(c, seed, tol_factor, budget) for c in sorted(CASES, key=lambda c: c.id)]
    passed = sum(e["passed"] for e in suite)
    return {
        "suite": suite,
        "summary": {"total": len(suite), "passed": passed, "failed": len(suite) - passed},
        "version": __version__,
    }


def report_schema() -> dict:
    """The JSON schema every verify report validates against."""
    text = resources.files("hilbertkit").joinpath("schemas/verify_report.schema.json").read_text()
    return json.loads(text)
