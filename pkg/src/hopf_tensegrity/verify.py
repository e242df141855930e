"""Run every hard check and collect a single report."""

from __future__ import annotations

from fractions import Fraction

from . import elliptic, linking, spectral, trajectory
from .errors import VerificationError
from .exact import divides
from .group import check_homomorphism, stress_matrix
from .spectral import DISTINGUISHED, StressPoint, spectral_curve
from .tensegrity import equilibrium_residual, null_vector, null_vector_poly, realize


def _kernel_identity():
    """Omega p0 vanishes modulo d, componentwise."""
    omega, p0 = stress_matrix(), null_vector_poly()
    d8 = spectral_curve().d8
    for i in range(3):
        comp = omega[i][0] * p0[0] + omega[i][1] * p0[1] + omega[i][2] * p0[2]
        ok, _ = divides(d8, comp)
        if not ok:
            raise VerificationError("kernel_identity", f"(Omega p0)[{i}] is not divisible by d", comp)


def _distinguished():
    pt = StressPoint.given(*DISTINGUISHED)
    raw = null_vector(pt, normalize=False)
    if raw != (0, Fraction(5, 3), Fraction(5, 3)):
        raise VerificationError("distinguished_point", f"p0(1/2, -1/3) = {raw}")
    ip = linking.intersection_params_at(pt)
    if (ip.tau, ip.r1, ip.r2) != (Fraction(1, 2), Fraction(1, 6), Fraction(1, 6)):
        raise VerificationError("distinguished_point", f"(tau, R1, R2) = {(ip.tau, ip.r1, ip.r2)}")
    fw = realize(pt)
    if equilibrium_residual(fw) != 0:
        raise VerificationError("distinguished_point", "framework is not in exact equilibrium")
    m = linking.linking_matrix(fw)
    if not m.all_hopf():
        raise VerificationError("distinguished_point", "linking matrix is not all +-1")
    return {"tau": str(ip.tau), "r1": str(ip.r1), "r2": str(ip.r2), "linking": m.to_json()}


def _resultants(report):
    out = {}
    for rec in report.functions:
        if rec.stated_factorization_matches is False:
            raise VerificationError("resultant_factorizations", f"{rec.name} resultant differs from its stated form")
        if rec.stated_factorization_matches:
            out[rec.name] = rec.resultant_sign_vs_stated
    return out


def _persistence(report):
    if not report.verdict:
        bad = [r.name for r in report.functions if r.status != "certified"]
        raise VerificationError("persistence_certificate", f"uncertified: {bad}")
    if not all(report.conclusions.values()):
        raise VerificationError("persistence_certificate", f"conclusions {report.conclusions}")


def _torsion():
    t = elliptic.torsion_subgroup()
    if len(t.elements) != 12 or t.structure != (2, 6):
        raise VerificationError("torsion_structure", f"{len(t.elements)} points, structure {t.structure}")
    image = elliptic.birational_map(StressPoint.given(*DISTINGUISHED))
    if (image.u, image.v) != (-276, 12960):
        raise VerificationError("torsion_structure", f"(1/2, -1/3) maps to {image}")
    return list(t.structure)


def _trajectory():
    if not trajectory.singular_point_check((0, 0)) or not trajectory.singular_point_check((Fraction(2, 3), Fraction(2, 3))):
        raise VerificationError("trajectory", "expected singular point is smooth")
    value, ku, kv = trajectory.gradient((Fraction(1, 6), Fraction(1, 6)))
    if value != 0 or (ku == 0 and kv == 0):
        raise VerificationError("trajectory", "(1/6, 1/6) should be a smooth point of K")
    if not trajectory.not_divisible_by_diagonal():
        raise VerificationError("trajectory", "K is divisible by u - v")


def run_all(samples: int = 200) -> dict:
    """Every hard check, in order. Values are "pass"/"fail" plus a few data fields."""
    report = {}
    failures = []

    def run(name, fn, *args):
        try:
            value = fn(*args)
        except VerificationError as exc:
            report[name] = "fail"
            failures.append({"check": name, "message": exc.message, "residual": str(exc.residual)})
            return None
        report[name] = "pass"
        return value

    run("det_identity", spectral.derive_spectral_cubic)
    run("homomorphism", lambda: check_homomorphism() == 144 or _fail("homomorphism", "wrong count"))
    run("kernel_identity", _kernel_identity)
    run("discriminant_positive", lambda: spectral.certify_discriminant_positive() or _fail("discriminant_positive", "disc_x vanishes on [0, 1]"))
    run("rational_points", spectral.rational_points)
    dist = run("distinguished_point", _distinguished)
    run("intersection_formulas", linking.derive_intersection_formulas)
    cert = linking.persistence_certificate()
    signs = run("resultant_factorizations", _resultants, cert)
    run("persistence_certificate", _persistence, cert)
    run("birational_identity", elliptic.verify_birational_identity)
    invariants = run("model_invariants", elliptic.model_invariants_check)
    structure = run("torsion", _torsion)
    run("G_identity", trajectory.verify_G_identity_on_curve, samples)
    run("trajectory_curve", _trajectory)
    run("equilibrium_samples", _equilibrium_samples, samples)

    report["distinguished"] = dist
    report["resultant_signs_vs_stated"] = signs
    report["conclusions"] = cert.conclusions
    report["scale_factor"] = invariants["scale_factor"] if invariants else None
    report["torsion_structure"] = structure
    report["remark_check"] = linking.remark_check(cert)
    report["failures"] = failures
    report["verdict"] = not failures
    return report


def _equilibrium_samples(n, tol=1e-9):
    worst = 0.0
    for pt in linking.stable_samples(n):
        worst = max(worst, float(equilibrium_residual(realize(pt))))
    if worst >= tol:
        raise VerificationError("equilibrium_samples", f"residual {worst:.3g}", worst)
    return worst


def _fail(check, message):
    raise VerificationError(check, message)
