"""Per-space verification suites and their JSON reports."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import __version__
from .catalog import (SpaceSpec, build_triple, check_J, compatible_endomorphisms, hermitian_J, module_of, para_J,
                      semidirect_presentation, y_heisenberg_presentation)
from .checks import Check, bool_check, merge, residual_check
from .geometry import extrinsic, fixed, models, so12
from .geometry.curvature import EXPECTED_PARALLEL, curvature_checks
from .groups import (AffineElement, catalog_in_group_basis, heis_mul, heisenberg_affine_rep, OMEGA0,
                     structure_constants_from_group, transvection_group)
from .numeric import Tolerance, diag, eye, inverse, max_abs, render_scalar, signature
from .quadext import check_cocycle, ideal_checks
from . import sampling

SCHEMA = "sig22-report/1"

HERMITIAN = ("N", "Z")
PARA = ("N", "Zprime")


@dataclass(frozen=True)
class SampleSizes:
    metric_points: int = 50
    isometries: int = 100
    iso_points: int = 20
    hom_pairs: int = 100
    group_triples: int = 100
    reflection_bases: int = 10
    reflection_samples: int = 100
    iota_samples: int = 50
    fixed_points_z1: int = 1000
    fixed_points_special: int = 200
    conjugations: int = 100

    @classmethod
    def quick(cls) -> "SampleSizes":
        return cls(10, 10, 5, 10, 10, 3, 20, 10, 100, 20, 20)


@dataclass
class VerificationReport:
    space: SpaceSpec
    checks: list = field(default_factory=list)
    tolerance: Tolerance = field(default_factory=Tolerance)
    seed: int = 0
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.skipped)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def extend(self, checks, prefix: str = ""):
        for c in checks:
            self.checks.append(replace(c, name=prefix + c.name) if prefix else c)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "version": self.version,
            "space": space_dict(self.space),
            "status": self.status,
            "tolerance": {"abs": self.tolerance.abs_tol, "rel": self.tolerance.rel_tol},
            "seed": self.seed,
            "checks": [check_dict(c) for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"{self.space.label}: {self.status.upper()}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            res = c.max_residual if isinstance(c.max_residual, str) else f"{c.max_residual:.17g}"
            extra = f"  {c.detail}" if c.detail else ""
            lines.append(f"  {c.name:<{width}}  {c.status:<7}  {res:<24}  n={c.samples}{extra}")
        return "\n".join(lines)


def space_dict(spec: SpaceSpec) -> dict:
    return {
        "family": spec.family,
        "params": {k: render_scalar(v) for k, v in spec.params.items()},
        "label": spec.label,
    }


def check_dict(c: Check) -> dict:
    return {
        "name": c.name,
        "status": c.status,
        "max_residual": c.max_residual,
        "samples": c.samples,
        "detail": c.detail,
    }


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def grid_payload(reports) -> dict:
    reports = list(reports)
    return {
        "schema": SCHEMA,
        "version": __version__,
        "status": "pass" if all(r.passed for r in reports) else "fail",
        "reports": [r.to_dict() for r in reports],
    }


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream])


# -- algebra ---------------------------------------------------------------

def algebra_checks(spec: SpaceSpec, tol: Tolerance, seed: int) -> list:
    out = []
    T = build_triple(spec, tol)
    out += [replace(c, name="triple." + c.name) for c in T.check(tol).checks]
    module, cocycle = module_of(spec)
    out += [replace(c, name="module." + c.name) for c in module.check(tol).checks]
    out += [replace(c, name="cocycle." + c.name) for c in check_cocycle(module, cocycle, tol).checks]
    out.append(replace(ideal_checks(T, samples=50, seed=seed, tol=tol), name="triple.isotropic_ideal"))
    out += [replace(c, name="curvature." + c.name[len("curvature_"):]) for c in curvature_checks(T, tol).checks]
    dim = T.parallel_field_dim()
    out.append(bool_check("parallel_fields", dim == EXPECTED_PARALLEL[spec.family],
                          f"dim {dim}, expected {EXPECTED_PARALLEL[spec.family]}"))
    out += j_checks(spec, T, tol)
    out += presentation_checks(spec, tol)
    return out


def j_checks(spec: SpaceSpec, T, tol: Tolerance) -> list:
    out = []
    for name, getter, families, sign in (("hermitian_J", hermitian_J, HERMITIAN, -1), ("para_J", para_J, PARA, 1)):
        J = getter(spec)
        expected = spec.family in families
        if (J is not None) != expected:
            out.append(bool_check(name, False, "present" if J is not None else "missing"))
            continue
        if J is None:
            out.append(bool_check(name, True, "absent"))
            continue
        rep = check_J(T, J, sign, tol)
        out.append(merge(name, rep.checks, "present; " + ", ".join(c.name for c in rep.checks)))
    return out


def presentation_checks(spec: SpaceSpec, tol: Tolerance) -> list:
    if spec.family == "Y":
        rep = y_heisenberg_presentation(spec.eps, spec.kappa).check(tol)
        return [merge("presentation.b_basis", rep.checks)]
    if spec.family in ("Z", "Zprime"):
        rep = semidirect_presentation(spec).check(tol)
        return [merge("presentation.semidirect", rep.checks)]
    return []


def group_algebra_check(spec: SpaceSpec, tol: Tolerance) -> Check:
    A = structure_constants_from_group(spec)
    B = catalog_in_group_basis(spec).algebra
    return residual_check("group.structure_constants", A.structure - B.structure, tol)


# -- chart families ----------------------------------------------------------

def _chart_point(r) -> np.ndarray:
    # coordinates in [−1, 1] keep e^{uL} moderate, so absolute float residuals stay meaningful
    return sampling.unit_rational_vec(r, 4)


def _group_element(G, r):
    return G.element.from_coords(sampling.unit_rational_vec(r, G.dim))


def random_chart_isometry(spec: SpaceSpec, r, k: int) -> models.ChartIsometry:
    """The k-th sample cycles through every discrete factor of the family."""
    G = transvection_group(spec)
    g = _group_element(G, r)
    f = spec.family
    if f == "X1":
        factors = [(d1, d2, d3) for d1 in (1, -1) for d2 in (1, -1) for d3 in (1, -1)]
        o11 = spec.lam == 1 and spec.eps1 == -spec.eps2
        slots = len(factors) + (4 if o11 else 0)
        i = k % slots
        if i < len(factors):
            return models.x1_discrete(spec, *factors[i], g=g)
        j = i - len(factors)
        A = sampling.rational_boost(r) @ diag([1 - 2 * (j % 2), 1 - 2 * (j // 2 % 2)])
        return models.x1_o11(spec, A, theta=bool(k % 3 == 0), g=g)
    if f in ("X2", "Y"):
        d1, d2 = (1, -1)[k % 2], (1, -1)[k // 2 % 2]
        return models.sign_discrete(spec, d1, d2, g=g)
    return models.n_linear(spec, sampling.rational_sl2(r, reflect=bool(k % 2)), g=g)


def group_axiom_checks(spec: SpaceSpec, sizes: SampleSizes, tol: Tolerance, seed: int) -> list:
    G = transvection_group(spec)
    r = _rng(seed, 1)
    assoc, inv = [], []
    for _ in range(sizes.group_triples):
        x, y, z = (_group_element(G, r) for _ in range(3))
        assoc.append(G.mul(G.mul(x, y), z).coords() - G.mul(x, G.mul(y, z)).coords())
        inv.append(G.mul(x, G.inv(x)).coords())
        inv.append(G.mul(G.inv(x), x).coords())
    out = [residual_check("group.associativity", assoc, tol, sizes.group_triples),
           residual_check("group.inverse", inv, tol, sizes.group_triples)]
    chart, stab = [], []
    for _ in range(sizes.group_triples):
        p = _chart_point(r)
        chart.append(G.phi(G.phi_inv(p)) - p)
        g = _group_element(G, r)
        h = G.stabilizer(sampling.rational(r) if spec.family == "N" else sampling.rational_vec(r, 2))
        chart.append(G.phi(G.mul(g, h)) - G.phi(g))
        stab.append(G.phi(G.mul(h, G.identity())))
    out.append(residual_check("chart.round_trip", chart, tol, sizes.group_triples))
    out.append(residual_check("chart.stabilizer_fixes_origin", stab, tol, sizes.group_triples))
    if spec.family != "N":
        hom = []
        for _ in range(sizes.group_triples):
            z1, z2 = sampling.rational(r), sampling.rational(r)
            a1, a2 = sampling.rational_vec(r, 4), sampling.rational_vec(r, 4)
            z, a = heis_mul(OMEGA0, (z1, a1), (z2, a2))
            hom.append(heisenberg_affine_rep(z1, a1) @ heisenberg_affine_rep(z2, a2) - heisenberg_affine_rep(z, a))
        out.append(residual_check("group.heisenberg_rep_homomorphism", hom, tol, sizes.group_triples))
    return out


def chart_geometry_checks(spec: SpaceSpec, sizes: SampleSizes, tol: Tolerance, seed: int) -> list:
    out = []
    r = _rng(seed, 2)
    model = models.model_metric(spec)
    res, sig_ok = [], True
    for _ in range(sizes.metric_points):
        p = _chart_point(r)
        g = model(p)
        res.append(models.group_metric(spec, p) - g)
        sig_ok &= tuple(signature(g, tol)) == (2, 2, 0)
    out.append(residual_check("metric.agreement", res, tol, sizes.metric_points))
    out.append(bool_check("metric.signature", sig_ok, "(2,2) at every sample", sizes.metric_points))

    r = _rng(seed, 3)
    pull, labels = [], set()
    for k in range(sizes.isometries):
        iso = random_chart_isometry(spec, r, k)
        labels.add(iso.label)
        pts = [_chart_point(r) for _ in range(sizes.iso_points)]
        pull.extend(models.pullback_residuals(spec, iso, pts))
    out.append(residual_check("isometry.pullback", pull, tol, sizes.isometries * sizes.iso_points,
                              f"factors: {'; '.join(sorted(labels))}"))

    r = _rng(seed, 4)
    hom, closed = [], []
    G = transvection_group(spec)
    for k in range(sizes.hom_pairs):
        i1, i2 = random_chart_isometry(spec, r, k), random_chart_isometry(spec, r, k + 1)
        p = _chart_point(r)
        hom.append((i1 @ i2)(p) - i1(i2(p)))
        g = _group_element(G, r)
        if spec.family == "N":
            S = sampling.rational_sl2(r, reflect=bool(k % 2))
            closed.append(models.n_linear(spec, S, g)(p) - models.closed_form_action(spec, g, S, p))
        else:
            closed.append(models.ChartIsometry.translation(spec, g)(p) - models.closed_form_action(spec, g, None, p))
    out.append(residual_check("isometry.homomorphism", hom, tol, sizes.hom_pairs))
    out.append(residual_check("isometry.closed_form_action", closed, tol, sizes.hom_pairs))
    return out


# -- extrinsic models ----------------------------------------------------------

def reflection_checks(spec: SpaceSpec, which: str, sizes: SampleSizes, tol: Tolerance, seed: int) -> Check:
    E = extrinsic.extrinsic_space(spec, which)
    r = _rng(seed, 5)
    base_ok = max_abs(E.residual(E.base_point)) == 0
    sig_ok = tuple(E.induced_signature(E.base_point, tol)) == (2, 2, 0)
    bases = [E.base_point] + [E.sample(r) for _ in range(sizes.reflection_bases - 1)]
    samples = [E.sample(r) for _ in range(sizes.reflection_samples)]
    checks = [extrinsic.reflection_check(E, x, samples, tol) for x in bases]
    detail = f"{len(bases)} base points x {len(samples)} samples"
    c = merge(f"extrinsic.{which}.reflection", checks, detail)
    return [bool_check(f"extrinsic.{which}.base_point", base_ok and sig_ok, "on M, induced signature (2,2)"), c]


def random_affine(spec: SpaceSpec, r, k: int) -> AffineElement:
    eps = extrinsic.model_eps(spec)
    A = sampling.random_special(r, eps)
    b = sampling.uniform_vec(r, 3)
    if spec.family == "Z" and eps == 1:
        extra, group = [("id", eye(3)), ("-id", -eye(3))], "O(3)"
    elif spec.family == "Z":
        extra, group = [("id", eye(3)), ("diag(1,-1,1)", diag([1, -1, 1]))], "O+(1,2)"
    else:
        extra = [("id", eye(3)), ("diag(1,-1,1)", diag([1, -1, 1])), ("diag(-1,1,1)", diag([-1, 1, 1])),
                 ("-id", -eye(3))]
        group = "O(1,2)"
    label, D = extra[k % len(extra)]
    return AffineElement(b, A @ D, group), f"{'SO(3)' if eps == 1 else 'SO0(1,2)'}·{label}"


def affine_checks(spec: SpaceSpec, sizes: SampleSizes, tol: Tolerance, seed: int) -> list:
    E = extrinsic.extrinsic_space(spec)
    eps = extrinsic.model_eps(spec)
    r = _rng(seed, 6)
    pull = []
    groups = set()
    for k in range(sizes.isometries):
        iso, label = random_affine(spec, r, k)
        groups.add(label)
        pts = [E.sample(r) for _ in range(sizes.iso_points)]
        pull.append(models.pullback_check(spec, iso, pts, tol))
    out = [merge("isometry.pullback", pull, "components: " + "; ".join(sorted(groups)))]
    hom = []
    for k in range(sizes.hom_pairs):
        g1, g2 = random_affine(spec, r, k)[0], random_affine(spec, r, k + 1)[0]
        p = E.sample(r)
        hom.append(extrinsic.affine_action(eps, g1 @ g2, p)
                   - extrinsic.affine_action(eps, g1, extrinsic.affine_action(eps, g2, p)))
    out.append(residual_check("isometry.homomorphism", hom, tol, sizes.hom_pairs))
    return out


def fixed_point_checks(spec: SpaceSpec, sizes: SampleSizes, tol: Tolerance, seed: int) -> list:
    """Z(1,c): every element; Z(−1,c): elliptic A; Z′(c): hyperbolic A."""
    r = _rng(seed, 7)
    eps = extrinsic.model_eps(spec)
    ftol = Tolerance(10 * tol.abs_tol, tol.rel_tol)
    if spec.family == "Z" and spec.eps == 1:
        wanted, n, group, name = None, sizes.fixed_points_z1, "SO(3)", "fixed_point.all"
    elif spec.family == "Z":
        wanted, n, group, name = so12.SO12Class.ELLIPTIC, sizes.fixed_points_special, "SO0(1,2)", "fixed_point.elliptic"
    else:
        wanted, n, group, name = so12.SO12Class.HYPERBOLIC, sizes.fixed_points_special, "SO0(1,2)", "fixed_point.hyperbolic"
    found, res = 0, []
    drawn = 0
    while drawn < n:
        A = sampling.random_special(r, eps)
        if wanted is not None and so12.classify_so12(A) != wanted:
            continue
        drawn += 1
        iso = AffineElement(sampling.uniform_vec(r, 3), A, group)
        p = fixed.fixed_point(spec, iso)
        if p is None:
            continue
        found += 1
        res.append(fixed.fixed_point_residual(spec, iso, p))
    c = residual_check(name, res, ftol, n, f"{found}/{n} solved")
    return [replace(c, passed=c.passed and found == n)]


def classification_checks(sizes: SampleSizes, tol: Tolerance, seed: int) -> list:
    """Conjugation invariance of the trace classes and the causal type of fixed vectors."""
    r = _rng(seed, 8)
    same, causal = 0, 0
    for _ in range(sizes.conjugations):
        A = sampling.random_special(r, -1)
        P = sampling.random_special(r, -1)
        c = so12.classify_so12(A)
        same += so12.classify_so12(P @ A @ inverse(P)) == c
        causal += so12.fixed_vector(A)[1] == so12.EXPECTED_FIXED_TYPE[c]
    parabolic = so12.ad_sl2(np.array([[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]], dtype=object))
    par_ok = so12.classify_so12(parabolic) == so12.SO12Class.PARABOLIC
    n = sizes.conjugations
    return [bool_check("so12.conjugation_invariance", same == n, f"{same}/{n}", n),
            bool_check("so12.fixed_vector_type", causal == n and par_ok, f"{causal}/{n}", n)]


# -- orchestration -------------------------------------------------------------

def verify_space(spec: SpaceSpec, seed: int = 0, tol: Tolerance | None = None,
                 sizes: SampleSizes | None = None) -> VerificationReport:
    tol = tol or Tolerance(1e-10, 1e-10)
    sizes = sizes or SampleSizes()
    rep = VerificationReport(spec, tolerance=tol, seed=seed)
    rep.extend(algebra_checks(spec, tol, seed))
    rep.checks.append(group_algebra_check(spec, Tolerance(max(tol.abs_tol, 1e-9), tol.rel_tol)))
    f = spec.family
    if f in models.CHART_FAMILIES:
        rep.extend(group_axiom_checks(spec, sizes, tol, seed))
        rep.extend(chart_geometry_checks(spec, sizes, tol, seed))
    if f == "N":
        for which in extrinsic.EMBEDDINGS["N"]:
            rep.extend(reflection_checks(spec, which, sizes, tol, seed))
        r = _rng(seed, 9)
        rep.checks.append(extrinsic.iota_isometry_check(spec.kappa, [sampling.rational_vec(r, 4) for _ in range(sizes.iota_samples)], tol))
    if f in ("Z", "Zprime"):
        rep.extend(reflection_checks(spec, "standard", sizes, tol, seed))
        rep.extend(affine_checks(spec, sizes, tol, seed))
        rep.extend(fixed_point_checks(spec, sizes, tol, seed))
        if extrinsic.model_eps(spec) == -1:
            rep.extend(classification_checks(sizes, tol, seed))
    return rep


def _verify_args(args):
    return verify_space(*args)


def verify_grid(specs, seed: int = 0, tol: Tolerance | None = None, sizes: SampleSizes | None = None,
                workers: int = 1) -> list:
    """Reports in the order of ``specs``; independent spaces may run in worker processes."""
    jobs = [(s, seed, tol, sizes) for s in specs]
    if workers <= 1:
        return [_verify_args(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_args, jobs))


def compatible_J_dimension(spec: SpaceSpec) -> int:
    return len(compatible_endomorphisms(build_triple(spec)))
