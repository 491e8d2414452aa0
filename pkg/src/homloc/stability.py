"""Metric perturbations and checks that class sizes and filtrations move by at most epsilon."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from homloc.basis import DEFAULT_MAX_CLASSES, all_class_sizes, filtration, filtration_distance, greedy_basis
from homloc.complex import SimplicialComplex
from homloc.errors import EnumerationCapError
from homloc.homology import betti, homology_basis
from homloc.metric import TOL, Metric, distance_table

SCHEMES = ("uniform_noise", "single_edge", "scale")


@dataclass(frozen=True)
class Perturbation:
    """How to change edge lengths.

    ``uniform_noise`` adds U(-magnitude, magnitude) to every edge;
    ``single_edge`` adds ``magnitude`` to one edge (``edge``, or one drawn
    from ``seed``); ``scale`` multiplies every edge by ``1 + magnitude``.
    """

    scheme: str
    magnitude: float
    seed: int = 0
    edge: int | None = None

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {', '.join(SCHEMES)}")


def perturb(m: Metric, p: Perturbation) -> Metric:
    rng = random.Random(p.seed)
    lengths = list(m.lengths)
    if p.scheme == "uniform_noise":
        lengths = [x + rng.uniform(-p.magnitude, p.magnitude) for x in lengths]
    elif p.scheme == "single_edge":
        if not lengths:
            raise ValueError("metric has no edges to perturb")
        e = rng.randrange(len(lengths)) if p.edge is None else p.edge
        lengths[e] += p.magnitude
    else:
        lengths = [x * (1.0 + p.magnitude) for x in lengths]
    bad = [i for i, x in enumerate(lengths) if not x > 0]
    if bad:
        raise ValueError(f"perturbation makes edge {bad[0]} non-positive ({lengths[bad[0]]})")
    return Metric(tuple(lengths))


def epsilon(k: SimplicialComplex, m1: Metric, m2: Metric) -> float:
    """Largest change of any pairwise geodesic distance between the two metrics."""
    t1, t2 = distance_table(k, m1), distance_table(k, m2)
    eps = 0.0
    for r1, r2 in zip(t1, t2):
        for a, b in zip(r1, r2):
            if a == b:  # also covers inf == inf across components
                continue
            eps = max(eps, abs(a - b))
    return eps


@dataclass(frozen=True)
class ClassCheck:
    class_id: int
    size1: float
    size2: float
    delta: float
    passed: bool


@dataclass
class StabilityReport:
    epsilon: float
    per_class: list[ClassCheck] = field(default_factory=list)
    filtration_distance: float | None = None
    filtration_pass: bool | None = None
    basis1: list[int] | None = None
    basis2: list[int] | None = None

    @property
    def class_violations(self) -> int:
        return sum(not c.passed for c in self.per_class)

    @property
    def basis_changed(self) -> bool:
        return self.basis1 is not None and self.basis1 != self.basis2

    @property
    def passed(self) -> bool:
        return self.class_violations == 0 and self.filtration_pass is not False


def _sizes(k, m1, m2, d, max_classes):
    beta = betti(k, d)
    if beta == 0:
        raise ValueError(f"H_{d} is trivial; nothing to compare")
    if (1 << beta) - 1 > max_classes:
        raise EnumerationCapError(f"{(1 << beta) - 1} nontrivial classes exceed the cap of {max_classes}")
    reference = homology_basis(k, d)
    return reference, all_class_sizes(k, m1, reference, max_classes), all_class_sizes(k, m2, reference, max_classes)


def _class_report(k, m1, m2, sizes1, sizes2) -> StabilityReport:
    eps = epsilon(k, m1, m2)
    checks = []
    for mask in sorted(sizes1):
        s1, s2 = sizes1[mask].value, sizes2[mask].value
        delta = 0.0 if s1 == s2 else abs(s1 - s2)
        checks.append(ClassCheck(mask, s1, s2, delta, delta <= eps + TOL))
    return StabilityReport(eps, checks)


def verify_class_stability(
    k: SimplicialComplex, m1: Metric, m2: Metric, d: int, max_classes: int = DEFAULT_MAX_CLASSES
) -> StabilityReport:
    """Compare the size of every nontrivial class under both metrics.

    A class is identified by its coordinates in one metric-independent
    reference basis, so the comparison is well defined.
    """
    _, sizes1, sizes2 = _sizes(k, m1, m2, d, max_classes)
    return _class_report(k, m1, m2, sizes1, sizes2)


def verify_filtration_stability(
    k: SimplicialComplex, m1: Metric, m2: Metric, d: int, max_classes: int = DEFAULT_MAX_CLASSES
) -> StabilityReport:
    reference, sizes1, sizes2 = _sizes(k, m1, m2, d, max_classes)
    report = _class_report(k, m1, m2, sizes1, sizes2)
    b1 = greedy_basis(k, reference, sizes1)
    b2 = greedy_basis(k, reference, sizes2)
    dist = filtration_distance(filtration(b1), filtration(b2)).value
    report.filtration_distance = dist
    report.filtration_pass = dist <= report.epsilon + TOL
    report.basis1, report.basis2 = b1.masks, b2.masks
    return report


def _trial(args) -> StabilityReport:
    k, m, d, p, max_classes = args
    return verify_filtration_stability(k, m, perturb(m, p), d, max_classes)


def sweep(
    k: SimplicialComplex,
    m: Metric,
    d: int,
    scheme: str,
    magnitude: float,
    trials: int,
    seed: int = 0,
    jobs: int = 1,
    max_classes: int = DEFAULT_MAX_CLASSES,
) -> list[StabilityReport]:
    """One filtration-stability report per seeded perturbation (seeds seed, seed+1, ...)."""
    tasks = [(k, m, d, Perturbation(scheme, magnitude, seed + i), max_classes) for i in range(trials)]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_trial, tasks))
    return [_trial(t) for t in tasks]
