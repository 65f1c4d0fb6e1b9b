"""Seeded randomized invariant suites.

Random spaces are shortest-path closures of random half-integer edge weights
in [1/2, 3], so every instance is a valid metric with exact distances.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from .config import DEFAULT_SEED
from .errors import ConsistencyError, LipnormError
from .extension import (
    ExtensionProblem,
    base_point_embedding,
    compose_check,
    h_function,
    mcshane_extend,
    tietze_extend,
)
from .extremes import (
    BallKind,
    ExtremeClass,
    ball_norm,
    classify_extreme,
    e_set_candidates,
    enumerate_extremes,
    is_trivial_pattern,
    johnson_membership,
)
from .lipfun import (
    LipFunction,
    constant,
    diff_quotient,
    dominates,
    lattice_max,
    lip_const,
    max_set,
    norms,
    restrict,
    sup_norm,
)
from .measures import MolecularMeasure, norm_equivalence_check, norming_values
from .metric import (
    MetricSpace,
    PointSubset,
    add_base_point,
    distance_to_subset,
    induced_subspace,
    truncate_metric,
    validate,
)
from .polytope import HPolytope, enumerate_vertices, lp_max

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    instances: int
    failures: int
    first_failure: Optional[str] = None

    @property
    def ok(self):
        return self.failures == 0

    def as_dict(self):
        return {'suite': self.name, 'instances': self.instances, 'failures': self.failures,
                'status': 'PASS' if self.ok else 'FAIL', 'first_failure': self.first_failure}


# random instance builders

def random_space(rng, n) -> MetricSpace:
    weights = rng.integers(1, 7, size=(n, n))
    dist = [[Fraction(0) if i == j else Fraction(int(min(weights[i][j], weights[j][i])), 2)
             for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = dist[i][k] + dist[k][j]
                if via < dist[i][j]:
                    dist[i][j] = via
    return MetricSpace.from_rows(dist)


def random_subset(rng, space, size=None, within=None) -> PointSubset:
    pool = list(range(len(space))) if within is None else list(within)
    if size is None:
        size = int(rng.integers(1, len(pool) + 1))
    chosen = rng.choice(pool, size=min(size, len(pool)), replace=False)
    return PointSubset.of(space, (int(i) for i in chosen))


def random_values(rng, n, denominator=4):
    return tuple(Fraction(int(k), denominator) for k in rng.integers(-denominator, denominator + 1, size=n))


def random_function(rng, space) -> LipFunction:
    return LipFunction(space, random_values(rng, len(space)))


def random_measure(rng, space) -> MolecularMeasure:
    support = random_subset(rng, space)
    weights = {}
    for i in support.indices:
        numerator = 0
        while numerator == 0:
            numerator = int(rng.integers(-6, 7))
        weights[i] = Fraction(numerator, int(rng.integers(1, 4)))
    return MolecularMeasure.of(space, weights)


# suites; each returns None on success or a description of the failure

def check_tietze(rng):
    space = random_space(rng, int(rng.integers(1, 7)))
    subset = random_subset(rng, space)
    f = random_function(rng, induced_subspace(subset))
    F = tietze_extend(ExtensionProblem(space, subset, f))
    got, want = norms(F), norms(f)
    if tuple(F.values[i] for i in subset.indices) != f.values:
        return f"restriction differs for f={f.values}"
    if (got.sup_norm, got.lip_const) != (want.sup_norm, want.lip_const):
        return f"norms changed for f={f.values}"
    return None


def check_composition(rng):
    space = random_space(rng, int(rng.integers(2, 7)))
    outer = random_subset(rng, space)
    inner = random_subset(rng, space, within=outer.indices)
    f = random_function(rng, induced_subspace(inner))
    if not compose_check(space, outer, inner, f):
        return f"composition fails for P={inner.indices}, P'={outer.indices}"
    return None


def check_transport(rng):
    space = random_space(rng, int(rng.integers(2, 6)))
    subset = random_subset(rng, space, size=int(rng.integers(2, min(4, len(space)) + 1)))
    sub = induced_subspace(subset)
    for kind in BallKind:
        for fstar in enumerate_extremes(sub, kind):
            if is_trivial_pattern(fstar):
                continue
            F = tietze_extend(ExtensionProblem(space, subset, fstar))
            if classify_extreme(F, kind) is not ExtremeClass.NON_TRIVIAL:
                return f"{kind.value} extension of {fstar.values} is not a non-trivial extreme"
    return None


def _extreme_violation(f, kind):
    report = norms(f)
    if ball_norm(f, kind) != 1:
        return 'norm is not 1'
    trivial = is_trivial_pattern(f)
    if kind is BallKind.BL and not trivial and min(f.values) != -max(f.values):
        return 'min f != -max f'
    if kind is BallKind.FM and report.sup_norm != 1:
        return 'sup norm is not 1'
    if kind is BallKind.FM and not trivial and report.lip_const != 1:
        return 'Lipschitz constant is not 1'
    if kind is BallKind.BL:
        d = f.space.dist
        peaks = max_set(f)
        for x in range(len(f)):
            if x in peaks:
                continue
            if not any(y != x and abs(f.values[x] - f.values[y]) == report.lip_const * d[x][y]
                       for y in range(len(f))):
                return f"no slope-attaining partner for point {x}"
    return None


def check_extreme_invariants(rng):
    space = random_space(rng, int(rng.integers(1, 6)))
    for kind in BallKind:
        extremes = enumerate_extremes(space, kind)
        found = {f.values for f in extremes}
        for f in extremes:
            if (-f).values not in found:
                return f"{kind.value}: -f missing for f={f.values}"
            problem = _extreme_violation(f, kind)
            if problem:
                return f"{kind.value}: {problem} for f={f.values}"
        support = random_subset(rng, space, size=min(len(space), 3))
        for F in e_set_candidates(space, support, kind):
            if not johnson_membership(F, kind).member:
                return f"{kind.value}: candidate {F.values} is not a Johnson member"
    return None


def check_norming(rng):
    space = random_space(rng, int(rng.integers(1, 6)))
    mu = random_measure(rng, space)
    for kind in BallKind:
        check = norming_values(mu, kind)
        if not check.agrees:
            return f"{kind.value}: {check} for weights {mu.weights}"
    if not norm_equivalence_check(mu):
        return f"norm equivalence fails for weights {mu.weights}"
    return None


def check_h_function(rng):
    space = random_space(rng, int(rng.integers(1, 6)))
    subset = random_subset(rng, space)
    h = h_function(space, subset)
    near = any(distance_to_subset(space, x, subset.indices) < 2 for x in subset.complement())
    expected = ExtremeClass.NON_TRIVIAL if near else ExtremeClass.TRIVIAL
    got = classify_extreme(h, BallKind.FM)
    if got is not expected:
        return f"h_P for P={subset.indices}: expected {expected.value}, got {got.value}"
    return None


def check_mcshane_algebra(rng):
    space = random_space(rng, int(rng.integers(1, 7)))
    subset = random_subset(rng, space)
    sub = induced_subspace(subset)
    f, g = random_function(rng, sub), random_function(rng, sub)
    c = Fraction(int(rng.integers(-4, 5)), 4)

    def E(h):
        return mcshane_extend(ExtensionProblem(space, subset, h))

    F = E(f)
    if restrict(F, subset).values != f.values:
        return f"E(f) does not restrict to f={f.values}"
    if lip_const(F) != lip_const(f):
        return f"E changed the Lipschitz constant of f={f.values}"
    quotients = [abs(diff_quotient(F, s, p)) for s in range(len(F)) for p in range(len(F)) if s != p]
    if quotients and max(quotients) != lip_const(F):
        return f"largest difference quotient {max(quotients)} is not |F|_L={lip_const(F)}"
    if not dominates(constant(space, sup_norm(f)), F):
        return 'E(f) exceeds ||f||_inf'
    if E(constant(sub, c)) != constant(space, c):
        return f"E({c}) is not constant"
    shifted = LipFunction(sub, tuple(v + abs(c) for v in f.values))
    for lower, upper in ((f, g), (f, shifted)):
        if dominates(upper, lower) and lip_const(lower) >= lip_const(upper):
            if not dominates(E(upper), E(lower)):
                return 'monotonicity fails'
    joined = lattice_max(f, g)
    if lip_const(joined) >= max(lip_const(f), lip_const(g)):
        if not dominates(lattice_max(E(f), E(g)), E(joined)):
            return 'E(f v g) exceeds E(f) v E(g)'
    floor = constant(sub, c)
    if lip_const(lattice_max(f, floor)) == lip_const(f):
        ambient_floor = constant(space, c)
        if lattice_max(E(lattice_max(f, floor)), ambient_floor) != lattice_max(E(f), ambient_floor):
            return f"truncation identity fails at c={c}"
    return None


def random_polytope(rng, n) -> HPolytope:
    """Box [-k, k]^n cut by random half-spaces that keep the origin interior"""
    rows, rhs = [], []
    k = int(rng.integers(1, 4))
    for j in range(n):
        for s in (1, -1):
            row = [0] * n
            row[j] = s
            rows.append(row)
            rhs.append(k)
    for _ in range(int(rng.integers(0, 2 * n + 1))):
        row = [int(v) for v in rng.integers(-3, 4, size=n)]
        if any(row):
            rows.append(row)
            rhs.append(Fraction(int(rng.integers(1, 7)), int(rng.integers(1, 3))))
    return HPolytope.from_rows(rows, rhs, n)


def check_lp_oracle(rng):
    n = int(rng.integers(1, 5))
    poly = random_polytope(rng, n)
    c = [Fraction(int(v)) for v in rng.integers(-5, 6, size=n)]
    result = lp_max(poly, c)
    best = max(sum(ci * vi for ci, vi in zip(c, v)) for v in enumerate_vertices(poly))
    if result.optimal_value != best or not poly.contains(result.optimizer):
        return f"lp_max {result.optimal_value} != vertex max {best} for c={c}"
    return None


def check_metric_transforms(rng):
    space = random_space(rng, int(rng.integers(1, 7)))
    pointed = add_base_point(truncate_metric(space))
    if not validate(pointed).ok:
        return 'S+ is not a metric'
    f = random_function(rng, space)
    if lip_const(base_point_embedding(f)) != norms(f).fm_norm:
        return f"|f+|_L != ||f||_FM for f={f.values}"
    return None


SUITES: Dict[str, Callable] = {
    'tietze': check_tietze,
    'composition': check_composition,
    'transport': check_transport,
    'extreme_invariants': check_extreme_invariants,
    'norming': check_norming,
    'h_function': check_h_function,
    'mcshane_algebra': check_mcshane_algebra,
    'lp_oracle': check_lp_oracle,
    'metric_transforms': check_metric_transforms,
}

DEFAULT_INSTANCES = {
    'tietze': 200,
    'composition': 100,
    'transport': 50,
    'extreme_invariants': 30,
    'norming': 100,
    'h_function': 50,
    'mcshane_algebra': 100,
    'lp_oracle': 100,
    'metric_transforms': 50,
}


def run_suite(name, rng, instances) -> SuiteResult:
    check = SUITES[name]
    failures, first = 0, None
    for i in range(instances):
        try:
            problem = check(rng)
        except (LipnormError, ConsistencyError) as e:
            problem = f"{type(e).__name__}: {e}"
        if problem:
            failures += 1
            if first is None:
                first = f"instance {i}: {problem}"
                logger.warning(f"{name}: {first}")
    logger.info(f"Suite {name}: {instances - failures}/{instances} passed")
    return SuiteResult(name, instances, failures, first)


def run_selftest(seed=DEFAULT_SEED, instances=None, suites=None) -> List[SuiteResult]:
    """Each suite gets its own generator spawned from `seed`"""
    names = list(suites or SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValueError(f"Unknown suites: {unknown}")
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    streams = dict(zip(SUITES, children))
    results = []
    for name in names:
        count = DEFAULT_INSTANCES[name] if instances is None else instances
        results.append(run_suite(name, np.random.default_rng(streams[name]), count))
    return results


def summary_frame(results: List[SuiteResult]) -> pd.DataFrame:
    return pd.DataFrame([r.as_dict() for r in results], columns=[
        'suite', 'instances', 'failures', 'status', 'first_failure'])
