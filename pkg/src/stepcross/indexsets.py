"""Dyadic index sets driven by the majorant: octave boxes, the step
hyperbolic cross, its boundary shells, and the tail sums they control.

Everything here works in log2 space.  A box index s in N^d (all s_j >= 1)
carries the weight w(s) = prod_j 2^{r s_j} s_j^{b_j}, and membership tests
compare log2 w(s) = sum_j (r s_j + b_j log2 s_j) against log2 N.  Weights at
desk scale are exactly representable comparisons for the common parameter
choices (integer and half-integer r), so boundary ties resolve
deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CapacityError, ParameterError
from .majorant import MajorantParams

__all__ = [
    "SpectrumSet",
    "IndexFamily",
    "rho",
    "chi",
    "theta",
    "theta_prime",
    "q_set",
    "q_size",
    "size_prediction",
    "TailSumResult",
    "tail_sum",
    "theta_sum",
]

MATERIALIZE_CAP = 1 << 22
ENUMERATION_CAP = 5_000_000


def _check_box_index(s, d: int) -> tuple[int, ...]:
    s = tuple(int(x) for x in s)
    if len(s) != d:
        raise ParameterError(f"box index has {len(s)} coordinates, expected {d}")
    if any(x < 1 for x in s):
        raise ParameterError(f"box index coordinates must be >= 1, got {s}")
    return s


@dataclass(frozen=True)
class SpectrumSet:
    """A union of disjoint dyadic octave boxes in Z^d.

    The box with index s holds the frequencies k with
    2^{s_j - 1} <= |k_j| < 2^{s_j} and k_j != 0 in every coordinate, so it
    contains exactly 2^{|s|_1} points.  Cardinality is exact (Python ints);
    materialization is guarded by a point-count cap.
    """

    d: int
    boxes: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_boxes(d: int, boxes) -> "SpectrumSet":
        cleaned = sorted({_check_box_index(s, d) for s in boxes})
        return SpectrumSet(d=d, boxes=tuple(cleaned))

    @cached_property
    def size(self) -> int:
        return sum(1 << sum(s) for s in self.boxes)

    def __len__(self) -> int:
        return self.size

    def materialize(self, cap: int = MATERIALIZE_CAP) -> np.ndarray:
        """All member frequencies as an (n, d) int64 array in row-lex order."""
        if self.size > cap:
            raise CapacityError(
                f"spectrum holds {self.size} frequencies, exceeding the cap {cap}")
        if not self.boxes:
            return np.empty((0, self.d), dtype=np.int64)
        parts = [_box_points(s) for s in self.boxes]
        pts = np.concatenate(parts, axis=0)
        order = np.lexsort(pts.T[::-1])
        return pts[order]


def _octave_coords(sj: int) -> np.ndarray:
    lo, hi = 1 << (sj - 1), 1 << sj
    pos = np.arange(lo, hi, dtype=np.int64)
    return np.concatenate([-pos[::-1], pos])


def _box_points(s: tuple[int, ...]) -> np.ndarray:
    axes = [_octave_coords(sj) for sj in s]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def rho(s) -> SpectrumSet:
    """The single octave box with index s (every s_j >= 1)."""
    s = tuple(int(x) for x in np.atleast_1d(np.asarray(s)).tolist())
    return SpectrumSet.from_boxes(len(s), [s])


@dataclass(frozen=True)
class IndexFamily:
    """A finite family of box indices, sorted lexicographically."""

    kind: str
    n: float
    members: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, s) -> bool:
        return tuple(int(x) for x in s) in set(self.members)

    def as_array(self) -> np.ndarray:
        if not self.members:
            return np.empty((0, 0), dtype=np.int64)
        return np.asarray(self.members, dtype=np.int64)


def _log2_weight_1d(r: float, b: float, s: int) -> float:
    return r * s + b * math.log2(s)


def _turning_point(r: float, b: float) -> int:
    # w(s) = 2^{rs} s^b decreases until s* = -b/(r ln 2) when b < 0.
    if b >= 0:
        return 1
    return max(1, math.ceil(-b / (r * math.log(2))))


def _coordinate_min_log2w(r: float, b: float) -> float:
    star = _turning_point(r, b)
    return min(_log2_weight_1d(r, b, s) for s in range(1, star + 2))


def _check_n(n: float) -> float:
    n = float(n)
    if not (n > 0) or math.isinf(n) or math.isnan(n):
        raise ParameterError(f"threshold N must be a positive finite number, got {n}")
    return n


def chi(params: MajorantParams, n: float) -> IndexFamily:
    """Box indices of the step hyperbolic cross: all s with w(s) <= N."""
    n = _check_n(n)
    target = math.log2(n)
    r, b, d = params.r, params.b, params.d
    mins = [_coordinate_min_log2w(r, bj) for bj in b]
    suffix_min = [0.0] * (d + 1)
    for i in range(d - 1, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + mins[i]

    members: list[tuple[int, ...]] = []
    prefix = [0] * d

    def descend(i: int, used: float):
        if i == d:
            members.append(tuple(prefix))
            if len(members) > ENUMERATION_CAP:
                raise CapacityError(
                    f"hyperbolic cross at N={n} exceeds {ENUMERATION_CAP} boxes")
            return
        limit = target - used - suffix_min[i + 1]
        star = _turning_point(r, b[i])
        s = 1
        while True:
            w = _log2_weight_1d(r, b[i], s)
            if w <= limit:
                prefix[i] = s
                descend(i + 1, used + w)
            elif s > star:
                break
            s += 1
            if s > 10 ** 6:
                raise CapacityError("coordinate scan exceeded 10^6 octaves")

    descend(0, 0.0)
    members.sort()
    return IndexFamily(kind="chi", n=n, members=tuple(members))


def theta(params: MajorantParams, n: float) -> IndexFamily:
    """The boundary shell: box indices with N < w(s) <= 2^l N."""
    n = _check_n(n)
    target = math.log2(n)
    outer = chi(params, n * 2.0 ** params.l)
    keep = [s for s in outer
            if sum(_log2_weight_1d(params.r, bj, sj)
                   for bj, sj in zip(params.b, s)) > target]
    return IndexFamily(kind="theta", n=n, members=tuple(keep))


def theta_prime(params: MajorantParams, n: float) -> IndexFamily:
    """A balanced subfamily of the shell with all coordinates comparable.

    The first d-1 coordinates range over [ceil(L/(2rd)), floor(L/(rd))] with
    L = floor(log2 N); the last coordinate is the smallest one pushing the
    weight above N.  Members whose weight overshoots 2^l N, or whose last
    coordinate falls below the common lower bound, are discarded.  In
    dimension one this is the shell itself.
    """
    n = _check_n(n)
    if params.d == 1:
        fam = theta(params, n)
        return IndexFamily(kind="theta_prime", n=n, members=fam.members)

    target = math.log2(n)
    big_l = math.floor(target)
    r, b, d = params.r, params.b, params.d
    lo = max(1, math.ceil(big_l / (2 * r * d)))
    hi = math.floor(big_l / (r * d))
    members: list[tuple[int, ...]] = []
    if hi >= lo:
        prefix_range = range(lo, hi + 1)

        def emit(prefix: tuple[int, ...]):
            used = sum(_log2_weight_1d(r, bj, sj) for bj, sj in zip(b, prefix))
            s = 1
            while True:
                w = used + _log2_weight_1d(r, b[-1], s)
                if w > target:
                    if w <= target + params.l and s >= lo:
                        members.append(prefix + (s,))
                    return
                s += 1
                if s > 10 ** 6:
                    raise CapacityError("coordinate scan exceeded 10^6 octaves")

        def build(prefix: tuple[int, ...]):
            if len(prefix) == d - 1:
                emit(prefix)
                return
            for sj in prefix_range:
                build(prefix + (sj,))

        build(())
    members = sorted(set(members))
    return IndexFamily(kind="theta_prime", n=n, members=tuple(members))


def q_set(params: MajorantParams, n: float) -> SpectrumSet:
    """Frequencies of the step hyperbolic cross Q(N): the union of octave
    boxes over chi(N)."""
    fam = chi(params, n)
    return SpectrumSet(d=params.d, boxes=fam.members)


def q_size(params: MajorantParams, n: float) -> int:
    """Exact cardinality of Q(N) as a Python integer."""
    return sum(1 << sum(s) for s in chi(params, n))


def size_prediction(params: MajorantParams, n: float) -> float:
    """The closed-form cardinality scale N^{1/r} L^{d-1-sum(b)/r}, L=log2 N."""
    n = _check_n(n)
    big_l = max(1.0, math.log2(n))
    expo = (params.d - 1) - sum(params.b) / params.r
    return n ** (1.0 / params.r) * big_l ** expo


def _term_log_parts(params: MajorantParams, p: float, beta: float):
    a = (params.r - beta) * p
    cs = [bj * p for bj in params.b]
    return a, cs


def _g_value(a: float, c: float, s: int) -> float:
    return 2.0 ** (-a * s) * float(s) ** (-c)


def _family_term(params: MajorantParams, p: float, beta: float, s) -> float:
    a, cs = _term_log_parts(params, p, beta)
    out = 1.0
    for c, sj in zip(cs, s):
        out *= _g_value(a, c, sj)
    return out


@dataclass(frozen=True)
class TailSumResult:
    """Certified evaluation of the weight-series tail outside the cross."""

    value: float
    bound: float
    s_max: int

    @property
    def relative_bound(self) -> float:
        return self.bound / self.value if self.value > 0 else math.inf


def tail_sum(params: MajorantParams, n: float, p: float, beta: float,
             rel_bound: float = 1e-6) -> TailSumResult:
    """Sum of prod_j [2^{-(r-beta) s_j} s_j^{-b_j}]^p over all boxes outside
    chi(N), with a certified truncation bound.

    The series is summed over the cube [1, S]^d minus the cross part, and the
    remainder is dominated coordinatewise by geometric series: the term
    ratio is at most 2^{-a} when b_j p >= 0 (a = (r-beta)p) and at most
    2^{-a/2} once s exceeds 2|b_j| p / (a ln 2).  S grows until the certified
    remainder is below ``rel_bound`` times the value.
    """
    n = _check_n(n)
    if not (beta < params.r):
        raise ParameterError(f"need beta < r, got beta={beta}, r={params.r}")
    if not (p >= 1):
        raise ParameterError(f"need p >= 1, got {p}")
    a, cs = _term_log_parts(params, p, beta)

    cross = chi(params, n)
    box_floor = max((max(s) for s in cross.members), default=1)
    s_star = [max(1, math.ceil(2 * abs(c) / (a * math.log(2)))) if c < 0 else 1
              for c in cs]
    s_max = max([box_floor, 8, *s_star])

    cross_part = sum(_family_term(params, p, beta, s) for s in cross)
    while True:
        fulls = []
        tails = []
        for c, st in zip(cs, s_star):
            grid = np.arange(1, s_max + 1, dtype=float)
            full = float(np.sum(2.0 ** (-a * grid) * grid ** (-c)))
            ratio = 2.0 ** (-a) if c >= 0 else 2.0 ** (-a / 2.0)
            head = _g_value(a, c, s_max + 1)
            fulls.append(full)
            tails.append(head / (1.0 - ratio))
        box_total = math.prod(fulls)
        with_tails = math.prod(f + t for f, t in zip(fulls, tails))
        value = box_total - cross_part
        bound = with_tails - box_total
        if value > 0 and bound <= rel_bound * value:
            return TailSumResult(value=value, bound=bound, s_max=s_max)
        if s_max > 10 ** 6:
            raise CapacityError("tail sum failed to certify below the requested bound")
        s_max *= 2


def theta_sum(params: MajorantParams, n: float, p: float, beta: float) -> float:
    """The same summand as tail_sum, restricted to the boundary shell."""
    n = _check_n(n)
    if not (beta < params.r):
        raise ParameterError(f"need beta < r, got beta={beta}, r={params.r}")
    if not (p >= 1):
        raise ParameterError(f"need p >= 1, got {p}")
    return sum(_family_term(params, p, beta, s) for s in theta(params, n))
