"""Exact additive energies and the Salem-parameter estimator.

L_{2k}(E) counts 2k-tuples (y_1..y_2k) in E^{2k} with
y_1 + ... + y_k = y_{k+1} + ... + y_2k. Conventions for this tuple count
vary; we adopt this one because it is the unique definition under which
the character-orthogonality identity checked in `spectral` is an exact
equality (see README).

Two independent evaluation paths:

* energy_bruteforce — tuple enumeration with a membership completion,
  O(|E|^{2k-1}); the oracle.
* energy_convolution — iterated exact convolution of the representation
  function r_k(v) = #{k-tuples of E summing to v}; L = sum r_k(v)^2.

Both are exact-integer throughout (Python ints, so no 64-bit overflow).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import check_budget, ConfigError
from .field import FieldSpec
from .geometry import PointSet, Vector, vadd, vsub


def _adder(F: FieldSpec):
    """Fast componentwise vector adder; table-driven for small q."""
    if F.r == 1:
        p = F.p
        return lambda x, y: tuple((a + b) % p for a, b in zip(x, y))
    if F.q <= 512:
        table = [[F.add(a, b) for b in range(F.q)] for a in range(F.q)]
        return lambda x, y: tuple(table[a][b] for a, b in zip(x, y))
    return lambda x, y: vadd(F, x, y)


def representation_function(E: PointSet, k: int, budget: int | None = None) -> dict[Vector, int]:
    """r_k(v) = number of ordered k-tuples from E summing to v."""
    if k < 1:
        raise ConfigError("k must be >= 1")
    add = _adder(E.field)
    r: dict[Vector, int] = {p: 1 for p in E.points}
    for step in range(k - 1):
        check_budget(len(r) * max(len(E), 1), budget, "energy convolution")
        nxt: dict[Vector, int] = {}
        for v, c in r.items():
            for y in E.points:
                w = add(v, y)
                nxt[w] = nxt.get(w, 0) + c
        r = nxt
    return r


def energy_convolution(E: PointSet, k: int, budget: int | None = None) -> int:
    """L_{2k}(E) = sum_v r_k(v)^2, exact."""
    if len(E) == 0:
        return 0
    r = representation_function(E, k, budget)
    return sum(c * c for c in r.values())


def energy_bruteforce(E: PointSet, k: int, budget: int | None = None) -> int:
    """Oracle: enumerate (2k-1)-tuples and complete the last slot by membership."""
    n = len(E)
    if n == 0:
        return 0
    check_budget(n ** (2 * k - 1), budget, "brute-force energy")
    F = E.field
    add = _adder(F)
    neg = lambda x: tuple(F.neg(c) for c in x)
    members = E._index
    count = 0
    pts = E.points
    for left in product(pts, repeat=k):
        lsum = left[0]
        for y in left[1:]:
            lsum = add(lsum, y)
        for right in product(pts, repeat=k - 1):
            rsum = right[0] if right else None
            for y in right[1:]:
                rsum = add(rsum, y)
            # last = lsum - rsum must lie in E
            last = vsub(F, lsum, rsum) if right else lsum
            if last in members:
                count += 1
    return count


def difference_set(E: PointSet, budget: int | None = None) -> PointSet:
    check_budget(len(E) ** 2, budget, "difference set")
    F = E.field
    return PointSet.build(F, E.d,
                          (vsub(F, x, y) for x in E.points for y in E.points))


@dataclass(frozen=True)
class EnergyReport:
    k: int
    lam: int
    set_size: int
    q: int
    d: int
    background: Fraction  # |E|^{2k} / q^d, exact
    salem_s: float | None  # only for k = 2
    constant: float
    trivial_size_one: bool = False

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "lambda": str(self.lam),
            "size": self.set_size,
            "q": self.q,
            "d": self.d,
            "salemS": self.salem_s,
            "C": self.constant,
        }


def salem_parameter(E: PointSet, C: float = 1.0, lam4: int | None = None,
                    budget: int | None = None) -> float:
    """Largest s in [1/4, 1/2] with L_4(E) <= C(|E|^4/q^d + |E|^{4-4s}).

    |E| = 1 returns 1/2 by convention (the exponent is vacuous) with a warning.
    """
    n = len(E)
    if n == 0:
        raise ConfigError("salem_parameter needs a nonempty set")
    if n == 1:
        warnings.warn("singleton set: Salem parameter defaults to 1/2", stacklevel=2)
        return 0.5
    if lam4 is None:
        lam4 = energy_convolution(E, 2, budget)
    q_d = E.field.q ** E.d
    residual = max(lam4 / C - n ** 4 / q_d, 1.0)
    s = 0.25 * (4.0 - math.log(residual) / math.log(n))
    return min(0.5, max(0.25, s))


def energy_report(E: PointSet, k: int, C: float = 1.0, budget: int | None = None) -> EnergyReport:
    lam = energy_convolution(E, k, budget)
    n = len(E)
    q_d = E.field.q ** E.d
    s = None
    trivial = False
    if k == 2 and n >= 1:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            s = salem_parameter(E, C, lam4=lam, budget=budget)
        trivial = n == 1
    return EnergyReport(k, lam, n, E.field.q, E.d,
                        Fraction(n ** (2 * k), q_d), s, C, trivial)
