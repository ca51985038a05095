"""XOS instances: encoding, evaluation, validation and closed-form dual certificates.

An instance is a ground set of ``m`` weighted elements together with a
``k x m`` matrix of nonnegative clause values.  The objective is

    f(S) = max_i  sum_{e in S} clauses[i, e]

which is monotone and fractionally subadditive by construction.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

EPS = 1e-9
#: Largest ground set for which all 2**m subsets are tabulated.
ENUMERATION_LIMIT = 22
#: Largest ground set for the exhaustive dual-feasibility check.
DUAL_CHECK_LIMIT = 20


class InputError(ValueError):
    """Malformed or out-of-range input."""


class CapabilityError(RuntimeError):
    """The request exceeds what exhaustive enumeration can handle."""


@dataclass(frozen=True, eq=False)
class Instance:
    element_ids: tuple[str, ...]
    weights: np.ndarray
    clauses: np.ndarray

    def __post_init__(self):
        ids = tuple(str(e) for e in self.element_ids)
        w = np.array(self.weights, dtype=float).reshape(-1)
        v = np.array(self.clauses, dtype=float)
        if v.ndim == 1:
            v = v.reshape(1, -1)
        if len(ids) == 0:
            raise InputError("instance needs at least one element")
        if len(set(ids)) != len(ids):
            raise InputError("element ids must be unique")
        if w.shape != (len(ids),):
            raise InputError(f"expected {len(ids)} weights, got {w.size}")
        if v.ndim != 2 or v.shape[0] == 0 or v.shape[1] != len(ids):
            raise InputError(f"clause matrix must be k x {len(ids)} with k >= 1, got shape {v.shape}")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(v))):
            raise InputError("weights and clause values must be finite")
        if np.any(v < 0):
            raise InputError("clause values must be nonnegative")
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "element_ids", ids)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "clauses", v)

    @property
    def m(self) -> int:
        return len(self.element_ids)

    @property
    def k(self) -> int:
        return self.clauses.shape[0]

    @property
    def singleton_values(self) -> np.ndarray:
        return self.clauses.max(axis=0)

    @property
    def M(self) -> float:
        return float(self.singleton_values.max())

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def index_of(self, label: str) -> int:
        try:
            return self.element_ids.index(label)
        except ValueError:
            raise InputError(f"unknown element {label!r}") from None

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "elements": list(self.element_ids),
            "weights": self.weights.tolist(),
            "clauses": self.clauses.tolist(),
        }

    def to_json(self) -> str:
        return (
            "{"
            f'"elements": {json.dumps(list(self.element_ids))}, '
            f'"weights": {_float_list(self.weights)}, '
            f'"clauses": [{", ".join(_float_list(row) for row in self.clauses)}]'
            "}\n"
        )

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        try:
            weights = data["weights"]
            clauses = data["clauses"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"instance JSON is missing {exc}") from None
        elements = data.get("elements") or [f"e{i + 1}" for i in range(len(weights))]
        return cls(tuple(elements), np.asarray(weights, dtype=float), np.asarray(clauses, dtype=float))

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid instance JSON: {exc}") from None
        return cls.from_dict(data)


def _float_list(values) -> str:
    # 17 significant digits round-trips every double
    return "[" + ", ".join(format(float(x), ".17g") for x in values) + "]"


def make_instance(weights, clauses, element_ids: Sequence[str] | None = None) -> Instance:
    """Convenience constructor; element ids default to ``e1..em``."""
    w = np.asarray(weights, dtype=float)
    if element_ids is None:
        element_ids = [f"e{i + 1}" for i in range(w.size)]
    return Instance(tuple(element_ids), w, np.asarray(clauses, dtype=float))


def as_indices(instance: Instance, S: Iterable[int]) -> tuple[int, ...]:
    """Normalize an element set to a sorted tuple of distinct indices."""
    out = set()
    for e in S:
        if isinstance(e, (bool, np.bool_)) or not isinstance(e, (int, np.integer)):
            raise InputError(f"element indices must be integers, got {e!r}")
        if not 0 <= e < instance.m:
            raise InputError(f"unknown element index {e}")
        out.add(int(e))
    return tuple(sorted(out))


def evaluate(instance: Instance, S: Iterable[int]) -> float:
    idx = list(as_indices(instance, S))
    if not idx:
        return 0.0
    return float(instance.clauses[:, idx].sum(axis=1).max())


@dataclass
class ValidationReport:
    M: float
    ok: bool
    violations: list[str] = field(default_factory=list)


def validate(instance: Instance) -> ValidationReport:
    """Check positivity of weights and M-boundedness of singleton values.

    Monotonicity and fractional subadditivity hold for every nonnegative
    clause matrix and are not re-checked.
    """
    violations = []
    single = instance.singleton_values
    for e, label in enumerate(instance.element_ids):
        if instance.weights[e] <= 0:
            violations.append(f"nonpositive weight: {label} has w={instance.weights[e]:g}")
        if single[e] < 1 - EPS:
            violations.append(f"singleton value below 1: {label} has f={single[e]:g}")
    return ValidationReport(M=float(single.max()), ok=not violations, violations=violations)


@dataclass(frozen=True)
class DualCertificate:
    """Optimal dual of the covering LP for ``subset``; ``gamma[j]`` belongs to ``subset[j]``."""

    subset: tuple[int, ...]
    gamma: tuple[float, ...]
    clause_index: int

    def total(self) -> float:
        return float(sum(self.gamma))

    def as_vector(self, m: int) -> np.ndarray:
        g = np.zeros(m)
        g[list(self.subset)] = self.gamma
        return g


def dual_solution(instance: Instance, X: Iterable[int]) -> DualCertificate:
    idx = as_indices(instance, X)
    if not idx:
        raise InputError("dual certificate needs a nonempty set")
    sums = instance.clauses[:, list(idx)].sum(axis=1)
    # np.argmax returns the first maximizer, i.e. the lowest clause index
    best = int(np.argmax(sums))
    gamma = tuple(float(instance.clauses[best, e]) for e in idx)
    return DualCertificate(subset=idx, gamma=gamma, clause_index=best)


def subset_sums(values: np.ndarray) -> np.ndarray:
    """Sums of ``values`` over all 2**m subsets; bit ``e`` of the index selects element ``e``."""
    values = np.asarray(values, dtype=float)
    out = np.zeros(1 << values.size)
    for b, x in enumerate(values):
        lo = 1 << b
        out[lo : 2 * lo] = out[:lo] + x
    return out


def _check_enumerable(instance: Instance, limit: int) -> None:
    if instance.m > limit:
        raise CapabilityError(f"exhaustive enumeration supports m <= {limit}, instance has m={instance.m}")


def subset_weights(instance: Instance) -> np.ndarray:
    _check_enumerable(instance, ENUMERATION_LIMIT)
    cache = instance.__dict__.setdefault("_cache", {})
    if "weights" not in cache:
        cache["weights"] = subset_sums(instance.weights)
    return cache["weights"]


def subset_values(instance: Instance) -> np.ndarray:
    """f(B) for every subset B, indexed by bitmask."""
    _check_enumerable(instance, ENUMERATION_LIMIT)
    cache = instance.__dict__.setdefault("_cache", {})
    if "values" not in cache:
        best = subset_sums(instance.clauses[0])
        for row in instance.clauses[1:]:
            np.maximum(best, subset_sums(row), out=best)
        cache["values"] = best
    return cache["values"]


def mask_of(S: Iterable[int]) -> int:
    mask = 0
    for e in S:
        mask |= 1 << int(e)
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def verify_dual_feasible(instance: Instance, cert: DualCertificate) -> bool:
    """Exhaustively check the certificate against every subset of the ground set.

    Raises CapabilityError above ``DUAL_CHECK_LIMIT`` elements.
    """
    _check_enumerable(instance, DUAL_CHECK_LIMIT)
    idx = as_indices(instance, cert.subset)
    if idx != tuple(cert.subset) or len(cert.gamma) != len(idx):
        return False
    if any(g < -EPS for g in cert.gamma):
        return False
    if abs(cert.total() - evaluate(instance, idx)) > EPS:
        return False
    lhs = subset_sums(cert.as_vector(instance.m))
    return bool(np.all(lhs <= subset_values(instance) + EPS))
