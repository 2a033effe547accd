"""Randomised property checks for the hafnian/permanent inequalities.

Every trial draws its instance from its own Philox stream keyed by
``(seed, trial)``, so a single trial can be regenerated without replaying
the ones before it. Complex Gaussian entries are produced by Box-Muller
from the Philox uniforms.

Each check returns a *violation*: zero when the inequality holds with room
to spare, otherwise the normalised amount by which it fails. A trial fails
when its violation exceeds the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .hafper import BlockMatrix, assemble, hafnian, hafnian_block, permanent_ryser
from .induced import induced_c, induced_p
from .linalg import determinant, eigvalsh, spectral_norm
from .matrixio import matrix_from_dict, matrix_to_dict

NONNEG_TOL = 1e-9
BLOCK_TOL = 1e-10
MULT_TOL = 1e-9
PSD_TOL = 1e-9
IDENTITY_TOL = 1e-12

# trials with trial % SINGULAR_EVERY == 0 use a rank-deficient Gram matrix
SINGULAR_EVERY = 4

SUITES = ("nonnegativity", "monotonicity", "schur", "induced", "block-formula")


@dataclass
class InstanceGenerator:
    """Deterministic source of random test matrices.

    ``(seed, stream)`` keys a Philox bit generator; equal keys give equal
    instance sequences.
    """

    seed: int
    m: int
    magnitude: float = 1.0
    stream: int = 0
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        key = np.random.SeedSequence([self.seed, self.stream])
        self.rng = np.random.Generator(np.random.Philox(key))

    def complex_gaussian(self, shape) -> np.ndarray:
        """Standard complex normal entries (E|z|^2 = 1) scaled by ``magnitude``."""
        u1 = 1.0 - self.rng.random(shape)  # (0, 1]
        u2 = self.rng.random(shape)
        radius = np.sqrt(-2.0 * np.log(u1))
        z = radius * np.exp(2j * np.pi * u2) / math.sqrt(2.0)
        return self.magnitude * z


def gen_symmetric(g: InstanceGenerator) -> np.ndarray:
    z = g.complex_gaussian((g.m, g.m))
    return 0.5 * (z + z.T)


def gen_hermitian(g: InstanceGenerator) -> np.ndarray:
    z = g.complex_gaussian((g.m, g.m))
    return 0.5 * (z + z.conj().T)


def gen_psd(g: InstanceGenerator, singular: bool | None = None) -> np.ndarray:
    """Gram matrix ``G^* G``.

    When ``singular`` is true (or, if ``None``, with probability 1/4) G has
    fewer rows than columns, so the result is rank-deficient.
    """
    if singular is None:
        singular = bool(g.rng.random() < 0.25)
    rows = int(g.rng.integers(0, g.m)) if singular and g.m > 0 else g.m
    z = g.complex_gaussian((rows, g.m))
    gram = z.conj().T @ z
    return 0.5 * (gram + gram.conj().T)


@dataclass
class PropertyReport:
    property_name: str
    trials: int = 0
    failures: int = 0
    worst_violation: float = 0.0
    witness: dict | None = None
    seed: int | None = None
    singular_trials: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, violation: float, tol: float, witness: Callable[[], dict]) -> None:
        self.trials += 1
        self.worst_violation = max(self.worst_violation, violation)
        if violation > tol:
            self.failures += 1
            # first failure wins: trials run in increasing order
            if self.witness is None:
                self.witness = witness()

    def merge(self, other: "PropertyReport") -> "PropertyReport":
        if other.property_name != self.property_name:
            raise ValueError("cannot merge reports of different properties")
        witnesses = [r for r in (self, other) if r.witness is not None]
        best = min(witnesses, key=lambda r: (r.witness["seed"], r.witness["trial"]), default=None)
        return PropertyReport(
            self.property_name,
            self.trials + other.trials,
            self.failures + other.failures,
            max(self.worst_violation, other.worst_violation),
            best.witness if best else None,
            self.seed if self.seed == other.seed else None,
            self.singular_trials + other.singular_trials,
        )

    def to_line(self, witness_path: str | None = None) -> str:
        seed = "-" if self.seed is None else str(self.seed)
        return (
            f"{self.property_name} trials={self.trials} failures={self.failures} "
            f"worst_violation={self.worst_violation!r} seed={seed} "
            f"singular_trials={self.singular_trials} witness={witness_path or '-'}"
        )


def parse_report_line(line: str) -> dict:
    """Inverse of ``PropertyReport.to_line`` (witness comes back as a path)."""
    name, *fields = line.split()
    out: dict = {"property_name": name}
    for item in fields:
        key, _, val = item.partition("=")
        if key in ("trials", "failures", "singular_trials"):
            out[key] = int(val)
        elif key == "worst_violation":
            out[key] = float(val)
        elif key == "seed":
            out[key] = None if val == "-" else int(val)
        else:
            out[key] = None if val == "-" else val
    return out


def _scale(*values: complex) -> float:
    return max(1.0, *(abs(v) for v in values))


def _witness(name: str, seed: int, trial: int, extra: dict | None = None,
             **matrices) -> Callable[[], dict]:
    def build() -> dict:
        return {
            "property": name,
            "seed": seed,
            "trial": trial,
            **(extra or {}),
            "matrices": {k: matrix_to_dict(v) for k, v in matrices.items()},
        }
    return build


# individual checks; each takes matrices and returns a violation

def nonnegativity_violation(y, b) -> float:
    h = hafnian_block(BlockMatrix(y, b))
    s = _scale(h)
    return max(0.0, -h.real / s, abs(h.imag) / s)


def monotonicity_violation(y, b, l) -> float:
    hb = hafnian_block(BlockMatrix(y, b))
    hl = hafnian_block(BlockMatrix(y, l))
    return max(0.0, (hb.real - hl.real) / _scale(hb, hl))


def schur_violation(b) -> float:
    p = permanent_ryser(b)
    d = determinant(b)
    s = _scale(p)
    return max(0.0, (d.real - p.real) / s, -d.real / s)


def block_formula_violation(y, b) -> float:
    ab = BlockMatrix(y, b)
    direct = hafnian(assemble(ab))
    return abs(hafnian_block(ab) - direct) / _scale(direct)


def identity_violation(m: int, r: int) -> float:
    p = induced_p(np.eye(m), r).data
    return float(np.max(np.abs(p - np.eye(p.shape[0]))))


def multiplicativity_violation(q, s, r: int) -> float:
    lhs = induced_p(q @ s, r).data
    rhs = induced_p(q, r).data @ induced_p(s, r).data
    return float(np.max(np.abs(lhs - rhs))) / max(1.0, float(np.max(np.abs(rhs))))


def _psd_violation(h: np.ndarray, scale: float | None = None) -> float:
    vals = eigvalsh(h)
    if scale is None:
        scale = max(1.0, float(np.max(np.abs(vals))))
    return max(0.0, -float(vals[0]) / scale)


def psd_preservation_violation(b, r: int) -> float:
    return max(_psd_violation(induced_p(b, r).data), _psd_violation(induced_c(b, r)))


def loewner_violation(b, l, r: int) -> float:
    pl = induced_p(l, r).data
    pb = induced_p(b, r).data
    return _psd_violation(pl - pb, max(1.0, spectral_norm(pl)))


def _trial_dims(trial: int, m_max: int) -> int:
    return 1 + trial % m_max


def verify_nonnegativity(trials: int, m_max: int = 5, seed: int = 1,
                         tol: float = NONNEG_TOL) -> PropertyReport:
    """Check ``haf A(Y, B) >= 0`` (and real) for symmetric Y, PSD B.

    Trials cycle M through ``1..m_max``; every fourth B is rank-deficient
    and trials with ``trial % 10 == 7`` use ``Y = 0``.
    """
    if m_max > 6:
        raise DomainError(f"m_max={m_max} exceeds the cap 6")
    rep = PropertyReport("nonnegativity", seed=seed)
    for t in range(trials):
        g = InstanceGenerator(seed, _trial_dims(t, m_max), stream=t)
        y = gen_symmetric(g)
        if t % 10 == 7:
            y = np.zeros_like(y)
        singular = t % SINGULAR_EVERY == 0
        b = gen_psd(g, singular=singular)
        rep.singular_trials += singular
        rep.record(nonnegativity_violation(y, b), tol,
                   _witness(rep.property_name, seed, t, y=y, b=b))
    return rep


def verify_monotonicity(trials: int, m_max: int = 4, seed: int = 1,
                        tol: float = NONNEG_TOL) -> PropertyReport:
    """Check ``haf A(Y, L) >= haf A(Y, B)`` for ``L = B + Delta``, Delta PSD."""
    if m_max > 5:
        raise DomainError(f"m_max={m_max} exceeds the cap 5")
    rep = PropertyReport("monotonicity", seed=seed)
    for t in range(trials):
        g = InstanceGenerator(seed, _trial_dims(t, m_max), stream=t)
        y = gen_symmetric(g)
        singular = t % SINGULAR_EVERY == 0
        b = gen_psd(g, singular=singular)
        l = b + gen_psd(g)
        rep.singular_trials += singular
        rep.record(monotonicity_violation(y, b, l), tol,
                   _witness(rep.property_name, seed, t, y=y, b=b, l=l))
    return rep


def verify_schur(trials: int, n_max: int = 8, seed: int = 1,
                 tol: float = NONNEG_TOL) -> PropertyReport:
    """Check ``per(B) >= det(B) >= 0`` for PSD B."""
    if n_max > 8:
        raise DomainError(f"n_max={n_max} exceeds the cap 8")
    rep = PropertyReport("schur", seed=seed)
    for t in range(trials):
        g = InstanceGenerator(seed, _trial_dims(t, n_max), stream=t)
        singular = t % SINGULAR_EVERY == 0
        b = gen_psd(g, singular=singular)
        rep.singular_trials += singular
        rep.record(schur_violation(b), tol, _witness(rep.property_name, seed, t, b=b))
    return rep


def verify_block_formula(trials: int, m_max: int = 5, seed: int = 1,
                         tol: float = BLOCK_TOL) -> PropertyReport:
    """Check the block decomposition against direct enumeration, B Hermitian."""
    if m_max > 5:
        raise DomainError(f"m_max={m_max} exceeds the cap 5")
    rep = PropertyReport("block-formula", seed=seed)
    for t in range(trials):
        g = InstanceGenerator(seed, _trial_dims(t, m_max), stream=t)
        y = gen_symmetric(g)
        b = gen_hermitian(g)
        rep.record(block_formula_violation(y, b), tol,
                   _witness(rep.property_name, seed, t, y=y, b=b))
    return rep


def verify_induced_suite(trials: int, seed: int = 1) -> list[PropertyReport]:
    """Identity, multiplicativity, PSD preservation and Loewner monotonicity.

    The identity check is exhaustive over M <= 4, r <= 3; the others draw
    dimensions in ``1..4`` and r in ``1..3`` per trial.
    """
    ident = PropertyReport("induced-identity", seed=seed)
    for m in range(1, 5):
        for r in range(1, 4):
            ident.record(identity_violation(m, r), IDENTITY_TOL,
                         _witness(ident.property_name, seed, 3 * (m - 1) + r - 1,
                                  {"m": m, "r": r}))
    mult = PropertyReport("induced-multiplicativity", seed=seed)
    psd = PropertyReport("induced-psd", seed=seed)
    loew = PropertyReport("induced-loewner", seed=seed)
    for t in range(trials):
        g = InstanceGenerator(seed, 1, stream=t)
        m, n, p = (int(v) for v in g.rng.integers(1, 5, size=3))
        r = int(g.rng.integers(1, 4))
        g.m = m
        q = g.complex_gaussian((m, n))
        s = g.complex_gaussian((n, p))
        mult.record(multiplicativity_violation(q, s, r), MULT_TOL,
                    _witness(mult.property_name, seed, t, {"r": r}, q=q, s=s))
        singular = t % SINGULAR_EVERY == 0
        b = gen_psd(g, singular=singular)
        psd.singular_trials += singular
        loew.singular_trials += singular
        psd.record(psd_preservation_violation(b, r), PSD_TOL,
                   _witness(psd.property_name, seed, t, {"r": r}, b=b))
        l = b + gen_psd(g)
        loew.record(loewner_violation(b, l, r), PSD_TOL,
                    _witness(loew.property_name, seed, t, {"r": r}, b=b, l=l))
    return [ident, mult, psd, loew]


_REPLAYERS: dict[str, Callable[[dict, dict], float]] = {
    "nonnegativity": lambda m, w: nonnegativity_violation(m["y"], m["b"]),
    "monotonicity": lambda m, w: monotonicity_violation(m["y"], m["b"], m["l"]),
    "schur": lambda m, w: schur_violation(m["b"]),
    "block-formula": lambda m, w: block_formula_violation(m["y"], m["b"]),
    "induced-identity": lambda m, w: identity_violation(w["m"], w["r"]),
    "induced-multiplicativity": lambda m, w: multiplicativity_violation(m["q"], m["s"], w["r"]),
    "induced-psd": lambda m, w: psd_preservation_violation(m["b"], w["r"]),
    "induced-loewner": lambda m, w: loewner_violation(m["b"], m["l"], w["r"]),
}


def replay_witness(witness: dict) -> float:
    """Recompute the violation recorded in a witness from its stored matrices."""
    mats = {k: matrix_from_dict(v) for k, v in witness["matrices"].items()}
    return _REPLAYERS[witness["property"]](mats, witness)


def run_suite(name: str, trials: int = 200, seed: int = 1) -> list[PropertyReport]:
    """Run one named suite, or every suite for ``name == "all"``."""
    if name == "all":
        return [rep for suite in SUITES for rep in run_suite(suite, trials, seed)]
    if name == "nonnegativity":
        return [verify_nonnegativity(trials, 5, seed)]
    if name == "monotonicity":
        return [verify_monotonicity(trials, 4, seed)]
    if name == "schur":
        return [verify_schur(trials, 8, seed)]
    if name == "induced":
        return verify_induced_suite(trials, seed)
    if name == "block-formula":
        return [verify_block_formula(trials, 5, seed)]
    raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
