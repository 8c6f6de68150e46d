"""Seeded randomized and exhaustive searches for circular Hessenberg systems.

The search space is parameter-array data (distinct eigenvalue tuples plus a
nonzero split tuple): every system has a split form, so this space is
complete up to isomorphism.  Candidates are screened by an exact
division-free probe that evaluates the same zero/nonzero pattern the axioms
demand (through the rank-one spectral decomposition of the bidiagonal split
matrices); every probe hit is then re-verified by the full idempotent-product
oracle, which is authoritative.  Hits that fail to be recurrent are
counterexamples to the open conjecture that all such systems are recurrent:
they are persisted as replayable JSON before any post-processing.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetExceededError, DimensionMismatchError, UnsupportedFieldError
from .fields import FieldSpec, field_to_string
from .recurrence import recurrence_status, td_witness, vartheta_from_array
from .systems import (
    ParameterArray,
    split_form_build,
    verify_ch_axioms,
    cyclic_irreducibility_check,
)
from .linalg import Vector

DEFAULT_EXHAUSTIVE_CAP = 10_000_000
DEFAULT_RANDOM_TRIALS = 100_000


@dataclass
class SearchConfig:
    spec: FieldSpec
    d: int
    mode: str  # "exhaustive" | "random"
    seed: int = 0
    trials: int = DEFAULT_RANDOM_TRIALS
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP
    report_path: str | None = None

    def to_json(self) -> dict:
        return {
            "field": field_to_string(self.spec),
            "d": self.d,
            "mode": self.mode,
            "seed": self.seed if self.mode == "random" else None,
            "trials": self.trials if self.mode == "random" else None,
            "exhaustive_cap": self.exhaustive_cap,
        }


@dataclass
class SearchReport:
    config: dict
    candidates_examined: int = 0
    ch_systems_found: int = 0
    recurrent_count: int = 0
    beta_histogram: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "candidates_examined": self.candidates_examined,
            "ch_systems_found": self.ch_systems_found,
            "recurrent_count": self.recurrent_count,
            "beta_histogram": self.beta_histogram,
            "counterexamples": self.counterexamples,
        }

    def to_bytes(self) -> bytes:
        return json.dumps(self.to_json(), sort_keys=True, indent=2).encode()


def _split_pattern_probe(spec, theta, theta_star, phi, d) -> bool:
    """Exact screen for the circular Hessenberg pattern of a split-form pair.

    E_i A* E_j equals a nonzero outer product scaled by r_i . (A* s_j), with
    r_i, s_j the (unnormalized) left/right eigenvectors of the bidiagonal
    matrices, so the pattern reduces to scalar tests.  Of the axiom pattern,
    only the strictly-upper zeros (1 < j - i < d) and the corner can fail
    for split-form data; the subdiagonal and lower-zero conditions hold
    identically and are left to the authoritative re-verification of hits.
    All arithmetic is division-free (global eigenvector rescaling).
    """
    add, sub, mul, is_zero = spec.add, spec.sub, spec.mul, spec.is_zero
    one, zero = spec.one, spec.zero
    n = d + 1

    # A: lower bidiagonal, diagonal theta[d-t] at t, ones below
    def right_a(k):
        x = [zero] * n
        x[d] = one
        for t in range(d, 0, -1):
            x[t - 1] = mul(sub(theta[k], theta[d - t]), x[t])
        return x

    def left_a(i):
        y = [zero] * n
        y[0] = one
        for j in range(d):
            y[j + 1] = mul(sub(theta[i], theta[d - j]), y[j])
        return y

    def probe_iv(i, j):
        r, s = left_a(i), right_a(j)
        acc = zero
        for t in range(n):
            v = mul(theta_star[t], s[t])
            if t < d:
                v = add(v, mul(phi[t], s[t + 1]))
            acc = add(acc, mul(r[t], v))
        return acc

    # A*: upper bidiagonal, diagonal theta_star[t] at t, phi above
    def right_astar(k):
        x = [zero] * n
        prefix = one
        phiprod = one
        vals = [None] * (k + 1)
        for i in range(k, -1, -1):
            vals[i] = phiprod
            if i > 0:
                phiprod = mul(phiprod, phi[i - 1])  # phi_{i} for descending i
        # multiply in the (theta*_k - theta*_s) prefixes, ascending
        for i in range(k + 1):
            x[i] = mul(vals[i], prefix)
            prefix = mul(prefix, sub(theta_star[k], theta_star[i]))
        return x

    def left_astar(i):
        y = [zero] * n
        suffix = [one] * (n + 1)
        for j in range(d, i - 1, -1):
            suffix[j] = mul(suffix[j + 1], sub(theta_star[i], theta_star[j]))
        phiprod = one
        for j in range(i, n):
            if j > i:
                phiprod = mul(phiprod, phi[j - 1])
            y[j] = mul(phiprod, suffix[j + 1])
        return y

    def probe_v(i, j):
        r, s = left_astar(i), right_astar(j)
        acc = zero
        for t in range(n):
            v = mul(theta[d - t], s[t])
            if t > 0:
                v = add(v, s[t - 1])
            acc = add(acc, mul(r[t], v))
        return acc

    for off in range(2, d):
        for i in range(0, n - off):
            if not is_zero(probe_iv(i, i + off)):
                return False
    if is_zero(probe_iv(0, d)):
        return False
    for off in range(2, d):
        for i in range(0, n - off):
            if not is_zero(probe_v(i, i + off)):
                return False
    if is_zero(probe_v(0, d)):
        return False
    return True


def _exhaustive_count(order: int, d: int) -> int:
    n = d + 1
    if order < n:
        return 0
    perms = math.perm(order, n)
    return perms * perms * (order - 1) ** d


def _candidates(cfg: SearchConfig):
    spec = cfg.spec
    elems = list(spec.element_payloads())
    nonzero = [e for e in elems if not spec.is_zero(e)]
    n = cfg.d + 1
    if cfg.mode == "exhaustive":
        for th in itertools.permutations(elems, n):
            for ths in itertools.permutations(elems, n):
                for ph in itertools.product(nonzero, repeat=cfg.d):
                    yield th, ths, ph
    elif cfg.mode == "random":
        rng = random.Random(cfg.seed)
        for _ in range(cfg.trials):
            th = tuple(rng.sample(elems, n))
            ths = tuple(rng.sample(elems, n))
            ph = tuple(rng.choice(nonzero) for _ in range(cfg.d))
            yield th, ths, ph
    else:
        raise ValueError(f"unknown search mode {cfg.mode!r}")


def search(cfg: SearchConfig) -> SearchReport:
    """Deterministic search; identical configs give byte-identical reports.

    Exit-status semantics live in the CLI: a nonempty counterexample list is
    a mathematical finding, not an artifact failure.
    """
    spec = cfg.spec
    if spec.order is None:
        raise UnsupportedFieldError("search requires a finite field")
    if cfg.d < 3:
        raise DimensionMismatchError("search needs d >= 3")
    if cfg.mode == "exhaustive":
        count = _exhaustive_count(spec.order, cfg.d)
        if count > cfg.exhaustive_cap:
            raise BudgetExceededError(
                f"exhaustive count {count} exceeds cap {cfg.exhaustive_cap}"
            )
    report = SearchReport(config=cfg.to_json())
    histogram: dict[str, int] = {}
    for th, ths, ph in _candidates(cfg):
        report.candidates_examined += 1
        if not _split_pattern_probe(spec, th, ths, ph, cfg.d):
            continue
        params = ParameterArray.make(spec, th, ths, ph)
        system = split_form_build(params)
        if not verify_ch_axioms(system).is_ch:
            continue
        report.ch_systems_found += 1
        status = recurrence_status(params)
        if status.recurrent:
            report.recurrent_count += 1
            for b in status.betas:
                key = str(b)
                histogram[key] = histogram.get(key, 0) + 1
        else:
            entry = params.to_json()
            report.counterexamples.append(entry)
            if cfg.report_path:
                path = Path(cfg.report_path).with_suffix(".counterexamples.json")
                path.write_text(
                    json.dumps(report.counterexamples, sort_keys=True, indent=2)
                )
    report.beta_histogram = dict(sorted(histogram.items()))
    if cfg.report_path:
        Path(cfg.report_path).write_bytes(report.to_bytes())
    return report


def replay(params: ParameterArray) -> dict:
    """Run the full pipeline on one array and emit a single JSON bundle:
    axiom verification, recurrence, tridiagonal witness, family
    classification, basis identities, and the invariant-subspace check.
    Classification contradictions are surfaced verbatim, never swallowed."""
    from .bases import build_basis_catalog, psi_check, standard_form_entries
    from .errors import (
        CircHessError,
        InternalContradictionError,
        NotCircularError,
        NotRecurrentError,
    )
    from .families import classify_family

    bundle: dict = {"parameter_array": params.to_json(), "ok": True}
    system = split_form_build(params)
    outcome = verify_ch_axioms(system)
    bundle["verify"] = outcome.to_json()
    if not outcome.is_ch:
        bundle["ok"] = False
        bundle["skipped"] = ["recurrence", "classification", "bases"]
        return bundle
    status = recurrence_status(params)
    bundle["recurrence"] = status.to_json()
    if status.recurrent:
        bundle["tridiagonal_witness"] = td_witness(system, status.betas[0]).to_json()
    try:
        cls = classify_family(params)
        bundle["classification"] = cls.to_json()
    except InternalContradictionError as e:
        bundle["classification"] = {"error": "InternalContradiction", "detail": str(e)}
        bundle["ok"] = False
    except (NotRecurrentError, NotCircularError) as e:
        bundle["classification"] = {"error": type(e).__name__, "detail": str(e)}
    try:
        catalog, scalars = build_basis_catalog(system)
        bases_info = {"normalization": scalars.to_json()}
        entries = standard_form_entries(params)
        bases_info["standard_form"] = entries.to_json()
        if status.recurrent:
            psi, psi_star = psi_check(params)
            bases_info["psi"] = str(psi)
            bases_info["psi_star"] = str(psi_star)
        bundle["bases"] = bases_info
    except CircHessError as e:
        bundle["bases"] = {"error": type(e).__name__, "detail": str(e)}
        bundle["ok"] = False
    seed = Vector.unit(params.spec, params.d + 1, 0)
    bundle["irreducible"] = cyclic_irreducibility_check(system, seed)
    vth = vartheta_from_array(params)
    bundle["vartheta"] = [str(v) for v in vth.values]
    return bundle
