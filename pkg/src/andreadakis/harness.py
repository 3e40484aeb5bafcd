"""Seeded verification runs for the filtration theorems.

Every sample draws its inputs from its own seed, derived from the run seed and
the sample index, so a run is reproducible sample by sample and independent of
how samples are spread over workers.  Samples whose degrees hit the truncation
sentinel are reported as indeterminate, never as passes.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import _kernels, autf, braid, dk
from .degree import INFINITE, Degree, degrees_agree
from .errors import AndreadakisError, BudgetExceededError
from .freegroup import Word, commutator, format_word
from .freelie import lyndon_words, witt_dimension
from .magnus import compose_series, gamma_degree, generator_series, series_displacement_degree

TARGETS = (
    "triangular",
    "mccool",
    "braid",
    "dk",
    "word-lemma",
    "disjointness",
    "strong-centrality",
)

THREADS_ENV = "ANDREADAKIS_THREADS"

PASS, FAIL, INDETERMINATE = "pass", "fail", "indeterminate"


class ConfigError(AndreadakisError, ValueError):
    """Invalid verification configuration."""


@dataclass(frozen=True)
class VerificationConfig:
    target: str
    n: int
    depth: int
    samples: int = 100
    seed: int = 0
    format: str = "text"
    length_budget: int = braid.core.DEFAULT_BUDGET

    def validate(self) -> None:
        if self.target not in TARGETS:
            raise ConfigError(f"unknown target {self.target!r}; choose from {', '.join(TARGETS)}")
        if self.n < 2:
            raise ConfigError("n must be >= 2")
        if self.depth < 2:
            raise ConfigError("truncation degree must be >= 2")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 bits")
        if self.format not in ("text", "json"):
            raise ConfigError("format must be text or json")
        if self.length_budget < 1:
            raise ConfigError("length budget must be >= 1")


@dataclass
class VerificationReport:
    config: VerificationConfig
    records: list[dict]
    checks: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def count(self, verdict: str) -> int:
        return sum(r["verdict"] == verdict for r in self.records)

    @property
    def passed(self) -> int:
        return self.count(PASS)

    @property
    def failed(self) -> int:
        return self.count(FAIL) + sum(not c["ok"] for c in self.checks)

    @property
    def indeterminate(self) -> int:
        return self.count(INDETERMINATE)

    @property
    def verdict(self) -> str:
        return "FAIL" if self.failed else "PASS"

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "config": asdict(self.config),
            "records": self.records,
            "checks": self.checks,
            "summary": {
                "pass": self.passed,
                "fail": self.count(FAIL),
                "indeterminate": self.indeterminate,
                "failed_checks": sum(not c["ok"] for c in self.checks),
                "verdict": self.verdict,
            },
        }
        if timing:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    def to_text(self, verbose: bool = False) -> str:
        cfg = self.config
        lines = [
            f"target={cfg.target} n={cfg.n} D={cfg.depth} samples={cfg.samples} seed={cfg.seed}"
        ]
        for r in self.records:
            if verbose or r["verdict"] == FAIL:
                lines.append(
                    f"  [{r['verdict']}] #{r['index']} replay={r['replay_seed']} "
                    f"gamma={r['gamma_degree']} A={r['andreadakis_degree']} :: {r['input']}"
                )
        for c in self.checks:
            lines.append(f"  check {c['name']}: {'ok' if c['ok'] else 'FAILED'} {c.get('detail', '')}".rstrip())
        lines.append(
            f"pass={self.passed} fail={self.count(FAIL)} indeterminate={self.indeterminate} "
            f"time={self.wall_time:.2f}s verdict={self.verdict}"
        )
        return "\n".join(lines)


def sample_seed(seed: int, index: int) -> int:
    """Per-sample seed, a pure function of the run seed and the sample index."""
    state = np.random.SeedSequence([seed, index]).generate_state(2, np.uint32)
    return int(state[0]) << 32 | int(state[1])


def _deg(d: Degree) -> str:
    return str(d)


def _verdict(agree) -> str:
    return {True: PASS, False: FAIL, None: INDETERMINATE}[agree]


def _record(input_desc: str, g: Degree | str, a: Degree | str, verdict: str, **extra) -> dict:
    rec = {
        "input": input_desc,
        "gamma_degree": g if isinstance(g, str) else _deg(g),
        "andreadakis_degree": a if isinstance(a, str) else _deg(a),
        "verdict": verdict,
    }
    rec.update(extra)
    return rec


# --- targets ----------------------------------------------------------------


def _describe_triangular(t: autf.TriangularAut) -> str:
    parts = []
    for i in range(2, t.rank + 1):
        w, g = t.w(i), t.gamma(i)
        if w or g:
            parts.append(f"w{i}={format_word(w) or '1'}, g{i}={format_word(g) or '1'}")
    return "; ".join(parts) or "identity"


def _triangular(cfg: VerificationConfig, rng: random.Random, mccool: bool) -> dict:
    top = max(1, min(4, cfg.depth - 1))
    j = rng.randint(1, top)
    t = autf.sample_gamma_witness(j, cfg.n, rng.getrandbits(64), mccool=mccool)
    g = autf.triangular_gamma_degree(t, cfg.depth)
    a = autf.andreadakis_degree(t.to_aut(), cfg.depth)
    return _record(_describe_triangular(t), g, a, _verdict(degrees_agree(g, a)), witness_j=j)


def _target_triangular(cfg, rng):
    return _triangular(cfg, rng, mccool=False)


def _target_mccool(cfg, rng):
    return _triangular(cfg, rng, mccool=True)


def _target_braid(cfg, rng):
    b = braid.sample_braid(cfg.n, rng)
    try:
        g = braid.braid_gamma_degree(b, cfg.depth, cfg.length_budget)
    except BudgetExceededError as exc:
        return _record(str(b), "budget", "-", INDETERMINATE, detail=str(exc))
    a = braid.braid_andreadakis_degree(b, cfg.depth)
    return _record(str(b), g, a, _verdict(degrees_agree(g, a)))


def _random_dk(n: int, rng: random.Random, max_degree: int) -> dk.DKElement:
    gens = [dk.DKElement.generator(i, j, n) for i, j in dk.generators(n)]
    out = dk.DKElement.zero(n)
    for _ in range(rng.randint(1, 2)):
        e = rng.choice(gens)
        for _ in range(rng.randint(1, max_degree) - 1):
            e = dk.dk_bracket(rng.choice(gens), e)
        out = out + rng.choice((-2, -1, 1, 2)) * e
    return out


def _target_dk(cfg, rng):
    a, b, c = (_random_dk(cfg.n, rng, 2) for _ in range(3))
    br = dk.dk_bracket
    jac = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
    anti = br(a, b) + br(b, a)
    ok = jac.is_zero() and anti.is_zero()
    return _record(f"a={a}; b={b}; c={c}", "-", "-", PASS if ok else FAIL, check="jacobi")


def _dk_checks(cfg: VerificationConfig) -> list[dict]:
    import itertools

    n = cfg.n
    t = lambda i, j: dk.DKElement.generator(i, j, n)  # noqa: E731
    bad = []
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        if not dk.dk_bracket(t(i, j), t(i, k) + t(k, j)).is_zero():
            bad.append(f"[t({i},{j}), t({i},{k}) + t({k},{j})]")
    for i, j, k, l in itertools.permutations(range(1, n + 1), 4):
        if not dk.dk_bracket(t(i, j), t(k, l)).is_zero():
            bad.append(f"[t({i},{j}), t({k},{l})]")
    max_k = min(cfg.depth, 5)
    spanned = dk.spanned_dimensions(n, max_k)
    expected = [dk.dk_dimension(n, k) for k in range(1, max_k + 1)]
    oracle = dk.derive_delta(max(n, 3)) == dk.delta_table(max(n, 3))
    return [
        {"name": "relations", "ok": not bad, "detail": ", ".join(bad[:5])},
        {
            "name": "dimensions",
            "ok": spanned == expected,
            "detail": f"spanned={spanned} expected={expected}",
        },
        {"name": "derivation-constants", "ok": oracle, "detail": ""},
    ]


def _target_word_lemma(cfg, rng):
    n, depth = cfg.n, cfg.depth
    i = rng.randint(1, n)
    j = rng.randint(1, max(1, depth - 2))
    u = autf.random_gamma_element(n, j, rng)
    x = Word.generator(n, i)
    w = x ** rng.randint(-2, 2) * u * x ** rng.randint(-2, 2)
    c = gamma_degree(commutator(w, x), depth)
    # [w, x_i] in Γ_{J+1}; with a bound beyond the truncation, claim J = depth
    big_j = depth if not c.is_exact else c.value - 1
    m = -w.exponent(i)
    d = gamma_degree(w * x**m, depth)
    ok = d.at_least(big_j)
    return _record(
        f"w={format_word(w) or '1'}; i={i}",
        d,
        "-",
        PASS if ok else FAIL,
        commutator_degree=str(c),
        j=big_j,
        m=m,
    )


def _kills_last(images, n: int, depth: int, trivial: bool) -> bool | None:
    """Whether the Johnson image vanishes on ``x_n``, from series images.

    The Johnson image is the leading displacement, so it kills ``x_n`` exactly
    when that displacement starts strictly later than the minimum.
    """
    if trivial:
        return True
    offs = _kernels.magnus_py.block_offsets(n, depth)
    vals = []
    for i, im in enumerate(images, start=1):
        disp = _kernels.series_mul(im, generator_series(n, depth, i, -1), n, depth)
        vals.append(next((d for d in range(1, depth + 1) if disp[offs[d] : offs[d + 1]].any()), None))
    known = [v for v in vals if v is not None]
    if not known:
        return None
    return vals[-1] is None or vals[-1] > min(known)


def _braid_trivial(beta) -> bool:
    return all(w.is_identity() for w in braid.comb(beta).factors)


def _target_disjointness(cfg, rng):
    n, depth = cfg.n, cfg.depth
    r = n - 1
    top = 1 if r == 1 else max(1, min(3, depth - 2))
    j = rng.randint(1, top)
    # IA_n^+: kernel factor moves only x_n, complement fixes it
    w = autf.random_gamma_element(r, j, rng)
    if w.is_identity():
        w = Word.generator(r, rng.randint(1, r))
    g = autf.random_gamma_element(r, j + 1, rng) if rng.random() < 0.5 else Word(r)
    idle = [(Word(k - 1), Word(k - 1)) for k in range(2, n)]
    psi = autf.TriangularAut(n, tuple(idle + [(w, g)]))
    sigma = autf.complement_factor(autf.sample_gamma_witness(j, n, rng.getrandbits(64)))
    # P_n: kernel word in A(1,n)..A(n-1,n), complement on the first n-1 strands
    kw = autf.random_gamma_element(r, j, rng)
    if kw.is_identity():
        kw = Word.generator(r, rng.randint(1, r))
    kernel = braid.PureBraidWord.from_letters(n, braid.kernel_letters(kw, n))
    if n >= 3:
        comp = braid.sample_braid(n - 1, rng, 6)
        comp = braid.PureBraidWord(n, comp.syllables)
    else:
        comp = braid.PureBraidWord(n)
    results = {
        "ia_kernel": _kills_last(
            compose_series([psi.to_aut()], n, depth), n, depth, psi.to_aut().is_identity()
        ),
        "ia_complement": _kills_last(
            compose_series([sigma.to_aut()], n, depth), n, depth, sigma.to_aut().is_identity()
        ),
        "braid_kernel": _kills_last(
            braid.braid_series_images(kernel, depth), n, depth, _braid_trivial(kernel)
        ),
        "braid_complement": _kills_last(
            braid.braid_series_images(comp, depth), n, depth, _braid_trivial(comp)
        ),
    }
    expected = {
        "ia_kernel": False,
        "ia_complement": True,
        "braid_kernel": False,
        "braid_complement": True,
    }
    if any(v is None for v in results.values()):
        verdict = INDETERMINATE
    else:
        verdict = PASS if results == expected else FAIL
    desc = (
        f"ia_kernel: {_describe_triangular(psi)} | ia_complement: {_describe_triangular(sigma)} | "
        f"braid_kernel: {kernel} | braid_complement: {comp}"
    )
    return _record(desc, "-", "-", verdict, kills_last={k: v for k, v in results.items()})


def _random_ia(n: int, rng: random.Random, weight: int) -> autf.IAWord:
    def letter():
        if n >= 3 and rng.random() < 0.4:
            i, a, b = rng.sample(range(1, n + 1), 3)
            return autf.k_gen3(i, a, b, n)
        i, a = rng.sample(range(1, n + 1), 2)
        return autf.k_gen(i, a, n)

    w = letter()
    for _ in range(weight - 1):
        v = letter()
        w = w * v * w.inverse() * v.inverse()
    return w


def _ia_factors(w: autf.IAWord) -> list[autf.FreeAut]:
    out = []
    for letter, e in w.syllables:
        f = autf.evaluate(autf.IAWord.from_letters(w.rank, [(letter, 1 if e > 0 else -1)]))
        out += [f] * abs(e)
    return out


def _witness(cfg, rng, p: int, attempts: int = 8):
    """A nontrivial sample from A_p as short factors, with its label and degree."""
    for _ in range(attempts):
        if rng.random() < 0.5:
            t = autf.sample_gamma_witness(p, cfg.n, rng.getrandbits(64))
            fs, desc = [t.to_aut()], _describe_triangular(t)
        else:
            w = _random_ia(cfg.n, rng, p)
            fs, desc = _ia_factors(w), autf.format_ia_word(w)
        d = _product_degree(fs, cfg.n, cfg.depth)
        if not d.is_infinite:
            break
    return fs, desc, d


def _inverse_factors(fs):
    return [f.inverse() for f in reversed(fs)]


def _product_degree(fs, n: int, depth: int) -> Degree:
    d = series_displacement_degree(compose_series(fs, n, depth), n, depth)
    if d.is_exact:
        return d
    # only the series is truncated; settle triviality on the image words
    steps = [
        ([w.syllables for w in f.images], [w.inverse().syllables for w in f.images])
        for f in reversed(fs)
    ]
    start = [((i, 1),) for i in range(1, n + 1)]
    images = _kernels.apply_chain(start, steps)
    return INFINITE if all(im == ((i, 1),) for i, im in enumerate(images, 1)) else d


def _target_strong_centrality(cfg, rng):
    n, depth = cfg.n, cfg.depth
    p = rng.randint(1, max(1, depth // 2))
    q = rng.randint(1, max(1, depth - p))
    s, sd, ps = _witness(cfg, rng, p)
    t, td, qs = _witness(cfg, rng, q)
    desc = f"sigma: {sd} | tau: {td}"
    if ps.is_infinite or qs.is_infinite:
        # one side is the identity, so is the commutator
        return _record(desc, "-", INFINITE, PASS, p=str(ps), q=str(qs))
    c = s + t + _inverse_factors(s) + _inverse_factors(t)
    cd = series_displacement_degree(compose_series(c, n, depth), n, depth)
    if not (ps.is_exact and qs.is_exact):
        return _record(desc, "-", cd, INDETERMINATE, p=str(ps), q=str(qs))
    need = ps.value + qs.value
    if cd.at_least(need):
        verdict = PASS
    elif cd.is_exact:
        verdict = FAIL
    else:
        verdict = INDETERMINATE
    return _record(desc, "-", cd, verdict, p=str(ps), q=str(qs))


_TARGET_FUNCS: dict[str, Callable] = {
    "triangular": _target_triangular,
    "mccool": _target_mccool,
    "braid": _target_braid,
    "dk": _target_dk,
    "word-lemma": _target_word_lemma,
    "disjointness": _target_disjointness,
    "strong-centrality": _target_strong_centrality,
}


def run_sample(cfg: VerificationConfig, index: int, seed: int | None = None) -> dict:
    """Run one sample; ``seed`` overrides the derived per-sample seed (replay)."""
    s = sample_seed(cfg.seed, index) if seed is None else seed
    rec = _TARGET_FUNCS[cfg.target](cfg, random.Random(s))
    rec["index"] = index
    rec["replay_seed"] = s
    return rec


def _run_chunk(args) -> list[dict]:
    cfg, indices = args
    return [run_sample(cfg, i) for i in indices]


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        k = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    if k < 1:
        raise ConfigError(f"{THREADS_ENV} must be >= 1")
    return k


def run_verification(cfg: VerificationConfig, workers: int | None = None) -> VerificationReport:
    cfg.validate()
    workers = worker_count() if workers is None else workers
    start = time.perf_counter()
    indices = list(range(cfg.samples))
    if workers == 1 or cfg.samples == 1:
        records = [run_sample(cfg, i) for i in indices]
    else:
        chunks = [(cfg, indices[k::workers]) for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for part in pool.map(_run_chunk, chunks) for r in part]
        records.sort(key=lambda r: r["index"])
    checks = _dk_checks(cfg) if cfg.target == "dk" else []
    return VerificationReport(cfg, records, checks, time.perf_counter() - start)


def replay(cfg: VerificationConfig, index: int, seed: int) -> dict:
    cfg.validate()
    return run_sample(cfg, index, seed)


# --- tables -----------------------------------------------------------------


def emit_tables(n_range, k_range) -> dict:
    """Witt and Drinfeld–Kohno graded dimensions, cross-checked by enumeration."""
    witt, dkd = {}, {}
    for n in n_range:
        row, drow = [], []
        for k in k_range:
            value = witt_dimension(n, k)
            if value != len(lyndon_words(n, k)):
                raise ArithmeticError(f"Witt formula disagrees with enumeration at n={n}, k={k}")
            row.append(value)
            d = dk.dk_dimension(n, k)
            if d != len(dk.dk_basis(n, k)):
                raise ArithmeticError(f"DK dimension disagrees with its basis at n={n}, k={k}")
            drow.append(d)
        witt[n] = row
        dkd[n] = drow
    return {"k": list(k_range), "witt": witt, "dk": dkd}


def format_tables(tables: dict) -> str:
    ks = tables["k"]
    width = max(6, *(len(str(v)) + 1 for t in ("witt", "dk") for row in tables[t].values() for v in row))
    head = "n \\ k".ljust(8) + "".join(str(k).rjust(width) for k in ks)
    out = []
    for name, label in (("witt", "Witt dimensions (free Lie ring, rank n)"), ("dk", "Drinfeld–Kohno dimensions (p_n)")):
        out.append(label)
        out.append(head)
        for n, row in tables[name].items():
            out.append(str(n).ljust(8) + "".join(str(v).rjust(width) for v in row))
        out.append("")
    return "\n".join(out).rstrip() + "\n"


__all__ = [
    "ConfigError",
    "TARGETS",
    "VerificationConfig",
    "VerificationReport",
    "emit_tables",
    "format_tables",
    "replay",
    "run_sample",
    "run_verification",
    "sample_seed",
]

