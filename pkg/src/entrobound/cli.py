"""``entrobound`` command-line interface.

Exit codes: 0 success, 1 I/O failure, 2 domain/precondition/parse error,
3 tolerance breach (a verification found a violation), 64 usage error.

Settings resolve as command-line flag > ``--config`` file > defaults; the
default seed comes from ``ENTROBOUND_SEED`` when set. The config file is INI
text with a single ``[entrobound]`` section whose keys are the long flag names
with dashes or underscores (``seed``, ``trials``, ``dim``, ``grid``, ``out``,
``format``, ``log_base``, ``constant_c``, ``eps``, ``E``, ``alpha``, ``beta``).
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import harness, io, qbounds
from .classical import classical_renyi_tsallis_bound, fano_bound, shannon_continuity_bound
from .dist import DiscreteDistribution, WeightSequence
from .errors import DomainError, EntroboundError
from .logbase import log_base, parse_base
from .quantum import (
    DensityMatrix,
    HamiltonianSpec,
    energy,
    fidelity,
    passive_state,
    quantum_power_trace,
    quantum_renyi,
    quantum_tsallis,
    trace_distance,
    von_neumann_entropy,
)
from .rng import CounterRNG
from .sampling import perturbed_pair, random_state

EXIT_OK, EXIT_IO, EXIT_DOMAIN, EXIT_TOLERANCE, EXIT_USAGE = 0, 1, 2, 3, 64

BOUND_KINDS = (
    "fano",
    "shannon",
    "vn",
    "winter3",
    "winter2",
    "renyi-tsallis-classical",
    "renyi-tsallis-quantum",
    "tsallis-lip",
    "renyi-gt1",
    "moment-f1",
    "moment-falpha",
)
EXPERIMENTS = ("fano", "shannon", "renyi-tsallis-classical", "quantum")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ------------------------------------------------------------------ config


def _float_list(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _int_list(text) -> list[int]:
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


@dataclass
class RunConfig:
    seed: int = 0
    trials: int = 1000
    dims: list = field(default_factory=list)
    grid: str | None = None
    output_path: str | None = None
    format: str | None = None
    log_base: float = math.e
    constant_c: float = 1.0

    def __post_init__(self):
        if self.trials < 1:
            raise UsageError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        if any(d < 1 for d in self.dims):
            raise UsageError("dimensions must be positive")
        if self.grid is not None:
            harness.Grid.parse(self.grid)
        if self.format not in (None, "csv", "json", "text"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")


_CONFIG_KEYS = {
    "seed": "seed",
    "trials": "trials",
    "dim": "dim",
    "grid": "grid",
    "out": "out",
    "format": "format",
    "log_base": "log_base",
    "constant_c": "constant_c",
    "eps": "eps",
    "e": "E",
    "alpha": "alpha",
    "beta": "beta",
}


def read_config_file(path: str) -> dict:
    cp = configparser.ConfigParser()
    cp.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except configparser.Error as exc:
        raise UsageError(f"config file {path}: {exc}") from None
    if "entrobound" not in cp:
        raise UsageError(f"config file {path}: missing [entrobound] section")
    out = {}
    for key, value in cp["entrobound"].items():
        norm = key.replace("-", "_")
        norm = "e" if norm == "E" else norm.lower()
        if norm not in _CONFIG_KEYS:
            raise UsageError(f"config file {path}: unknown key {key!r}")
        out[_CONFIG_KEYS[norm]] = value
    return out


def default_seed() -> int:
    env = os.environ.get("ENTROBOUND_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env, 0)
    except ValueError:
        raise UsageError(f"ENTROBOUND_SEED must be an integer, got {env!r}") from None


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from the config file, then from defaults."""
    file_vals = read_config_file(args.config) if getattr(args, "config", None) else {}
    casts = {
        "seed": lambda v: int(v, 0) if isinstance(v, str) else int(v),
        "trials": int,
        "dim": str,
        "grid": str,
        "out": str,
        "format": str,
        "log_base": str,
        "constant_c": float,
        "eps": str,
        "E": str,
        "alpha": str,
        "beta": str,
    }
    for name, cast in casts.items():
        if getattr(args, name, None) is None and name in file_vals:
            try:
                setattr(args, name, cast(file_vals[name]))
            except ValueError:
                raise UsageError(f"config key {name!r}: bad value {file_vals[name]!r}") from None
    if args.seed is None:
        args.seed = default_seed()
    try:
        base = parse_base(args.log_base)
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    args.run = RunConfig(
        seed=args.seed,
        trials=args.trials if args.trials is not None else 1000,
        dims=_int_list(args.dim) if args.dim is not None else [],
        grid=args.grid,
        output_path=args.out,
        format=args.format,
        log_base=base,
        constant_c=args.constant_c if args.constant_c is not None else 1.0,
    )
    return args


def _scalar(args, name: str, default=None, required: bool = True) -> float:
    v = getattr(args, name, None)
    if v is None:
        if default is not None or not required:
            return default
        raise UsageError(f"--{name} is required")
    vals = _float_list(v)
    if len(vals) != 1:
        raise UsageError(f"--{name} takes a single number here, got {v!r}")
    return vals[0]


def _list(args, name: str, default) -> list[float]:
    v = getattr(args, name, None)
    return list(default) if v is None else _float_list(v)


def _dim(args, default: int) -> int:
    dims = args.run.dims
    if not dims:
        return default
    if len(dims) != 1:
        raise UsageError("--dim takes a single truncation here")
    return dims[0]


def parse_hamiltonian(text: str | None) -> HamiltonianSpec:
    """``number`` (N), ``shifted[:kappa]`` ((N+1)**kappa), ``power:kappa`` (N**kappa)."""
    if text is None:
        return HamiltonianSpec.number()
    name, _, arg = text.partition(":")
    try:
        if name == "number" and not arg:
            return HamiltonianSpec.number()
        if name == "shifted":
            return HamiltonianSpec.shifted_number(float(arg) if arg else 1.0)
        if name == "power" and arg:
            return HamiltonianSpec.number_power(float(arg))
    except ValueError:
        pass
    raise UsageError(f"--H must be number, shifted[:kappa] or power:kappa, got {text!r}")


# ------------------------------------------------------------------ output


def _emit(args, text: str) -> None:
    if args.run.output_path:
        io.write_text(args.run.output_path, text)
    else:
        sys.stdout.write(text)


def _emit_table(args, columns: list[str], rows: list[dict], meta: dict | None = None) -> None:
    if (args.run.format or "csv") == "json":
        payload = {"columns": columns, "rows": rows}
        if meta:
            payload.update(meta)
        _emit(args, io.json_text(payload))
    else:
        _emit(args, io.csv_text(columns, rows))


# ------------------------------------------------------------------ states


def _load_pair(args, d_default: int = 8):
    if args.rho and args.sigma:
        return io.read_matrix(args.rho), io.read_matrix(args.sigma), None
    if args.rho or args.sigma:
        raise UsageError("give both --rho and --sigma, or neither for a random pair")
    rng = CounterRNG(args.run.seed)
    d = _dim(args, d_default)
    return random_state(rng, d), random_state(rng, d), {"random_pair_seed": args.run.seed, "d": d}


def _load_classical_pair(args):
    if args.p and args.q:
        return io.read_distribution(args.p), io.read_distribution(args.q), None
    if args.p or args.q:
        raise UsageError("give both --p and --q, or neither for a random pair")
    d = _dim(args, 1000)
    p, q, eps = perturbed_pair(CounterRNG(args.run.seed), d)
    return p, q, {"random_pair_seed": args.run.seed, "d": d, "mixing": eps}


# ---------------------------------------------------------------- commands


def _bound_report(args):
    kind = args.kind
    if kind in ("fano", "shannon", "vn", "winter3", "winter2"):
        eps, E = _scalar(args, "eps"), _scalar(args, "E")
        if kind == "fano":
            return fano_bound(eps, E), None
        if kind == "shannon":
            return shannon_continuity_bound(eps, E), None
        if kind == "vn":
            return qbounds.vn_continuity_bound(eps, E), None
        if kind == "winter3":
            return qbounds.winter_bound_number_op(eps, E), None
        return qbounds.winter_bound_alpha(eps, E, _scalar(args, "alpha")), None
    if kind == "renyi-tsallis-classical":
        p, q, meta = _load_classical_pair(args)
        w = WeightSequence(args.weights, 1.0)
        return classical_renyi_tsallis_bound(p, q, _scalar(args, "alpha"), _scalar(args, "beta"), w), meta
    rho, sigma, meta = _load_pair(args)
    H = parse_hamiltonian(args.H)
    if kind == "renyi-tsallis-quantum":
        alpha = _scalar(args, "alpha")
        beta_exp = args.beta_exp
        f = qbounds.power_function(alpha)
        mu = args.mu
        if mu is None:
            mu = max(qbounds.spectral_moment(s, H, beta_exp, f) for s in (rho, sigma))
        inputs = qbounds.ApproxBoundInputs.from_alpha_q(
            rho, sigma, H, beta_exp, mu, _scalar(args, "eps", 0.05), alpha, args.q
        )
        return qbounds.quantum_renyi_tsallis_bound(inputs, qbounds.UniversalConstant(args.run.constant_c)), meta
    if kind == "tsallis-lip":
        return qbounds.tsallis_lipschitz_bound(rho, sigma, _scalar(args, "alpha")), meta
    if kind == "renyi-gt1":
        alpha = _scalar(args, "alpha")
        if args.delta is not None:
            cond = qbounds.RenyiCondition.from_delta(args.delta)
        else:
            E = _scalar(args, "E", required=False)
            if E is None:
                E = max(energy(rho, H), energy(sigma, H))
            cond = qbounds.RenyiCondition.from_hamiltonian(H, E, args.beta_split)
        return qbounds.renyi_alpha_gt1_bound(rho, sigma, alpha, cond), meta
    if kind == "moment-f1":
        return qbounds.moment_bound_f1(rho, H), meta
    return qbounds.moment_bound_falpha(rho, H, _scalar(args, "alpha"), args.variant, args.r), meta


def cmd_bound(args) -> int:
    rep, meta = _bound_report(args)
    d = rep.to_dict()
    if meta:
        d["instance"] = meta
    fmt = args.run.format or "text"
    if fmt == "json":
        sys.stdout.write(io.json_text(d))
    elif fmt == "csv":
        cols = ["name", "value", "in_validity_domain"] + [k for k, _ in rep.terms]
        row = {"name": rep.name, "value": rep.value, "in_validity_domain": rep.in_validity_domain}
        row.update(dict(rep.terms))
        sys.stdout.write(io.csv_text(cols, [row]))
    else:
        sys.stdout.write(rep.format() + "\n")
    if args.run.output_path:
        io.write_text(args.run.output_path, io.json_text(d))
    return EXIT_OK


def cmd_sweep(args) -> int:
    grid = harness.Grid.parse(args.run.grid) if args.run.grid else harness.DEFAULT_GRID
    alphas = _list(args, "alpha", harness.DEFAULT_WINTER2_ALPHAS)
    rows = harness.sweep(grid, alphas)
    cols = harness.sweep_columns(alphas)
    if (args.run.format or "csv") == "json":
        io.validate_sweep_rows(rows)
        _emit(args, io.json_text(rows))
    else:
        _emit(args, io.csv_text(cols, rows))
    return EXIT_OK


MC_COLUMNS = {
    "fano": ["trial", "kind", "d", "eps", "E", "actual", "bound", "margin", "in_domain"],
    "shannon": ["trial", "kind", "d", "eps", "E", "actual", "bound", "margin", "in_domain"],
    "renyi-tsallis-classical": [
        "trial", "kind", "d", "eps", "beta", "actual", "bound", "margin", "actual_renyi", "margin_renyi", "in_domain",
    ],
    "quantum": ["trial", "kind", "d", "rotated", "param", "actual", "bound", "margin", "in_domain", "minimal_c"],
}


def cmd_montecarlo(args) -> int:
    dims = args.run.dims
    res = harness.montecarlo(
        args.experiment,
        seed=args.run.seed,
        trials=args.run.trials,
        dim=dims[0] if dims else None,
        alpha=_scalar(args, "alpha", required=False),
        betas=_list(args, "beta", harness.RENYI_TSALLIS_BETAS),
        constant_c=args.run.constant_c,
        workers=args.workers,
    )
    summary = io.json_text(res.summary)
    if args.run.output_path:
        io.write_text(args.run.output_path, io.csv_text(MC_COLUMNS[args.experiment], res.rows))
        io.write_text(args.summary or args.run.output_path + ".summary.json", summary)
    else:
        if args.summary:
            io.write_text(args.summary, summary)
        sys.stdout.write(summary)
    if res.summary["violations"]:
        sys.stderr.write(f"error: {res.summary['violations']} bound violation(s)\n")
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_tightness(args) -> int:
    if args.asymptotic:
        eps = _scalar(args, "eps", 0.3)
        rows = harness.asymptotic_table(eps, range(5, args.n_max + 1))
        verdict = harness.asymptotic_verdict(rows)
        _emit_table(args, ["n", "K", "ratio_eps_n", "ratio_tight"], rows, {"verdict": verdict})
        if not verdict["passed"]:
            sys.stderr.write(
                f"error: ratio K/(eps n) ends at {verdict['final_ratio']!r} "
                f"(monotone: {str(verdict['monotone_decreasing']).lower()}), not within 0.15 of 1\n"
            )
            return EXIT_TOLERANCE
        return EXIT_OK
    grid = harness.Grid.parse(args.run.grid) if args.run.grid else harness.Grid(
        harness.Range(0.0, 1.0, 20), harness.Range(0.25, 8.0, 20)
    )
    rows = harness.tightness(grid, d=_dim(args, 4096), tol=args.tail_tol, include_zero=True)
    _emit_table(args, ["epsilon", "E", "bound", "achieved", "gap", "tail_mass", "d"], rows)
    worst = max(rows, key=lambda r: r["gap"])
    if worst["gap"] > args.tol:
        sys.stderr.write(f"error: gap {worst['gap']!r} > {args.tol!r} at eps={worst['epsilon']!r}, E={worst['E']!r}\n")
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_fa(args) -> int:
    betas = _list(args, "beta", harness.DEFAULT_FA_BETAS)
    for b in betas:
        if not 0 < b <= 0.2:
            raise DomainError(f"beta values must lie in (0, 0.2], got {b!r}")
    alphas = _list(args, "alpha", harness.DEFAULT_FA_ALPHAS)
    rep = harness.fa_report(betas, alphas, args.K)
    if (args.run.format or "text") == "json":
        _emit(args, io.json_text(rep))
    else:
        lines = ["beta,lower,upper,width,floor_ok"]
        lines += [
            f"{r['beta']!r},{r['lower']!r},{r['upper']!r},{r['width']!r},{str(r['floor_ok']).lower()}"
            for r in rep["beta_log_z"]
        ]
        lines.append("")
        lines.append("alpha_exp,K,partial,tail_upper,entropy_upper,finite")
        lines += [
            f"{r['alpha_exp']!r},{r['K']},{r['partial']!r},{r['tail_upper']!r},{r['entropy_upper']!r},"
            f"{str(r['finite']).lower()}"
            for r in rep["entropy"]
        ]
        _emit(args, "\n".join(lines) + "\n")
    if not rep["all_floors_ok"]:
        sys.stderr.write("error: a beta log Z lower bracket is not above 1/4\n")
        return EXIT_TOLERANCE
    return EXIT_OK


def _try(fn):
    try:
        rep = fn()
    except EntroboundError as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}
    return rep.to_dict()


def analyze(rho: DensityMatrix, sigma: DensityMatrix, H: HamiltonianSpec, E: float | None, alpha: float,
            constant_c: float = 1.0) -> dict:
    """Diagnostics of a state pair and every bound that applies to it."""
    if rho.d != sigma.d:
        raise DomainError(f"truncations differ: {rho.d} vs {sigma.d}")
    e_rho, e_sig = energy(rho, H), energy(sigma, H)
    E = max(e_rho, e_sig) if E is None else E
    td = trace_distance(rho, sigma)
    F = fidelity(rho, sigma)
    S = (von_neumann_entropy(rho), von_neumann_entropy(sigma))
    pr, ps = passive_state(rho), passive_state(sigma)
    out = {
        "d": rho.d,
        "H": H.label(),
        "energy": {"rho": e_rho, "sigma": e_sig, "E": E},
        "trace_distance": td,
        "fidelity": F,
        "fuchs_van_de_graaf": {
            "lower": 1.0 - F,
            "upper": math.sqrt(max(0.0, 1.0 - F * F)),
            "holds": 1.0 - F <= td + 1e-9 and td <= math.sqrt(max(0.0, 1.0 - F * F)) + 1e-9,
        },
        "passive": {
            "energy_rho": energy(pr, H),
            "energy_sigma": energy(ps, H),
            "trace_distance": trace_distance(pr, ps),
            "entropy_rho": von_neumann_entropy(pr),
            "entropy_sigma": von_neumann_entropy(ps),
        },
        "entropy": {"rho": S[0], "sigma": S[1], "difference": abs(S[0] - S[1])},
        "bounds": {},
    }
    b = out["bounds"]
    eps = min(td, 1.0)
    if E > 0:
        b["vn"] = _try(lambda: qbounds.vn_continuity_bound(eps, E))
        b["winter3"] = _try(lambda: qbounds.winter_bound_number_op(eps, E))
        b["winter-general"] = _try(lambda: qbounds.winter_bound_general(eps, E))
        for a in harness.DEFAULT_WINTER2_ALPHAS:
            b[f"winter2_a{a!r}"] = _try(lambda a=a: qbounds.winter_bound_alpha(eps, E, a))
    else:
        b["vn"] = {"error": "DomainError: energy bound E must be positive"}
    for a in (1.5, 2.0, 3.0):
        b[f"tsallis-lip_a{a!r}"] = _try(lambda a=a: qbounds.tsallis_lipschitz_bound(rho, sigma, a))
        b[f"tsallis-lip_a{a!r}"]["actual"] = abs(quantum_tsallis(rho, a) - quantum_tsallis(sigma, a))
    shifted = HamiltonianSpec.shifted_number()
    b["renyi-gt1_a3"] = _try(
        lambda: qbounds.renyi_alpha_gt1_bound(
            rho, sigma, 3.0,
            qbounds.RenyiCondition.from_hamiltonian(shifted, max(energy(rho, shifted), energy(sigma, shifted)), 0.5),
        )
    )
    b["renyi-gt1_a3"]["actual"] = abs(quantum_renyi(rho, 3.0) - quantum_renyi(sigma, 3.0))
    f = qbounds.power_function(alpha)
    mu = max(qbounds.spectral_moment(s, shifted, 0.5, f) for s in (rho, sigma))
    b["renyi-tsallis-quantum"] = _try(
        lambda: qbounds.quantum_renyi_tsallis_bound(
            qbounds.ApproxBoundInputs.from_alpha_q(rho, sigma, shifted, 0.5, mu, 0.05, alpha, 2.0),
            qbounds.UniversalConstant(constant_c),
        )
    )
    b["renyi-tsallis-quantum"]["actual_tsallis"] = abs(quantum_tsallis(rho, alpha) - quantum_tsallis(sigma, alpha))
    b["renyi-tsallis-quantum"]["actual_renyi"] = abs(quantum_renyi(rho, alpha) - quantum_renyi(sigma, alpha))
    b["moment-f1"] = {n: _try(lambda s=s: qbounds.moment_bound_f1(s, shifted)) for n, s in (("rho", rho), ("sigma", sigma))}
    b["moment-falpha"] = {
        n: _try(lambda s=s: qbounds.moment_bound_falpha(s, shifted, alpha, "general", min(alpha, 0.3)))
        for n, s in (("rho", rho), ("sigma", sigma))
    }
    out["power_traces"] = {"alpha": alpha, "rho": quantum_power_trace(rho, alpha), "sigma": quantum_power_trace(sigma, alpha)}
    return out


def cmd_analyze(args) -> int:
    rho, sigma = io.read_matrix(args.rho_path), io.read_matrix(args.sigma_path)
    rep = analyze(
        rho,
        sigma,
        parse_hamiltonian(args.H),
        _scalar(args, "E", required=False),
        _scalar(args, "alpha", 0.8),
        args.run.constant_c,
    )
    _emit(args, io.json_text(rep))
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", help="INI file with an [entrobound] section")
    g.add_argument("--eps", help="trace distance / total variation / projection budget")
    g.add_argument("--E", help="mean or energy constraint")
    g.add_argument("--alpha", help="entropy order (a comma list where several are accepted)")
    g.add_argument("--beta", help="Hölder split exponent (a comma list where several are accepted)")
    g.add_argument("--seed", type=lambda s: int(s, 0), help="64-bit seed (default: $ENTROBOUND_SEED or 0)")
    g.add_argument("--trials", type=int)
    g.add_argument("--dim", help="truncation dimension")
    g.add_argument("--grid", help="EPS_LO:EPS_HI:N,E_LO:E_HI:M")
    g.add_argument("--out", help="output file (default: stdout)")
    g.add_argument("--format", choices=("csv", "json", "text"))
    g.add_argument("--log-base", dest="log_base", help="e (default), 2/bits, or any real > 1")
    g.add_argument("--constant-c", dest="constant_c", type=float, help="operator-Hölder constant c (default 1)")

    p = _Parser(prog="entrobound", description="Entropy continuity bounds: evaluation and verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", parents=[common], help="evaluate one bound")
    b.add_argument("kind", choices=BOUND_KINDS)
    b.add_argument("--rho", help="density-matrix JSON")
    b.add_argument("--sigma", help="density-matrix JSON")
    b.add_argument("--p", help="distribution JSON")
    b.add_argument("--q", type=str, default=None, help="distribution JSON (classical) ")
    b.add_argument("--H", help="number | shifted[:kappa] | power:kappa")
    b.add_argument("--weights", choices=("identity", "shifted"), default="identity")
    b.add_argument("--beta-exp", dest="beta_exp", type=float, default=0.5, help="moment exponent of H")
    b.add_argument("--mu", type=float, help="moment ceiling (default: largest actual moment)")
    b.add_argument("--holder-q", dest="q_exp", type=float, default=2.0, help="Hölder exponent q")
    b.add_argument("--delta", type=float)
    b.add_argument("--beta-split", dest="beta_split", type=float, default=0.5)
    b.add_argument("--variant", choices=("general", "half_power"), default="general")
    b.add_argument("--r", type=float)
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("sweep", parents=[common], help="tight vs Winter bounds on a grid")
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("montecarlo", parents=[common], help="random dominance checks")
    m.add_argument("experiment", choices=EXPERIMENTS)
    m.add_argument("--workers", type=int, default=1)
    m.add_argument("--summary", help="summary JSON path (default: OUT.summary.json)")
    m.set_defaults(func=cmd_montecarlo)

    t = sub.add_parser("tightness", parents=[common], help="extremal constructions against the tight bound")
    t.add_argument("--tol", type=float, default=1e-8)
    t.add_argument("--tail-tol", dest="tail_tol", type=float, default=1e-9)
    t.add_argument("--asymptotic", action="store_true", help="K(eps, 1/n, e^n)/(eps n) table")
    t.add_argument("--n-max", dest="n_max", type=int, default=20)
    t.set_defaults(func=cmd_tightness)

    f = sub.add_parser("fa", parents=[common], help="FA-property numerics")
    f.add_argument("--K", type=int, default=1_000_000)
    f.set_defaults(func=cmd_fa)

    a = sub.add_parser("analyze", parents=[common], help="diagnose a pair of density matrices")
    a.add_argument("rho_path")
    a.add_argument("sigma_path")
    a.add_argument("--H", help="number | shifted[:kappa] | power:kappa")
    a.set_defaults(func=cmd_analyze)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors (64) and --help (0) by exiting
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if hasattr(args, "q_exp"):
        args.q = args.q_exp if args.kind == "renyi-tsallis-quantum" else args.q
    try:
        resolve(args)
        with log_base(args.run.log_base):
            return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"entrobound: error: {exc}\n")
        return EXIT_USAGE
    except EntroboundError as exc:
        sys.stderr.write(f"entrobound: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        sys.stderr.write(f"entrobound: I/O error: {exc}\n")
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
