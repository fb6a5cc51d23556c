"""Run configuration: JSON ingestion, validation, exact defaults."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .equivalence import FAMILIES

SUITE_NAMES = ("algebra", "chaos", "gaussian", "poisson", "moyal", "equivalence")

# The default suite list omits "equivalence": the default truncation
# (N=6, R=4) leaves no degree window for the transform checks, which need
# N - 2R >= 0.  configs/equivalence.json ships a working combination.
DEFAULT_SUITES = ("algebra", "chaos", "gaussian", "poisson", "moyal")


class ConfigError(ValueError):
    """Invalid configuration; message carries the offending field path."""


def parse_rational(text, where: str) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ConfigError(f"{where}: expected a rational like \"3/4\", got {text!r}")


@dataclass(frozen=True)
class McConfig:
    """Stochastic-layer knobs: sample counts, seed, spectral cutoff, grids."""

    n_samples: int = 20000
    seed: int = 42
    K_mc: int = 64
    M: int = 512
    n_grid: int = 4096


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters; the exact layer reads d, K, N, R, weight_c."""

    d: int = 2
    K: int = 3
    N: int = 6
    R: int = 4
    weight_c: Fraction = Fraction(1)
    alpha_spec: Union[str, dict] = "ksq"
    mc: McConfig = field(default_factory=McConfig)
    suites: tuple = DEFAULT_SUITES
    output_path: Optional[str] = None


def _expect_int(doc: dict, key: str, default: int, where: str, minimum: int) -> int:
    value = doc.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{where}.{key}: expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{where}.{key}: must be >= {minimum}, got {value}")
    return value


def parse_config(doc: dict, where: str = "config") -> RunConfig:
    """Validate a parsed JSON object; unknown keys are rejected with their path."""
    if not isinstance(doc, dict):
        raise ConfigError(f"{where}: expected a JSON object, got {type(doc).__name__}")
    known = {"d", "K", "N", "R", "weight_c", "alpha_spec", "mc", "suites", "output_path"}
    for key in doc:
        if key not in known:
            raise ConfigError(f"{where}.{key}: unknown field")
    d = _expect_int(doc, "d", 2, where, 1)
    K = _expect_int(doc, "K", 3, where, 1)
    N = _expect_int(doc, "N", 6, where, 2)
    R = _expect_int(doc, "R", 4, where, 1)
    weight_c = parse_rational(doc.get("weight_c", "1"), f"{where}.weight_c")
    if weight_c <= 0:
        raise ConfigError(f"{where}.weight_c: must be positive, got {weight_c}")

    alpha_spec = doc.get("alpha_spec", "ksq")
    if isinstance(alpha_spec, str):
        if alpha_spec not in FAMILIES:
            raise ConfigError(f"{where}.alpha_spec: unknown family {alpha_spec!r}; "
                              f"known families: {', '.join(FAMILIES)}")
    elif isinstance(alpha_spec, dict):
        table = {}
        for k_txt, v in alpha_spec.items():
            try:
                k = int(k_txt)
            except (TypeError, ValueError):
                raise ConfigError(f"{where}.alpha_spec: frequency key {k_txt!r} is not an integer") from None
            if abs(k) > K:
                raise ConfigError(f"{where}.alpha_spec: frequency {k} outside cutoff K={K}")
            frac = parse_rational(v, f"{where}.alpha_spec[{k}]")
            table[k] = f"{frac.numerator}/{frac.denominator}"
        alpha_spec = table
    else:
        raise ConfigError(f"{where}.alpha_spec: expected a family name or a table")

    mc_doc = doc.get("mc", {})
    if not isinstance(mc_doc, dict):
        raise ConfigError(f"{where}.mc: expected an object")
    for key in mc_doc:
        if key not in {"n_samples", "seed", "K_mc", "M", "n_grid"}:
            raise ConfigError(f"{where}.mc.{key}: unknown field")
    mc = McConfig(
        n_samples=_expect_int(mc_doc, "n_samples", 20000, f"{where}.mc", 100),
        seed=_expect_int(mc_doc, "seed", 42, f"{where}.mc", 0),
        K_mc=_expect_int(mc_doc, "K_mc", 64, f"{where}.mc", 1),
        M=_expect_int(mc_doc, "M", 512, f"{where}.mc", 2),
        n_grid=_expect_int(mc_doc, "n_grid", 4096, f"{where}.mc", 64),
    )
    if mc.seed >= 1 << 64:
        raise ConfigError(f"{where}.mc.seed: must fit in 64 bits")

    suites = doc.get("suites", list(DEFAULT_SUITES))
    if not isinstance(suites, list) or not all(isinstance(s, str) for s in suites):
        raise ConfigError(f"{where}.suites: expected a list of suite names")
    for s in suites:
        if s not in SUITE_NAMES:
            raise ConfigError(f"{where}.suites: unknown suite {s!r}; "
                              f"known: {', '.join(SUITE_NAMES)}")
    if "equivalence" in suites and N - 2 * R < 0:
        raise ConfigError(f"{where}: equivalence suite needs N - 2R >= 0, "
                          f"got N={N}, R={R} (window {N - 2 * R})")

    output_path = doc.get("output_path")
    if output_path is not None and not isinstance(output_path, str):
        raise ConfigError(f"{where}.output_path: expected a string path")

    return RunConfig(d=d, K=K, N=N, R=R, weight_c=weight_c, alpha_spec=alpha_spec,
                     mc=mc, suites=tuple(suites), output_path=output_path)


def load_config(path: Union[str, Path]) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    return parse_config(doc, where=str(path))


def config_echo(cfg: RunConfig) -> dict:
    """Plain-JSON rendering of a config for embedding in reports."""
    return {
        "d": cfg.d, "K": cfg.K, "N": cfg.N, "R": cfg.R,
        "weight_c": f"{cfg.weight_c.numerator}/{cfg.weight_c.denominator}",
        "alpha_spec": cfg.alpha_spec if isinstance(cfg.alpha_spec, str)
        else {str(k): v for k, v in sorted(cfg.alpha_spec.items())},
        "mc": {"n_samples": cfg.mc.n_samples, "seed": cfg.mc.seed, "K_mc": cfg.mc.K_mc,
               "M": cfg.mc.M, "n_grid": cfg.mc.n_grid},
        "suites": list(cfg.suites),
        "output_path": cfg.output_path,
    }
