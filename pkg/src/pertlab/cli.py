"""Command-line front door: `pertlab <method> [flags]`.

Subcommands `oracle`, `sc`, `ghost`, `shoot`, `all` share one flag set; see
the README for worked invocations.  Reports are emitted as CSV or JSON with
a fixed column order and 17-significant-digit scalars, so identical
invocations produce byte-identical files.  Exit codes: 0 success, 2 for
config/parse problems, 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import ghost as ghost_mod
from . import sc as sc_mod
from .errors import ConfigError, NumericalError, ParityError, PertlabError
from .quad import QuadConfig
from .series import RationalPoly, build_series

REPORT_COLUMNS = (
    "method", "n", "sigma", "x_cut",
    "numerator_re", "numerator_im", "denominator_re", "denominator_im",
    "ratio_re", "ratio_im", "oracle", "abs_err",
)

DEFAULT_SIGMA_GRID = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3)
DEFAULT_XCUT = 6.0

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<num>\d+)(?:\s*/\s*(?P<den>\d+))?)?\s*"
    r"(?:x(?:\s*\^\s*(?P<pow>\d+))?)?"
)


def parse_perturbation(text: str) -> RationalPoly:
    """Parse a sum of `[+-][p/q ]x^k` terms (k even) into a RationalPoly."""
    terms = {}
    pos = 0
    first = True
    while True:
        m = _TERM.match(text, pos)
        has_coef = m.group("num") is not None
        has_x = "x" in text[m.start():m.end()]
        if not has_coef and not has_x:
            if first or pos < len(text.rstrip()):
                raise ConfigError(
                    f"perturbation parse error at column {pos}: {text!r}")
            break
        if not first and m.group("sign") is None:
            raise ConfigError(
                f"perturbation parse error at column {pos}: "
                "expected '+' or '-' between terms")
        coef = Fraction(int(m.group("num")), int(m.group("den") or 1)) \
            if has_coef else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        power = (int(m.group("pow")) if m.group("pow") else 1) if has_x else 0
        if power % 2:
            raise ParityError(
                f"parity violation: odd power x^{power} in {text!r}")
        terms[power] = terms.get(power, Fraction(0)) + coef
        pos = m.end()
        first = False
        if pos >= len(text):
            break
    if first:
        raise ConfigError(f"empty perturbation string {text!r}")
    return RationalPoly.from_terms(terms)


def parse_xcut_grid(text: str):
    """'start:stop:step' (inclusive of stop) or a comma list."""
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            grid = []
            k = 0
            while True:
                x = start + k * step
                if x > stop + 1e-9 * step:
                    break
                grid.append(x)
                k += 1
            return grid
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad cutoff grid {text!r}") from None


def parse_sigma_grid(text: str):
    try:
        grid = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad sigma grid {text!r}") from None
    if not grid or any(s <= 0 for s in grid):
        raise ConfigError(f"sigma grid must be positive: {text!r}")
    return sorted(grid, reverse=True)


def read_config_file(path):
    """Plain `key = value` file; '#' starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, value = (part.strip() for part in line.split("=", 1))
                values[key.replace("-", "_")] = value
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return values

_CONFIG_KEYS = {"perturbation", "order", "xcut", "xcut_grid", "sigma_grid",
                "tol", "format", "output"}


class RunConfig:
    """Everything one invocation needs, after merging flags and config file."""

    def __init__(self, args):
        file_values = read_config_file(args.config) if args.config else {}
        unknown = set(file_values) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")

        def pick(name, fallback=None):
            flag = getattr(args, name)
            if flag is not None:
                return flag
            return file_values.get(name, fallback)

        self.method = args.method
        self.perturbation = pick("perturbation")
        if self.perturbation is None:
            raise ConfigError("--perturbation is required")
        self.v1 = parse_perturbation(self.perturbation)
        try:
            self.order = int(pick("order", 1))
        except ValueError:
            raise ConfigError("order must be an integer") from None
        if self.order < 1:
            raise ConfigError("order must be >= 1")

        xcut = pick("xcut")
        xcut_grid = pick("xcut_grid")
        if xcut is not None and xcut_grid is not None:
            raise ConfigError("give either --xcut or --xcut-grid, not both")
        if xcut_grid is not None:
            self.x_grid = parse_xcut_grid(str(xcut_grid))
        elif xcut is not None:
            try:
                self.x_grid = [float(xcut)]
            except ValueError:
                raise ConfigError(f"bad xcut {xcut!r}") from None
        else:
            self.x_grid = [DEFAULT_XCUT]
        if not self.x_grid:
            raise ConfigError("cutoff grid is empty")

        sigma_grid = pick("sigma_grid")
        self.sigma_grid = (parse_sigma_grid(str(sigma_grid))
                           if sigma_grid is not None else list(DEFAULT_SIGMA_GRID))

        try:
            tol = float(pick("tol", 1e-10))
        except ValueError:
            raise ConfigError("bad tolerance") from None
        self.quad = QuadConfig(rel_tol=tol)
        for x in self.x_grid:
            if x <= 0 or x > self.quad.x_max:
                raise ConfigError(
                    f"cutoff {x} outside (0, {self.quad.x_max}]")

        self.format = str(pick("format", "csv"))
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        self.output = pick("output")
        self.extrapolate = bool(getattr(args, "extrapolate", False))


def _f(value):
    return f"{value:.17g}"


def _report_row(method, n, sigma, x, num, den, ratio, oracle):
    return {
        "method": method, "n": n, "sigma": sigma, "x_cut": x,
        "numerator_re": num.real, "numerator_im": num.imag,
        "denominator_re": den.real, "denominator_im": den.imag,
        "ratio_re": ratio.real, "ratio_im": ratio.imag,
        "oracle": oracle, "abs_err": abs(ratio.real - oracle),
    }


def _sc_rows(cfg, series):
    rows = []
    for n in range(1, cfg.order + 1):
        for row in sc_mod.divergence_diagnostics(n, cfg.x_grid, series, cfg.quad):
            rows.append(_report_row(
                "sc", n, None, row.x_cut,
                complex(row.numerator), complex(row.denominator),
                complex(row.ratio), row.oracle))
    return rows


def _shoot_rows(cfg, series):
    rows = []
    for n in range(1, cfg.order + 1):
        oracle = float(series.energy(n))
        for x in cfg.x_grid:
            psi_at_0 = sc_mod.psi_n_shoot(n, 0.0, x, series, cfg.quad)
            psi_at_1 = sc_mod.psi_n_shoot(n, 1.0, x, series, cfg.quad)
            num = -psi_at_0
            den = psi_at_1 - psi_at_0
            rows.append(_report_row(
                "shoot", n, None, x,
                complex(num), complex(den), complex(num / den), oracle))
    return rows


def _ghost_rows(cfg, series, extrapolations):
    rows = []
    for n in range(1, cfg.order + 1):
        sweeps = {x: [ghost_mod.ghost_energy(n, s, x, series, cfg.quad)
                      for s in cfg.sigma_grid]
                  for x in cfg.x_grid}
        for i, sigma in enumerate(cfg.sigma_grid):
            for x in cfg.x_grid:
                r = sweeps[x][i]
                rows.append(_report_row(
                    "ghost", n, r.sigma, r.x_cut,
                    r.numerator, r.denominator, r.ratio, r.oracle))
        if cfg.extrapolate and len(cfg.sigma_grid) >= 3:
            for x in cfg.x_grid:
                extrapolations.append(
                    (n, x, ghost_mod.sigma_extrapolate(sweeps[x])))
    return rows


def render_csv(rows):
    lines = [",".join(REPORT_COLUMNS)]
    for row in rows:
        fields = []
        for col in REPORT_COLUMNS:
            v = row[col]
            if v is None:
                fields.append("")
            elif col in ("method",):
                fields.append(v)
            elif col == "n":
                fields.append(str(v))
            else:
                fields.append(_f(v))
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def render_json(rows):
    return json.dumps(rows, indent=2) + "\n"


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError:
        try:
            if os.path.isfile(output):
                os.remove(output)
        except OSError:
            pass
        raise


def run(cfg: RunConfig) -> int:
    series = build_series(cfg.v1, cfg.order)
    if cfg.method == "oracle":
        _emit("\n".join(series.energy_lines()) + "\n", cfg.output)
        return 0

    methods = {"sc": ("sc",), "ghost": ("ghost",), "shoot": ("shoot",),
               "all": ("ghost", "sc", "shoot")}[cfg.method]
    extrapolations = []
    rows = []
    for method in methods:  # already sorted: ghost < sc < shoot
        if method == "sc":
            rows.extend(_sc_rows(cfg, series))
        elif method == "shoot":
            rows.extend(_shoot_rows(cfg, series))
        else:
            rows.extend(_ghost_rows(cfg, series, extrapolations))

    text = render_csv(rows) if cfg.format == "csv" else render_json(rows)
    _emit(text, cfg.output)
    for _n, _x, fit in extrapolations:
        print(f"extrapolated = {fit.limit:.17g} ± {fit.residual:.3g}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pertlab",
        description="Anharmonic-oscillator perturbation energies by exact "
                    "recursion, divergent-ratio sweeps, and ghost-state "
                    "regularization.")
    sub = parser.add_subparsers(dest="method", required=True)
    for name, help_text in (
            ("oracle", "exact rational energies E1..EN"),
            ("sc", "divergent-ratio energy sweep over cutoffs"),
            ("ghost", "ghost-regularized complex-weight sweep over sigma"),
            ("shoot", "shooting-method cross-check of the parametric ratio"),
            ("all", "ghost + sc + shoot in one report")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--perturbation", help='e.g. "x^4" or "1/2 x^2 + x^4"')
        p.add_argument("--order", type=int, default=None)
        p.add_argument("--xcut", type=float, default=None)
        p.add_argument("--xcut-grid", dest="xcut_grid", default=None,
                       help="a:b:s (inclusive) or comma list")
        p.add_argument("--sigma-grid", dest="sigma_grid", default=None,
                       help="comma list, e.g. 1e-1,1e-2,1e-3")
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--extrapolate", action="store_true")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--output", default=None)
        p.add_argument("--config", default=None,
                       help="key = value file; flags take precedence")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args)
        return run(cfg)
    except ConfigError as exc:
        print(f"pertlab: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, OSError) as exc:
        print(f"pertlab: {exc}", file=sys.stderr)
        return 3
    except PertlabError as exc:
        print(f"pertlab: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
