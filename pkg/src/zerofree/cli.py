"""Command-line interface: zeta-disc, scan, distance, psi-norm, admissible."""

from __future__ import annotations

import argparse
import json
import math
import sys
from functools import lru_cache

from zerofree.admissible import construct, moments
from zerofree.bn_distance import GeneratorFamily, QuadSettings, distance
from zerofree.characters import (
    character_from_json,
    is_fundamental_discriminant,
    kronecker_character,
)
from zerofree.discs import dirichlet_real_interval, siegel_criterion, zeta_explicit_report
from zerofree.errors import DomainError, ZeroFreeError
from zerofree.psi_kernel import NormSettings, PhiProfile, SeriesSpec, c_sigma1, psi_norm
from zerofree.special_fn import riemann_zeta

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 2, 3
CSV_HEADER = "t,re_center,im_center,radius,R_pseudo"


class CliDomainError(DomainError):
    pass


# ------------------------------------------------------------------ parsing


def parse_complex(text: str) -> complex:
    """'a+bi', 'a-bi', 'a' or 'bi' (also accepts j)."""
    raw = text.strip().replace(" ", "")
    try:
        return complex(raw.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def format_complex(z: complex) -> list:
    return [z.real, z.imag]


def parse_alphas(text: str) -> list[float]:
    if text is None or not text.strip():
        return []
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad alpha list {text!r}") from None


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def load_character(args):
    if getattr(args, "char_file", None):
        try:
            with open(args.char_file, encoding="utf-8") as fh:
                payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CliDomainError(f"character file is not valid JSON: {exc}") from exc
        return character_from_json(payload)
    spec = getattr(args, "char", None)
    if not spec:
        raise CliDomainError("a Dirichlet series needs --char or --char-file")
    if spec.startswith("kron"):
        return kronecker_character(int(spec[4:]))
    if spec.startswith("q"):
        q = int(spec[1:])
        cands = [d for d in (-q, q) if is_fundamental_discriminant(d)]
        if len(cands) != 1:
            raise CliDomainError(
                f"--char q{q}: need exactly one fundamental discriminant of size {q}, "
                f"found {cands}; use --char kronD"
            )
        return kronecker_character(cands[0])
    raise CliDomainError(f"unknown --char form {spec!r} (use qN or kronD)")


def profile_for(sigma1: float) -> PhiProfile:
    return PhiProfile.indicator() if sigma1 == 0 else PhiProfile.power(sigma1)


def series_for(args) -> SeriesSpec:
    if args.series == "zeta":
        return SeriesSpec.zeta()
    chi = load_character(args)
    if chi.is_trivial:
        raise CliDomainError("the character is trivial; a Dirichlet series needs a non-trivial one")
    return SeriesSpec.dirichlet(chi)


# ----------------------------------------------------------------- commands


@lru_cache(maxsize=32)
def _zeta_report(lam, r, sigma1, alpha, norm_mode):
    return zeta_explicit_report(lam, r, sigma1, alpha, norm_mode)


def cmd_zeta_disc(args) -> dict:
    rep = _zeta_report(args.lam, args.r, args.sigma1, args.alpha, args.norm_mode)
    return {
        "center_re": rep.disc.center.real,
        "center_im": rep.disc.center.imag,
        "radius": rep.disc.radius,
        "R_pseudo": rep.R,
        "F_value": rep.F,
        "clamped": rep.clamped,
        "psi_norm_sq": rep.psi_norm_value,
    }


def scan_rows(args) -> list[tuple]:
    if not args.step > 0:
        raise CliDomainError("--step must be positive")
    if args.t_max < args.t_min:
        raise CliDomainError("--t-max must be >= --t-min")
    count = int(math.floor((args.t_max - args.t_min) / args.step + 1e-9)) + 1
    rows = []
    for i in range(count):
        t = round(args.t_min + i * args.step, 12)
        rep = _zeta_report(complex(args.re_lambda, t), args.r, args.sigma1, args.alpha, args.norm_mode)
        rows.append((t, rep.disc.center.real, rep.disc.center.imag, rep.disc.radius, rep.R))
    return rows


def local_minima(rows) -> list[float]:
    out = []
    for i in range(1, len(rows) - 1):
        if rows[i][3] < rows[i - 1][3] and rows[i][3] <= rows[i + 1][3]:
            out.append(rows[i][0])
    return out


def render_svg(rows, title: str) -> str:
    """Radius against t on a log scale, with dashed lines at radius minima."""
    W, H, L, R, T, B = 800, 420, 70, 20, 40, 50
    ts = [row[0] for row in rows]
    rad = [row[3] for row in rows]
    pos = [x for x in rad if x > 0 and math.isfinite(x)]
    floor = min(pos) if pos else 1e-300
    logs = [math.log10(max(x, floor)) for x in rad]
    lo, hi = math.floor(min(logs)), math.ceil(max(logs))
    hi = hi if hi > lo else lo + 1
    t0, t1 = ts[0], ts[-1] if ts[-1] > ts[0] else ts[0] + 1.0

    def X(t):
        return L + (W - L - R) * (t - t0) / (t1 - t0)

    def Y(v):
        return T + (H - T - B) * (hi - v) / (hi - lo)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{W / 2:.1f}" y="22" text-anchor="middle" font-family="sans-serif" font-size="14">{title}</text>',
    ]
    for dec in range(lo, hi + 1):
        y = Y(dec)
        parts.append(f'<line x1="{L}" y1="{y:.2f}" x2="{W - R}" y2="{y:.2f}" stroke="#ddd"/>')
        parts.append(
            f'<text x="{L - 6}" y="{y + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="11">1e{dec}</text>'
        )
    for tm in local_minima(rows):
        x = X(tm)
        parts.append(
            f'<line x1="{x:.2f}" y1="{T}" x2="{x:.2f}" y2="{H - B}" stroke="#c33" stroke-dasharray="4 3"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{H - B + 30}" text-anchor="middle" font-family="sans-serif" font-size="10" fill="#c33">{tm:.3f}</text>'
        )
    pts = " ".join(f"{X(t):.2f},{Y(v):.2f}" for t, v in zip(ts, logs))
    parts.append(f'<polyline fill="none" stroke="#225" stroke-width="1.2" points="{pts}"/>')
    parts.append(f'<line x1="{L}" y1="{H - B}" x2="{W - R}" y2="{H - B}" stroke="black"/>')
    parts.append(f'<line x1="{L}" y1="{T}" x2="{L}" y2="{H - B}" stroke="black"/>')
    parts.append(
        f'<text x="{L}" y="{H - B + 16}" font-family="sans-serif" font-size="11">{fmt(t0)}</text>'
    )
    parts.append(
        f'<text x="{W - R}" y="{H - B + 16}" text-anchor="end" font-family="sans-serif" font-size="11">{fmt(t1)}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_scan(args) -> dict:
    rows = scan_rows(args)
    lines = [CSV_HEADER] + [",".join(fmt(v) for v in row) for row in rows]
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    if args.svg:
        title = f"zero-free radius, Re(lambda) = {args.re_lambda}, r = {args.r}, sigma1 = {args.sigma1}"
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(rows, title))
    return {"rows": len(rows), "csv": args.out, "svg": args.svg, "radius_minima": local_minima(rows)}


def family_on(alphas, m: int):
    """Sliding-window basis of the m-admissible sequences supported on ``alphas``."""
    alphas = sorted(alphas)
    return [construct(alphas[j - m : j + 1], m) for j in range(m, len(alphas))]


def cmd_distance(args) -> dict:
    spec = series_for(args)
    prof = profile_for(args.sigma1)
    m = spec.pole_order if args.m == "auto" else int(args.m)
    try:
        seqs = family_on(parse_alphas(args.alphas), m)
    except DomainError as exc:
        raise CliDomainError(f"cannot build {m}-admissible sequences: {exc}") from exc
    fam = GeneratorFamily(tuple(seqs), args.r, spec, prof, QuadSettings(u_max=args.u_max))
    res = distance(fam, args.lam)
    out = {
        "d_sq": res.d_sq,
        "coefficients": [format_complex(c) for c in res.coefficients],
        "gram_condition": res.gram_condition,
        "residual_check": res.residual_check,
        "target_norm_sq": res.target_norm_sq,
        "family": [s.to_json() for s in seqs],
        "real_interval": None,
    }
    lam = complex(args.lam)
    on_real = abs(lam.imag) < 1e-15 and abs(lam.real - (1.0 - args.r)) < 1e-12
    if spec.kind == "dirichlet" and on_real and 0.5 <= args.r < 1:
        out["real_interval"] = dirichlet_real_interval(args.r, min(res.d_sq, 1 / (2 - 2 * args.r)))
    if args.siegel_C is not None:
        if spec.kind != "dirichlet" or not on_real:
            raise CliDomainError("--siegel-C needs a Dirichlet series and lambda = 1 - r")
        sc = siegel_criterion(res.d_sq, args.r, spec.chi.modulus, args.siegel_C)
        out["siegel"] = {"C": args.siegel_C, "holds": sc.holds, "slack": sc.slack}
    return out


def cmd_psi_norm(args) -> dict:
    spec = series_for(args)
    prof = profile_for(args.sigma1)
    res = psi_norm(spec, prof, args.r, NormSettings(k_max=args.k_max))
    out = {
        "norm_sq": res.norm_sq,
        "truncation_error_bound": res.truncation_error_bound,
        "intervals_used": res.intervals_used,
        "tail_estimate": res.tail_estimate,
        "tail_bound_rigorous": res.tail_bound_rigorous,
        "decay_exponent": res.decay_exponent,
    }
    if spec.kind == "zeta" and args.sigma1 > 0:
        out["c_sigma1_bound"] = c_sigma1(args.sigma1) * riemann_zeta(1 + 2 * (args.r - args.sigma1)).real
    return out


def cmd_admissible(args) -> dict:
    alphas = parse_alphas(args.alphas)
    seq = construct(alphas, args.m)
    out = seq.to_json()
    out["moments"] = [format_complex(z) for z in moments(seq.alphas, seq.coeffs, seq.order)]
    return out


# ------------------------------------------------------------------ driver


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zerofree", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def zeta_common(p):
        p.add_argument("--r", type=float, required=True)
        p.add_argument("--sigma1", type=float, required=True)
        p.add_argument("--alpha", type=float, default=0.25)
        p.add_argument("--norm-mode", choices=("bound", "computed"), default="bound")

    p = sub.add_parser("zeta-disc", help="explicit zero-free disc of zeta around lambda + r")
    p.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    zeta_common(p)
    p.set_defaults(func=cmd_zeta_disc)

    p = sub.add_parser("scan", help="sweep the explicit disc along Im(lambda)")
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--re-lambda", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--svg")
    zeta_common(p)
    p.set_defaults(func=cmd_scan)

    def series_common(p):
        p.add_argument("--series", choices=("zeta", "dirichlet"), required=True)
        p.add_argument("--char", help="qN (unique real character of conductor N) or kronD")
        p.add_argument("--char-file")
        p.add_argument("--r", type=float, required=True)
        p.add_argument("--sigma1", type=float, default=0.0)

    p = sub.add_parser("distance", help="Beurling-Nyman distance for a family on given alphas")
    series_common(p)
    p.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    p.add_argument("--alphas", default="")
    p.add_argument("--m", default="auto")
    p.add_argument("--siegel-C", dest="siegel_C", type=float)
    p.add_argument("--u-max", type=float, default=8192.0)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("psi-norm", help="weighted L2 norm of psi")
    series_common(p)
    p.add_argument("--k-max", type=int, default=10_000)
    p.set_defaults(func=cmd_psi_norm)

    p = sub.add_parser("admissible", help="construct an m-admissible sequence")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alphas", required=True)
    p.set_defaults(func=cmd_admissible)
    return ap


def _jsonable(v):
    if isinstance(v, complex):
        return format_complex(v)
    return v


def config_of(args) -> dict:
    return {
        k: _jsonable(v)
        for k, v in sorted(vars(args).items())
        if k != "func" and not callable(v)
    }


def run(argv=None) -> tuple[int, dict | None, str]:
    """Parse and execute; returns (exit code, report, error message)."""
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        report = args.func(args)
    except ZeroFreeError as exc:
        return EXIT_DOMAIN, None, f"{type(exc).__name__}: {exc}"
    except ValueError as exc:
        return EXIT_DOMAIN, None, f"invalid value: {exc}"
    except OSError as exc:
        return EXIT_IO, None, f"I/O error: {exc}"
    report = {"command": args.command, "config": config_of(args), "result": report}
    return EXIT_OK, report, ""


def validate_report(report: dict) -> None:
    """Re-check a parsed report against the config that produced it."""
    if set(report) != {"command", "config", "result"}:
        raise DomainError("report must have keys command, config, result")
    if report["config"].get("command") != report["command"]:
        raise DomainError("report command does not match its config")
    res = report["result"]
    if report["command"] == "zeta-disc":
        if not (res["radius"] >= 0 and 0 <= res["R_pseudo"] <= 1):
            raise DomainError("disc fields out of range")
        lam = complex(*report["config"]["lam"])
        if res["center_re"] - res["radius"] < report["config"]["r"] - 1e-12:
            raise DomainError("disc leaves the half-plane Re > r")
        if res["center_im"] != lam.imag:
            raise DomainError("disc center is not at Im(lambda)")
    elif report["command"] == "distance":
        lam = complex(*report["config"]["lam"])
        if not (0 <= res["d_sq"] <= 1 / (2 * lam.real) + 1e-9):
            raise DomainError("d_sq violates the trivial bound")
    elif report["command"] == "psi-norm":
        if not (res["norm_sq"] >= 0 and res["truncation_error_bound"] >= 0):
            raise DomainError("norm fields out of range")


def main(argv=None) -> int:
    code, report, err = run(argv)
    if code != EXIT_OK:
        print(f"error: {err}", file=sys.stderr)
        return code
    json.dump(report, sys.stdout, indent=2, sort_keys=True, allow_nan=True)
    sys.stdout.write("\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
