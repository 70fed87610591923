"""Batch CLI: compute any implemented quantity, run verification sweeps,
emit JSON/CSV reports.

Exit codes: 0 all good, 1 at least one verification residual exceeded its
budget, 2 usage or domain error.  Output is deterministic for a fixed
manifest: decimals render through mpmath at a fixed digit count and JSON
keys are sorted.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import click
import mpmath as mp

from . import estermann, exact, recip, specfn, sums
from .errors import CotZetaError
from .reports import VerifyResult
from .specfn import ComplexVal, PrecisionConfig
from .recip import QuadratureConfig
from .sums import RationalArg

EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2


@dataclass
class RunManifest:
    """Everything that determines one CLI run's output."""

    command: str
    params: dict
    precision: PrecisionConfig
    quad: QuadratureConfig
    output_format: str = "json"
    out: str | None = None
    force: bool = False
    budget_override: float | None = None

    def digits(self) -> int:
        return self.precision.working_digits - 2


def _parse_complex(text: str):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise click.UsageError(f"cannot parse complex number {text!r}")


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t != ""]
    except ValueError:
        raise click.UsageError(f"cannot parse integer list {text!r}")


def _fraction_json(f: Fraction) -> dict:
    return {"num": str(f.numerator), "den": str(f.denominator)}


def _complex_json(val, manifest: RunManifest) -> dict:
    if isinstance(val, ComplexVal):
        return val.to_json(manifest.digits())
    with mp.workdps(40):
        c = mp.mpc(val)
        return {"re": mp.nstr(c.real, manifest.digits()),
                "im": mp.nstr(c.imag, manifest.digits())}


def _manifest_echo(manifest: RunManifest) -> dict:
    return {
        "command": manifest.command,
        "params": manifest.params,
        "precision": {
            "working_digits": manifest.precision.working_digits,
            "target_abs_err": repr(manifest.precision.target_abs_err),
            "max_terms": manifest.precision.max_terms,
        },
        "quad": {
            "epsilon": repr(manifest.quad.epsilon),
            "truncation_height": repr(manifest.quad.truncation_height),
            "panel_rule": manifest.quad.panel_rule,
            "target_abs_err": repr(manifest.quad.target_abs_err),
        },
        "output_format": manifest.output_format,
    }


def _open_out(manifest: RunManifest):
    if manifest.out is None:
        return sys.stdout, False
    import os
    if os.path.exists(manifest.out) and not manifest.force:
        raise click.ClickException(
            f"refusing to overwrite {manifest.out!r} without --force")
    return open(manifest.out, "w"), True


def _emit(manifest: RunManifest, payload: dict):
    doc = {"manifest": _manifest_echo(manifest), **payload}
    stream, close = _open_out(manifest)
    try:
        if manifest.output_format == "text":
            for key, value in payload.items():
                stream.write(f"{key}: {json.dumps(value, sort_keys=True)}\n")
        else:
            stream.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    finally:
        if close:
            stream.close()


pass_manifest = click.make_pass_decorator(RunManifest)


@click.group()
@click.option("--precision-digits", type=int, default=30, show_default=True,
              help="Working precision in decimal digits.")
@click.option("--target-err", type=float, default=1e-12, show_default=True,
              help="Target absolute error for special-function evaluation.")
@click.option("--quad-target-err", type=float, default=1e-10, show_default=True,
              help="Target absolute error for vertical-line quadrature.")
@click.option("--quad-height", type=float, default=0.0, show_default=True,
              help="Truncation height T for line integrals (0 = automatic).")
@click.option("--quad-rule", type=click.Choice(["gauss_legendre", "gauss_legendre_n", "adaptive_simpson"]),
              default="gauss_legendre", show_default=True)
@click.option("--epsilon", type=float, default=0.0, show_default=True,
              help="Abscissa of cotangent-product lines (0 = automatic).")
@click.option("--format", "output_format", type=click.Choice(["json", "csv", "text"]),
              default="json", show_default=True)
@click.option("--out", type=str, default=None, help="Write output to this file.")
@click.option("--force", is_flag=True, help="Allow overwriting --out.")
@click.option("--budget", "budget_override", type=float, default=None,
              help="Override the pass/fail threshold for verify commands.")
@click.pass_context
def main(ctx, precision_digits, target_err, quad_target_err, quad_height,
         quad_rule, epsilon, output_format, out, force, budget_override):
    """Cotangent-Hurwitz zeta sums: computation and identity verification."""
    try:
        precision = PrecisionConfig(precision_digits, target_err)
        quad = QuadratureConfig(epsilon, quad_height, quad_rule, quad_target_err)
    except CotZetaError as exc:
        raise click.UsageError(str(exc))
    ctx.obj = RunManifest("", {}, precision, quad, output_format, out, force,
                          budget_override)


def _run_guarded(fn):
    """Convert domain errors into exit code 2 with a readable message."""
    import functools

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (CotZetaError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_USAGE)

    return wrapper


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

@main.group()
def compute():
    """Compute a single quantity and print it with config provenance."""


@compute.command("bernoulli")
@click.option("--n", type=int, required=True)
@click.option("--convention", type=click.Choice(["standard", "zeroed"]),
              default="standard", show_default=True)
@pass_manifest
@_run_guarded
def compute_bernoulli(manifest, n, convention):
    manifest.command = "compute.bernoulli"
    manifest.params = {"n": n, "convention": convention}
    value = exact.bernoulli_number(n, convention)
    _emit(manifest, {"value": _fraction_json(value)})


@compute.command("dedekind")
@click.option("--h", type=int, required=True)
@click.option("--k", type=int, required=True)
@pass_manifest
@_run_guarded
def compute_dedekind(manifest, h, k):
    manifest.command = "compute.dedekind"
    manifest.params = {"h": h, "k": k}
    _emit(manifest, {"value": _fraction_json(exact.dedekind_sum(h, k))})


@compute.command("apostol")
@click.option("--n", type=int, required=True)
@click.option("--h", type=int, required=True)
@click.option("--k", type=int, required=True)
@pass_manifest
@_run_guarded
def compute_apostol(manifest, n, h, k):
    manifest.command = "compute.apostol"
    manifest.params = {"n": n, "h": h, "k": k}
    _emit(manifest, {"value": _fraction_json(exact.apostol_sum(n, h, k))})


@compute.command("bc-sum")
@click.option("--a", type=str, required=True, help="Order a (complex allowed).")
@click.option("--h", type=int, required=True)
@click.option("--k", type=int, required=True)
@pass_manifest
@_run_guarded
def compute_bc_sum(manifest, a, h, k):
    manifest.command = "compute.bc-sum"
    manifest.params = {"a": a, "h": h, "k": k}
    val = sums.bc_sum(_parse_complex(a), h, k, manifest.precision)
    _emit(manifest, {"value": _complex_json(val, manifest)})


@compute.command("bc-sum-general")
@click.option("--a", type=str, required=True)
@click.option("--k0", type=int, required=True)
@click.option("--ks", type=str, required=True, help="Comma-separated inner moduli.")
@click.option("--ms", type=str, required=True,
              help="Comma-separated derivative orders, zeta order first.")
@pass_manifest
@_run_guarded
def compute_bc_sum_general(manifest, a, k0, ks, ms):
    manifest.command = "compute.bc-sum-general"
    manifest.params = {"a": a, "k0": k0, "ks": ks, "ms": ms}
    spec = sums.BCSumSpec(_parse_complex(a), k0,
                          tuple(_parse_int_list(ks)), tuple(_parse_int_list(ms)))
    val = sums.bc_sum_general(spec, manifest.precision)
    _emit(manifest, {"spec": spec.to_json(), "value": _complex_json(val, manifest)})


@compute.command("psi-poly")
@click.option("--n", type=int, required=True)
@pass_manifest
@_run_guarded
def compute_psi_poly(manifest, n):
    manifest.command = "compute.psi-poly"
    manifest.params = {"n": n}
    _emit(manifest, {"polynomial": exact.psi_polynomial(n).to_json()})


@compute.command("g-poly")
@click.option("--n", type=int, required=True)
@pass_manifest
@_run_guarded
def compute_g_poly(manifest, n):
    manifest.command = "compute.g-poly"
    manifest.params = {"n": n}
    _emit(manifest, {"polynomial": exact.g_polynomial(n).to_json()})


@compute.command("line-integral")
@click.option("--a", type=str, required=True)
@click.option("--h", type=int, required=True)
@click.option("--k", type=int, required=True)
@pass_manifest
@_run_guarded
def compute_line_integral(manifest, a, h, k):
    manifest.command = "compute.line-integral"
    manifest.params = {"a": a, "h": h, "k": k}
    val = recip.line_integral_cotcot(_parse_complex(a), h, k,
                                     manifest.quad, manifest.precision)
    _emit(manifest, {"value": _complex_json(val, manifest)})


@compute.command("estermann")
@click.option("--regime", type=click.Choice(["nonpositive", "series", "hurwitz"]),
              default="nonpositive", show_default=True)
@click.option("--k", type=int, default=None, help="Nonpositive regime: s = -k.")
@click.option("--a", type=str, required=True)
@click.option("--s", type=str, default=None, help="series/hurwitz regime order s.")
@click.option("--p", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--route", type=click.Choice(["primary", "dual"]), default="primary",
              show_default=True)
@pass_manifest
@_run_guarded
def compute_estermann(manifest, regime, k, a, s, p, q, route):
    manifest.command = "compute.estermann"
    manifest.params = {"regime": regime, "k": k, "a": a, "s": s,
                       "p": p, "q": q, "route": route}
    x = RationalArg(p, q)
    if regime == "nonpositive":
        if k is None:
            raise click.UsageError("nonpositive regime needs --k")
        val = estermann.estermann_nonpositive(k, x, int(a), manifest.precision, route)
    else:
        if s is None:
            raise click.UsageError(f"{regime} regime needs --s")
        pt = estermann.EstermannPoint(_parse_complex(s), x, _parse_complex(a))
        fn = (estermann.estermann_series if regime == "series"
              else estermann.estermann_hurwitz)
        val = fn(pt, manifest.precision)
    _emit(manifest, {"value": _complex_json(val, manifest)})


@compute.command("cotangent-sum-C")
@click.option("--a", type=int, required=True)
@click.option("--deriv-order", "--k", "deriv_order", type=int, required=True)
@click.option("--p", type=int, required=True)
@click.option("--q", type=int, required=True)
@pass_manifest
@_run_guarded
def compute_cotangent_sum(manifest, a, deriv_order, p, q):
    manifest.command = "compute.cotangent-sum-C"
    manifest.params = {"a": a, "k": deriv_order, "p": p, "q": q}
    val = sums.cotangent_sum_C(a, deriv_order, RationalArg(p, q), manifest.precision)
    _emit(manifest, {"value": _complex_json(val, manifest)})


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _coprime_pairs(limit: int):
    for k in range(1, limit + 1):
        for h in range(1, limit + 1):
            if gcd(h, k) == 1:
                yield h, k


def _stream_reports(manifest: RunManifest, theorem: str, results) -> None:
    """Print one report per parameter tuple; exit 1 if any residual exceeds
    its budget (or the --budget override)."""
    manifest.command = f"verify.{theorem}"
    stream, close = _open_out(manifest)
    all_pass = True
    try:
        writer = None
        for res in results:
            ok = res.passes(manifest.budget_override)
            all_pass = all_pass and ok
            doc = res.to_json(manifest.digits(), manifest.budget_override)
            if manifest.output_format == "csv":
                row = {
                    "theorem": doc["theorem"],
                    "params": json.dumps(doc["params"], sort_keys=True),
                    "residual_re": doc["residual"]["re"],
                    "residual_im": doc["residual"]["im"],
                    "budget": doc["budget"],
                    "pass": doc["pass"],
                }
                if writer is None:
                    writer = csv.DictWriter(stream, fieldnames=list(row))
                    writer.writeheader()
                writer.writerow(row)
            elif manifest.output_format == "text":
                status = "PASS" if ok else "FAIL"
                stream.write(
                    f"[{status}] {doc['theorem']} {json.dumps(doc['params'], sort_keys=True)} "
                    f"residual=({doc['residual']['re']}, {doc['residual']['im']}) "
                    f"budget={doc['budget']}\n")
            else:
                stream.write(json.dumps(doc, sort_keys=True) + "\n")
    finally:
        if close:
            stream.close()
    sys.exit(0 if all_pass else EXIT_VERIFY_FAIL)


@main.group()
def verify():
    """Verify an identity over a parameter sweep; one JSON report per tuple."""


@verify.command("thm13")
@click.option("--n", "n_list", type=str, default="3,5,7,9", show_default=True)
@click.option("--hk-max", type=int, default=None)
@click.option("--h", type=int, default=None)
@click.option("--k", type=int, default=None)
@pass_manifest
@_run_guarded
def verify_thm13_cmd(manifest, n_list, hk_max, h, k):
    ns = _parse_int_list(n_list)
    if hk_max is None and (h is None or k is None):
        raise click.UsageError("need either --hk-max or both --h and --k")
    pairs = list(_coprime_pairs(hk_max)) if hk_max else [(h, k)]

    def run():
        for n in ns:
            for hh, kk in pairs:
                res = exact.verify_thm13(n, hh, kk)
                zero = res.is_zero()
                cv = ComplexVal(0, 0) if zero else ComplexVal.from_exact(res)
                yield VerifyResult(
                    "thm13", {"n": n, "h": hh, "k": kk},
                    ComplexVal.from_exact(exact.thm13_rhs(n, hh, kk))
                    if not zero else ComplexVal(0, 0),
                    ComplexVal(0, 0), cv, 0.0,
                    details={"exact_zero": zero})

    _stream_reports(manifest, "thm13", run())


@verify.command("dedekind-recip")
@click.option("--hk-max", type=int, default=50, show_default=True)
@pass_manifest
@_run_guarded
def verify_dedekind_cmd(manifest, hk_max):
    def run():
        for h, k in _coprime_pairs(hk_max):
            yield recip.verify_dedekind_recip(h, k)

    _stream_reports(manifest, "dedekind-recip", run())


@verify.command("thm12")
@click.option("--a", type=str, required=True, help="Comma-separated orders.")
@click.option("--h", type=int, required=True)
@click.option("--k", type=int, required=True)
@pass_manifest
@_run_guarded
def verify_thm12_cmd(manifest, a, h, k):
    orders = [_parse_complex(t) for t in a.split(",")]

    def run():
        for av in orders:
            yield recip.verify_thm12(av, h, k, manifest.quad, manifest.precision)

    _stream_reports(manifest, "thm12", run())


@verify.command("thm11")
@click.option("--a", type=str, required=True)
@click.option("--h", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--psi-route", type=click.Choice(["auto", "polynomial", "numeric"]),
              default="auto", show_default=True)
@pass_manifest
@_run_guarded
def verify_thm11_cmd(manifest, a, h, k, psi_route):
    def run():
        yield recip.verify_thm11(_parse_complex(a), h, k, manifest.quad,
                                 manifest.precision, psi_route)

    _stream_reports(manifest, "thm11", run())


@verify.command("thm14-cross")
@click.option("--n", "n_list", type=str, default="3,5", show_default=True)
@click.option("--z", type=str, default="1", show_default=True)
@pass_manifest
@_run_guarded
def verify_thm14_cmd(manifest, n_list, z):
    zc = _parse_complex(z)

    def run():
        for n in _parse_int_list(n_list):
            yield recip.verify_thm14_cross(n, zc, None, manifest.quad,
                                           manifest.precision)

    _stream_reports(manifest, "thm14-cross", run())


@verify.command("cor23")
@click.option("--n", "n_list", type=str, default="3", show_default=True)
@click.option("--h", type=int, required=True)
@click.option("--k", type=int, required=True)
@pass_manifest
@_run_guarded
def verify_cor23_cmd(manifest, n_list, h, k):
    def run():
        for n in _parse_int_list(n_list):
            yield recip.verify_cor23(n, h, k, manifest.quad, manifest.precision)

    _stream_reports(manifest, "cor23", run())


@verify.command("thm31")
@click.option("--a", type=str, required=True)
@click.option("--ks", type=str, required=True)
@click.option("--ms", type=str, required=True)
@pass_manifest
@_run_guarded
def verify_thm31_cmd(manifest, a, ks, ms):
    def run():
        yield recip.verify_thm31(_parse_complex(a), _parse_int_list(ks),
                                 _parse_int_list(ms), manifest.quad,
                                 manifest.precision)

    _stream_reports(manifest, "thm31", run())


@verify.command("thm32")
@click.option("--n", type=int, required=True)
@click.option("--ks", type=str, required=True)
@click.option("--ms", type=str, required=True)
@pass_manifest
@_run_guarded
def verify_thm32_cmd(manifest, n, ks, ms):
    def run():
        yield recip.verify_thm32(n, _parse_int_list(ks), _parse_int_list(ms),
                                 manifest.precision)

    _stream_reports(manifest, "thm32", run())


@verify.command("cor33")
@click.option("--n", type=int, required=True)
@click.option("--ks", type=str, required=True)
@click.option("--ms", type=str, required=True)
@pass_manifest
@_run_guarded
def verify_cor33_cmd(manifest, n, ks, ms):
    def run():
        yield recip.verify_cor33(n, _parse_int_list(ks), _parse_int_list(ms),
                                 manifest.quad, manifest.precision)

    _stream_reports(manifest, "cor33", run())


@verify.command("prop43")
@click.option("--s", type=int, required=True)
@click.option("--a", type=int, required=True)
@click.option("--p", type=int, default=1, show_default=True)
@click.option("--q", type=int, required=True)
@pass_manifest
@_run_guarded
def verify_prop43_cmd(manifest, s, a, p, q):
    def run():
        yield estermann.verify_prop43(s, RationalArg(p, q), a, manifest.precision)

    _stream_reports(manifest, "prop43", run())


@verify.command("thm44")
@click.option("--k", type=int, required=True)
@click.option("--a", type=int, required=True)
@click.option("--p", type=int, default=1, show_default=True)
@click.option("--q", type=int, required=True)
@pass_manifest
@_run_guarded
def verify_thm44_cmd(manifest, k, a, p, q):
    def run():
        yield estermann.verify_thm44(k, RationalArg(p, q), a, manifest.precision)

    _stream_reports(manifest, "thm44", run())


@verify.command("cor45")
@click.option("--a", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--p", type=int, default=1, show_default=True)
@click.option("--q", type=int, required=True)
@pass_manifest
@_run_guarded
def verify_cor45_cmd(manifest, a, k, p, q):
    def run():
        yield estermann.verify_cor45(a, k, RationalArg(p, q), manifest.precision)

    _stream_reports(manifest, "cor45", run())


@verify.command("lemma41")
@click.option("--k", "k_list", type=str, default="1,2,3,4,5,6", show_default=True)
@click.option("--p", type=int, default=1, show_default=True)
@click.option("--q", type=int, required=True)
@pass_manifest
@_run_guarded
def verify_lemma41_cmd(manifest, k_list, p, q):
    def run():
        for k in _parse_int_list(k_list):
            yield estermann.verify_lemma41(k, RationalArg(p, q), manifest.precision)

    _stream_reports(manifest, "lemma41", run())


@verify.command("lemma42")
@click.option("--s", type=str, required=True)
@click.option("--z", type=float, required=True)
@click.option("--n", type=int, required=True)
@click.option("--p", type=int, default=1, show_default=True)
@click.option("--q", type=int, required=True)
@pass_manifest
@_run_guarded
def verify_lemma42_cmd(manifest, s, z, n, p, q):
    def run():
        yield estermann.verify_lemma42(_parse_complex(s), z, n, RationalArg(p, q),
                                       manifest.precision)

    _stream_reports(manifest, "lemma42", run())


@verify.command("eisenstein-period")
@click.option("--n", "n_list", type=str, default="3,5", show_default=True)
@click.option("--z", type=str, default="1j", show_default=True)
@pass_manifest
@_run_guarded
def verify_eisenstein_cmd(manifest, n_list, z):
    zc = _parse_complex(z)

    def run():
        for n in _parse_int_list(n_list):
            yield recip.verify_eisenstein_period(n, zc, manifest.precision)

    _stream_reports(manifest, "eisenstein-period", run())


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def _write_table(manifest: RunManifest, rows: list[dict], fieldnames: list[str]):
    stream, close = _open_out(manifest)
    try:
        if manifest.output_format == "csv" or (
                manifest.output_format == "text" and manifest.out):
            writer = csv.DictWriter(stream, fieldnames=fieldnames)
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
        else:
            stream.write(json.dumps(
                {"manifest": _manifest_echo(manifest), "rows": rows},
                sort_keys=True, indent=2) + "\n")
    finally:
        if close:
            stream.close()


@main.group()
def table():
    """Emit coefficient / value tables over parameter ranges."""


@table.command("psi-g")
@click.option("--n", "n_list", type=str, default="3,5,7", show_default=True)
@pass_manifest
@_run_guarded
def table_psi_g(manifest, n_list):
    manifest.command = "table.psi-g"
    manifest.params = {"n": n_list}
    rows = []
    for n in _parse_int_list(n_list):
        for kind, poly in (("psi", exact.psi_polynomial(n)),
                           ("g", exact.g_polynomial(n))):
            for e, c in sorted(poly.coefficients.items()):
                rows.append({
                    "kind": kind, "n": n, "exponent": e,
                    "num": str(c.coeff.numerator), "den": str(c.coeff.denominator),
                    "pi_pow": c.pi_power, "i_pow": c.i_power,
                    "zeta_weight": poly.zeta_weight,
                })
    _write_table(manifest, rows,
                 ["kind", "n", "exponent", "num", "den", "pi_pow", "i_pow",
                  "zeta_weight"])


@table.command("thm13-rhs")
@click.option("--n", "n_list", type=str, default="3,5", show_default=True)
@click.option("--hk-max", type=int, default=5, show_default=True)
@pass_manifest
@_run_guarded
def table_thm13_rhs(manifest, n_list, hk_max):
    manifest.command = "table.thm13-rhs"
    manifest.params = {"n": n_list, "hk_max": hk_max}
    rows = []
    for n in _parse_int_list(n_list):
        for h, k in _coprime_pairs(hk_max):
            v = exact.thm13_rhs(n, h, k)
            rows.append({
                "n": n, "h": h, "k": k,
                "num": str(v.coeff.numerator), "den": str(v.coeff.denominator),
                "pi_pow": v.pi_power, "i_pow": v.i_power,
            })
    _write_table(manifest, rows, ["n", "h", "k", "num", "den", "pi_pow", "i_pow"])


if __name__ == "__main__":
    main()
