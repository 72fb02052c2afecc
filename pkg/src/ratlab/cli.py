"""ratlab command-line interface."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, pipelines
from .certificate import Certificate, ExitCode, GuardExceeded
from .cubiclines import UnsupportedSurface
from .projgeom import GeometryError


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit the JSON certificate")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="ratlab", description="Exact verification of rationality computations.")
    parser.add_argument("--version", action="version", version=f"ratlab {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    for name, help_ in (("lines", "the 27 lines of a diagonal cubic"),
                        ("orbits", "Galois orbits on the 27 lines"),
                        ("certify", "Picard-rank-one non-rationality certificate")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--surface", required=True, help="diag:a0,a1,a2,a3")

    p = sub.add_parser("cube-criterion", parents=[common], help="coefficient cube test")
    p.add_argument("--coeffs", required=True, help="a0,a1,a2,a3")

    p = sub.add_parser("descent", parents=[common], help="degree descent proof trace")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--variant", choices=("segre", "manin"), default="segre")

    fano = sub.add_parser("fano", help="characteristic-p Fano family").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name in ("window", "enumerate", "symbolic", "witness"):
        p = fano.add_parser(name, parents=[common])
        p.add_argument("--p", type=int, default=2 if name == "witness" else None,
                       required=name != "witness")
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--ell", type=int, required=name == "witness")

    oracle = sub.add_parser("oracle", help="brute-force oracles").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    p = oracle.add_parser("lines-fq", parents=[common])
    p.add_argument("--surface", required=True)
    p.add_argument("--q", type=int, required=True)
    p = oracle.add_parser("critical", parents=[common])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--poly", required=True, help="polynomial in x1..xn, e.g. 'x1^3 + x1*x2'")
    p.add_argument("--nvars", type=int, required=True)
    p = oracle.add_parser("morse", parents=[common])
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)

    swd = sub.add_parser("swd", help="the two-component cubic surface").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    p = swd.add_parser("scan", parents=[common])
    p.add_argument("--height", type=int, required=True)
    p = swd.add_parser("check", parents=[common])
    p.add_argument("--z", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--point", help="x,y,z,t")

    p = sub.add_parser("branch-quartic", parents=[common], help="branch curve of a projection")
    p.add_argument("--cubic", required=True, help="cubic form in x0..x3")
    p.add_argument("--point", required=True, help="a0,a1,a2,a3")

    p = sub.add_parser("verify", parents=[common], help="recompute a saved certificate")
    p.add_argument("file")
    return parser


def _arguments(ns) -> tuple[str, dict]:
    cmd = ns.cmd
    if cmd in ("lines", "orbits", "certify"):
        return cmd, {"surface": ns.surface}
    if cmd == "cube-criterion":
        return cmd, {"coeffs": ns.coeffs}
    if cmd == "descent":
        return cmd, {"d": ns.d, "variant": ns.variant}
    if cmd == "fano":
        if ns.action == "witness":
            if ns.p != 2:
                raise UsageError("fano witness covers the p = 2 family only")
            return "fano witness", {"m": ns.m, "n": ns.n, "ell": ns.ell}
        return f"fano {ns.action}", {"p": ns.p, "m": ns.m, "n": ns.n}
    if cmd == "oracle":
        if ns.action == "lines-fq":
            return "oracle lines-fq", {"surface": ns.surface, "q": ns.q}
        if ns.action == "critical":
            return "oracle critical", {"q": ns.q, "poly": ns.poly, "nvars": ns.nvars}
        return "oracle morse", {"d": ns.d, "n": ns.n, "q": ns.q, "trials": ns.trials, "seed": ns.seed}
    if cmd == "swd":
        if ns.action == "scan":
            return "swd scan", {"height": ns.height}
        if ns.point is not None:
            return "swd check", {"point": ns.point}
        if ns.z is None or ns.t is None:
            raise UsageError("swd check needs --z and --t, or --point")
        return "swd check", {"z": ns.z, "t": ns.t}
    if cmd == "branch-quartic":
        return cmd, {"cubic": ns.cubic, "point": ns.point}
    raise UsageError(f"unknown command {cmd}")


def _short(value) -> str | None:
    text = json.dumps(value, sort_keys=True)
    return text if len(text) <= 100 else None


def render_text(cert: Certificate) -> str:
    lines = [f"{cert.command}: {cert.verdict.value}"]
    for key in sorted(cert.evidence):
        s = _short(cert.evidence[key])
        if s is not None:
            lines.append(f"  {key}: {s}")
        elif isinstance(cert.evidence[key], list):
            lines.append(f"  {key}: [{len(cert.evidence[key])} entries]")
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        if ns.cmd == "verify":
            try:
                with open(ns.file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {ns.file}: {exc}") from exc
            cert = pipelines.verify(text, ns.file)
        else:
            command, arguments = _arguments(ns)
            cert = pipelines.build(command, arguments)
    except GuardExceeded as exc:
        print(f"ratlab: resource guard: {exc}", file=sys.stderr)
        return int(ExitCode.GUARD)
    except (UsageError, pipelines.MalformedCertificate, UnsupportedSurface, GeometryError,
            ValueError, ZeroDivisionError) as exc:
        print(f"ratlab: {exc}", file=sys.stderr)
        return int(ExitCode.USAGE)
    sys.stdout.write(cert.to_json() if ns.json else render_text(cert))
    return cert.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
