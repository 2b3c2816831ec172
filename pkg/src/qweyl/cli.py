"""Command-line front end: run a verification suite and report the checks."""

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass

from . import suites

COMMANDS = ("verify-serre", "verify-pbw", "verify-weyl", "verify-pairing", "verify-kaction",
            "verify-dualrep", "verify-classical-limit", "derive-membership")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int = 2
    max_degree: int = 4
    form: str = "J"
    lam: object = "formal"
    lam_mu: int = 0
    lam_nu: int = 0
    serre_depth: int = 6
    jobs: int = 1
    out: str = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError("unknown command %r" % self.command)
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.max_degree < 0:
            raise ConfigError("max-degree must be >= 0")
        if self.form not in ("J", "K", "L"):
            raise ConfigError("form must be J, K or L")
        if self.lam != "formal" and (not isinstance(self.lam, int) or self.lam < 0):
            raise ConfigError("lambda must be a nonnegative integer or 'formal'")
        if self.lam_mu < 0 or self.lam_nu < 0:
            raise ConfigError("lambda-mu and lambda-nu must be >= 0")
        if (self.lam_mu or self.lam_nu) and self.n != 2:
            raise ConfigError("matrix-valued lambda needs n = 2")
        if self.serre_depth < 2:
            raise ConfigError("serre-depth must be >= 2")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.command == "verify-serre" and self.n < 2:
            raise ConfigError("verify-serre needs n >= 2")
        if self.command == "derive-membership" and self.n > 3:
            raise ConfigError("derive-membership supports n <= 3")
        if self.command == "verify-classical-limit" and (self.lam_mu or self.lam_nu):
            raise ConfigError("verify-classical-limit takes a scalar lambda")
        return self

    def public(self):
        """The config as echoed in the report (the output path is not part of the run)."""
        d = asdict(self)
        d.pop("out")
        d.pop("jobs")
        d["lambda"] = d.pop("lam")
        return d


def _integer_lambda(cfg):
    return None if cfg.lam == "formal" else cfg.lam


def build_tasks(cfg):
    n, d, lam = cfg.n, cfg.max_degree, _integer_lambda(cfg)
    if cfg.command == "verify-serre":
        return suites.serre_suite(n, cfg.serre_depth)
    if cfg.command == "verify-pbw":
        return suites.pbw_suite(n, d)
    if cfg.command == "verify-weyl":
        return suites.weyl_suite(n, d)
    if cfg.command == "verify-pairing":
        return suites.pairing_suite(n, d)
    if cfg.command == "verify-kaction":
        return suites.kaction_suite(n, d)
    if cfg.command == "verify-dualrep":
        return suites.dualrep_suite(n, d, cfg.form, (cfg.lam_mu, cfg.lam_nu), lam)
    if cfg.command == "verify-classical-limit":
        return suites.classical_suite(n, d, (0, 2, 3) if lam is None else (lam,))
    return suites.membership_suite(n, cfg.form)


def summary_lines(cfg, checks):
    """Command-specific headline figures."""
    out = []
    if cfg.command == "verify-pbw":
        counts = [c["detail"].split(" ")[0] for c in checks if c["name"].startswith("pbw normal monomials")]
        out.append("counts (%s)" % ",".join(counts))
    if cfg.command == "verify-serre":
        plus = [c for c in checks if c["name"].startswith("serre plus")]
        out.append("%d relation instances per side" % len(plus))
    return out


def run(cfg):
    """Run the suite for a validated config; returns (report, exit code)."""
    checks = suites.run_tasks(build_tasks(cfg), cfg.jobs)
    counts = {s: sum(c["status"] == s for c in checks) for s in ("pass", "fail", "inconclusive")}
    report = {"command": cfg.command, "config": cfg.public(), "checks": checks,
              "summary": counts, "headline": summary_lines(cfg, checks)}
    return report, 1 if counts["fail"] else 0


def format_text(report):
    lines = []
    for c in report["checks"]:
        line = "%-12s %s" % (c["status"].upper(), c["name"])
        if c.get("detail"):
            line += "  [%s]" % c["detail"]
        lines.append(line)
        if "counterexample" in c:
            lines.append("    counterexample: %s" % json.dumps(c["counterexample"], sort_keys=True))
    s = report["summary"]
    lines += report["headline"]
    lines.append("%s: %d checks, %d pass, %d fail, %d inconclusive" % (
        report["command"], len(report["checks"]), s["pass"], s["fail"], s["inconclusive"]))
    return "\n".join(lines)


def _lambda_arg(text):
    if text == "formal":
        return "formal"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer or 'formal'")


def parser():
    p = argparse.ArgumentParser(prog="qweyl", description="Exact verification of quantized matrix and Weyl algebra identities.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--form", default="J", choices=("J", "K", "L"))
    p.add_argument("--lambda", dest="lam", type=_lambda_arg, default="formal",
                   help="scalar weight: an integer or 'formal' (default)")
    p.add_argument("--lambda-mu", type=int, default=0)
    p.add_argument("--lambda-nu", type=int, default=0)
    p.add_argument("--serre-depth", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (QWEYL_JOBS overrides)")
    p.add_argument("--out", help="write the JSON report to this path")
    p.add_argument("--timing", action="store_true", help="print wall time (never written to the report)")
    return p


def main(argv=None):
    p = parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    jobs = args.jobs
    env = os.environ.get("QWEYL_JOBS")
    try:
        if env:
            try:
                jobs = int(env)
            except ValueError:
                raise ConfigError("QWEYL_JOBS must be an integer")
        cfg = RunConfig(args.command, args.n, args.max_degree, args.form, args.lam, args.lambda_mu,
                        args.lambda_nu, args.serre_depth, jobs, args.out).validate()
    except ConfigError as e:
        print("invalid configuration: %s" % e, file=sys.stderr)
        return 2
    start = time.perf_counter()
    report, code = run(cfg)
    print(format_text(report))
    if args.timing:
        print("wall time %.2fs" % (time.perf_counter() - start))
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
