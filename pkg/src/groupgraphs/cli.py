"""Command-line interface: build graphs, run the claim suite, scan catalogs.

Exit codes: 0 success, 1 environment/parse failure, 2 precondition violation,
3 contract violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable

from .builders import GraphKind, build_graph
from .catalog import CatalogSpec, GroupSpecError, parse_group_spec, resolve_catalog
from .errors import (
    AbelianGroupError,
    CayleyParseError,
    CyclicGroupError,
    GroupGraphsError,
    NotADivisorError,
    NotAGroupError,
    NotAnActionError,
    NotNilpotentError,
    NotTwoGeneratedError,
    SizeLimitError,
)
from .graph6 import to_dot, to_graph6
from .graphs import DiGraph
from .groups import (
    DEFAULT_ELEMENT_CAP,
    FiniteGroup,
    cyclic,
    cyclic_scalar_action,
    load_cayley_file,
    semidirect_product,
)
from .runner import CLAIM_IDS, RunContext, contract_failed, run_claims
from .scanner import scan_question1
from .structure import DEFAULT_LATTICE_CAP

EXIT_OK = 0
EXIT_SETUP = 1
EXIT_PRECONDITION = 2
EXIT_CONTRACT = 3

_PRECONDITION_ERRORS = (
    AbelianGroupError,
    CyclicGroupError,
    GroupSpecError,
    NotADivisorError,
    NotAnActionError,
    NotNilpotentError,
    NotTwoGeneratedError,
    SizeLimitError,
)

DEFAULT_SCAN_ORDER = 64
DEFAULT_VERIFY_ORDER = 32
CONFIG_ENV = "GROUPGRAPHS_CONFIG"

_FORMATS = ("json", "graph6", "dot", "text")


@dataclass(frozen=True)
class RunConfig:
    element_cap: int = DEFAULT_ELEMENT_CAP
    lattice_cap: int = DEFAULT_LATTICE_CAP
    scan_cap: int = DEFAULT_SCAN_ORDER
    jobs: int = 1
    seed: int = 1729
    fmt: str = "json"

    def validated(self) -> "RunConfig":
        for name in ("element_cap", "lattice_cap", "scan_cap", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.fmt not in _FORMATS:
            raise ValueError(f"format must be one of {_FORMATS}")
        return self


class ConfigError(GroupGraphsError):
    """Malformed configuration file."""


def load_config(path: str) -> tuple[dict, dict[str, Callable[[], FiniteGroup]]]:
    """Parse the line-based ``key = value`` config; returns overrides plus
    config-defined named groups (``semidirect.NAME = C<n> C<m> <scalar>``)."""
    overrides: dict = {}
    extra: dict[str, Callable[[], FiniteGroup]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in ("element_cap", "lattice_cap", "scan_cap", "jobs", "seed"):
                try:
                    overrides[key] = int(value)
                except ValueError as exc:
                    raise ConfigError(f"{path}:{lineno}: {key} must be an integer") from exc
            elif key.startswith("semidirect."):
                name = key[len("semidirect."):]
                parts = value.split()
                if (
                    len(parts) != 3
                    or not parts[0].startswith("C")
                    or not parts[1].startswith("C")
                ):
                    raise ConfigError(
                        f"{path}:{lineno}: semidirect needs 'C<n> C<m> <scalar>'"
                    )
                try:
                    n, m, scalar = int(parts[0][1:]), int(parts[1][1:]), int(parts[2])
                except ValueError as exc:
                    raise ConfigError(f"{path}:{lineno}: bad semidirect numbers") from exc

                def factory(n=n, m=m, scalar=scalar, name=name) -> FiniteGroup:
                    a, b = cyclic(n), cyclic(m)
                    return semidirect_product(
                        a, b, cyclic_scalar_action(a, b, scalar), name=name
                    )

                extra[name] = factory
            else:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return overrides, extra


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_group(spec: str, cfg: RunConfig, extra) -> FiniteGroup:
    if os.path.sep in spec or spec.endswith((".txt", ".tbl")) or os.path.isfile(spec):
        return load_cayley_file(spec, cap=cfg.element_cap)
    return parse_group_spec(spec, cap=cfg.element_cap, extra=extra)


def _kind_from_value(value: str) -> GraphKind:
    for kind in GraphKind:
        if kind.value == value:
            return kind
    raise GroupSpecError(f"unknown graph kind {value!r}")


def _graph_json(group: FiniteGroup, kind: GraphKind, graph) -> str:
    payload = {
        "group": group.name,
        "order": group.n,
        "kind": kind.value,
        "vertices": graph.m,
        "labels": list(graph.labels),
    }
    if isinstance(graph, DiGraph):
        payload["arcs"] = [
            [u, v] for u in range(graph.m) for v in range(graph.m) if graph.has_arc(u, v)
        ]
    else:
        payload["edges"] = [
            [u, v]
            for u in range(graph.m)
            for v in range(u + 1, graph.m)
            if graph.has_edge(u, v)
        ]
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _graph_text(graph) -> str:
    rows = graph.out if isinstance(graph, DiGraph) else graph.adj
    lines = [f"{graph.m}"]
    for v in range(graph.m):
        targets = [str(u) for u in range(graph.m) if (rows[v] >> u) & 1]
        lines.append(f"{v} ({graph.labels[v]}): {' '.join(targets)}")
    return "\n".join(lines) + "\n"


def cmd_build(args, cfg: RunConfig, extra) -> int:
    group = _resolve_group(args.group, cfg, extra)
    kind = _kind_from_value(args.kind)
    graph = build_graph(group, kind, element_cap=cfg.element_cap, lattice_cap=cfg.lattice_cap)
    fmt = args.format or cfg.fmt
    if fmt == "graph6":
        if isinstance(graph, DiGraph):
            raise NotAnActionError("graph6 encodes undirected graphs only")
        text = to_graph6(graph) + "\n"
    elif fmt == "dot":
        text = to_dot(graph, name=f"{group.name}-{kind.value}")
    elif fmt == "json":
        text = _graph_json(group, kind, graph)
    else:
        text = _graph_text(graph)
    _emit(text, args.out)
    return EXIT_OK


def _catalog_from_args(args, cfg: RunConfig, extra, default_order: int):
    include = tuple(s.strip() for s in args.include.split(",") if s.strip()) if args.include else ()
    imports = tuple(args.imports or ())
    max_order = args.max_order if args.max_order is not None else default_order
    spec = CatalogSpec(max_order=max_order, include=include, import_paths=imports)
    return resolve_catalog(spec, cap=cfg.element_cap, extra=extra)


def cmd_verify(args, cfg: RunConfig, extra) -> int:
    catalog = _catalog_from_args(args, cfg, extra, DEFAULT_VERIFY_ORDER)
    claim_filter = (
        tuple(c.strip() for c in args.claims.split(",") if c.strip())
        if args.claims
        else None
    )
    ctx = RunContext(
        catalog=catalog,
        element_cap=cfg.element_cap,
        lattice_cap=cfg.lattice_cap,
        jobs=cfg.jobs,
        seed=cfg.seed,
    )
    try:
        reports = run_claims(ctx, claim_filter)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_SETUP
    text = json.dumps([r.to_json_dict() for r in reports], sort_keys=True, indent=2) + "\n"
    _emit(text, args.out)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAILED {r.claim_id} [{r.subject}]", file=sys.stderr)
    return EXIT_CONTRACT if contract_failed(reports) else EXIT_OK


def cmd_scan(args, cfg: RunConfig, extra) -> int:
    catalog = _catalog_from_args(args, cfg, extra, min(DEFAULT_SCAN_ORDER, cfg.scan_cap))
    kind = _kind_from_value(args.kind)
    report = scan_question1(
        catalog,
        kind,
        element_cap=cfg.element_cap,
        lattice_cap=cfg.lattice_cap,
        jobs=cfg.jobs,
    )
    text = json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n"
    _emit(text, args.out)
    if report.contract_violated:
        print(f"contract violated: {report.nilpotency_mismatches}", file=sys.stderr)
        return EXIT_CONTRACT
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupgraphs",
        description="Graphs defined on finite groups: build, verify, scan.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=None, help="parallel isomorphism checks")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build one graph and print it", parents=[common])
    p_build.add_argument("--group", required=True, help="group spec (e.g. S4, C6xC6) or Cayley file path")
    p_build.add_argument("--kind", required=True, help="graph kind, e.g. power, delta, join")
    p_build.add_argument("--format", choices=_FORMATS, default=None)
    p_build.add_argument("--out", default=None)

    p_verify = sub.add_parser("verify", help="run the claim suite over a catalog", parents=[common])
    p_verify.add_argument("--max-order", type=int, default=None)
    p_verify.add_argument("--include", default=None, help="comma-separated group specs")
    p_verify.add_argument("--import", dest="imports", action="append", default=[],
                          help="Cayley-table file to add to the catalog")
    p_verify.add_argument("--claims", default=None,
                          help=f"comma-separated claim ids; known: {', '.join(CLAIM_IDS)}")
    p_verify.add_argument("--out", default=None)

    p_scan = sub.add_parser("scan", help="scan a catalog for isomorphic kind-graphs", parents=[common])
    p_scan.add_argument("--kind", required=True)
    p_scan.add_argument("--max-order", type=int, default=None)
    p_scan.add_argument("--include", default=None)
    p_scan.add_argument("--import", dest="imports", action="append", default=[])
    p_scan.add_argument("--out", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    try:
        overrides: dict = {}
        extra: dict = {}
        config_path = os.environ.get(CONFIG_ENV)
        if config_path:
            overrides, extra = load_config(config_path)
        if args.jobs is not None:
            overrides["jobs"] = args.jobs
        if args.seed is not None:
            overrides["seed"] = args.seed
        cfg = RunConfig(**overrides).validated()
    except (ConfigError, OSError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SETUP

    try:
        if args.command == "build":
            return cmd_build(args, cfg, extra)
        if args.command == "verify":
            return cmd_verify(args, cfg, extra)
        if args.command == "scan":
            return cmd_scan(args, cfg, extra)
        raise AssertionError(args.command)
    except _PRECONDITION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (CayleyParseError, NotAGroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SETUP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
