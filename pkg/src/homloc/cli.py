"""Command-line front end: complex files in, JSON reports out.

Complex file format (``#`` starts a comment)::

    dim 2
    s 0 1 2          # a simplex; faces are added automatically
    len 0 1 1.5      # length of edge 0-1 (default 1.0 when omitted)
    chain 1 0 3 4    # a 1-chain given by edge indices (see ``homloc index``)

Exit codes: 0 success, 2 input error, 3 cap or feasibility error,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from homloc import basis as basis_mod
from homloc.complex import Chain, SimplicialComplex, build, make_simplex
from homloc.errors import EnumerationCapError, HomlocError
from homloc.homology import betti, homologous, max_enum
from homloc.localize import min_diameter_cycle_exact, min_radius_cycle, min_volume_cycle_exact
from homloc.metric import Metric, WeightFunction, diam
from homloc.stability import SCHEMES, sweep
from homloc.testkit import FIXTURE_NAMES, fixture

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INTERNAL = 0, 2, 3, 4


class ParseError(HomlocError, ValueError):
    def __init__(self, message: str, line: int, column: int, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass
class ComplexFile:
    complex: SimplicialComplex
    metric: Metric
    chains: list[Chain] = field(default_factory=list)


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with 1-based start columns, comment stripped."""
    line = line.split("#", 1)[0]
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_complex(text: str, require_lengths: bool = False, source: str = "<input>") -> ComplexFile:
    max_dim = None
    simplices: list[tuple[int, ...]] = []
    lengths: dict[tuple[int, int], tuple[float, int, int]] = {}
    raw_chains: list[tuple[int, list[int], int, list[int]]] = []

    def fail(msg: str, ln: int, col: int):
        raise ParseError(msg, ln, col, source)

    def as_int(tok: str, ln: int, col: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            fail(f"expected a nonnegative integer, got {tok!r}", ln, col)
        if v < 0:
            fail(f"expected a nonnegative integer, got {tok!r}", ln, col)
        return v

    for ln, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        (kw, kcol), args = toks[0], toks[1:]
        if max_dim is None and kw != "dim":
            fail("file must start with a 'dim <max_dim>' header", ln, kcol)
        if kw == "dim":
            if max_dim is not None:
                fail("duplicate 'dim' header", ln, kcol)
            if len(args) != 1:
                fail("'dim' takes exactly one integer", ln, kcol)
            max_dim = as_int(args[0][0], ln, args[0][1])
        elif kw == "s":
            if not args:
                fail("'s' needs at least one vertex", ln, kcol)
            verts = [as_int(t, ln, c) for t, c in args]
            if len(set(verts)) != len(verts):
                fail("repeated vertex in simplex", ln, args[0][1])
            if len(verts) - 1 > max_dim:
                fail(f"simplex of dimension {len(verts) - 1} exceeds dim {max_dim}", ln, args[0][1])
            simplices.append(make_simplex(verts))
        elif kw == "len":
            if len(args) != 3:
                fail("'len' takes two vertices and a length", ln, kcol)
            u, v = as_int(args[0][0], ln, args[0][1]), as_int(args[1][0], ln, args[1][1])
            try:
                x = float(args[2][0])
            except ValueError:
                fail(f"expected a length, got {args[2][0]!r}", ln, args[2][1])
            if not (x > 0 and x != float("inf")):
                fail(f"edge length must be positive and finite, got {args[2][0]}", ln, args[2][1])
            if u == v:
                fail("an edge needs two distinct vertices", ln, args[1][1])
            e = (min(u, v), max(u, v))
            if e in lengths:
                fail(f"second length for edge {e} (first on line {lengths[e][1]})", ln, kcol)
            lengths[e] = (x, ln, args[0][1])
        elif kw == "chain":
            if not args:
                fail("'chain' needs a dimension", ln, kcol)
            d = as_int(args[0][0], ln, args[0][1])
            idx = [as_int(t, ln, c) for t, c in args[1:]]
            raw_chains.append((d, idx, ln, [c for _, c in args[1:]]))
        else:
            fail(f"unknown keyword {kw!r}", ln, kcol)

    if max_dim is None:
        raise ParseError("empty file: missing 'dim' header", 1, 1, source)
    k = build(simplices, max_dim=max_dim)
    for e, (_, ln, col) in lengths.items():
        if e not in k:
            fail(f"edge {e} is not in the complex", ln, col)
    if require_lengths:
        for e in k.simplices(1):
            if e not in lengths:
                raise ParseError(f"edge {e} has no length", 1, 1, source)
    metric = Metric.from_edges(k, {e: v[0] for e, v in lengths.items()}, default=1.0)
    chains = []
    for d, idx, ln, cols in raw_chains:
        if d > max_dim:
            fail(f"chain dimension {d} exceeds dim {max_dim}", ln, cols[0] if cols else 1)
        for i, col in zip(idx, cols):
            if i >= k.n(d):
                fail(f"no {d}-simplex with index {i} (there are {k.n(d)})", ln, col)
        # repeated indices cancel over Z2
        bits = 0
        for i in idx:
            bits ^= 1 << i
        chains.append(Chain.from_indices(k, d, [i for i in range(k.n(d)) if bits >> i & 1]))
    return ComplexFile(k, metric, chains)


def format_complex(k: SimplicialComplex, m: Metric, chains: Sequence[Chain] = ()) -> str:
    """Text form that ``parse_complex`` reads back to the same complex and lengths."""
    lines = [f"dim {k.max_dim}"]
    for s in sorted(k.maximal_simplices(), key=lambda s: (len(s), s)):
        lines.append("s " + " ".join(map(str, s)))
    for e, x in zip(k.simplices(1), m.lengths):
        lines.append(f"len {e[0]} {e[1]} {x!r}")
    for z in chains:
        lines.append(" ".join(["chain", str(z.dim), *map(str, z.indices())]))
    return "\n".join(lines) + "\n"


def parse_weights(text: str, k: SimplicialComplex, source: str = "<weights>") -> WeightFunction:
    """Lines ``<dim> <index> <weight>``; simplices not listed weigh 1."""
    w = {(d, i): 1.0 for d in range(k.max_dim + 1) for i in range(k.n(d))}
    for ln, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        if len(toks) != 3:
            raise ParseError("expected '<dim> <index> <weight>'", ln, toks[0][1], source)
        try:
            d, i = int(toks[0][0]), int(toks[1][0])
        except ValueError:
            raise ParseError("dimension and index must be integers", ln, toks[0][1], source) from None
        if (d, i) not in w:
            raise ParseError(f"no {d}-simplex with index {i}", ln, toks[1][1], source)
        try:
            w[(d, i)] = float(toks[2][0])
        except ValueError:
            raise ParseError(f"expected a weight, got {toks[2][0]!r}", ln, toks[2][1], source) from None
    return WeightFunction(w)


def parse_chain_spec(spec: str, k: SimplicialComplex) -> Chain:
    """``d:i0,i1,...`` as given on the command line."""
    try:
        d_txt, idx_txt = spec.split(":", 1)
        d = int(d_txt)
        idx = [int(t) for t in idx_txt.split(",") if t.strip()]
    except ValueError:
        raise ValueError(f"bad chain spec {spec!r}; expected d:i0,i1,...") from None
    if not 0 <= d <= k.max_dim:
        raise ValueError(f"chain dimension {d} outside 0..{k.max_dim}")
    bad = [i for i in idx if not 0 <= i < k.n(d)]
    if bad:
        raise ValueError(f"no {d}-simplex with index {bad[0]} (there are {k.n(d)})")
    bits = 0
    for i in idx:
        bits ^= 1 << i
    return Chain.from_indices(k, d, [i for i in range(k.n(d)) if bits >> i & 1])


def _load(args) -> ComplexFile:
    path = Path(args.file)
    text = path.read_text()
    return parse_complex(text, require_lengths=args.require_lengths, source=str(path))


def _chain_json(z: Chain) -> dict[str, Any]:
    return {"dim": z.dim, "indices": z.indices(), "simplices": [list(s) for s in z.simplices()]}


def _query_chain(args, cf: ComplexFile) -> Chain:
    if args.chain:
        return parse_chain_spec(args.chain, cf.complex)
    if not cf.chains:
        raise ValueError("no chain given: use --chain d:i0,i1,... or a 'chain' line in the file")
    return cf.chains[0]


def cmd_index(args) -> tuple[dict, dict]:
    cf = _load(args)
    k = cf.complex
    simplices = {str(d): [list(s) for s in k.simplices(d)] for d in range(k.max_dim + 1)}
    return {"file": args.file}, {"counts": [k.n(d) for d in range(k.max_dim + 1)], "simplices": simplices}


def cmd_betti(args) -> tuple[dict, dict]:
    cf = _load(args)
    k = cf.complex
    if args.dim is None:
        return {"file": args.file, "dim": None}, {"betti": [betti(k, d) for d in range(k.max_dim + 1)]}
    return {"file": args.file, "dim": args.dim}, {"betti": betti(k, args.dim)}


def cmd_localize(args) -> tuple[dict, dict]:
    cf = _load(args)
    k, m = cf.complex, cf.metric
    z0 = _query_chain(args, cf)
    cap = args.max_enum if args.max_enum is not None else max_enum()
    inputs = {
        "file": args.file,
        "chain": _chain_json(z0),
        "criterion": args.criterion,
        "weights": args.weights,
        "max_enum": cap,
    }
    if args.criterion == "radius":
        res = min_radius_cycle(k, m, z0)
    elif args.criterion == "volume":
        w = parse_weights(Path(args.weights).read_text(), k, args.weights) if args.weights else None
        res = min_volume_cycle_exact(k, z0, w, cap)
    else:
        res = min_diameter_cycle_exact(k, m, z0, cap)
    out: dict[str, Any] = {
        "objective": res.objective,
        "objective_value": res.objective_value,
        "cycle": _chain_json(res.cycle),
        "center": res.center,
        "homologous": homologous(k, res.cycle, z0),
    }
    if args.criterion == "diameter":
        zr = min_radius_cycle(k, m, z0)
        num = diam(zr.cycle, k, m)
        ratio = num / res.objective_value if res.objective_value else 1.0
        out["radius_cycle"] = _chain_json(zr.cycle)
        out["radius_cycle_diameter"] = num
        out["diameter_ratio"] = ratio
        out["ratio_within_2"] = ratio <= 2.0 + 1e-9
    return inputs, out


def _basis_json(b: basis_mod.HomologyBasis) -> list[dict[str, Any]]:
    return [
        {"mask": mask, "size": s.value, "center": s.witness_center, "cycle": _chain_json(h.representative)}
        for mask, (h, s) in zip(b.masks, b.classes)
    ]


def _basis(args, cf: ComplexFile) -> basis_mod.HomologyBasis:
    return basis_mod.optimal_basis(cf.complex, cf.metric, args.dim, args.max_classes)


def cmd_basis(args) -> tuple[dict, dict]:
    cf = _load(args)
    b = _basis(args, cf)
    inputs = {"file": args.file, "dim": args.dim, "max_classes": args.max_classes}
    return inputs, {"beta": b.beta, "sizes": b.sizes, "total_size": sum(b.sizes), "classes": _basis_json(b)}


def cmd_filtration(args) -> tuple[dict, dict]:
    cf = _load(args)
    b = _basis(args, cf)
    x = basis_mod.filtration(b)
    subgroups = [{"index": i, "size": x.sizes[i], "generators": b.masks[:i]} for i in range(x.beta + 1)]
    inputs = {"file": args.file, "dim": args.dim, "max_classes": args.max_classes}
    return inputs, {"beta": x.beta, "sizes": list(x.sizes), "subgroups": subgroups, "classes": _basis_json(b)}


def cmd_stability(args) -> tuple[dict, dict]:
    cf = _load(args)
    inputs = {
        "file": args.file,
        "dim": args.dim,
        "scheme": args.scheme,
        "magnitude": args.magnitude,
        "trials": args.trials,
        "seed": args.seed,
        "max_classes": args.max_classes,
    }
    if args.trials < 0:
        raise ValueError("--trials must be nonnegative")
    reports = sweep(
        cf.complex, cf.metric, args.dim, args.scheme, args.magnitude, args.trials,
        seed=args.seed, jobs=args.jobs, max_classes=args.max_classes,
    )
    trials = []
    for i, r in enumerate(reports):
        trials.append({
            "seed": args.seed + i,
            "epsilon": r.epsilon,
            "max_class_delta": max((c.delta for c in r.per_class), default=0.0),
            "class_violations": r.class_violations,
            "filtration_distance": r.filtration_distance,
            "filtration_pass": r.filtration_pass,
            "basis_changed": r.basis_changed,
            "passed": r.passed,
        })
    out: dict[str, Any] = {"trials": trials}
    if reports:
        out["epsilon"] = {
            "max": max(r.epsilon for r in reports),
            "min": min(r.epsilon for r in reports),
        }
    out["class_violations"] = sum(r.class_violations for r in reports)
    out["filtration_violations"] = sum(r.filtration_pass is False for r in reports)
    out["basis_changes"] = sum(r.basis_changed for r in reports)
    out["passed"] = all(r.passed for r in reports)
    return inputs, out


def cmd_export(args) -> str:
    f = fixture(args.name)
    chains = list(f.cycles.values()) if args.with_cycles else []
    return format_complex(f.complex, f.metric, chains)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homloc", description="Localized Z2 homology on simplicial complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="complex file")
        sp.add_argument("--out", help="write the report here instead of standard output")
        sp.add_argument("--require-lengths", action="store_true", help="reject edges without a 'len' line")
        return sp

    with_file("index", "list simplices with the indices used by chains")

    sp = with_file("betti", "Betti numbers over Z2")
    sp.add_argument("--dim", type=int, help="single dimension (default: all)")

    sp = with_file("localize", "small representative of a homology class")
    sp.add_argument("--chain", help="query cycle as d:i0,i1,... (default: first chain in the file)")
    sp.add_argument("--criterion", choices=("radius", "volume", "diameter"), default="radius")
    sp.add_argument("--weights", help="simplex weights for --criterion volume")
    sp.add_argument("--max-enum", type=int, help="cap on n_{d+1} for exhaustive searches")

    for name, help in (("basis", "optimal homology basis"), ("filtration", "subgroup filtration of the optimal basis")):
        sp = with_file(name, help)
        sp.add_argument("--dim", type=int, default=1)
        sp.add_argument("--max-classes", type=int, default=basis_mod.DEFAULT_MAX_CLASSES)

    sp = with_file("stability", "perturb the metric and check size and filtration stability")
    sp.add_argument("--dim", type=int, default=1)
    sp.add_argument("--scheme", choices=SCHEMES, default="uniform_noise")
    sp.add_argument("--magnitude", type=float, default=0.05)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--max-classes", type=int, default=basis_mod.DEFAULT_MAX_CLASSES)

    sp = sub.add_parser("export", help="write a built-in fixture as a complex file")
    sp.add_argument("name", help=f"one of {', '.join(FIXTURE_NAMES)} (circle_n for any n >= 3)")
    sp.add_argument("--with-cycles", action="store_true", help="also write the fixture's named cycles")
    sp.add_argument("--out", help="output path (default: standard output)")
    return p


COMMANDS = {
    "index": cmd_index,
    "betti": cmd_betti,
    "localize": cmd_localize,
    "basis": cmd_basis,
    "filtration": cmd_filtration,
    "stability": cmd_stability,
}


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.command == "export":
            _emit(cmd_export(args), args.out)
            return EXIT_OK
        inputs, outputs = COMMANDS[args.command](args)
    except EnumerationCapError as e:
        print(f"homloc: {e}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"homloc: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as e:
        print(f"homloc: internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "inputs": inputs,
        "outputs": outputs,
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
