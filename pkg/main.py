"""Command-line entry point for multimesh validation, inspection and pipelines"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from src.config import STATS_FILE
from src.errors import MultiMeshError
from src.graph.state import PipelineConfig, PipelineKind
from src.graph.workflow import run_workflow
from src.mesh.topology import euler_characteristic, simplex_counts
from src.multimesh.diagnostics import check_consistency, node_reports, preimage_histogram
from src.multimesh.multimesh import MultiMesh
from src.stages.load import load_multimesh
from src.utils.logger import save_final_state, save_logs

BANNER = "=" * 80

# Flag destinations that map onto PipelineConfig fields
CONFIG_FLAGS = {
    "input": "input_path",
    "output": "output_path",
    "surface_out": "surface_output_path",
    "archive": "archive_path",
    "target_faces": "target_faces",
    "target_length": "target_length",
    "iters": "iterations",
    "envelope_eps": "envelope_eps",
    "smoothing_weight": "smoothing_weight",
    "period": "period",
    "seed": "seed",
}

COMMAND_KINDS = {
    "decimate": PipelineKind.SEAM_DECIMATE,
    "remesh-embedded": PipelineKind.EMBEDDED_REMESH,
    "periodic2d": PipelineKind.PERIODIC2D,
}


class UsageError(Exception):
    """Bad flag or config combination (exit code 2)."""


def parse_period(text: str) -> List[float]:
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"period must be 'px,py', got '{text}'") from None
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"period must be 'px,py', got '{text}'")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Seed for sampled envelopes and scheduling")
    common.add_argument("--json-stats", type=str, default=STATS_FILE,
                        help="Write machine-readable pass statistics to this path")
    common.add_argument("--config", type=str, default=None,
                        help="PipelineConfig JSON file; its values override the flags")
    common.add_argument("--verbose", action="store_true", help="Enable verbose output")

    parser = argparse.ArgumentParser(
        description="Multimesh toolkit - synchronized operations on trees of simplicial meshes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="Validity and containment map report")
    p.add_argument("--input", required=True, help="OBJ, MEDIT or archive file")
    p.add_argument("--strict", action="store_true", help="Also require edge links to be connected")

    p = sub.add_parser("info", parents=[common], help="Node tree, counts and Euler characteristics")
    p.add_argument("--input", required=True, help="OBJ, MEDIT or archive file")

    p = sub.add_parser("decimate", parents=[common], help="Seam-preserving decimation of a textured OBJ")
    p.add_argument("--input", help="OBJ with v/vt faces")
    p.add_argument("--target-faces", type=int, help="Facet count to decimate to")
    p.add_argument("--output", help="Decimated OBJ")
    p.add_argument("--archive", help="Also save the multimesh archive here")

    p = sub.add_parser("remesh-embedded", parents=[common], help="Remesh the surface of a tet mesh")
    p.add_argument("--input", help="MEDIT .mesh file")
    p.add_argument("--target-length", type=float, help="Target edge length L ('inf' disables splits)")
    p.add_argument("--iters", type=int, help="Remeshing iterations")
    p.add_argument("--output", help="Remeshed MEDIT file")
    p.add_argument("--surface-out", help="Also write the surface as OBJ")
    p.add_argument("--envelope-eps", type=float, help="Keep the surface within this distance of the input")
    p.add_argument("--smoothing-weight", type=float, help="Laplacian smoothing step")
    p.add_argument("--archive", help="Also save the multimesh archive here")

    p = sub.add_parser("periodic2d", parents=[common], help="Periodic remeshing of a planar tile")
    p.add_argument("--input", help="Tile OBJ")
    p.add_argument("--period", type=parse_period, help="Period as 'px,py'")
    p.add_argument("--target-length", type=float, help="Target edge length L")
    p.add_argument("--iters", type=int, help="Remeshing iterations")
    p.add_argument("--output", help="Remeshed tile OBJ")
    p.add_argument("--smoothing-weight", type=float, help="Laplacian smoothing step")
    p.add_argument("--archive", help="Also save the multimesh archive here")
    return parser


def pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    """Flags merged with the ``--config`` file, the file winning on shared fields."""
    kind = COMMAND_KINDS[args.command]
    values: Dict[str, Any] = {field: getattr(args, flag) for flag, field in CONFIG_FLAGS.items()
                              if getattr(args, flag, None) is not None}
    if args.config:
        try:
            from_file = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(from_file, dict):
            raise UsageError(f"config {args.config} must hold a JSON object")
        if from_file.get("kind", kind.value) != kind.value:
            raise UsageError(f"config is for '{from_file['kind']}', command runs '{kind.value}'")
        values.update(from_file)
    values["kind"] = kind
    try:
        return PipelineConfig.model_validate(values)
    except ValidationError as exc:
        raise UsageError(str(exc)) from None


def print_tree(mm: MultiMesh) -> None:
    for node in mm.preorder():
        mesh = mm.nodes[node]
        counts = simplex_counts(mesh)
        indent = "  " * mm.depth(node)
        print(f"{indent}{node} ({mesh.dimension}-mesh): counts={counts} chi={euler_characteristic(mesh)}")
        if mm.parent[node] is not None:
            print(f"{indent}  preimage sizes over '{mm.parent[node]}' edges: {preimage_histogram(mm, node)}")


def run_info(args: argparse.Namespace) -> int:
    mm = load_multimesh(args.input)
    print(BANNER)
    print(f"Multimesh: {args.input}")
    print(BANNER)
    print_tree(mm)
    return 0


def run_validate(args: argparse.Namespace) -> int:
    mm = load_multimesh(args.input)
    print(BANNER)
    print(f"Validity Report: {args.input}")
    print(BANNER)
    clean = True
    for node, report in node_reports(mm, strict=args.strict).items():
        if report.is_valid:
            print(f"[OK] {node} ({report.dimension}-mesh): valid")
            continue
        clean = False
        print(f"[FAIL] {node} ({report.dimension}-mesh): {len(report.violations)} violation(s)")
        for line in report.lines():
            print(f"  - {line}")
    consistency = check_consistency(mm)
    if consistency.is_consistent:
        print("[OK] containment maps consistent")
    else:
        clean = False
        print(f"[FAIL] containment maps: {len(consistency.issues)} issue(s)")
        for issue in consistency.issues:
            print(f"  - {issue.node} {issue.check}: {tuple(issue.witness)} {issue.detail}".rstrip())
    for node in consistency.empty_nodes:
        print(f"  note: node '{node}' has no facets")
    return 0 if clean else 1


def run_pipeline_command(args: argparse.Namespace) -> int:
    config = pipeline_config(args)
    print(BANNER)
    print(f"Pipeline: {config.kind.value}")
    print(BANNER)
    print(f"Input: {config.input_path}")
    print(f"Output: {config.output_path or 'not written'}")
    print(BANNER)

    final_state = run_workflow(config)
    for note in final_state.get("notes", []):
        print(f"  {note}")

    history_file = save_logs()
    state_file = save_final_state(final_state)
    if args.verbose:
        print(f"[OK] Event History: {history_file}")
        print(f"[OK] Final State: {state_file}")

    if final_state.get("error"):
        print(f"[FAIL] {final_state['error']}", file=sys.stderr)
        return 1

    statistics = final_state["statistics"]
    print("\nResults Summary:")
    print("-" * 80)
    for key, value in statistics.totals.items():
        print(f"  {key}: {value}")
    for key, value in statistics.after.items():
        print(f"  {key}: {statistics.before.get(key)} -> {value}")
    for path in final_state.get("outputs", []):
        print(f"[OK] Wrote {path}")
    if args.json_stats:
        out = Path(args.json_stats)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(statistics.model_dump_json(indent=2), encoding="utf-8")
        print(f"[OK] Statistics: {out}")

    if not statistics.valid:
        print("[FAIL] result failed validity or map consistency checks", file=sys.stderr)
        return 1
    print(BANNER)
    print("Execution Complete!")
    print(BANNER)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """Main execution function; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "info":
            return run_info(args)
        if args.command == "validate":
            return run_validate(args)
        return run_pipeline_command(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (MultiMeshError, OSError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
