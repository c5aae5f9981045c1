"""Exhaustive scan over isomorphism classes of trees.

Streams the deterministic free-tree generator, filters by degree and
spider shape, analyzes every surviving tree exactly (connected-partition
table, CPET status, e-positivity), and appends one JSON record per tree
to a line-delimited output file.  Periodic checkpoints make runs
resumable; the record stream is a pure function of the configuration, so
an interrupted-and-resumed run reproduces an uninterrupted one byte for
byte, regardless of worker count.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import time
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .csf import b_table, coefficient_stk, e_coefficient, e_expansion
from .partition import Partition
from .tree import (
    Tree,
    canonical_code,
    degree_stats,
    enumerate_free_trees,
    free_tree_count,
    subtree_sizes,
    tree_from_code,
)

MODES = ("verify_conjecture", "find_cpet", "probe_problems")

RECORD_FIELDS = (
    "canonical_code",
    "n",
    "max_degree",
    "leaf_count",
    "is_spider",
    "cpet",
    "missing_type",
    "e_positive",
    "first_negative",
    "b_32probe",
    "degree4_vertex_leaf_adjacency",
    "elapsed",
)


class ScanError(Exception):
    pass


class ScanResumeError(ScanError):
    """Raised when a resume request cannot be honored."""


class _ScanInterrupted(Exception):
    """Internal: simulated interruption for tests (no cleanup on the way out)."""


@dataclass
class ScanConfig:
    n_min: int
    n_max: int
    min_delta: int = 4
    max_delta: Optional[int] = None
    include_spiders: bool = False
    mode: str = "verify_conjecture"
    workers: int = 1
    output_path: str = "scan_records.jsonl"
    checkpoint_path: Optional[str] = None
    record_timing: bool = False
    checkpoint_every_trees: int = 10000
    checkpoint_every_seconds: float = 30.0
    batch_size: int = 400

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise ValueError("n_min must not exceed n_max")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")

    def semantic_hash(self) -> str:
        """Hash of the fields that determine the record stream.

        Worker count and checkpoint cadence do not change the output, so
        they are free to differ between a run and its resume.
        """
        payload = json.dumps(
            {
                "n_min": self.n_min,
                "n_max": self.n_max,
                "min_delta": self.min_delta,
                "max_delta": self.max_delta,
                "include_spiders": self.include_spiders,
                "mode": self.mode,
                "record_timing": self.record_timing,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()


def _missing_two_part_type(t: Tree) -> Optional[Partition]:
    """First (in decreasing lex) absent two-part type, or None if all exist.

    Every edge splits the tree into sizes (s, n-s), so the two-part types
    come straight from rooted subtree sizes in O(n).
    """
    n = t.n
    size, _ = subtree_sizes(t, 0)
    present = [False] * (n // 2 + 1)
    for v in range(1, n):
        present[min(size[v], n - size[v])] = True
    for k in range(1, n // 2 + 1):
        if not present[k]:
            return Partition((n - k, k))
    return None


def _degree4_leaf_adjacency(t: Tree) -> dict:
    degs = t.degrees()
    leaf_neighbors = [
        sum(1 for w in t.adj[v] if degs[w] == 1)
        for v in range(t.n)
        if degs[v] == 4
    ]
    return {
        "count": len(leaf_neighbors),
        "leaf_neighbors": sorted(leaf_neighbors, reverse=True),
    }


def _probe_partition(n: int) -> Optional[Partition]:
    """The cheap likely-negative coefficient to try first: (3, 2^((n-3)/2))
    for odd n >= 5, (2^(n/2)) for even n >= 4."""
    if n >= 5 and n % 2 == 1:
        return Partition((3,) + (2,) * ((n - 3) // 2))
    if n >= 4 and n % 2 == 0:
        return Partition((2,) * (n // 2))
    return None


def analyze_tree(t: Tree, record_timing: bool = False) -> dict:
    """Exact per-tree analysis; returns a JSON-ready record dict.

    Staged so that most trees never need a full expansion: a missing
    two-part type or any missing type in the b table settles CPET and
    (with it) e-positivity; for CPET trees the probe coefficient usually
    settles the sign first.
    """
    started = time.perf_counter() if record_timing else None
    n = t.n
    stats = degree_stats(t)
    record = {
        "canonical_code": canonical_code(t),
        "n": n,
        "max_degree": stats.max_degree,
        "leaf_count": stats.leaf_count,
        "is_spider": stats.is_spider,
        "cpet": None,
        "missing_type": None,
        "e_positive": None,
        "first_negative": None,
        "b_32probe": None,
        "degree4_vertex_leaf_adjacency": _degree4_leaf_adjacency(t),
        "elapsed": None,
    }

    missing2 = _missing_two_part_type(t) if n >= 2 else None
    if missing2 is not None:
        record["cpet"] = False
        record["missing_type"] = list(missing2)
        record["e_positive"] = False
        return _finish(record, started)

    bt = b_table(t)
    if n >= 5 and n % 2 == 1:
        record["b_32probe"] = bt.get((3,) + (2,) * ((n - 3) // 2))
    missing = bt.missing_types()
    if missing:
        record["cpet"] = False
        record["missing_type"] = list(min(missing))
        record["e_positive"] = False
        return _finish(record, started)

    record["cpet"] = True
    probe = _probe_partition(n)
    if probe is not None:
        if n % 2 == 1:
            value = coefficient_stk(t, 3, 2, (n - 3) // 2, table=bt)
        else:
            value = e_coefficient(t, probe, table=bt)
        if value < 0:
            record["e_positive"] = False
            record["first_negative"] = {"partition": list(probe), "value": value}
            return _finish(record, started)

    report = e_expansion(t, table=bt)
    record["e_positive"] = report.e_positive
    if report.first_negative is not None:
        lam, value = report.first_negative
        record["first_negative"] = {"partition": list(lam), "value": value}
    return _finish(record, started)


def _finish(record: dict, started: Optional[float]) -> dict:
    if started is not None:
        record["elapsed"] = round(time.perf_counter() - started, 6)
    return record


def _passes_filters(t: Tree, config: ScanConfig) -> bool:
    stats = degree_stats(t)
    if stats.max_degree < config.min_delta:
        return False
    if config.max_delta is not None and stats.max_degree > config.max_delta:
        return False
    if not config.include_spiders and stats.is_spider:
        return False
    return True


def _analyze_batch(args: tuple) -> list[dict]:
    """Worker entry point: analyze a batch of (n, edges) payloads."""
    payloads, record_timing = args
    out = []
    for n, edges in payloads:
        t = Tree(n, _adj_from_edges(n, edges))
        out.append(analyze_tree(t, record_timing))
    return out


def _adj_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> tuple:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return tuple(tuple(sorted(a)) for a in adj)


def _record_line(record: dict) -> bytes:
    ordered = {k: record[k] for k in RECORD_FIELDS}
    return json.dumps(ordered, separators=(",", ":")).encode() + b"\n"


@dataclass
class _Progress:
    n: int
    skip: int  # raw generation index to resume at within n
    records_total: int


class _CheckpointWriter:
    def __init__(self, config: ScanConfig, out_file):
        self.config = config
        self.out_file = out_file
        self.last_time = time.monotonic()
        self.trees_since = 0

    def maybe_write(self, progress: _Progress, trees_done: int) -> None:
        if self.config.checkpoint_path is None:
            return
        self.trees_since += trees_done
        now = time.monotonic()
        if (
            self.trees_since >= self.config.checkpoint_every_trees
            or now - self.last_time >= self.config.checkpoint_every_seconds
        ):
            self.write(progress)

    def write(self, progress: _Progress, completed: bool = False) -> None:
        if self.config.checkpoint_path is None:
            return
        self.out_file.flush()
        os.fsync(self.out_file.fileno())
        payload = {
            "version": 1,
            "config_hash": self.config.semantic_hash(),
            "n": progress.n,
            "skip": progress.skip,
            "records_total": progress.records_total,
            "byte_offset": self.out_file.tell(),
            "completed": completed,
        }
        tmp = self.config.checkpoint_path + ".tmp"
        with open(tmp, "w") as f:
            json.dump(payload, f)
        os.replace(tmp, self.config.checkpoint_path)
        self.last_time = time.monotonic()
        self.trees_since = 0


def run_scan(config: ScanConfig, _stop_after: Optional[int] = None) -> dict:
    """Run a fresh scan; overwrites the output (and checkpoint) files."""
    try:
        out = open(config.output_path, "w+b")
    except OSError as exc:
        raise ScanError(f"cannot open output {config.output_path!r}: {exc}") from exc
    with out:
        return _drive(config, out, _Progress(config.n_min, 0, 0), {}, _stop_after)


def resume(config: ScanConfig) -> dict:
    """Continue an interrupted scan from its checkpoint.

    Refuses (with a hint) when the checkpoint is missing, corrupted, was
    written for a different configuration, or the output file does not
    reach the checkpointed offset.  The resumed run truncates the output
    back to the checkpoint and continues the deterministic stream, so the
    final file is identical to an uninterrupted run's.
    """
    if config.checkpoint_path is None:
        raise ScanResumeError("no checkpoint path configured; run a fresh scan instead")
    try:
        with open(config.checkpoint_path) as f:
            ck = json.load(f)
    except FileNotFoundError:
        raise ScanResumeError(
            f"checkpoint {config.checkpoint_path!r} not found; run a fresh scan instead"
        ) from None
    except (OSError, json.JSONDecodeError) as exc:
        raise ScanResumeError(
            f"checkpoint {config.checkpoint_path!r} unreadable ({exc}); "
            "delete it and run a fresh scan to restart"
        ) from exc
    for key in ("config_hash", "n", "skip", "records_total", "byte_offset"):
        if key not in ck:
            raise ScanResumeError("checkpoint is missing fields; delete it and restart")
    if ck["config_hash"] != config.semantic_hash():
        raise ScanResumeError(
            "checkpoint was written by a scan with different settings; refusing to mix"
        )
    if ck.get("completed"):
        raise ScanResumeError("scan already completed; nothing to resume")
    try:
        out = open(config.output_path, "r+b")
    except OSError as exc:
        raise ScanResumeError(f"cannot reopen output {config.output_path!r}: {exc}") from exc
    with out:
        out.seek(0, os.SEEK_END)
        if out.tell() < ck["byte_offset"]:
            raise ScanResumeError(
                "output file is shorter than the checkpoint expects; restart the scan"
            )
        out.truncate(ck["byte_offset"])
        out.seek(ck["byte_offset"])
        prior = _summarize_existing(config, ck["records_total"])
        progress = _Progress(ck["n"], ck["skip"], ck["records_total"])
        return _drive(config, out, progress, prior, None)


def _summarize_existing(config: ScanConfig, limit: int) -> dict:
    """Rebuild per-n tallies from the already-written record lines."""
    prior: dict = {"analyzed": {}, "cpet": {}, "e_positive": []}
    with open(config.output_path, "rb") as f:
        for i, raw in enumerate(f):
            if i >= limit:
                break
            rec = json.loads(raw)
            n = rec["n"]
            prior["analyzed"][n] = prior["analyzed"].get(n, 0) + 1
            if rec["cpet"]:
                prior["cpet"].setdefault(n, []).append(rec["canonical_code"])
            if rec["e_positive"]:
                prior["e_positive"].append(
                    {"n": n, "canonical_code": rec["canonical_code"]}
                )
    return prior


def _batches(config: ScanConfig, n: int, skip: int) -> Iterator[tuple[list, int]]:
    """Filtered trees of degree n in batches, each tagged with the raw
    generation index to resume at once the batch is durable."""
    batch: list = []
    last_idx = skip - 1
    for idx, t in enumerate(enumerate_free_trees(n, skip=skip), start=skip):
        last_idx = idx
        if not _passes_filters(t, config):
            continue
        batch.append((t.n, t.edges()))
        if len(batch) >= config.batch_size:
            yield batch, idx + 1
            batch = []
    if batch:
        yield batch, last_idx + 1


def _drive(
    config: ScanConfig,
    out,
    start: _Progress,
    prior: dict,
    _stop_after: Optional[int],
) -> dict:
    analyzed: dict[int, int] = dict(prior.get("analyzed", {}))
    cpet_trees: dict[int, list[str]] = {k: list(v) for k, v in prior.get("cpet", {}).items()}
    e_positive: list[dict] = list(prior.get("e_positive", []))
    records_total = start.records_total
    ckpt = _CheckpointWriter(config, out)
    wall_start = time.monotonic()

    pool = None
    if config.workers > 1:
        import multiprocessing as mp

        pool = mp.get_context("fork").Pool(config.workers)

    def handle_records(records: list[dict]) -> None:
        nonlocal records_total
        for rec in records:
            out.write(_record_line(rec))
            records_total += 1
            n = rec["n"]
            analyzed[n] = analyzed.get(n, 0) + 1
            if rec["cpet"]:
                cpet_trees.setdefault(n, []).append(rec["canonical_code"])
            if rec["e_positive"]:
                e_positive.append({"n": n, "canonical_code": rec["canonical_code"]})
            if _stop_after is not None and records_total >= _stop_after:
                raise _ScanInterrupted

    try:
        for n in range(start.n, config.n_max + 1):
            skip = start.skip if n == start.n else 0
            progress = _Progress(n, skip, records_total)
            batch_iter = _batches(config, n, skip)
            while True:
                # waves bound memory while keeping pool results ordered
                wave = list(itertools.islice(batch_iter, max(1, config.workers) * 4))
                if not wave:
                    break
                payloads = [(batch, config.record_timing) for batch, _ in wave]
                if pool is None:
                    results = map(_analyze_batch, payloads)
                else:
                    results = pool.map(_analyze_batch, payloads, chunksize=1)
                for (batch, next_skip), records in zip(wave, results):
                    handle_records(records)
                    progress.skip = next_skip
                    progress.records_total = records_total
                    ckpt.maybe_write(progress, len(batch))
            # n finished: advance the checkpoint to the next degree
            ckpt.write(_Progress(n + 1, 0, records_total))
    except _ScanInterrupted:
        # simulate a hard interruption: leave the last periodic checkpoint
        # and whatever output bytes made it out
        out.flush()
        return {"interrupted": True, "records_total": records_total}
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    out.flush()
    summary = {
        "mode": config.mode,
        "n_min": config.n_min,
        "n_max": config.n_max,
        "min_delta": config.min_delta,
        "max_delta": config.max_delta,
        "include_spiders": config.include_spiders,
        "workers": config.workers,
        "generated": {n: free_tree_count(n) for n in range(config.n_min, config.n_max + 1)},
        "analyzed": {n: analyzed.get(n, 0) for n in range(config.n_min, config.n_max + 1)},
        "cpet_trees": cpet_trees,
        "e_positive_trees": e_positive,
        "records_total": records_total,
        "wall_seconds": round(time.monotonic() - wall_start, 3),
    }
    if config.mode == "probe_problems":
        summary["problems"] = probe_problems(_read_records(config.output_path))
    ckpt.write(_Progress(config.n_max + 1, 0, records_total), completed=True)
    with open(config.output_path + ".summary.json", "w") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
    return summary


def _read_records(path: str) -> list[dict]:
    with open(path) as f:
        return [json.loads(line) for line in f if line.strip()]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def probe_problems(records: Iterable[dict]) -> dict:
    """Evidence table for the open problems, over CPET max-degree-4 records.

    For each such tree: does some degree-4 vertex have at least two leaf
    neighbors, and is the degree-4 vertex unique?  Is the vertex count
    prime (non-spiders only)?  Is it odd?  Is the probe coefficient
    negative for odd n?  Counterexamples are listed verbatim.
    """
    rows = []
    counterexamples: dict[str, list[str]] = {
        "degree4_two_leaves": [],
        "degree4_unique": [],
        "prime_vertex_count": [],
        "odd_vertex_count": [],
        "negative_probe_coefficient": [],
    }
    for rec in records:
        if not rec.get("cpet") or rec.get("max_degree") != 4:
            continue
        code = rec["canonical_code"]
        n = rec["n"]
        adjacency = rec["degree4_vertex_leaf_adjacency"]
        two_leaves = any(x >= 2 for x in adjacency["leaf_neighbors"])
        unique = adjacency["count"] == 1
        odd = n % 2 == 1
        prime = _is_prime(n)
        probe_part = _probe_partition(n) if odd else None
        probe_value = None
        if probe_part is not None:
            t = tree_from_code(code)
            probe_value = coefficient_stk(t, 3, 2, (n - 3) // 2)
        rows.append(
            {
                "canonical_code": code,
                "n": n,
                "is_spider": rec["is_spider"],
                "degree4_two_leaves": two_leaves,
                "degree4_unique": unique,
                "n_is_prime": prime,
                "n_is_odd": odd,
                "probe_partition": list(probe_part) if probe_part else None,
                "probe_coefficient": probe_value,
            }
        )
        if not two_leaves:
            counterexamples["degree4_two_leaves"].append(code)
        if not unique:
            counterexamples["degree4_unique"].append(code)
        if not rec["is_spider"] and not prime:
            counterexamples["prime_vertex_count"].append(code)
        if not odd:
            counterexamples["odd_vertex_count"].append(code)
        if probe_value is not None and probe_value >= 0:
            counterexamples["negative_probe_coefficient"].append(code)
    return {"trees": rows, "counterexamples": counterexamples}
