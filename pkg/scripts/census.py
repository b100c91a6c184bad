#!/usr/bin/env python3
"""Sharded census of fixed-size threshold boards over the diamond.

The five-cell layer is 7581^2 boards, an overnight job on one core, so
the run splits by board index across shards with private solver
contexts, snapshots progress, and merges at the end:

    python scripts/census.py run --cells 5 --shard 0 --num-shards 8 -o s0.json
    ...one invocation per shard, any order, resumable...
    python scripts/census.py merge s*.json -o catalog5.json

Snapshots are written atomically every --snapshot-every boards; an
interrupted shard picks up from its own --out file with --resume.
--stop-after bounds one invocation (snapshot and exit), which makes
budgeted slices easy to schedule.  Merging also accepts plain catalog
JSON (the scgames catalog command), so a merged file can fold in the
smaller cell counts and recover minimal witnesses.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from scgames.catalog import (CatalogEntry, ValueCatalog, antichains,
                             catalog_from_json, catalog_to_json,
                             merge_catalogs)
from scgames.games import SolverContext, equiv, simplify
from scgames.poset import builtin
from scgames.setcolor import SetColoringGame, Threshold, eval_board


def _pattern(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def shard_boards(n: int, shard: int, num_shards: int):
    """This shard's slice of the n-cell boards, in a stable order."""
    poset = builtin("P4")
    cells = tuple(f"c{i}" for i in range(n))
    pats = [tuple(_pattern(m, n) for m in ac) for ac in antichains(n)]
    total = len(pats) ** 2
    count = sum(1 for idx in range(total) if idx % num_shards == shard)

    def gen():
        idx = 0
        for pa in pats:
            for pb in pats:
                if idx % num_shards == shard:
                    yield SetColoringGame(
                        poset, cells, Threshold(poset, n, {"a": pa, "b": pb}))
                idx += 1
    return count, gen()


def write_snapshot(path: Path, args_n, shard, num_shards, done, total,
                   entries, complete: bool) -> None:
    obj = {"cells": args_n, "shard": shard, "num_shards": num_shards,
           "done": done, "total": total, "complete": complete,
           "catalog": catalog_to_json(
               ValueCatalog(builtin("P4"), tuple(entries)))}
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(obj))
    tmp.replace(path)    # readers never see a half-written file


def cmd_run(args) -> int:
    ctx = SolverContext()
    out = Path(args.out)
    entries: list[CatalogEntry] = []
    done = 0
    if args.resume:
        if not out.exists():
            print(f"nothing to resume at {out}", file=sys.stderr)
            return 2
        snap = json.loads(out.read_text())
        for key, want in (("cells", args.cells), ("shard", args.shard),
                          ("num_shards", args.num_shards)):
            if snap[key] != want:
                print(f"snapshot {key}={snap[key]} does not match "
                      f"--{key.replace('_', '-')} {want}", file=sys.stderr)
                return 2
        if snap.get("complete"):
            print("shard already complete", file=sys.stderr)
            return 0
        entries = list(catalog_from_json(snap["catalog"], ctx).entries)
        done = snap["done"]

    seen = {e.value.uid: i for i, e in enumerate(entries)}
    total, boards = shard_boards(args.cells, args.shard, args.num_shards)
    t0 = time.time()
    processed = 0
    for k, S in enumerate(boards):
        if k < done:
            continue
        v = eval_board(ctx, S)
        idx = seen.get(v.uid)
        if idx is None:
            for i, e in enumerate(entries):
                if equiv(ctx, v, e.value):
                    idx = i
                    break
        if idx is None:
            seen[v.uid] = len(entries)
            entries.append(CatalogEntry(v, S, args.cells))
        else:
            seen[v.uid] = idx
        done = k + 1
        processed += 1
        if processed % args.snapshot_every == 0:
            write_snapshot(out, args.cells, args.shard, args.num_shards,
                           done, total, entries, complete=False)
            rate = processed / (time.time() - t0)
            print(f"{done}/{total} boards, {len(entries)} values, "
                  f"{rate:.0f}/s", file=sys.stderr)
        if args.stop_after and processed >= args.stop_after:
            write_snapshot(out, args.cells, args.shard, args.num_shards,
                           done, total, entries, complete=False)
            print(f"paused at {done}/{total} after --stop-after "
                  f"{args.stop_after}", file=sys.stderr)
            return 0
    write_snapshot(out, args.cells, args.shard, args.num_shards,
                   done, total, entries, complete=True)
    print(f"shard {args.shard}/{args.num_shards}: {done} boards, "
          f"{len(entries)} values in {time.time() - t0:.0f}s",
          file=sys.stderr)
    return 0


def cmd_merge(args) -> int:
    ctx = SolverContext()
    cats = []
    for f in args.files:
        obj = json.loads(Path(f).read_text())
        if "catalog" in obj:       # shard snapshot
            if not obj.get("complete"):
                print(f"warning: {f} is an incomplete shard "
                      f"({obj['done']}/{obj['total']})", file=sys.stderr)
            obj = obj["catalog"]
        cats.append(catalog_from_json(obj, ctx))
    merged = merge_catalogs(ctx, cats)
    text = json.dumps(catalog_to_json(merged), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    print(f"{len(merged)} values from {len(cats)} files", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("run", help="census one shard of one cell count")
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--shard", type=int, default=0)
    p.add_argument("--num-shards", type=int, default=1)
    p.add_argument("--snapshot-every", type=int, default=100_000)
    p.add_argument("--stop-after", type=int, default=0,
                   help="process at most this many boards, then snapshot")
    p.add_argument("--resume", action="store_true",
                   help="continue from the snapshot in --out")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("merge", help="combine shard snapshots or catalogs")
    p.add_argument("files", nargs="+")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(fn=cmd_merge)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
