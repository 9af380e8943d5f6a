#!/usr/bin/env python3
"""Writes a synthetic ratings CSV whose per-method relevance counts equal the
reference user-study table:

    with_lod:    high 411, medium 461, low 673, none 455
    without_lod: high 407, medium 440, low 597, none 556

Eight participants each see 50 query videos with ten recommendations; half of
the queries use each method. Participant/video assignments are invented, only
the marginals are real. Output is deterministic.
"""

import argparse
import random

COUNTS = {
    "with_lod": {3: 411, 2: 461, 1: 673, 0: 455},
    "without_lod": {3: 407, 2: 440, 1: 597, 0: 556},
}
PARTICIPANTS = 8
QUERIES_PER_PARTICIPANT = 50
RECOMMENDATIONS = 10
CORPUS_SIZE = 1430


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("output")
    args = parser.parse_args()

    rng = random.Random(20170616)
    pools = {}
    for method, counts in COUNTS.items():
        pool = [rating for rating, n in counts.items() for _ in range(n)]
        rng.shuffle(pool)
        pools[method] = pool

    video_ids = [f"av{n:05d}" for n in range(1, CORPUS_SIZE + 1)]
    rows = []
    for p in range(1, PARTICIPANTS + 1):
        queries = rng.sample(video_ids, QUERIES_PER_PARTICIPANT)
        for q, query in enumerate(queries):
            method = "with_lod" if (q + p) % 2 == 0 else "without_lod"
            candidates = rng.sample([v for v in video_ids if v != query], RECOMMENDATIONS)
            for rec in candidates:
                rows.append((f"p{p}", query, rec, method, pools[method].pop()))

    assert all(not pool for pool in pools.values())
    with open(args.output, "w", encoding="utf-8", newline="") as out:
        out.write("participant,query_id,recommended_id,method,rating\n")
        for row in rows:
            out.write(",".join(str(x) for x in row) + "\n")


if __name__ == "__main__":
    main()
