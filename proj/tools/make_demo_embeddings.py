#!/usr/bin/env python3
"""Writes the small topic-clustered word-vector table used by the demo fixtures.

Words of one topic are drawn around a shared random center, so mean document
vectors of same-topic videos end up close. Output is deterministic.
"""

import argparse

import numpy as np

DIM = 16

TOPICS = {
    "data": ["einführung", "in", "sparql", "abfragen", "von", "linked", "data", "mit", "und",
             "rdf", "graphen", "datenbank", "relationale", "datenbanken", "tabellen",
             "schlüssel", "sql", "einer"],
    "compression": ["datenkompression", "huffman", "verlustfreie", "kompression", "daten",
                    "codierung", "bildkompression", "jpeg", "verlustbehaftete", "bildern",
                    "bildverarbeitung"],
    "biology": ["zellbiologie", "grundlagen", "aufbau", "der", "zelle", "mitose", "genetik",
                "vererbung", "merkmalen", "gene", "chromosomen"],
    "physics": ["quantenmechanik", "vorlesung", "wellenfunktion", "schrödingergleichung",
                "tafelbild"],
}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("output")
    args = parser.parse_args()

    rng = np.random.default_rng(20170616)
    rows = []
    seen = set()
    for words in TOPICS.values():
        center = rng.normal(0.0, 1.0, DIM)
        for word in words:
            if word in seen:
                continue
            seen.add(word)
            rows.append((word, center + rng.normal(0.0, 0.35, DIM)))

    with open(args.output, "w", encoding="utf-8") as out:
        out.write(f"{len(rows)} {DIM}\n")
        for word, vec in rows:
            out.write(word + " " + " ".join(f"{v:.4f}" for v in vec) + "\n")


if __name__ == "__main__":
    main()
