#!/usr/bin/env python3
"""Generates the sliding-tile instance used by the planner timeout tests.

A 4x4 sliding puzzle with a reversal-style start permutation: tiny to ground,
far beyond any optimal searcher's 60 s budget to solve.
"""
from pathlib import Path

N = 4
cells = [f"c{r}{c}" for r in range(N) for c in range(N)]
tiles = [f"t{i}" for i in range(1, N * N)]

adj = []
for r in range(N):
    for c in range(N):
        if c + 1 < N:
            adj.append((f"c{r}{c}", f"c{r}{c+1}"))
        if r + 1 < N:
            adj.append((f"c{r}{c}", f"c{r+1}{c}"))

domain = """(define (domain sliding_puzzle)
    (:requirements :strips :typing)
    (:types
        tile cell - object
    )
    (:predicates
        (tile_at ?t - tile ?c - cell)
        (blank ?c - cell)
        (adjacent ?a - cell ?b - cell)
    )
    (:action slide
        :parameters (?t - tile ?from - cell ?to - cell)
        :precondition (and
            (tile_at ?t ?from)
            (blank ?to)
            (adjacent ?from ?to)
        )
        :effect (and
            (tile_at ?t ?to)
            (blank ?from)
            (not (tile_at ?t ?from))
            (not (blank ?to))
        )
    )
)
"""

# Start: tiles laid out in reverse order, blank in the last cell. The goal is
# the identity layout. This permutation is even, hence solvable, and its
# optimal solution is far too deep to find within the timeout.
start = list(reversed(tiles))
init_lines = [f"        (tile_at {t} {c})" for t, c in zip(start, cells)]
init_lines.append(f"        (blank {cells[-1]})")
for a, b in adj:
    init_lines.append(f"        (adjacent {a} {b})")
    init_lines.append(f"        (adjacent {b} {a})")
goal_lines = [f"        (tile_at {t} {c})" for t, c in zip(tiles, cells)]

problem = "(define (problem puzzle_reversed)\n"
problem += "    (:domain sliding_puzzle)\n"
problem += "    (:objects\n        " + " ".join(tiles) + " - tile\n"
problem += "        " + " ".join(cells) + " - cell\n    )\n"
problem += "    (:init\n" + "\n".join(init_lines) + "\n    )\n"
problem += "    (:goal (and\n" + "\n".join(goal_lines) + "\n    ))\n)\n"

out = Path(__file__).resolve().parent.parent / "assets" / "hard"
out.mkdir(parents=True, exist_ok=True)
(out / "puzzle_domain.pddl").write_text(domain)
(out / "puzzle_reversed.pddl").write_text(problem)
print("wrote", out / "puzzle_domain.pddl", "and puzzle_reversed.pddl")
