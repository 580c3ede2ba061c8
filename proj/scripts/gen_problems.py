# Copyright 2026 The forestmpc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the bundled node-edge-checkable problems to data/problems."""

import itertools
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "problems"


def multisets(labels, k):
    return [list(c) for c in itertools.combinations_with_replacement(labels, k)]


def mis(delta):
    node = []
    for k in range(delta + 1):
        node.append([["_", "1"]] * k)
        if k >= 1:
            node.append([["_", "P"]] + [["_", "0"]] * (k - 1))
    edge = [[["_", "1"], ["_", "0"]], [["_", "1"], ["_", "P"]], [["_", "0"], ["_", "0"]]]
    return {"name": "mis", "inputs": ["_"], "outputs": ["0", "1", "P"],
            "node_constraints": node, "edge_constraints": edge, "delta_max": delta}


def two_coloring(delta):
    node = [[["_", c]] * k for k in range(delta + 1) for c in ("A", "B") if k or c == "A"]
    edge = [[["_", "A"], ["_", "B"]]]
    return {"name": "two_coloring", "inputs": ["_"], "outputs": ["A", "B"],
            "node_constraints": node, "edge_constraints": edge, "delta_max": delta}


def orientation(delta):
    # Half-edge outputs: U unoriented, O leaving the node, I entering it.
    # Every half-edge of a node carries the node's input.
    node = [[]]
    for i in ("0", "1"):
        node += [[[i, "O"]], [[i, "I"]]] if i == "1" else [[[i, "U"]], [[i, "I"]]]
        node += [[[i, "U"], [i, "U"]], [[i, "I"], [i, "O"]]]
        for k in range(3, delta + 1):
            node += [[[i, o] for o in m] for m in multisets(("I", "O", "U"), k)]
    edge = []
    for a in ("0", "1"):
        for b in ("0", "1"):
            if a <= b:
                edge.append([[a, "U"], [b, "U"]])
            edge.append([[a, "O"], [b, "I"]])
    return {"name": "orientation", "inputs": ["0", "1"], "outputs": ["U", "O", "I"],
            "node_constraints": node, "edge_constraints": edge, "delta_max": delta}


def perfect_matching(delta):
    node = [[["_", "M"]] + [["_", "N"]] * (k - 1) for k in range(1, delta + 1)]
    edge = [[["_", "M"], ["_", "M"]], [["_", "N"], ["_", "N"]]]
    return {"name": "perfect_matching", "inputs": ["_"], "outputs": ["M", "N"],
            "node_constraints": node, "edge_constraints": edge, "delta_max": delta}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for problem in (mis(16), two_coloring(16), orientation(8), perfect_matching(16)):
        path = OUT / (problem["name"] + ".json")
        path.write_text(json.dumps(problem, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main()
