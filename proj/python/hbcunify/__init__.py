# Copyright 2026 The hbcunify Authors. All Rights Reserved.
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

"""Unified call graphs and taint analysis for React Native apps.

Each function takes document text (disassembly, class model, source/sink
rules) and returns decoded reports.
"""

import json

from . import _core
from ._core import Error

__all__ = ["Error", "bindings", "callgraph", "detect", "diff_counts", "lift", "taint",
           "__version__"]

__version__ = _core.version()


def detect(data):
    """Bundle kind of raw bytes: PlainJavaScript, HermesBytecode or Unknown."""
    return _core.detect(bytes(data))


def lift(text, variant=None):
    """Lift a disassembly. Returns the IR dump and the stats, truncation and
    descriptor reports."""
    out = _core.lift(text, variant)
    return {
        "ir": out["ir"],
        "stats": json.loads(out["stats"]),
        "truncation": json.loads(out["truncation"]),
        "descriptors": json.loads(out["descriptors"]),
    }


def bindings(model):
    """Binding report for a class-model JSON document."""
    return json.loads(_core.bindings(model))


def callgraph(hasm, model, roots="", format="json"):
    """Call graphs without and with the bridge, plus delta and cross-edge
    reports. Graphs are decoded for the json format and left as DOT text
    otherwise."""
    out = _core.callgraph(hasm, model, roots, format)
    decode = json.loads if format == "json" else (lambda s: s)
    return {
        "without_bridge": decode(out["without_bridge"]),
        "with_bridge": decode(out["with_bridge"]),
        "delta": json.loads(out["delta"]),
        "cross_edges": json.loads(out["cross_edges"]),
    }


def taint(hasm, model, spec=None, roots="", with_bridge=True, timeout_minutes=30.0):
    """Source-to-sink findings. `spec` is a sources/sinks JSON document; the
    built-in rules apply when it is None."""
    out = _core.taint(hasm, model, spec, roots, with_bridge, timeout_minutes)
    return {
        "findings": json.loads(out["findings"]),
        "sankey": json.loads(out["sankey"]),
        "table": out["table"],
    }


def diff_counts(nodes_before, edges_before, nodes_after, edges_after):
    """Added nodes and edges with percentages rounded to two decimals."""
    return _core.diff_counts(nodes_before, edges_before, nodes_after, edges_after)
