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

"""End-to-end checks of the hbcunify command-line tool: reports and exit codes."""

import argparse
import json
import pathlib
import re
import subprocess
import sys
import tempfile
import unittest

BINARY = None
FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def run(*args, env=None):
    return subprocess.run([BINARY, *map(str, args)], capture_output=True, text=True, env=env)


def fx(rel):
    return FIXTURES / rel


class CliTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = pathlib.Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def out(self, name):
        return self.tmp / name

    def load(self, *parts):
        return json.loads(self.tmp.joinpath(*parts).read_text())

    # detect

    def test_detect_kinds(self):
        for name, kind in [("index.android.bundle", "PlainJavaScript"),
                           ("hermes_header.hbc", "HermesBytecode"),
                           ("zeros.bin", "Unknown")]:
            res = run("detect", fx("bundles") / name)
            self.assertEqual(res.returncode, 0, res.stderr)
            self.assertEqual(json.loads(res.stdout)["kind"], kind)

    def test_detect_missing_file_is_input_error(self):
        self.assertEqual(run("detect", self.tmp / "nope").returncode, 2)

    # lift

    def test_lift_console_log(self):
        res = run("lift", fx("hasm/console_log.hasm"), "--out", self.out("l"))
        self.assertEqual(res.returncode, 0, res.stderr)
        stats = self.load("l", "lift_stats.json")
        self.assertEqual((stats["methods"], stats["statements"], stats["validationFailures"]),
                         (1, 7, 0))
        self.assertEqual(self.out("l/console_log.uir").read_text(),
                         fx("golden/console_log.uir").read_text())
        self.assertEqual(self.load("l", "truncation.json")["count"], 1)
        self.assertIn("looks truncated", res.stderr)

    def test_lift_empty_document(self):
        res = run("lift", fx("hasm/empty.hasm"), "--out", self.out("e"))
        self.assertEqual(res.returncode, 0, res.stderr)
        self.assertEqual(self.load("e", "lift_stats.json")["methods"], 0)

    def test_lift_statement_count_is_additive(self):
        # app_09 has ten functions and no closures, so each stands alone.
        src = fx("corpus/app_09.hasm").read_text()
        blocks = re.split(r"\n(?=Function<)", src)
        header, functions = blocks[0], blocks[1:]
        self.assertEqual(len(functions), 10)
        res = run("lift", fx("corpus/app_09.hasm"), "--out", self.out("all"))
        self.assertEqual(res.returncode, 0, res.stderr)
        total = self.load("all", "lift_stats.json")["statements"]
        per = 0
        for i, fn in enumerate(functions):
            path = self.out("f%d.hasm" % i)
            path.write_text(header.rstrip() + "\n\n" + fn)
            r = run("lift", path, "--out", self.out("f%d" % i))
            self.assertEqual(r.returncode, 0, r.stderr)
            per += self.load("f%d" % i, "lift_stats.json")["statements"]
        self.assertEqual(per, total)

    def test_lift_parse_error_reports_line(self):
        res = run("lift", fx("invalid/register_range.hasm"), "--out", self.out("x"))
        self.assertEqual(res.returncode, 2)
        self.assertIn("line 5", res.stderr)

    def test_lift_variant_and_descriptors(self):
        res = run("lift", fx("hasm/hbcdump_style.hasm"), "--out", self.out("v"),
                  "--variant", "hbcdump", "--dump-descriptors")
        self.assertEqual(res.returncode, 0, res.stderr)
        sites = self.load("v", "descriptors.json")["callSites"]
        self.assertEqual(len(sites), 1)
        self.assertIsNotNone(sites[0]["directTarget"])
        self.assertEqual(run("lift", fx("hasm/console_log.hasm"), "--out", self.out("w"),
                             "--variant", "klingon").returncode, 2)

    # bindings

    def test_bindings_counts(self):
        cases = [("calendar.json", (1, 1, 0, 0)), ("empty.json", (0, 0, 0, 0)),
                 ("mixed.json", (2, 4, 1, 3))]
        for model, want in cases:
            res = run("bindings", fx("models") / model)
            self.assertEqual(res.returncode, 0, res.stderr)
            doc = json.loads(res.stdout)
            got = (doc["moduleApiCount"], doc["moduleMethodCount"],
                   doc["componentCount"], doc["componentMethodCount"])
            self.assertEqual(got, want, model)

    def test_bindings_schema_violation(self):
        res = run("bindings", fx("invalid/no_name.json"))
        self.assertEqual(res.returncode, 2)
        self.assertIn("$.classes[0]", res.stderr)

    # callgraph

    def test_callgraph_calendar(self):
        res = run("callgraph", fx("hasm/calendar_bridge.hasm"), fx("models/calendar.json"),
                  "--out", self.out("cg"))
        self.assertEqual(res.returncode, 0, res.stderr)
        delta = self.load("cg", "delta.json")
        self.assertGreaterEqual(delta["addedNodes"], 1)
        dot = self.out("cg/callgraph_with_bridge.dot").read_text()
        self.assertIn('label="Bridge"', dot)
        self.assertNotIn('label="Bridge"',
                         self.out("cg/callgraph_without_bridge.dot").read_text())

    def test_callgraph_without_bindings_adds_nothing(self):
        res = run("callgraph", fx("hasm/calendar_bridge.hasm"), fx("models/empty.json"),
                  "--out", self.out("cg"), "--format", "json")
        self.assertEqual(res.returncode, 0, res.stderr)
        self.assertEqual(self.load("cg", "delta.json")["addedNodes"], 0)
        graph = self.load("cg", "callgraph_with_bridge.json")
        self.assertEqual(len(graph["nodes"]), 2)

    def test_callgraph_roots_and_errors(self):
        roots = self.out("roots.txt")
        roots.write_text("# entry points\ncom.leaky.MainActivity\n")
        res = run("callgraph", fx("hasm/leak_app.hasm"), fx("models/leak_app.json"),
                  "--out", self.out("cg"), "--roots", roots, "--format", "json")
        self.assertEqual(res.returncode, 0, res.stderr)
        graph = self.load("cg", "callgraph_without_bridge.json")
        self.assertIn("<com.leaky.MainActivity: void loadContacts()>",
                      [n["id"] for n in graph["nodes"]])
        roots.write_text("com.leaky.Nowhere\n")
        res = run("callgraph", fx("hasm/leak_app.hasm"), fx("models/leak_app.json"),
                  "--out", self.out("cg2"), "--roots", roots)
        self.assertEqual(res.returncode, 2)
        self.assertIn("UnknownRoot", res.stderr)
        self.assertEqual(run("callgraph", fx("hasm/leak_app.hasm"), fx("models/leak_app.json"),
                             "--out", self.out("cg3"), "--format", "svg").returncode, 2)

    # taint

    def taint(self, out, *extra, spec=None, hasm="hasm/leak_app.hasm", model="models/leak_app.json"):
        roots = self.out("roots.txt")
        roots.write_text("com.leaky.MainActivity\n")
        args = ["taint", fx(hasm), fx(model), "--out", self.out(out), "--roots", roots, *extra]
        if spec:
            args += ["--spec", fx("specs") / spec]
        res = run(*args)
        self.assertEqual(res.returncode, 0, res.stderr)
        return self.load(out, "findings.json"), self.load(out, "sankey.json")

    def test_taint_planted_flow(self):
        with_bridge, _ = self.taint("a", spec="telephony_only.json")
        without, _ = self.taint("b", "--no-bridge", spec="telephony_only.json")
        self.assertEqual(with_bridge["count"], 1)
        self.assertTrue(with_bridge["findings"][0]["crossesBridge"])
        self.assertEqual(without["count"], 0)
        self.assertEqual(with_bridge["config"]["withBridge"], "true")

    def test_taint_empty_spec(self):
        findings, sankey = self.taint("e", spec="empty.json")
        self.assertEqual(findings["count"], 0)
        self.assertEqual(sankey["total"], 0)

    def test_taint_two_flows(self):
        findings, sankey = self.taint("t", spec="two_flows.json")
        self.assertEqual(findings["count"], 2)
        self.assertEqual(sum(link["value"] for link in sankey["links"]), 2)
        self.assertEqual(len(self.out("t/findings.txt").read_text().splitlines()), 3)

    def test_taint_default_spec_and_timeout(self):
        findings, _ = self.taint("d")
        self.assertEqual(findings["count"], 3)
        self.assertFalse(findings["timedOut"])
        self.assertEqual(findings["config"]["timeoutMinutes"], "30")
        res = run("taint", fx("hasm/leak_app.hasm"), fx("models/leak_app.json"),
                  "--out", self.out("z"), "--timeout-minutes", "-1")
        self.assertEqual(res.returncode, 2)

    def test_taint_bad_spec(self):
        res = run("taint", fx("hasm/leak_app.hasm"), fx("models/leak_app.json"),
                  "--out", self.out("bad"), "--spec", fx("models/calendar.json"))
        self.assertEqual(res.returncode, 2)

    # general

    def test_reports_are_byte_identical_across_runs(self):
        for sub in ("r1", "r2"):
            res = run("callgraph", fx("hasm/shop.hasm"), fx("models/mixed.json"),
                      "--out", self.out(sub))
            self.assertEqual(res.returncode, 0, res.stderr)
        for f in sorted(self.out("r1").iterdir()):
            self.assertEqual(f.read_bytes(), (self.out("r2") / f.name).read_bytes(), f.name)

    def test_usage_errors(self):
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("frobnicate").returncode, 2)
        self.assertEqual(run("lift").returncode, 2)
        self.assertEqual(run("--version").returncode, 0)

    def test_unwritable_output_is_input_error(self):
        blocker = self.out("file")
        blocker.write_text("x")
        res = run("lift", fx("hasm/console_log.hasm"), "--out", blocker)
        self.assertEqual(res.returncode, 2)

    def test_log_level_from_environment(self):
        import os
        env = dict(os.environ, HBC_UNIFY_LOG="info")
        res = run("lift", fx("hasm/console_log.hasm"), "--out", self.out("l"), env=env)
        self.assertIn("wrote", res.stderr)
        env["HBC_UNIFY_LOG"] = "off"
        res = run("lift", fx("hasm/console_log.hasm"), "--out", self.out("l"), env=env)
        self.assertEqual(res.stderr, "")


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--binary", required=True)
    args, rest = parser.parse_known_args()
    BINARY = args.binary
    unittest.main(argv=[sys.argv[0], *rest])
