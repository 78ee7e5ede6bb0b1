"""CLI contract: schema conformance, exit codes, plain-text outputs, repeatability."""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

BIN = sys.argv.pop(1)
SCHEMAS = Path(sys.argv.pop(1))


def run(*args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env)


class Contract(unittest.TestCase):
    def report(self, *args):
        r = run(*args)
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        name, version = doc["schema"].split("/")
        schema = json.loads((SCHEMAS / version / f"{name}.schema.json").read_text())
        jsonschema.validate(doc, schema)
        again = run(*args)
        self.assertEqual(r.stdout, again.stdout, "output not repeatable")
        return doc

    def test_level(self):
        doc = self.report("level", "--base", "q2", "--k1", "z^2+2z+2", "--k2", "z^2-2")
        self.assertEqual(doc["lev"], 1)
        self.assertEqual(doc["certificate"]["norm_modulus"], doc["certificate"]["trace_gap_order"] + 1)
        doc = self.report("level", "--base", "q2-ram", "--step", "z^2-2", "--k1", "z^2+pi", "--k2", "z^2+(2+pi)z+pi")
        self.assertEqual(doc["delta1"], 5)

    def test_classify_and_s_set(self):
        doc = self.report("classify", "--kx", "z^2+2z+2", "--ktilde", "z^2-2")
        self.assertEqual(doc["index"], "rm_rm_rm")
        doc = self.report("s-set", "--k1", "z^2+2z+2", "--k2", "z^2-2", "--i1", "1", "--i2", "1")
        self.assertEqual(doc["count"], len(doc["elements"]))

    def test_density_text_and_json(self):
        r = run("density", "--index", "star", "--q", "2", "--delta-tilde", "2")
        self.assertEqual((r.returncode, r.stdout), (0, "9/2048\n"))
        r = run("density", "--index", "rmrmrm", "--delta-x", "3", "--lambda", "1", "--q", "2", "--m", "1")
        self.assertEqual((r.returncode, r.stdout), (0, "9/256\n"))
        doc = self.report("density", "--index", "rmrmur", "--lambda", "2", "--delta-tilde", "2", "--json")
        self.assertEqual(doc["value"], "21/2048")
        doc = self.report("d-volume", "--family", "ur-star", "--delta-tilde", "2", "--json")
        self.assertEqual(doc["value"], "1/256")

    def test_stab_count(self):
        doc = self.report("stab-count", "--ktilde", "z^2+2z+2")
        self.assertEqual((doc["group_order"], doc["coset_index"], doc["match"]), (2048, 32, True))

    def test_constant(self):
        doc = self.report("constant", "--d0", "-1", "--sign", "+")
        self.assertEqual(doc["c"]["symbolic"], "8*pi")
        lo, hi = doc["interval"]
        self.assertLessEqual(lo, doc["value"])
        self.assertLessEqual(doc["value"], hi)

    def test_mean_value_cache(self):
        with tempfile.TemporaryDirectory() as tmp:
            cache = os.path.join(tmp, "hr.tsv")
            cold = self.report("mean-value", "--d0", "-1", "--sign", "+", "--X", "2000", "--cache", cache)
            warm = self.report("mean-value", "--d0", "-1", "--sign", "+", "--X", "2000", "--cache", cache)
            self.assertEqual(cold, warm)
            line = Path(cache).read_text().splitlines()[0].split("\t")
            self.assertEqual(len(line), 3)
            env = dict(os.environ, DYADIC_CACHE=os.path.join(tmp, "env.tsv"))
            r = run("mean-value", "--d0", "2", "--sign", "-", "--X", "500", "--cache", cache, env=env)
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertTrue(os.path.exists(os.path.join(tmp, "env.tsv")))

    def test_verify_local_json(self):
        doc = self.report("verify-local", "--suite", "stabilizer", "--json")
        self.assertEqual(doc["failed"], 0)

    def test_exit_codes(self):
        r = run("level", "--k1", "z^2+2", "--k2", "z^2+2")
        self.assertEqual(r.returncode, 2)
        self.assertIn("isomorphic-fields", r.stderr)
        self.assertEqual(run("level", "--k1", "z^2+3", "--k2", "z^2+2").returncode, 2)
        self.assertEqual(run("density", "--index", "nope").returncode, 2)
        self.assertEqual(run("no-such-command").returncode, 2)
        self.assertEqual(run("mean-value", "--d0", "-1", "--sign", "x", "--X", "10").returncode, 2)
        self.assertEqual(run().returncode, 2)


if __name__ == "__main__":
    unittest.main(verbosity=2)
