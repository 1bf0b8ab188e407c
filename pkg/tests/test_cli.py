import io
import json
import os
import tempfile
import unittest
from unittest.mock import patch

from constants import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT_ERROR, EXIT_PASS, EXIT_PRECONDITION, EXIT_USAGE
from idcodes.cli import run
from idcodes.codec import read_code


def _run(argv):
    with patch("sys.stdout", new_callable=io.StringIO) as stdout, patch("sys.stderr", new_callable=io.StringIO):
        code = run(argv)
    return code, stdout.getvalue()


class TestConstructAndVerify(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def _path(self, name):
        return os.path.join(self.tmp.name, name)

    def test_recursive_family(self):
        """The t = 2 code is written, read back and identifies K_16^3."""
        path = self._path("ct2.txt")
        code, out = _run(["construct", "--family", "ct", "--t", "2", "--out", path])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("wrote 252 codewords", out)
        with open(path, "r") as f:
            self.assertTrue(f.readline().startswith("# idcodes 0.1.0 construct"))

        code, out = _run(["verify", "--property", "id", "--in", path])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("PASS id size=252", out)

    def test_diagonal_deletion(self):
        """The 12-word code identifies only once the diagonal is deleted."""
        path = self._path("cl.txt")
        _run(["construct", "--family", "cl", "--out", path])
        code, out = _run(["verify", "--property", "id", "--in", path])
        self.assertEqual(code, EXIT_FAIL)
        self.assertIn("FAIL id", out)
        code, out = _run(["verify", "--property", "id", "--in", path, "--delete-diagonal"])
        self.assertEqual(code, EXIT_PASS)

    def test_verify_all_json(self):
        """--property all reports every property, here as JSON."""
        path = self._path("latin.txt")
        _run(["construct", "--family", "latin-sld", "--q", "4", "--out", path])
        code, out = _run(["verify", "--property", "all", "--in", path, "--format", "json"])
        header, body = out.split("\n", 1)
        self.assertTrue(header.startswith("# idcodes"))
        data = json.loads(body)
        self.assertTrue(data["sld"]["holds"])
        self.assertTrue(data["dom"]["holds"])
        self.assertEqual(code, EXIT_PASS if all(r["holds"] for r in data.values()) else EXIT_FAIL)

    def test_characterization(self):
        """The covering characterization agrees on the SID coset code."""
        path = self._path("sid.txt")
        _run(["construct", "--family", "sid-coset", "--q", "2", "--k", "2", "--out", path])
        code, out = _run(["verify", "--property", "sid", "--in", path, "--characterization"])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("PASS sid size=6", out)

    def test_analyze_with_html(self):
        """Analysis of the 15-word code passes every check and writes HTML."""
        path, html = self._path("c1.txt"), self._path("c1.html")
        _run(["construct", "--family", "c1", "--out", path])
        code, out = _run(["analyze", "--in", path, "--html", html])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("## Layers", out)
        self.assertTrue(os.path.exists(html))

    def test_parity_family(self):
        """A parity-check file becomes its code, written in F mode."""
        matrix_path, code_path = self._path("h.txt"), self._path("hamming.txt")
        with open(matrix_path, "w") as f:
            f.write("2 3 7\n0 0 0 1 1 1 1\n0 1 1 0 0 1 1\n1 0 1 0 1 0 1\n")
        code, out = _run(["construct", "--family", "parity", "--in", matrix_path, "--out", code_path])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("wrote 16 codewords of K_2^7", out)
        self.assertTrue(read_code(code_path).graph.field_mode)

    def test_convert_round_trip(self):
        """Code to Latin square and back."""
        code_path, latin_path, back_path = self._path("a.txt"), self._path("a.latin"), self._path("b.txt")
        _run(["construct", "--family", "latin-sld", "--q", "5", "--out", code_path])
        self.assertEqual(_run(["convert", "--in", code_path, "--to", "latin", "--out", latin_path])[0], EXIT_PASS)
        self.assertEqual(_run(["convert", "--in", latin_path, "--to", "code", "--out", back_path])[0], EXIT_PASS)
        self.assertEqual(read_code(back_path), read_code(code_path))

    def test_convert_to_field_mode(self):
        """--to f shifts coordinates to 0-based."""
        path = self._path("cq.txt")
        _run(["construct", "--family", "cq", "--q", "2", "--out", path])
        code, out = _run(["convert", "--in", path, "--to", "f"])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("2 3 F\n0 0 1\n", out)


class TestBoundsCommand(unittest.TestCase):

    def test_key_value(self):
        """K_4^3 bounds in key=value form."""
        code, out = _run(["bounds", "--q", "4", "--n", "3", "--format", "kv"])
        self.assertEqual(code, EXIT_PASS)
        lines = out.splitlines()
        self.assertIn("bounds.id3_new=10", lines)
        self.assertIn("bounds.sld3=16", lines)
        self.assertIn("bounds.dom3=8", lines)

    def test_ratio(self):
        """--k adds the repeated-column comparison."""
        code, out = _run(["bounds", "--q", "2", "--n", "9", "--k", "2", "--format", "kv"])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("ratio.upper=128", out.splitlines())


class TestSearchCommand(unittest.TestCase):

    def test_sat_and_unsat(self):
        """Sizes 3 and 2 on the six-vertex grid."""
        code, out = _run(["search", "--graph", "example", "--property", "id", "--size", "3", "--no-cache"])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("# SAT size=3", out)
        code, out = _run(["search", "--graph", "example", "--property", "id", "--size", "2", "--no-cache"])
        self.assertEqual(code, EXIT_FAIL)
        self.assertIn("UNSAT size=2", out)

    def test_optimal(self):
        """--optimal returns the smallest SLD code of the grid."""
        code, out = _run(["search", "--graph", "example", "--property", "sld", "--optimal", "--no-cache"])
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("# SAT size=4", out)

    def test_budget_refusal(self):
        """A tiny node budget exits with the budget code."""
        argv = ["search", "--graph", "kq3", "--q", "3", "--property", "id", "--size", "8", "--budget", "5", "--no-cache"]
        self.assertEqual(_run(argv)[0], EXIT_BUDGET)

    def test_cached(self):
        """A second run is served from the cache directory."""
        with tempfile.TemporaryDirectory() as tmp, patch("idcodes.cli.Config.CACHE_DIR", tmp):
            argv = ["search", "--graph", "kqn", "--q", "2", "--n", "2", "--property", "dom", "--size", "2"]
            first = _run(argv)
            self.assertTrue(os.listdir(tmp))
            second = _run(argv)
        self.assertEqual(first, second)

    def test_missing_size(self):
        """Either --size or --optimal is required."""
        self.assertEqual(_run(["search", "--graph", "example", "--property", "id"])[0], EXIT_INPUT_ERROR)


class TestExitCodes(unittest.TestCase):

    def test_usage(self):
        """argparse failures exit with the usage code."""
        self.assertEqual(_run([])[0], EXIT_USAGE)
        self.assertEqual(_run(["verify", "--property", "id"])[0], EXIT_USAGE)

    def test_missing_file(self):
        """Unreadable input files are input errors."""
        self.assertEqual(_run(["verify", "--property", "id", "--in", "/nonexistent/code.txt"])[0], EXIT_INPUT_ERROR)

    def test_precondition(self):
        """Extending to r < 2q is a precondition failure."""
        self.assertEqual(_run(["construct", "--family", "ext3", "--r", "7"])[0], EXIT_PRECONDITION)

    def test_missing_family_parameter(self):
        """cq needs --q."""
        self.assertEqual(_run(["construct", "--family", "cq"])[0], EXIT_INPUT_ERROR)


if __name__ == "__main__":
    unittest.main()
