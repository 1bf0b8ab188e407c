import os
import tempfile
import unittest

from idcodes.bounds import check_layer_claims, layer_analysis, lower_bounds, ratio_report
from idcodes.construct3 import construct_c1
from idcodes.models import Property, SearchResult
from idcodes.report import ReportGenerator, to_key_value


class TestKeyValue(unittest.TestCase):

    def test_flattening(self):
        """Nested dicts become dotted keys, sorted, with JSON lists and lowercase booleans."""
        text = to_key_value({"b": {"y": True, "x": None}, "a": [[1, 2]]})
        self.assertEqual(text, "a=[[1, 2]]\nb.x=\nb.y=true\n")

    def test_model(self):
        """Pydantic models are dumped first."""
        result = SearchResult(graph="k2^2", property=Property.DOM, size=2, exists=True, witness=[[1, 1], [2, 2]])
        lines = to_key_value(result).splitlines()
        self.assertIn("property=dom", lines)
        self.assertIn("witness=[[1, 1], [2, 2]]", lines)


class TestReportGenerator(unittest.TestCase):

    def setUp(self):
        self.generator = ReportGenerator()

    def test_bounds_table(self):
        """Only the bounds that apply are listed."""
        text = self.generator.render_bounds(lower_bounds(4, 3))
        self.assertIn("| id3_new | 10 |", text)
        self.assertNotIn("dom2", text)
        self.assertNotIn("Repeated-column", text)

    def test_bounds_with_ratio(self):
        """The ratio section appears when requested."""
        text = self.generator.render_bounds(lower_bounds(2, 9), ratio_report(2, 2))
        self.assertIn("Repeated-column", text)
        self.assertIn("Upper q^(n-k) = 128", text)

    def test_analysis(self):
        """The analysis lists all twelve layers and every check."""
        code = construct_c1()
        lemmas = check_layer_claims(code)
        text = self.generator.render_analysis("c1", layer_analysis(code), lemmas)
        self.assertIn("# Layer analysis of c1", text)
        self.assertIn("- Code size: 15", text)
        self.assertEqual(text.count("| yes |"), len(lemmas.checks))

    def test_html(self):
        """Markdown tables are rendered into the HTML page."""
        text = self.generator.render_bounds(lower_bounds(3, 3))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "reports", "bounds.html")
            self.generator.generate_html("Bounds", text, path)
            with open(path, "r") as f:
                html = f.read()
        self.assertIn("<table>", html)
        self.assertIn("Bounds", html)


if __name__ == "__main__":
    unittest.main()
