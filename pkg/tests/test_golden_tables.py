import json
import os
import unittest

from idcodes.construct3 import construct_c1, construct_cl, diagonal
from idcodes.graph import HammingGraph, i_set

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def _load_table(name):
    with open(os.path.join(DATA_DIR, name), "r") as f:
        raw = json.load(f)
    return {
        tuple(int(c) for c in key.split(",")): {tuple(w) for w in words}
        for key, words in raw.items()
    }


class TestGoldenISets(unittest.TestCase):

    def test_c1_table(self):
        """Every I-set of the 15-word code over K_4^3 matches the reference table."""
        table = _load_table("c1_isets.json")
        code = construct_c1()
        self.assertEqual(len(table), 64)
        for v in HammingGraph(4, 3).vertices():
            self.assertEqual(i_set(code, v), table[v], f"I{v}")

    def test_cl_table(self):
        """Every I-set of the 12-word code matches, with empty sets exactly on the diagonal."""
        table = _load_table("cl_isets.json")
        code = construct_cl().with_graph(HammingGraph(4, 3))
        self.assertEqual(len(table), 64)
        for v in HammingGraph(4, 3).vertices():
            self.assertEqual(i_set(code, v), table[v], f"I{v}")
        self.assertEqual({v for v, words in table.items() if not words}, diagonal())

    def test_cl_codewords_isolated(self):
        """Each codeword of the 12-word code is its own I-set."""
        code = construct_cl()
        for c in code:
            self.assertEqual(i_set(code, c), {c})


if __name__ == "__main__":
    unittest.main()
