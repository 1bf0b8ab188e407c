import itertools
import unittest

from idcodes.construct3 import (
    SextupleView,
    best_known_code,
    best_known_upper,
    construct_c1,
    construct_cl,
    construct_cq,
    construct_ct,
    diagonal,
    ext,
    extend_identifying,
)
from idcodes.errors import InputError, PreconditionError
from idcodes.graph import Code, HammingGraph, i_set, pipes
from idcodes.verify import is_identifying


class TestSmallCodes(unittest.TestCase):

    def test_cq_two(self):
        """C_2 is the four even-sum triples."""
        self.assertEqual(construct_cq(2).words, {(1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 2)})

    def test_cq_meets_every_pipe_once(self):
        """Every pipe of K_7^3 holds exactly one word of C_7."""
        code = construct_cq(7)
        for _, members in pipes(code.graph):
            self.assertEqual(len(set(members) & code.words), 1)

    def test_cq_identifying(self):
        """C_q identifies K_q^3 with q^2 words."""
        for q in range(3, 9):
            code = construct_cq(q)
            self.assertEqual(len(code), q * q)
            self.assertTrue(is_identifying(code).holds)

    def test_sporadic_sizes(self):
        """The two K_4^3 codes have 15 and 12 words."""
        self.assertEqual(len(construct_c1()), 15)
        self.assertEqual(len(construct_cl()), 12)
        self.assertIn((2, 1, 3), construct_c1())

    def test_diagonal(self):
        """The diagonal has four vertices and avoids the 12-word code."""
        self.assertEqual(len(diagonal()), 4)
        self.assertIn((2, 2, 2), diagonal())
        self.assertFalse(diagonal() & construct_cl().words)
        self.assertEqual(construct_cl().graph.deleted, diagonal())

    def test_diagonal_i_sets_empty(self):
        """Diagonal vertices of the 12-word code have empty I-sets."""
        code = construct_cl()
        for v in diagonal():
            self.assertEqual(i_set(code, v), set())


class TestExt(unittest.TestCase):

    def test_small_example(self):
        """Two words of K_2^3 placed in three subcubes of K_6^3."""
        inner = Code(HammingGraph(2, 3), [(1, 1, 1), (2, 2, 2)])
        outer = Code(HammingGraph(3, 3), [(1, 3, 1), (2, 2, 2), (3, 1, 3)])
        result = ext(inner, outer)
        self.assertEqual(result.graph, HammingGraph(6, 3))
        self.assertEqual(
            result.words,
            {(1, 5, 1), (3, 3, 3), (5, 1, 5), (2, 6, 2), (4, 4, 4), (6, 2, 6)},
        )

    def test_singleton_outer(self):
        """A single outer word (1,1,1) copies the inner code."""
        inner = construct_c1()
        self.assertEqual(ext(inner, Code(HammingGraph(1, 3), [(1, 1, 1)])).words, inner.words)

    def test_product_size(self):
        """|Ext(C_q, C_L)| = 12 q^2."""
        for q in (2, 3):
            self.assertEqual(len(ext(construct_cq(q), construct_cl())), 12 * q * q)

    def test_sextuple_round_trip(self):
        """split and flatten are inverse."""
        for q, m in itertools.product(range(1, 4), repeat=2):
            for v in itertools.product(range(1, q * m + 1), repeat=3):
                self.assertEqual(SextupleView.split(v, q, m).flatten(), v)

    def test_sextuple_range(self):
        """Inner coordinates must lie in 1..q."""
        with self.assertRaises(ValueError):
            SextupleView(inner=(3, 1, 1), outer=(1, 1, 1), q=2, m=2)


class TestRecursiveFamily(unittest.TestCase):

    def test_sizes_and_identification(self):
        """C^t has 4^(2t) - 4^(t-1) words and identifies K_(4^t)^3."""
        for t, size in ((1, 15), (2, 252), (3, 4080)):
            code = construct_ct(t)
            self.assertEqual(len(code), size)
            self.assertEqual(code.graph, HammingGraph(4 ** t, 3))
            self.assertTrue(is_identifying(code).holds)

    def test_invalid_t(self):
        """t must be positive."""
        with self.assertRaises(InputError):
            construct_ct(0)


class TestExtension(unittest.TestCase):

    def test_sizes(self):
        """Extending the 15-word code to r = 8, 9, 10 gives r^2 - 1 words and stays identifying."""
        base = construct_c1()
        for r, size in ((8, 63), (9, 80), (10, 99)):
            code = extend_identifying(base, r)
            self.assertEqual(len(code), size)
            self.assertTrue(is_identifying(code).holds)

    def test_structure(self):
        """The old block keeps the base code and every new tower holds one codeword."""
        base = construct_c1()
        code = extend_identifying(base, 9)
        inside = {w for w in code.words if max(w[0], w[1]) <= 4}
        self.assertEqual(inside, base.words)
        for x, y in itertools.product(range(1, 10), repeat=2):
            if max(x, y) > 4:
                self.assertEqual(sum(1 for w in code.words if w[:2] == (x, y)), 1)

    def test_preconditions(self):
        """r < 2q and non-identifying inputs are refused."""
        with self.assertRaises(PreconditionError):
            extend_identifying(construct_c1(), 7)
        with self.assertRaises(PreconditionError):
            extend_identifying(Code(HammingGraph(4, 3), [(1, 1, 1)]), 8)


class TestBestKnown(unittest.TestCase):

    def test_upper_values(self):
        """Best known sizes at a few alphabet sizes."""
        self.assertEqual(best_known_upper(16), 252)
        self.assertEqual(best_known_upper(9), 80)
        self.assertEqual(best_known_upper(3), 9)
        self.assertEqual(best_known_upper(4), 15)
        self.assertEqual(best_known_upper(64), 4080)
        self.assertEqual(best_known_upper(32), 1020)

    def test_codes_attain_upper(self):
        """best_known_code matches best_known_upper and identifies."""
        for q in (3, 4, 5, 8, 9):
            code = best_known_code(q)
            self.assertEqual(len(code), best_known_upper(q))
            self.assertTrue(is_identifying(code).holds)


if __name__ == "__main__":
    unittest.main()
