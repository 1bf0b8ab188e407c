import unittest

from idcodes.errors import InputError, PreconditionError
from idcodes.graph import Code, HammingGraph
from idcodes.latin import (
    LatinSquare,
    PartialLatinSquare,
    code_to_latin,
    cyclic_latin,
    extend_latin,
    latin_to_code,
    validate_latin,
)
from idcodes.verify import is_self_locating_dominating


class TestValidateLatin(unittest.TestCase):

    def test_valid(self):
        """A 2 x 2 Latin square passes."""
        check = validate_latin([[1, 2], [2, 1]])
        self.assertTrue(check.valid)
        self.assertIsNone(check.violation)

    def test_column_repeat(self):
        """Repeated values in a column are reported."""
        check = validate_latin([[1, 2], [1, 2]])
        self.assertFalse(check.valid)
        self.assertEqual(check.violation, "column 1 repeats 1")

    def test_row_repeat(self):
        """Repeated values in a row are reported first."""
        check = validate_latin([[1, 1], [2, 2]])
        self.assertEqual(check.violation, "row 1 repeats 1")

    def test_malformed(self):
        """Ragged grids and out-of-range values are input errors."""
        with self.assertRaises(InputError):
            validate_latin([[1, 2], [2]])
        with self.assertRaises(InputError):
            validate_latin([[1, 3], [3, 1]])
        with self.assertRaises(InputError):
            validate_latin([])

    def test_model_rejects_non_latin(self):
        """LatinSquare refuses a grid with repeats."""
        with self.assertRaises(ValueError):
            LatinSquare(order=2, grid=[[1, 2], [1, 2]])


class TestCyclicLatin(unittest.TestCase):

    def test_values(self):
        """grid[a][b] solves a + b + c = 0 (mod q)."""
        square = cyclic_latin(3)
        self.assertEqual(square.grid, [[1, 3, 2], [3, 2, 1], [2, 1, 3]])
        for q in range(1, 9):
            square = cyclic_latin(q)
            for a in range(1, q + 1):
                for b in range(1, q + 1):
                    self.assertEqual((a + b + square.value(a, b)) % q, 0)

    def test_invalid_order(self):
        """Order zero is rejected."""
        with self.assertRaises(InputError):
            cyclic_latin(0)


class TestLatinCodes(unittest.TestCase):

    def test_sld_bijection(self):
        """Cyclic Latin codes are SLD of size q^2 and convert back unchanged."""
        for q in range(2, 9):
            square = cyclic_latin(q)
            code = latin_to_code(square)
            self.assertEqual(len(code), q * q)
            self.assertTrue(is_self_locating_dominating(code).holds)
            self.assertEqual(code_to_latin(code), square)

    def test_removal_breaks_sld(self):
        """Dropping any single codeword breaks SLD."""
        for q in range(2, 6):
            code = latin_to_code(cyclic_latin(q))
            for c in code:
                smaller = Code(code.graph, code.words - {c})
                self.assertFalse(is_self_locating_dominating(smaller).holds)

    def test_code_to_latin_names_pipe(self):
        """Codes that miss a pipe are not Latin squares."""
        code = Code(HammingGraph(2, 3), [(1, 1, 1), (2, 2, 2)])
        with self.assertRaises(InputError) as ctx:
            code_to_latin(code)
        self.assertIn("pipe", str(ctx.exception))

    def test_code_to_latin_needs_k_q_3(self):
        """Codes outside a full K_q^3 are rejected."""
        with self.assertRaises(InputError):
            code_to_latin(Code(HammingGraph(2, 2), [(1, 1)]))


class TestExtendLatin(unittest.TestCase):

    def test_extensions(self):
        """Order 4 extends to 8, 9 and 10 with the original block in place."""
        base = cyclic_latin(4)
        for r in (8, 9, 10):
            extended = extend_latin(base, r)
            self.assertEqual(extended.order, r)
            self.assertTrue(validate_latin(extended.grid).valid)
            for x in range(4):
                self.assertEqual(extended.grid[x][:4], base.grid[x])

    def test_right_block_uses_new_symbols(self):
        """The first q rows take values above q outside the block."""
        extended = extend_latin(cyclic_latin(3), 7)
        for x in range(3):
            self.assertEqual(set(extended.grid[x][3:]), {4, 5, 6, 7})

    def test_too_small(self):
        """r < 2q is refused."""
        with self.assertRaises(PreconditionError):
            extend_latin(cyclic_latin(4), 7)

    def test_partial_embed(self):
        """Embedding leaves everything outside the block empty."""
        partial = PartialLatinSquare.embed(cyclic_latin(2), 4)
        self.assertFalse(partial.is_complete())
        self.assertEqual(partial.column_values(0), {1, 2})
        self.assertEqual(partial.column_values(3), set())


if __name__ == "__main__":
    unittest.main()
