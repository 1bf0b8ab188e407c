import json
import os
import tempfile
import unittest
from unittest.mock import mock_open, patch

from constants import VERSION
from idcodes.cache import ResultCache, search_key
from idcodes.models import Property, SearchResult


class TestResultCache(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.cache = ResultCache(cache_dir=self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_get_current_version(self):
        """Entries written by this version are returned."""
        content = json.dumps({"version": VERSION, "data": {"exists": True}})

        with patch("os.path.exists", return_value=True), \
             patch("builtins.open", mock_open(read_data=content)):

            self.assertEqual(self.cache.get("some_key"), {"exists": True})

    def test_get_other_version(self):
        """Entries written by another version are ignored."""
        content = json.dumps({"version": "0.0.0-old", "data": {"exists": True}})

        with patch("os.path.exists", return_value=True), \
             patch("builtins.open", mock_open(read_data=content)):

            self.assertIsNone(self.cache.get("some_key"))

    def test_get_corrupt_data(self):
        """Corrupt JSON is a miss."""
        with patch("os.path.exists", return_value=True), \
             patch("builtins.open", mock_open(read_data="{invalid json")):

            self.assertIsNone(self.cache.get("some_key"))

    def test_get_missing(self):
        """A key never written is a miss."""
        self.assertIsNone(self.cache.get("never_written"))

    def test_set_writes_versioned_entry(self):
        """set() wraps the data with the package version."""
        with patch("builtins.open", mock_open()) as mocked_file, \
             patch("json.dump") as mock_json_dump:

            self.cache.set("my_key", {"size": 9})
            mocked_file.assert_called_once_with(os.path.join(self.tmp.name, "my_key.json"), "w")
            payload = mock_json_dump.call_args[0][0]
            self.assertEqual(payload, {"version": VERSION, "data": {"size": 9}})

    def test_set_empty_data(self):
        """Empty data is not written."""
        with patch("builtins.open", mock_open()) as mocked_file:
            self.cache.set("my_key", None)
            self.cache.set("my_key", {})
            mocked_file.assert_not_called()

    def test_search_round_trip_on_disk(self):
        """A stored SearchResult is read back equal."""
        result = SearchResult(
            graph="k3^3", property=Property.ID, size=9, exists=True, witness=[[1, 1, 1], [2, 2, 2]], nodes=17
        )
        self.cache.set_search(result)
        loaded = self.cache.get_search("k3^3", "id", 9)
        self.assertEqual(loaded, result)
        self.assertIsNone(self.cache.get_search("k3^3", "id", 8))

    def test_optimal_label(self):
        """Optimal-size results are stored under their own label."""
        result = SearchResult(graph="g6", property=Property.SLD, size=4, exists=True, optimal=True)
        self.cache.set_search(result, size_label="optimal")
        self.assertEqual(self.cache.get_search("g6", "sld", "optimal").size, 4)
        self.assertIsNone(self.cache.get_search("g6", "sld", 4))

    def test_clear(self):
        """clear() removes entries and leaves an empty directory."""
        self.cache.set("my_key", {"a": 1})
        self.cache.clear()
        self.assertTrue(os.path.isdir(self.tmp.name))
        self.assertEqual(os.listdir(self.tmp.name), [])

    def test_search_key(self):
        """Keys are filesystem safe."""
        self.assertEqual(search_key("k4^3", "id", 14), "search_k4p3_id_14")


if __name__ == "__main__":
    unittest.main()
