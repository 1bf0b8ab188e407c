import json
import logging
import os
import shutil

from constants import VERSION
from idcodes.models import SearchResult

logger = logging.getLogger(__name__)


def search_key(graph_key: str, prop: str, size) -> str:
    safe = graph_key.replace("^", "p").replace("/", "_")
    return f"search_{safe}_{prop}_{size}"


class ResultCache:
    """Search outcomes on disk, one JSON file per key, invalidated by package version."""

    def __init__(self, cache_dir="data", version=VERSION):
        self.cache_dir = cache_dir
        self.version = version
        os.makedirs(self.cache_dir, exist_ok=True)

    def _path(self, key):
        return os.path.join(self.cache_dir, f"{key}.json")

    def _load_entry(self, key):
        path = self._path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r") as f:
                return json.load(f)
        except (json.JSONDecodeError, OSError) as e:
            logger.warning(f"Unreadable cache entry {path}: {e}")
            return None

    def get(self, key):
        entry = self._load_entry(key)
        if entry is None:
            return None
        if not isinstance(entry, dict) or entry.get("version") != self.version:
            logger.info(f"Cache entry {key} belongs to another version; recomputing")
            return None
        if not entry.get("data"):
            logger.warning(f"Cache entry {key} holds no data; recomputing")
            return None
        logger.info(f"Cache hit for {key}")
        return entry["data"]

    def set(self, key, data):
        if not data:
            logger.warning(f"Nothing to cache for {key}")
            return
        path = self._path(key)
        try:
            with open(path, "w") as f:
                json.dump({"version": self.version, "data": data}, f, indent=2)
        except OSError as e:
            logger.error(f"Could not write cache entry {path}: {e}")
            return
        logger.debug(f"Cached {key}")

    def get_search(self, graph_key, prop, size):
        data = self.get(search_key(graph_key, prop, size))
        if data is None:
            return None
        try:
            return SearchResult.model_validate(data)
        except ValueError as e:
            logger.warning(f"Corrupt search entry for {graph_key} {prop} {size}: {e}")
            return None

    def set_search(self, result: SearchResult, size_label=None):
        key = search_key(result.graph, result.property.value, size_label or result.size)
        self.set(key, result.model_dump(mode="json"))

    def clear(self):
        """Drop every entry; the directory itself stays."""
        shutil.rmtree(self.cache_dir, ignore_errors=True)
        os.makedirs(self.cache_dir, exist_ok=True)
