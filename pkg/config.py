import os


def _int_env(name, default, invalid):
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        invalid.append(f"{name}={raw!r}")
        return default
    if value <= 0:
        invalid.append(f"{name}={raw!r}")
        return default
    return value


class Config:
    TEST_MODE = os.getenv("TEST", "false").lower() == "true"

    _invalid_vars = []

    if TEST_MODE:
        SEARCH_NODE_BUDGET = _int_env("IDCODES_SEARCH_BUDGET", 2_000_000, _invalid_vars)
    else:
        SEARCH_NODE_BUDGET = _int_env("IDCODES_SEARCH_BUDGET", 20_000_000, _invalid_vars)

    ENUMERATION_BUDGET = _int_env("IDCODES_ENUMERATION_BUDGET", 1 << 22, _invalid_vars)
    VERIFY_BUDGET = _int_env("IDCODES_VERIFY_BUDGET", 20_000_000, _invalid_vars)
    WORKERS = _int_env("IDCODES_WORKERS", 1, _invalid_vars)
    FINGERPRINT_SEED = _int_env("IDCODES_SEED", 20240601, _invalid_vars)
    CACHE_DIR = os.getenv("IDCODES_CACHE_DIR", "data")

    if _invalid_vars:
        raise ValueError(
            "Error: Invalid values for environment variables (positive integers expected): "
            f"{', '.join(_invalid_vars)}"
        )
