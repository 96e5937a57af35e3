"""
Schema checks for form files and analysis reports.

The schemas live in core/pipeline/schemas as <name>.schema.json; the validator
class follows each schema's $schema draft.
"""
import json
from functools import lru_cache

import jsonschema

from core import config


@lru_cache(maxsize=None)
def named_schema(name: str):
    """Validator for core/pipeline/schemas/<name>.schema.json."""
    with open(config.SCHEMAS_DIR / f"{name}.schema.json", "r", encoding="utf-8") as f:
        schema = json.load(f)
    cls = jsonschema.validators.validator_for(schema)
    cls.check_schema(schema)
    return cls(schema)


def validate(data: dict, schema) -> list[str]:
    """Every violation as 'path: message', ordered by path; empty when valid."""
    errors = sorted(schema.iter_errors(data), key=lambda e: [str(p) for p in e.absolute_path])
    out = []
    for e in errors:
        path = "/".join(str(p) for p in e.absolute_path)
        out.append(f"{path}: {e.message}" if path else e.message)
    return out
