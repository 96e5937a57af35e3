"""
Form files: {"n": int, "terms": [[i, j, k, "num/den"], ...]} with i<j<k.

Also resolves command-line sources, which are either a path to such a file or
'catalog:<name>[:params]'.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from core.errors import FormError, FormFileError
from core.forms.catalog import CatalogEntry, parse_source
from core.forms.three_form import ExteriorThreeForm, from_components
from core.util.files import write_json
from core.util.validation import named_schema, validate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormSource:
    """A loaded form together with where it came from."""

    label: str
    form: ExteriorThreeForm
    entry: Optional[CatalogEntry] = None

    @property
    def f_label(self) -> Optional[str]:
        return self.entry.f_label if self.entry else None


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def form_to_dict(form: ExteriorThreeForm, name: str = "") -> dict:
    data = {"n": form.n, "terms": [[i, j, k, format_scalar(c)] for (i, j, k), c in form.terms]}
    if name:
        data["name"] = name
    return data


def form_from_dict(data: dict) -> ExteriorThreeForm:
    errors = validate(data, named_schema("form_file"))
    if errors:
        raise FormFileError(f"form file violates schema: {errors[0]}")
    n = data["n"]
    entries = []
    for i, j, k, c in data["terms"]:
        if not i < j < k:
            raise FormFileError(f"triple {(i, j, k)} must satisfy i<j<k")
        try:
            entries.append(((i, j, k), Fraction(c)))
        except (ValueError, ZeroDivisionError) as e:
            raise FormFileError(f"coefficient {c!r} is not a rational number") from e
    try:
        return from_components(n, entries)
    except FormError as e:
        raise FormFileError(str(e)) from e


def load_form(path: Path) -> ExteriorThreeForm:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise FormFileError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise FormFileError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise FormFileError(f"{path} must contain a JSON object")
    return form_from_dict(data)


def save_form(path: Path, form: ExteriorThreeForm, name: str = "") -> None:
    write_json(path, form_to_dict(form, name))


def resolve_source(source: str) -> FormSource:
    if source.startswith("catalog:"):
        entry = parse_source(source)
        return FormSource(label=entry.source, form=entry.form, entry=entry)
    form = load_form(Path(source))
    logger.info("Loaded form from %s (n=%d, %d monomials)", source, form.n, len(form.terms))
    return FormSource(label=Path(source).name, form=form)
