"""
Catalog of exterior 3-form representatives.

Fixed entries (with their f1..f9 orbit labels) are data in catalog.yaml;
the parametric families alpha_p(p) and alpha_plane(t0, t1, t2) are built here.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import yaml

from core import config
from core.errors import CatalogError, FormError
from core.forms.three_form import ExteriorThreeForm, add, as_scalar, from_components, scale

logger = logging.getLogger(__name__)

FAMILIES = ("alpha_p", "alpha_plane")

# Catalog order used by listings and the reproduction table.
FIXED_ORDER = (
    "alpha1",
    "alpha2",
    "gamma6",
    "omega6",
    "rho7",
    "alpha3_prime",
    "beta7",
    "alpha3",
    "alpha3_double_prime",
)

_ALPHA_P_LABELS = {1: "f1", 2: "f2", 3: "f8"}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    form: ExteriorThreeForm
    f_label: Optional[str]
    display: str = ""
    params: tuple = ()

    @property
    def source(self) -> str:
        if not self.params:
            return f"catalog:{self.name}"
        return f"catalog:{self.name}:" + ",".join(str(p) for p in self.params)


@lru_cache(maxsize=1)
def load_catalog_data() -> dict:
    with open(config.CATALOG_PATH, "r", encoding="utf-8") as f:
        return yaml.safe_load(f)


def _fixed_entry(name: str) -> CatalogEntry:
    spec = load_catalog_data()["forms"][name]
    form = from_components(spec["n"], [((i, j, k), c) for i, j, k, c in spec["terms"]])
    return CatalogEntry(name=name, form=form, f_label=spec.get("f_label"), display=spec.get("display", ""))


def alpha_p(p: int) -> ExteriorThreeForm:
    """sum_{m=1}^{p} theta^m ^ theta^{m+p} ^ theta^{2p+1} on K^{2p+1}."""
    if p < 1:
        raise CatalogError(f"alpha_p requires p >= 1, got {p}")
    return from_components(2 * p + 1, [((m, m + p, 2 * p + 1), 1) for m in range(1, p + 1)])


def alpha_plane(t0, t1, t2) -> ExteriorThreeForm:
    """t0*alpha3 + t1*alpha3' + t2*alpha3'' on the affine plane t0 + t1 + t2 = 1."""
    try:
        t = [as_scalar(x) for x in (t0, t1, t2)]
    except FormError as e:
        raise CatalogError(str(e)) from e
    if sum(t) != 1:
        raise CatalogError(f"plane parameters must satisfy t0+t1+t2=1, got sum {sum(t)}")
    corners = [_fixed_entry(n).form for n in ("alpha3", "alpha3_prime", "alpha3_double_prime")]
    out = scale(corners[0], t[0])
    for c, f in zip(t[1:], corners[1:]):
        out = add(out, scale(f, c))
    return out


def catalog(name: str, params: tuple = ()) -> CatalogEntry:
    """Look up a catalog entry; families take their parameters in ``params``."""
    if name == "alpha_p":
        if len(params) != 1:
            raise CatalogError("alpha_p takes exactly one parameter p")
        try:
            p = int(params[0])
        except (TypeError, ValueError) as e:
            raise CatalogError(f"alpha_p parameter must be an integer, got {params[0]!r}") from e
        return CatalogEntry(
            name="alpha_p",
            form=alpha_p(p),
            f_label=_ALPHA_P_LABELS.get(p),
            display=f"sum_m t_m^t_(m+{p})^t{2 * p + 1}",
            params=(p,),
        )
    if name == "alpha_plane":
        if len(params) != 3:
            raise CatalogError("alpha_plane takes three parameters t0,t1,t2")
        form = alpha_plane(*params)
        return CatalogEntry(
            name="alpha_plane",
            form=form,
            f_label=None,
            display="t0*alpha3 + t1*alpha3' + t2*alpha3''",
            params=tuple(Fraction(x) for x in params),
        )
    if params:
        raise CatalogError(f"catalog entry {name!r} takes no parameters")
    if name not in load_catalog_data()["forms"]:
        raise CatalogError(f"unknown catalog entry {name!r}")
    return _fixed_entry(name)


def alpha_p_index(entry: CatalogEntry) -> Optional[int]:
    """p when the entry is alpha_p, either as the family or as one of the fixed alpha1/2/3."""
    if entry.name == "alpha_p":
        return entry.params[0]
    if entry.name in ("alpha1", "alpha2", "alpha3"):
        return int(entry.name[-1])
    return None


def fixed_entries(dim: Optional[int] = None) -> list[CatalogEntry]:
    entries = [_fixed_entry(name) for name in FIXED_ORDER]
    if dim is not None:
        entries = [e for e in entries if e.form.n == dim]
    return entries


def parse_source(source: str) -> CatalogEntry:
    """Parse 'catalog:<name>[:params]' (params comma separated)."""
    if not source.startswith("catalog:"):
        raise CatalogError(f"not a catalog source: {source!r}")
    parts = source.split(":", 2)
    name = parts[1]
    params: tuple = ()
    if len(parts) == 3 and parts[2]:
        params = tuple(p.strip() for p in parts[2].split(","))
    return catalog(name, params)


def _tensor_terms(raw: list) -> tuple:
    return tuple((Fraction(c), (j, k)) for c, j, k in raw)


def typeset_relations(name: str) -> list[tuple]:
    """Relations as printed for an n=7 entry: list of ((coefficient, (j, k)), ...)."""
    data = load_catalog_data()["relations"]
    if name not in data:
        raise CatalogError(f"no printed relations for {name!r}")
    return [_tensor_terms(r) for r in data[name]]


def catalog_derivation(name: str) -> dict[int, tuple]:
    """A derivation of B^(3): generator -> ((coefficient, (j, k)), ...)."""
    data = load_catalog_data()["derivations"]
    if name == "delta0":
        return {g: () for g in range(1, 7)}
    if name not in data:
        raise CatalogError(f"unknown derivation {name!r}")
    return {int(g): _tensor_terms(v) for g, v in data[name].items()}
