"""
Quadratic presentations K<x^1..x^n>/[r_1..r_m] with r_i in V (x) V.

Words are tuples of 0-based generator indices; a relation is stored as a
sorted tuple of ((j, k), coefficient) with nonzero Fraction coefficients.
Public helpers that take generator numbers use the 1-based convention of the
printed algebras.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from core.errors import AlgebraError
from core.forms.catalog import alpha_p
from core.forms.three_form import ExteriorThreeForm

logger = logging.getLogger(__name__)

Word = tuple[int, ...]
Tensor = dict  # {Word: Fraction}


def _freeze(t: Mapping[Word, object]) -> tuple:
    return tuple(sorted((w, Fraction(c)) for w, c in t.items() if c))


@dataclass(frozen=True)
class QuadraticPresentation:
    n: int
    relations: tuple  # one frozen tensor per relation, possibly empty
    name: str = field(default="", compare=False)

    def relation(self, i: int) -> Tensor:
        """The i-th relation (1-based) as a {(j, k): c} dict."""
        return dict(self.relations[i - 1])

    def nonzero_relations(self) -> list[Tensor]:
        zero = [i + 1 for i, r in enumerate(self.relations) if not r]
        if zero:
            logger.warning("%s: dropping zero relations %s", self.name or "presentation", zero)
        return [dict(r) for r in self.relations if r]

    def is_antisymmetric(self) -> bool:
        for r in self.relations:
            d = dict(r)
            if any(d.get((k, j), 0) != -c for (j, k), c in d.items()):
                return False
        return True

    def display(self) -> list[str]:
        return [tensor_string(dict(r)) for r in self.relations]


def tensor_string(t: Mapping[Word, Fraction]) -> str:
    if not t:
        return "0"
    out = ""
    for w, c in sorted(t.items()):
        mono = "".join(f"x{g + 1}" for g in w)
        if abs(c) != 1:
            mono = f"{abs(c)}*{mono}"
        out += ("-" if c < 0 else ("+" if out else "")) + mono
    return out


def presentation(alpha: ExteriorThreeForm, name: str = "") -> QuadraticPresentation:
    """Relations r_i = sum_{j,k} alpha_{ijk} x^j (x) x^k, zero relations kept."""
    t = alpha.to_tensor()
    n = alpha.n
    rels = []
    for i in range(n):
        rels.append(_freeze({(j, k): t[i, j, k] for j in range(n) for k in range(n) if t[i, j, k]}))
    return QuadraticPresentation(n=n, relations=tuple(rels), name=name)


def restrict(pres: QuadraticPresentation, generators: Sequence[int], relations: Sequence[int],
             name: str = "") -> QuadraticPresentation:
    """
    Presentation on the given generators (1-based, renumbered 1..m in order)
    using the given relations, which must only involve those generators.
    """
    gens = [g - 1 for g in generators]
    renumber = {g: a for a, g in enumerate(gens)}
    rels = []
    for i in relations:
        r = pres.relation(i)
        if any(j not in renumber or k not in renumber for j, k in r):
            raise AlgebraError(f"relation {i} involves generators outside {list(generators)}")
        rels.append(_freeze({(renumber[j], renumber[k]): c for (j, k), c in r.items()}))
    return QuadraticPresentation(n=len(gens), relations=tuple(rels), name=name)


def b_presentation(p: int) -> QuadraticPresentation:
    """B^(p) = K<x^1..x^2p>/[d_{2p+1} alpha_p]."""
    return restrict(presentation(alpha_p(p)), range(1, 2 * p + 1), [2 * p + 1], name=f"B({p})")


def beta_subalgebra(pres_beta: QuadraticPresentation) -> QuadraticPresentation:
    """The subalgebra of A_beta generated by x^1..x^4, with relations d5, d6, d7."""
    return restrict(pres_beta, [1, 2, 3, 4], [5, 6, 7], name="B(beta)")


def typeset_to_tensor(terms: Iterable[tuple]) -> Tensor:
    """((coefficient, (j, k)), ...) with 1-based generators to a 0-based tensor."""
    out: Tensor = {}
    for c, (j, k) in terms:
        w = (j - 1, k - 1)
        out[w] = out.get(w, 0) + Fraction(c)
    return {w: c for w, c in out.items() if c}


def adjoint_derivation(pres: QuadraticPresentation, g: int) -> dict[int, tuple]:
    """
    ad(x^g) on the other generators, read off relations of the form
    c (x^j x^g - x^g x^j) + rest with rest free of x^g: ad(x^g)(x^j) = rest / c.
    Returned in the catalog derivation format, renumbered to drop x^g.
    """
    if not 1 <= g <= pres.n:
        raise AlgebraError(f"generator {g} outside 1..{pres.n}")
    g0 = g - 1
    images: dict[int, Tensor] = {}
    for idx, rel in enumerate(pres.relations, start=1):
        r = dict(rel)
        touching = {w: c for w, c in r.items() if g0 in w}
        if not touching:
            continue
        pairs = {w for w in touching if w[0] != g0}
        if len(pairs) != 1 or len(touching) != 2:
            raise AlgebraError(f"relation {idx} is not a single commutator with x{g} plus a remainder")
        (j, _), = pairs
        c = touching[(j, g0)]
        if touching.get((g0, j)) != -c or j in images:
            raise AlgebraError(f"relation {idx} does not determine ad(x{g})(x{j + 1})")
        images[j] = {w: v / c for w, v in r.items() if g0 not in w}
    missing = [j + 1 for j in range(pres.n) if j != g0 and j not in images]
    if missing:
        raise AlgebraError(f"ad(x{g}) is undetermined on generators {missing}")

    def shift(a: int) -> int:
        return a + 1 if a < g0 else a

    return {
        shift(j): tuple((c, (shift(a), shift(b))) for (a, b), c in sorted(t.items()))
        for j, t in sorted(images.items())
    }
