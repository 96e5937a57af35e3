"""
Main analysis orchestrator.

Runs the per-form pipeline:
  1. Nondegeneracy and 3-regularity (slot matrices, intertwiners)
  2. Lie closure and infinitesimal stabilizer
  3. Hilbert series against the 3-Calabi-Yau prediction
  4. Koszul complex exactness
  5. Extra structural checks for catalog forms (optional)

Returns an AnalysisReport dict, validated against analysis_report.schema.json.
Nothing here depends on the clock unless timings are requested.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from core import config
from core.algebra import checks
from core.algebra.hilbert import b_hilbert_check, hilbert_series, tensor_factorization_check
from core.algebra.koszul import koszul_complex_check, subalgebra_koszul_check
from core.algebra.presentation import b_presentation, presentation
from core.errors import ReportError
from core.forms.catalog import alpha_p_index, catalog_derivation
from core.forms.form_file import FormSource, format_scalar
from core.regularity.intertwiners import is_three_regular
from core.regularity.lie import commutator_wedge_check, lie_closure
from core.regularity.slots import block_matrix_check, slot_matrices
from core.util.hashing import hash_form
from core.util.time import Stopwatch
from core.util.validation import named_schema, validate

logger = logging.getLogger(__name__)

# Intertwiner bases larger than this are summarized by their dimension only.
MAX_SERIALIZED_BASIS = 8


@dataclass(frozen=True)
class AnalysisOptions:
    max_degree: int = config.MAX_DEGREE
    koszul_degree: int = config.KOSZUL_DEGREE
    rational_degree: int = config.RATIONAL_DEGREE
    primes: tuple = config.PRIMES
    seed: int = config.SEED
    trials: int = config.TRIALS
    skip_hilbert: bool = False
    skip_lie: bool = False
    skip_koszul: bool = False
    extras: bool = False
    timings: bool = False

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "koszul_degree": self.koszul_degree,
            "rational_degree": self.rational_degree,
            "primes": list(self.primes),
            "seed": self.seed,
            "trials": self.trials,
        }


def _matrix(m) -> list[list[str]]:
    return [[format_scalar(Fraction(x)) for x in row] for row in np.asarray(m, dtype=object)]


def _regularity_dict(verdict) -> dict:
    out = {
        "nondegenerate": verdict.nondegenerate,
        "witness": [format_scalar(Fraction(x)) for x in verdict.witness] if verdict.witness else None,
        "intertwiner_dimension": verdict.intertwiner_dimension,
        "three_regular": verdict.three_regular,
        "reason": verdict.reason,
    }
    if verdict.intertwiner_dimension <= MAX_SERIALIZED_BASIS:
        out["intertwiner_basis"] = [{"M": _matrix(m), "N": _matrix(w)} for m, w in verdict.intertwiner_basis]
    return out


def _extra_checks(source: FormSource, options: AnalysisOptions) -> dict:
    """Structural checks that apply to the catalog entry behind ``source``."""
    entry = source.entry
    pres = presentation(source.form, name=source.label)
    out: dict = {
        "central_generators": [g for g in range(1, source.form.n + 1) if checks.centrality_check(pres, g)],
    }
    if entry is None:
        return out
    name = entry.name
    depth = min(options.koszul_degree, options.rational_degree)
    p = alpha_p_index(entry)
    if p is not None:
        rng = np.random.default_rng(options.seed)
        out["commutator_wedge"] = commutator_wedge_check(p, options.seed, options.trials)
        out["block_matrix"] = block_matrix_check(p, rng, options.trials)
        out["tensor_factorization"] = tensor_factorization_check(p, depth)
        out["b_hilbert"] = b_hilbert_check(p, depth)
    if name == "beta7":
        out["matrix_identity_lemma"] = checks.verify_matrix_identity_lemma(pres)
        out["matrix_identity_lemma_perturbed"] = checks.verify_matrix_identity_lemma(pres, flip=(0, 0))
        out["bigrading"] = checks.bigrading_check(pres, depth)
        out["subalgebra_koszul"] = subalgebra_koszul_check(pres, depth)[0]
        out["free_subalgebra"] = checks.free_subalgebra_check(pres, (5, 6, 7), min(depth, 3))
    if name in checks.ORE_FORMS:
        out["ore_extension"] = checks.ore_extension_check(name, depth)
        b3 = b_presentation(3)
        out["derivations"] = {
            d: checks.derivation_descends(b3, catalog_derivation(d))
            for d in ("delta0", "delta1", "delta2", "delta1_typeset", "delta2_typeset")
        }
    if name in ("rho7", "beta7", "alpha3_prime", "alpha3_double_prime"):
        out["typeset_relations"] = checks.typeset_relations_check(name)
    return out


def run_analysis(
    source: FormSource,
    options: Optional[AnalysisOptions] = None,
    progress_cb: Optional[Callable[[int, int, str], None]] = None,
) -> dict:
    """
    Run the full analysis pipeline on one form.

    Args:
        source: the form and where it came from
        options: depths, primes, seed and which stages to run
        progress_cb: Optional callable(step: int, total: int, message: str)

    Returns:
        AnalysisReport dict
    """
    options = options or AnalysisOptions()
    alpha = source.form
    tag = source.label
    total_steps = 5 if options.extras else 4
    warnings: list[str] = []
    watch = Stopwatch()

    def progress(step: int, msg: str):
        logger.info("[%s] Step %d/%d: %s", tag, step, total_steps, msg)
        if progress_cb:
            progress_cb(step, total_steps, msg)

    # ── Step 1: Regularity ───────────────────────────────────────────────
    progress(1, "Checking nondegeneracy and 3-regularity...")
    with watch.stage("regularity"):
        verdict = is_three_regular(alpha)
    if verdict.three_regular and not verdict.nondegenerate:
        raise ReportError("3-regular verdict on a degenerate form")

    # ── Step 2: Lie closure ──────────────────────────────────────────────
    lie = None
    if options.skip_lie:
        progress(2, "Skipping Lie closure")
    else:
        progress(2, "Computing Lie closure and stabilizer...")
        with watch.stage("lie"):
            closure = lie_closure(slot_matrices(alpha))
        lie = {
            "dimension": closure.dimension,
            "so_dimension": closure.so_dimension,
            "equals_so_n": closure.equals_so_n,
            "stabilizer_dimension": closure.stabilizer_dimension,
            "rounds": closure.rounds,
        }

    pres = presentation(alpha, name=tag)
    zero = [i + 1 for i, r in enumerate(pres.relations) if not r]
    if zero:
        warnings.append(f"zero relations dropped: {zero}")

    # ── Step 3: Hilbert series ───────────────────────────────────────────
    hilbert = None
    certificate = {"field": "rational", "primes": [], "rational_degree": options.rational_degree}
    if options.skip_hilbert:
        progress(3, "Skipping Hilbert series")
    else:
        progress(3, f"Computing Hilbert series to degree {options.max_degree}...")
        with watch.stage("hilbert"):
            report = hilbert_series(pres, options.max_degree, options.primes, options.rational_degree)
        hilbert = report.to_dict()
        certificate = report.certificate.to_dict()

    # ── Step 4: Koszul complex ───────────────────────────────────────────
    koszul = None
    if options.skip_koszul:
        progress(4, "Skipping Koszul complex")
    else:
        progress(4, f"Checking Koszul complex exactness to degree {options.koszul_degree}...")
        with watch.stage("koszul"):
            kz = koszul_complex_check(
                alpha, options.koszul_degree, options.primes, options.rational_degree,
                three_regular=verdict.three_regular,
            )
        warnings.extend(kz.warnings)
        koszul = kz.to_dict()
        if kz.field_name == "dual-prime":
            certificate = {"field": "dual-prime", "primes": list(options.primes),
                           "rational_degree": options.rational_degree}
        if hilbert is not None:
            common = min(options.max_degree, options.koszul_degree)
            hilbert_ok = all(hilbert["matches"][: common + 1])
            koszul_ok = kz.exact_up_to >= common
            if hilbert_ok != koszul_ok:
                msg = f"Hilbert match and Koszul exactness disagree up to degree {common}"
                logger.warning("[%s] %s", tag, msg)
                warnings.append(msg)

    # ── Step 5: Extras ───────────────────────────────────────────────────
    extras = None
    if options.extras:
        progress(5, "Running structural checks...")
        with watch.stage("extras"):
            extras = _extra_checks(source, options)

    result = {
        "schema_version": config.SCHEMA_VERSION,
        "form": {
            "source": source.label,
            "name": source.entry.name if source.entry else "",
            "f_label": source.f_label,
            "n": alpha.n,
            "wedge": alpha.wedge_string(),
            "terms": [[i, j, k, format_scalar(c)] for (i, j, k), c in alpha.terms],
            "sha256": hash_form(alpha),
        },
        "config": options.to_dict(),
        "regularity": _regularity_dict(verdict),
        "lie": lie,
        "hilbert": hilbert,
        "koszul": koszul,
        "certificate": certificate,
        "checks": extras,
        "warnings": warnings,
    }
    if options.timings:
        result["timings"] = dict(watch.timings)

    errors = validate(result, named_schema("analysis_report"))
    if errors:
        raise ReportError(f"analysis report violates its schema: {errors[0]}")

    logger.info(
        "[%s] Analysis complete. three_regular=%s (%.3fs)", tag, verdict.three_regular, watch.total()
    )
    return result
