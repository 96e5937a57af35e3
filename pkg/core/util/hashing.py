"""Form digests recorded in every report."""
import hashlib


def canonical_form_text(form) -> str:
    """'n;i,j,k=c;...' over the stored (sorted, nonzero) terms."""
    body = ";".join(f"{i},{j},{k}={c}" for (i, j, k), c in form.terms)
    return f"{form.n};{body}"


def hash_form(form) -> str:
    return hashlib.sha256(canonical_form_text(form).encode("utf-8")).hexdigest()
