from .core import (
    apply,
    apply_scalar,
    component_depends_on,
    diagonal,
    from_array,
    from_entries,
    jacobian,
    monomial_form,
    principal_sub_tensor,
    restrict_form,
    zeros,
)

__all__ = [
    "apply",
    "apply_scalar",
    "component_depends_on",
    "diagonal",
    "from_array",
    "from_entries",
    "jacobian",
    "monomial_form",
    "principal_sub_tensor",
    "restrict_form",
    "zeros",
]
