"""Report dictionaries shared by the management commands and the API."""
import math

from .complex_core import f_vector, format_face
from .prismatoid import (
    certify_non_dstep,
    excess,
    find_layer_monotone_shelling,
    incidence_pattern,
    layer_vector,
)


def _number(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def stats_report(prismatoid):
    value = prismatoid.width
    return {
        "dim": prismatoid.complex.dim,
        "d": prismatoid.d,
        "vertices": prismatoid.vertex_count,
        "facets": prismatoid.facet_count,
        "f_vector": list(f_vector(prismatoid.complex)),
        "layers": list(layer_vector(prismatoid)),
        "width": _number(value),
        "excess": str(excess(prismatoid)) if value != math.inf else "inf",
        "non_dstep": value > prismatoid.d,
    }


def pattern_report(prismatoid):
    pattern = incidence_pattern(prismatoid)
    return {
        "nodes": pattern.graph.number_of_nodes(),
        "arcs": [f"{a}->{b}" for a, b in pattern.arcs(reduced=False)],
        "reduced_nodes": pattern.reduced.number_of_nodes(),
        "reduced_arcs": [f"{a}->{b}" for a, b in pattern.arcs()],
        "two_cycles": [f"{a}<->{b}" for a, b in pattern.two_cycles],
    }


def certificate_report(prismatoid):
    certificate = certify_non_dstep(prismatoid)
    return {
        "certificate": certificate.kind,
        "width": _number(certificate.width),
        "d": certificate.d,
        "non_dstep": certificate.non_dstep,
    }


def shelling_report(report):
    if report is None:
        return {"shelling": False}
    return {
        "shelling": report.verdict,
        "direction": report.direction,
        "failed_step": report.failed_step,
        "ridge_counts": list(report.ridge_counts),
    }


def layer_shelling_report(prismatoid, node_limit=None):
    report = find_layer_monotone_shelling(prismatoid, node_limit)
    values = shelling_report(report)
    if report is not None:
        values["order"] = [format_face(f) for f in report.order]
    return values
