"""
Text formats: ``COMPLEX v1`` and ``PRISMATOID v1`` files, flip trace lines
and key=value report blocks.
"""
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from .complex_core import SimplicialComplex, build_complex, face_key
from .exceptions import MixedDimension, ParseError
from .flips import Flip
from .prismatoid import Prismatoid, validate_prismatoid

logger = logging.getLogger(__name__)

COMPLEX_HEADER = "COMPLEX v1"
PRISMATOID_HEADER = "PRISMATOID v1"


@dataclass
class ParsedFile:
    header: str
    dim: int = None
    base_plus: list = None
    base_minus: list = None
    facets: list = field(default_factory=list)


def _content_lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def read_text(text):
    """Tokenize a COMPLEX/PRISMATOID file, keeping facets in file order."""
    parsed = None
    seen = set()
    for number, line in _content_lines(text):
        if parsed is None:
            if line not in (COMPLEX_HEADER, PRISMATOID_HEADER):
                raise ParseError(f"unknown header {line!r}", line=number)
            parsed = ParsedFile(header=line)
            continue
        keyword, *tokens = line.split()
        if keyword == "dim":
            if parsed.dim is not None or len(tokens) != 1 or not tokens[0].lstrip("-").isdigit():
                raise ParseError("expected a single 'dim <k>' line", line=number)
            parsed.dim = int(tokens[0])
        elif keyword in ("base+", "base-") and parsed.header == PRISMATOID_HEADER:
            attr = "base_plus" if keyword == "base+" else "base_minus"
            if getattr(parsed, attr) is not None:
                raise ParseError(f"repeated {keyword} line", line=number)
            setattr(parsed, attr, tokens)
        elif keyword == "facet":
            if parsed.dim is None:
                raise ParseError("facet before dim", line=number)
            facet = frozenset(tokens)
            if len(facet) != len(tokens):
                raise ParseError("repeated vertex in facet", line=number)
            if len(facet) != parsed.dim + 1:
                raise MixedDimension(
                    f"line {number}: facet has {len(facet)} vertices, expected {parsed.dim + 1}"
                )
            if facet in seen:
                logger.warning("line %d: duplicate facet %s ignored", number, " ".join(face_key(facet)))
                continue
            seen.add(facet)
            parsed.facets.append(facet)
        else:
            raise ParseError(f"unexpected line {line!r}", line=number)
    if parsed is None:
        raise ParseError("empty file")
    if parsed.dim is None:
        raise ParseError("missing dim line")
    if parsed.header == PRISMATOID_HEADER and (parsed.base_plus is None or parsed.base_minus is None):
        raise ParseError("missing base+ or base- line")
    return parsed


def parse_complex_text(text):
    parsed = read_text(text)
    return build_complex(parsed.facets)


def parse_prismatoid_text(text):
    parsed = read_text(text)
    if parsed.header != PRISMATOID_HEADER:
        raise ParseError(f"expected {PRISMATOID_HEADER}")
    return validate_prismatoid(build_complex(parsed.facets), parsed.base_plus, parsed.base_minus)


def parse_text(text):
    """A validated prismatoid or a complex, depending on the header."""
    parsed = read_text(text)
    complex_ = build_complex(parsed.facets)
    if parsed.header == PRISMATOID_HEADER:
        return validate_prismatoid(complex_, parsed.base_plus, parsed.base_minus)
    return complex_


def parse_file(path):
    return parse_text(Path(path).read_text())


def facet_order(path):
    """Facets of a file in the order they are listed."""
    return read_text(Path(path).read_text()).facets


def serialize_complex(complex_):
    lines = [COMPLEX_HEADER, f"dim {complex_.dim}"]
    lines += ["facet " + " ".join(key) for key in sorted(face_key(f) for f in complex_.facets)]
    return "\n".join(lines) + "\n"


def serialize_prismatoid(prismatoid):
    lines = [
        PRISMATOID_HEADER,
        f"dim {prismatoid.complex.dim}",
        "base+ " + " ".join(sorted(prismatoid.base_plus)),
        "base- " + " ".join(sorted(prismatoid.base_minus)),
    ]
    lines += ["facet " + " ".join(key) for key in sorted(face_key(f) for f in prismatoid.facets)]
    return "\n".join(lines) + "\n"


def serialize(value):
    if isinstance(value, Prismatoid):
        return serialize_prismatoid(value)
    if isinstance(value, SimplicialComplex):
        return serialize_complex(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _face_field(value, number):
    if value in ("", "-"):
        raise ParseError("empty face in flip line", line=number)
    return frozenset(value.split(","))


def parse_flip_line(line, number=None):
    """Parse ``flip <kind> f=<toks> l=<toks> v=<tok|-> support=<toks>``."""
    parts = line.split()
    if len(parts) != 6 or parts[0] != "flip":
        raise ParseError(f"malformed flip line {line!r}", line=number)
    kind = parts[1]
    fields = {}
    for part in parts[2:]:
        key, sep, value = part.partition("=")
        if not sep:
            raise ParseError(f"malformed field {part!r}", line=number)
        fields[key] = value
    if set(fields) != {"f", "l", "v", "support"}:
        raise ParseError("flip line needs f, l, v and support fields", line=number)
    flip = Flip(
        f=_face_field(fields["f"], number),
        l=_face_field(fields["l"], number),
        v=None if fields["v"] == "-" else fields["v"],
    )
    if flip.kind != kind:
        raise ParseError(f"kind {kind} does not match the flip fields", line=number)
    if flip.support != _face_field(fields["support"], number):
        raise ParseError("support does not equal f, l and v together", line=number)
    return flip


def format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return ",".join(format_value(v) for v in value)
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if value is None:
        return "-"
    return str(value)


def format_report(values):
    """Machine-readable ``key=value`` block."""
    return "\n".join(f"{key}={format_value(value)}" for key, value in values.items())


def format_sphere_certificate(certificate):
    lines = ["# strong d-step certificate", "# step chosen n dim width -> n dim width apexes contraction labels shelled"]
    for step in certificate.steps:
        lines.append(
            f"step {step.step} {step.chosen} "
            f"{format_value(step.before)} -> {format_value(step.after)} "
            f"apexes={format_value(step.apexes)} contraction={step.contraction} "
            f"labels={format_value(step.labels)} shelled={format_value(step.shelling_verdict)}"
        )
    lines.append(
        format_report(
            {
                "N": certificate.vertex_count,
                "D": certificate.facet_size,
                "facets": certificate.sphere.facet_count,
                "widths": certificate.widths,
                "distance": certificate.distance,
                "diameter": certificate.diameter,
                "non_hirsch": certificate.non_hirsch,
            }
        )
    )
    return "\n".join(lines) + "\n"
