"""Manifest written next to a generated task-set corpus."""

from dataclasses import dataclass, field
from fractions import Fraction
from xml.etree.ElementTree import ParseError

from xsdata.exceptions import ParserError
from xsdata.formats.dataclass.parsers import XmlParser
from xsdata.formats.dataclass.parsers.config import ParserConfig
from xsdata.formats.dataclass.parsers.handlers import XmlEventHandler
from xsdata.formats.dataclass.serializers import XmlSerializer
from xsdata.formats.dataclass.serializers.config import SerializerConfig

from .errors import ManifestError

MANIFEST_NAME = "manifest.xml"


@dataclass(kw_only=True)
class Params:
    """Generation parameters."""

    count: int = field(metadata={"type": "Attribute"})
    tmax: int = field(metadata={"type": "Attribute"})
    m: int = field(metadata={"type": "Attribute"})
    n_min: int = field(metadata={"name": "nMin", "type": "Attribute"})
    n_max: int = field(metadata={"name": "nMax", "type": "Attribute"})
    seed: int = field(metadata={"type": "Attribute"})
    wcet_mean_factor: float = field(
        metadata={"name": "wcetMeanFactor", "type": "Attribute"}
    )
    rounding: str = field(metadata={"type": "Attribute"})
    rng: str = field(metadata={"type": "Attribute"})
    attempts: int = field(metadata={"type": "Attribute"})


@dataclass(kw_only=True)
class TaskSetEntry:
    """One accepted task set."""

    id: int = field(metadata={"type": "Attribute"})
    file: str = field(metadata={"type": "Attribute"})
    n: int = field(metadata={"type": "Attribute"})

    # Exact, as "p/q"
    utilization: str = field(metadata={"type": "Attribute"})

    class Meta:
        name = "TaskSet"


@dataclass(kw_only=True)
class Manifest:
    """Root element of the manifest."""

    version: str = field(metadata={"type": "Attribute"})
    params: Params = field(metadata={"name": "Params"})
    task_sets: list[TaskSetEntry] = field(
        default_factory=list,
        metadata={"name": "TaskSet", "type": "Element"},
    )


def format_fraction(value: Fraction) -> str:
    """Render a fraction as "p/q", even when q is 1."""
    return f"{value.numerator}/{value.denominator}"


def render_manifest(manifest: Manifest) -> str:
    """Serialize a manifest to XML."""
    serializer = XmlSerializer(
        config=SerializerConfig(xml_declaration=False),
    )
    return serializer.render(manifest)


def parse_manifest(text: str) -> Manifest:
    """Parse a manifest from XML.

    Raises:
        ManifestError: The text is not a valid manifest.
    """
    parser = XmlParser(
        config=ParserConfig(fail_on_unknown_properties=False),
        handler=XmlEventHandler,
    )
    try:
        return parser.from_string(text, Manifest)
    except (ParserError, ParseError) as exc:
        raise ManifestError(f"Invalid manifest: {exc}") from exc
