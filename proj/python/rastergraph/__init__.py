"""RDF graphs with vector geometries and raster coverages, queried with a SPARQL subset."""

from ._core import *  # noqa: F401,F403
from ._core import Raster, Workspace, Error, ParseError, ValidationError, DomainError

__all__ = [name for name in dir() if not name.startswith("_")]
