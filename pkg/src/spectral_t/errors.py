"""Exception hierarchy with machine-readable codes.

Every error carries ``code`` (the class name) and ``exit_code`` so the CLI can
map failures onto its exit-code contract without a lookup table.
"""

from __future__ import annotations


class SpectralTError(Exception):
    exit_code = 3

    @property
    def code(self) -> str:
        return type(self).__name__


class InputError(SpectralTError, ValueError):
    """Malformed or inconsistent input (exit code 3)."""

    exit_code = 3


class HypothesisError(SpectralTError):
    """Input is well formed but violates a hypothesis of the criterion (exit code 2)."""

    exit_code = 2


# complex_core
class DuplicateVertex(InputError): ...
class UnknownVertex(InputError): ...
class BadTypeLabel(InputError): ...
class WrongSimplexSize(InputError): ...
class TypeClash(InputError): ...
class MissingType(InputError): ...
class OrphanVertex(InputError): ...
class SimplexNotInComplex(InputError): ...
class DimensionTooLow(HypothesisError): ...
class NotGalleryConnected(HypothesisError): ...


# spectra
class EmptyGraph(InputError): ...
class IsolatedVertex(InputError): ...
class MalformedGraph(InputError): ...
class NotBipartite(HypothesisError): ...
class Disconnected(HypothesisError): ...


# hilbert_geometry
class DimensionMismatch(InputError): ...
class NotPositiveDefinite(HypothesisError): ...


# criterion
class DisconnectedLink(HypothesisError): ...
class DegenerateLink(HypothesisError): ...
class IncompleteTable(InputError): ...
class NonPositiveLambda(InputError): ...


# equivariant_verify
class NotSimplicial(InputError): ...
class ClosureCapExceeded(InputError): ...
class NotTypePreserving(HypothesisError): ...
class NotARepresentation(InputError): ...
class BadTypeSet(InputError): ...
class TableMismatch(InputError): ...
class NotUnitVector(InputError): ...
class KEmpty(HypothesisError): ...


# generators
class BadSizes(InputError): ...
class UnsupportedQ(InputError): ...
class OddLength(InputError): ...
class UnknownFamily(InputError): ...
class ConnectivityCapExceeded(SpectralTError): ...


# cli / file formats
class FormatError(InputError): ...
