"""Exception hierarchy shared by all hexstruct modules."""


class HexStructError(Exception):
    pass


class MeshError(HexStructError):
    """Input connectivity cannot form a valid volumetric mesh."""


class NonManifoldFace(MeshError):
    pass


class OpenShell(MeshError):
    pass


class DanglingIndex(MeshError):
    pass


class UnsupportedRecipe(HexStructError):
    pass


class ParseError(HexStructError):
    pass


class MalformedHeader(ParseError):
    pass


class TruncatedStream(ParseError):
    pass


class MalformedSection(ParseError):
    pass


class UnknownKeywordInStrictMode(ParseError):
    pass


class UnsupportedCellType(HexStructError):
    pass


class DanglingReference(HexStructError):
    pass


class InternalError(HexStructError):
    """An invariant that must hold on any valid mesh was violated."""
