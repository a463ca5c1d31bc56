"""Exception hierarchy.

``DataError`` covers malformed inputs (bad edges, files, parameters) and
``AlgorithmError`` covers runs that cannot proceed on valid data.  The CLI
maps the two families to distinct exit codes.
"""


class ClusterPursuitError(Exception):
    pass


class DataError(ClusterPursuitError, ValueError):
    pass


class AlgorithmError(ClusterPursuitError):
    pass


class DuplicateEdgeError(DataError):
    pass


class SelfLoopError(DataError):
    pass


class NonPositiveWeightError(DataError):
    pass


class IndexOutOfRangeError(DataError, IndexError):
    pass


class DimensionMismatchError(DataError):
    pass


class BadSparsityError(DataError):
    pass


class BadParametersError(DataError):
    pass


class TooLargeError(DataError):
    pass


class EmptySupportError(AlgorithmError):
    pass


class EmptyCutError(AlgorithmError):
    pass


class FullCutError(AlgorithmError):
    pass


class EmptySeedError(AlgorithmError):
    pass


class ThresholdTooLargeError(AlgorithmError):
    pass


class SeedOutsideResidualGraphError(AlgorithmError):
    pass


class DisconnectedError(AlgorithmError):
    pass
