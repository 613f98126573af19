"""Typed errors shared across the package.

Every failure a caller can act on is one of these; anything else escaping
the public API is a bug.
"""


class SceneBeliefError(Exception):
    """Base class; ``code`` is the machine-readable tag used on the wire."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class MalformedBundle(SceneBeliefError):
    code = "malformed_bundle"


class InvalidGeometry(SceneBeliefError):
    code = "invalid_geometry"


class DisconnectedGraph(SceneBeliefError):
    code = "disconnected_graph"


class UnknownArea(SceneBeliefError):
    code = "unknown_area"


class UnknownWaypoint(SceneBeliefError):
    code = "unknown_waypoint"


class OutOfBounds(SceneBeliefError):
    code = "out_of_bounds"


class EmptyInsight(SceneBeliefError):
    code = "empty_insight"


class InsightExhausted(SceneBeliefError):
    code = "insight_exhausted"


class InsufficientCandidates(SceneBeliefError):
    code = "insufficient_candidates"


class MalformedPayload(SceneBeliefError):
    code = "malformed_payload"


class UnknownSession(SceneBeliefError):
    code = "unknown_session"


class UnknownTruth(SceneBeliefError):
    code = "unknown_truth"


class UnknownScene(SceneBeliefError):
    code = "unknown_scene"


class SessionConflict(SceneBeliefError):
    """Write against a submitted (immutable) session."""

    code = "session_conflict"


class ValidationFailure(SceneBeliefError):
    code = "validation_failure"
