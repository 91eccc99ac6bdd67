from fractions import Fraction
from typing import Any, NamedTuple, TypeAlias

# Entries are -1, 0, +1; tuple order gives the canonical "-" < "0" < "+" ordering.
SignVector: TypeAlias = tuple[int, ...]

SIGN_CHARS = {-1: "-", 0: "0", 1: "+"}


def sign_string(signs: SignVector) -> str:
    return "".join(SIGN_CHARS[s] for s in signs)


def parse_sign_string(text: str) -> SignVector:
    lookup = {c: s for s, c in SIGN_CHARS.items()}
    try:
        return tuple(lookup[c] for c in text)
    except KeyError as e:
        raise ParameterError(f"invalid sign character {e.args[0]!r} in {text!r}") from None


class VecconfError(Exception):
    """Base class of every error raised on purpose by the library."""


class DimensionError(VecconfError):
    pass


class ParameterError(VecconfError):
    pass


class GeneralPositionError(VecconfError):

    def __init__(self, subset: tuple[int, ...], message: str | None = None):
        self.subset = subset
        super().__init__(message or f"vectors {list(subset)} are linearly dependent")

    def __reduce__(self):
        return self.__class__, (self.subset, str(self))


class DegeneratePolynomialError(VecconfError):
    pass


class BoundaryRootError(VecconfError):
    pass


class EmptyDualError(VecconfError):
    pass


class BudgetExceededError(VecconfError):
    pass


class InconsistentInputError(VecconfError):
    pass


class GenericityError(VecconfError):

    def __init__(self, subsets: list[tuple[int, ...]], message: str):
        self.subsets = subsets
        super().__init__(message)

    def __reduce__(self):
        return self.__class__, (self.subsets, str(self))


class ConfigFormatError(VecconfError):

    def __init__(self, location: str, message: str):
        self.location = location
        self.message = message
        super().__init__(f"{location}: {message}")

    def __reduce__(self):
        return self.__class__, (self.location, self.message)


class RelationReport(NamedTuple):
    name: str
    holds: bool
    witness: str | None = None

    def to_dict(self) -> dict:
        return {"relation": self.name, "holds": self.holds, "witness": self.witness}


class MutationEvent(NamedTuple):
    subset: tuple[int, ...]  # 1-based column indices
    interval: tuple[Fraction, Fraction]
    type: tuple[int, int]
    flip: str  # "+-" or "-+": sign of det_R before and after

    def to_dict(self) -> dict:
        return {
            "R": list(self.subset),
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "type": list(self.type),
            "flip": self.flip,
        }


class MotionPath(NamedTuple):
    start: Any
    end: Any
    events: list[MutationEvent]
    samples: list[Fraction]  # gap sample point after each event


class RichPath(NamedTuple):
    configs: list[Any]
    events: list[MutationEvent]
    stage_count: int


class SpanReport(NamedTuple):
    n: int
    r: int
    mode: str
    target: str
    samples_used: int
    achieved_rank: int
    theoretical_dim: int
    basis_seeds: list[str]
    reached: bool
    structure_holds: bool

    def to_dict(self) -> dict:
        return self._asdict()
