from typing import Annotated, Literal

import galois
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

DecoderName = Literal["pw", "recursive", "generic", "gs"]
PatternKind = Literal["random", "subcube", "capped"]

DECODERS_BY_KIND: dict[str, tuple[str, ...]] = {
    "rs": ("gs",),
    "rm": ("pw", "recursive"),
    "prs": ("recursive", "generic", "pw"),
}
DEFAULT_DECODER = {"rs": "gs", "rm": "pw", "prs": "recursive"}


def _check_order(q: int) -> int:
    if q < 2 or not galois.is_prime_power(q):
        raise ValueError(f"q = {q} is not a prime power")
    return q


class RSParams(BaseModel):
    """Pydantic model of a Reed-Solomon code spec file.

    Attributes:
        kind (str): always "rs"
        q (int): field order
        w (int): maximum message degree
        n (int | None): length, q when omitted
        points (list[int] | None): evaluation point encodings, the first n
            field elements when omitted
    """

    model_config = ConfigDict(extra="forbid")

    kind: Literal["rs"] = "rs"
    q: int
    w: int = Field(ge=0)
    n: int | None = None
    points: list[int] | None = None

    @field_validator("q")
    @classmethod
    def check_order(cls, q: int) -> int:
        return _check_order(q)

    @model_validator(mode="after")
    def check_length(self):
        n = self.n if self.n is not None else (len(self.points) if self.points else self.q)
        if self.points is not None and len(self.points) != n:
            raise ValueError(f"{len(self.points)} points given for n = {n}")
        if not self.w < n <= self.q:
            raise ValueError(f"need w < n <= q, got w = {self.w}, n = {n}, q = {self.q}")
        self.n = n
        return self


class RMParams(BaseModel):
    """Pydantic model of a Reed-Muller code spec file.

    Attributes:
        kind (str): always "rm"
        q (int): field order
        ell (int): maximum total degree, at most q
        m (int): number of variables
        n (int | None): length, q^m when omitted
        points (list[list[int]] | None): explicit points, a prefix of the
            lexicographic grid when omitted
        basis (str): GF(q^m) basis used for lifting
    """

    model_config = ConfigDict(extra="forbid")

    kind: Literal["rm"] = "rm"
    q: int
    ell: int = Field(ge=0)
    m: int = Field(ge=1)
    n: int | None = None
    points: list[list[int]] | None = None
    basis: Literal["polynomial", "normal"] = "polynomial"

    @field_validator("q")
    @classmethod
    def check_order(cls, q: int) -> int:
        return _check_order(q)

    @model_validator(mode="after")
    def check_degree(self):
        if self.ell > self.q:
            raise ValueError(f"the lifting decoder needs l <= q, got l = {self.ell}, q = {self.q}")
        n = self.n if self.n is not None else (len(self.points) if self.points else self.q**self.m)
        if not 1 <= n <= self.q**self.m:
            raise ValueError(f"need 1 <= n <= q^m = {self.q**self.m}, got n = {n}")
        if self.points is not None and (
            len(self.points) != n or any(len(p) != self.m for p in self.points)
        ):
            raise ValueError(f"points must be {n} vectors of {self.m} coordinates")
        self.n = n
        return self

    @property
    def full_grid(self) -> bool:
        return self.points is None and self.n == self.q**self.m


class PRSParams(BaseModel):
    """Pydantic model of a Product-Reed-Solomon code spec file.

    Attributes:
        kind (str): always "prs"
        q (int): field order
        m (int): number of axes
        k (list[int]): per-axis dimensions
    """

    model_config = ConfigDict(extra="forbid")

    kind: Literal["prs"] = "prs"
    q: int
    m: int = Field(ge=1)
    k: list[int]

    @field_validator("q")
    @classmethod
    def check_order(cls, q: int) -> int:
        return _check_order(q)

    @model_validator(mode="after")
    def check_dimensions(self):
        if len(self.k) != self.m:
            raise ValueError(f"k needs {self.m} entries, got {len(self.k)}")
        if any(not 1 <= k <= self.q for k in self.k):
            raise ValueError(f"every k_i must lie in [1, {self.q}], got {self.k}")
        return self


CodeParams = Annotated[RSParams | RMParams | PRSParams, Field(discriminator="kind")]


class RunConfig(BaseModel):
    """Pydantic model of one command-line invocation.

    Attributes:
        subcommand (str): encode, decode, simulate, analyze or field-info
        code (CodeParams | None): code spec, from a file or inline flags
        input (str | None): input file
        output (str | None): output file, standard output when omitted
        seed (int): random seed
        decoder (DecoderName | None): decoder selector
        tuple_rule (str): dimension-tuple rule of the recursive RM decoder
        trials (int): trials per weight
        weights (tuple[int, int] | None): inclusive weight range
        pattern (PatternKind): error pattern class
        cap (int | None): per-line error cap for capped patterns
        sides (list[int] | None): sub-cube side lengths
    """

    subcommand: Literal["encode", "decode", "simulate", "analyze", "field-info"]
    code: CodeParams | None = None
    input: str | None = None
    output: str | None = None
    seed: int = 0
    decoder: DecoderName | None = None
    tuple_rule: Literal["literal", "shifted"] = "literal"
    trials: int = Field(default=100, ge=0)
    weights: tuple[int, int] | None = None
    pattern: PatternKind = "random"
    cap: int | None = Field(default=None, ge=0)
    sides: list[int] | None = None

    @model_validator(mode="after")
    def check_decoder(self):
        if self.decoder is None or self.code is None:
            return self
        allowed = DECODERS_BY_KIND[self.code.kind]
        if self.decoder not in allowed:
            raise ValueError(
                f"decoder {self.decoder!r} cannot decode {self.code.kind} codes; "
                f"choose one of {', '.join(allowed)}"
            )
        if self.decoder == "recursive" and isinstance(self.code, RMParams) and not self.code.full_grid:
            raise ValueError("the recursive decoder needs a full-grid Reed-Muller code (n = q^m)")
        return self

    @model_validator(mode="after")
    def check_pattern(self):
        if self.weights is not None and not 0 <= self.weights[0] <= self.weights[1]:
            raise ValueError(f"invalid weight range {self.weights}")
        if self.pattern == "capped" and self.cap is None:
            raise ValueError("capped patterns need --cap")
        if self.pattern == "subcube" and not self.sides:
            raise ValueError("subcube patterns need --sides")
        return self


class ErrorPattern(BaseModel):
    """Pydantic model of an error pattern over a flat row-major word.

    Attributes:
        kind (PatternKind): how the pattern was drawn
        positions (list[int]): distinct flat coordinates
        values (list[int]): nonzero error symbol encodings
    """

    kind: PatternKind = "random"
    positions: list[int]
    values: list[int]

    @model_validator(mode="after")
    def check_consistent(self):
        if len(self.positions) != len(self.values):
            raise ValueError("positions and values must have the same length")
        if len(set(self.positions)) != len(self.positions):
            raise ValueError("positions must be distinct")
        if any(v <= 0 for v in self.values):
            raise ValueError("error values must be nonzero")
        return self

    @property
    def weight(self) -> int:
        return len(self.positions)


class TrialReport(BaseModel):
    """Pydantic model of one simulation trial.

    Attributes:
        trial (int): trial index
        seed (int): seed the trial's generator was derived from
        code (str): code parameters
        decoder (DecoderName): decoder used
        pattern (PatternKind): pattern class
        weight (int): error weight
        success (bool): transmitted codeword recovered
        residual (int): distance between decoded and transmitted word
        wall_time (float): decode time in seconds, not serialised
    """

    trial: int
    seed: int
    code: str
    decoder: DecoderName
    pattern: PatternKind
    weight: int
    success: bool
    residual: int
    wall_time: float = Field(default=0.0, exclude=True)


class TrialSummary(BaseModel):
    """Pydantic model of aggregated trials.

    Attributes:
        trials (int): number of trials
        successes (int): successful trials
        success_rate (float): successes / trials, 1.0 for zero trials
        mean_residual (float): mean residual distance
    """

    trials: int
    successes: int
    success_rate: float
    mean_residual: float


class RadiusReport(BaseModel):
    """Pydantic model comparing decoding radii at one rate point.

    Attributes:
        q (int): field order
        m (int): number of axes
        k (list[int]): per-axis dimensions
        ell (int): total degree of the containing RM code, sum(k_i - 1)
        radius_pw_rs (float): 1 - sqrt(l q^(m-1) / n)
        radius_pw_ag (float): 1 - sqrt(l (q+1)^(m-1) / n)
        radius_recursive (float): prod(1 - sqrt(rho_i))
        radius_prs_pw (float): max(0, 1 - sqrt(sum rho_i))
        t_pw_rs (int): integer threshold of the lifting decoder
        t_pw_ag (int): integer threshold of the algebraic-geometry decoder
        weight_recursive (int): floor(radius_recursive * n)
        dominant (str): recursive, pw or tie
    """

    q: int
    m: int
    k: list[int]
    ell: int
    radius_pw_rs: float = Field(ge=0.0, le=1.0)
    radius_pw_ag: float = Field(ge=0.0, le=1.0)
    radius_recursive: float = Field(ge=0.0, le=1.0)
    radius_prs_pw: float = Field(ge=0.0, le=1.0)
    t_pw_rs: int
    t_pw_ag: int
    weight_recursive: int
    dominant: Literal["recursive", "pw", "tie"]


class DominanceReport(BaseModel):
    """Pydantic model of the lifting vs algebraic-geometry radius scan.

    Attributes:
        q_max (int): largest q scanned
        m_max (int): largest m scanned
        checked (int): number of (q, m, l) tuples
        strict (int): tuples where the lifting radius is strictly larger
        violations (list[tuple[int, int, int]]): tuples where it is smaller
    """

    q_max: int
    m_max: int
    checked: int
    strict: int
    violations: list[tuple[int, int, int]]


class ConverseWitness(BaseModel):
    """Pydantic model of a sub-cube pattern the recursive decoder fails on.

    Attributes:
        q (int): field order
        m (int): number of axes
        k (list[int]): per-axis dimensions
        seed (int): search seed
        corner (list[int]): sub-cube corner
        sides (list[int]): sub-cube side lengths
        pattern (ErrorPattern): the errors
        transmitted (list[int]): transmitted codeword, flat
        decoded (list[int]): decoder output, flat
    """

    q: int
    m: int
    k: list[int]
    seed: int
    corner: list[int]
    sides: list[int]
    pattern: ErrorPattern
    transmitted: list[int]
    decoded: list[int]

    @property
    def failed(self) -> bool:
        return self.transmitted != self.decoded


class GuaranteeReport(BaseModel):
    """Pydantic model of capped and unconstrained trials at one error weight.

    The capped run keeps every axis-0 line under the line decoder's radius and
    is expected to succeed every time. The unconstrained run uses the same
    weight with no per-line limit and is reported as observed.

    Attributes:
        code (str): code label
        decoder (str): decoder selector
        weight (int): error weight of every trial
        cap (int): per-line cap of the capped run
        capped (TrialSummary): trials with the per-line cap
        unconstrained (TrialSummary): trials without it
    """

    code: str
    decoder: str
    weight: int = Field(ge=0)
    cap: int = Field(ge=0)
    capped: TrialSummary
    unconstrained: TrialSummary
