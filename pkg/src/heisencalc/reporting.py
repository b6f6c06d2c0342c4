"""Small record types shared by the verification entry points."""

from dataclasses import dataclass, field


@dataclass
class VerifyRecord:
    """Outcome of a single identity check: id, pass/fail, leftover terms."""

    id: str
    status: str
    residual_terms: str | None = None

    def as_json(self):
        out = {"id": self.id, "status": self.status}
        if self.residual_terms is not None:
            out["residual_terms"] = self.residual_terms
        return out


@dataclass
class K0Record:
    """Outcome of an operator-matrix check with its parameter settings."""

    check: str
    parameters: dict = field(default_factory=dict)
    status: str = "pass"
    residual: str | None = None

    def as_json(self):
        out = {"check": self.check, "parameters": self.parameters, "status": self.status}
        if self.residual is not None:
            out["residual"] = self.residual
        return out


def all_pass(records):
    return all(r.status == "pass" for r in records)
