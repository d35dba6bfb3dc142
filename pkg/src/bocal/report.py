"""Report documents: canonical JSON plus a human-readable rendering.

Re-running the same command with the same seed produces byte-identical
output; nothing time- or machine-dependent ever enters a report.
"""

from __future__ import annotations

import hashlib
import json

SCHEMA = "bocal-report/1"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()[:16]


class ReportDocument:
    def __init__(self, seed: int):
        self.seed = seed
        self.runs = []

    def add_run(self, command, inputs, outputs, verdicts, certificates=None):
        self.runs.append(
            {
                "command": command,
                "inputs_digest": digest(inputs),
                "outputs": outputs,
                "verdicts": verdicts,
                "certificates": certificates or [],
            }
        )

    @property
    def all_pass(self) -> bool:
        return all(
            all(bool(v) for v in run["verdicts"].values()) for run in self.runs
        )

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "seed": self.seed, "runs": self.runs}

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def render_text(self) -> str:
        lines = [f"schema {SCHEMA}   seed {self.seed}"]
        for run in self.runs:
            lines.append("")
            lines.append(f"== {run['command']}  [inputs {run['inputs_digest']}]")
            for key, val in run["outputs"].items():
                lines.append(f"   {key}: {_render_value(val)}")
            for key, val in run["verdicts"].items():
                mark = "PASS" if val else "FAIL"
                lines.append(f"   [{mark}] {key}")
        lines.append("")
        lines.append("ALL PASS" if self.all_pass else "FAILURES PRESENT")
        return "\n".join(lines)


def _render_value(val):
    if isinstance(val, (dict, list)):
        return canonical_json(val)
    return str(val)


def serialize_chain_certificate(cert) -> dict:
    """Flatten an exact chain so third-party checkers can re-verify it."""
    def mat_strings(m):
        return m.to_strings()

    return {
        "target": {"dim": cert.target.dim, "dim_vector": list(cert.target.dim_vector())},
        "terms": [
            {"dim": t.dim, "dim_vector": list(t.dim_vector()), "label": t.label}
            for t in cert.terms
        ],
        "maps": [mat_strings(h.matrix) for h in cert.maps],
        "claims": [
            {
                "term": c.term_index,
                "tag": c.tag,
                "pieces": list(c.piece_names),
                "iso": mat_strings(c.iso.matrix),
                "verified": c.verified,
            }
            for c in cert.claims
        ],
        "meta": {k: v for k, v in cert.meta.items() if isinstance(v, (str, int, list, dict))},
    }
