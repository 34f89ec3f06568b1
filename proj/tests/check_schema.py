"""Validates a report.json produced by the CLI against the shipped schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

cli, schema = sys.argv[1], Path(sys.argv[2])
with tempfile.TemporaryDirectory() as out:
    subprocess.run([cli, "validate", "--family", "logistic", "--gamma", "0.5", "-n", "500",
                    "-R", "40", "-k", "5", "-o", out], check=True, capture_output=True)
    report = json.loads((Path(out) / "report.json").read_text())
jsonschema.validate(report, json.loads(schema.read_text()))
print("report.json matches", schema.name)
