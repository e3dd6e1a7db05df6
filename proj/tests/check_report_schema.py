# Copyright 2026 The lpmorrey Authors
# SPDX-License-Identifier: Apache-2.0
"""Run a small verify suite and validate its report against the JSON Schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    with tempfile.TemporaryDirectory() as tmp:
        report = Path(tmp) / "report.json"
        run = subprocess.run([cli, "verify", "--suite", "all", "--n", "1", "--N", "512", "--out", str(report)],
                             capture_output=True, text=True, check=False)
        if not report.exists():
            print(run.stdout, run.stderr)
            return 1
        data = json.loads(report.read_text())
    jsonschema.validate(data, schema)
    # a record missing a required field must be rejected
    broken = json.loads(json.dumps(data))
    del broken["checks"][0]["pass"]
    try:
        jsonschema.validate(broken, schema)
    except jsonschema.ValidationError:
        print(f"{len(data['checks'])} records validate")
        return 0
    print("schema accepted a record without 'pass'")
    return 1


if __name__ == "__main__":
    sys.exit(main())
