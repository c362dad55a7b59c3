#!/usr/bin/env python3
"""Runs the CLI against the sample inputs and validates the JSON reports
against the shipped schema, checking exit codes and byte-determinism."""

import json
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, schema_path, samples = sys.argv[1], sys.argv[2], sys.argv[3]
    with open(schema_path, encoding="utf-8") as fh:
        schema = json.load(fh)

    cases = [
        (["cycles", "--lang", "sm", f"{samples}/cyclic_machine.sm"], 1),
        (["cycles", "--lang", "sm", f"{samples}/acyclic_machine.sm"], 0),
        (["cycles", "--lang", "java-types", f"{samples}/cyclic_packages"], 1),
        (["cycles", "--lang", "java-packages", f"{samples}/cyclic_packages"], 1),
        (["cycles", "--lang", "java-types", f"{samples}/field_shadowing.java"], 0),
        (["shadowing", "--lang", "minijava", f"{samples}/field_shadowing.java"], 1),
        (["shadowing", "--lang", "mlite", f"{samples}/shadowed_constant.mo"], 1),
    ]

    for args, expected_exit in cases:
        cmd = [binary] + args + ["--format", "json"]
        outputs = []
        for _ in range(2):
            proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
            assert proc.returncode == expected_exit, (
                f"{args}: exit {proc.returncode}, expected {expected_exit}; "
                f"stderr: {proc.stderr}"
            )
            outputs.append(proc.stdout)
        assert outputs[0] == outputs[1], f"non-deterministic output for {args}"
        jsonschema.validate(json.loads(outputs[0]), schema)
        print(f"ok: {' '.join(args)}")

    print(f"validated {len(cases)} reports against the schema")
    return 0


if __name__ == "__main__":
    sys.exit(main())
