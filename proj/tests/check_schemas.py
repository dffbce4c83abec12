# Copyright 2026 The nnr Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs the nnr CLI and validates every JSON output against docs/schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
import referencing

GENERAL = "0.5,0.3,0.1,0.5,0.3,0.4,0.5,0.1,0.3,0.2"


def load_registry(schema_dir):
    resources = []
    for path in sorted(schema_dir.glob("*.json")):
        contents = json.loads(path.read_text())
        resources.append((path.name, referencing.Resource.from_contents(contents)))
    return referencing.Registry().with_resources(resources)


def main():
    cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    registry = load_registry(schema_dir)

    def check(document, schema_name):
        schema = registry.contents(schema_name)
        validator = jsonschema.Draft202012Validator(schema, registry=registry)
        validator.validate(document)
        print(f"ok {schema_name}")

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)

        def run(*args):
            subprocess.run([cli, *map(str, args)], check=True)

        def load(name):
            return json.loads((tmp / name).read_text())

        run("solve-ad", "--p1", "0.5", "--p2", "0.7", "--out", tmp / "cf.json",
            "--channel-out", tmp / "ad_channel.json")
        check(load("cf.json"), "code_solution.json")
        check(load("ad_channel.json"), "channel.json")

        run("solve-ad", "--p1", "0.3", "--p2", "0.6", "--scan", "--out", tmp / "scan.json")
        check(load("scan.json"), "code_solution_list.json")

        run("solve-general", "--a", GENERAL, "--grid", "100", "--out", tmp / "general.json",
            "--channel-out", tmp / "general_channel.json")
        check(load("general.json"), "code_solution_list.json")
        check(load("general_channel.json"), "channel.json")

        identity = [[[1.0 if r == c else 0.0, 0.0] for c in range(4)] for r in range(4)]
        zero = [[[0.0, 0.0]] * 4 for _ in range(4)]
        raw = {"kind": "raw", "a1": identity, "a2": zero}
        check(raw, "channel.json")
        (tmp / "raw.json").write_text(json.dumps(raw))
        run("solve-raw", "--channel", tmp / "raw.json", "--grid", "5", "--out", tmp / "raw_out.json")
        check(load("raw_out.json"), "code_solution_list.json")

        run("verify", "--channel", tmp / "ad_channel.json", "--p2", tmp / "cf.json", "--out", tmp / "kl.json")
        check(load("kl.json"), "kl_report.json")

        # Negative control: a malformed document must be rejected.
        try:
            check({"lambda11": 0.5}, "code_solution.json")
        except jsonschema.ValidationError:
            print("ok negative control rejected")
        else:
            raise SystemExit("schema accepted an incomplete solution")


if __name__ == "__main__":
    main()
