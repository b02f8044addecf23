"""
Descriptor files and the command line
=====================================

Manifolds can be described in JSON.  The bundled fixtures cover the
standard families, and the ``acstruct`` command reads them.
"""

import json

from acstruct import cli
from acstruct.descriptor import dump_descriptor, fixture_dir, load_descriptor

print("bundled fixtures:", sorted(p.name for p in fixture_dir().glob("*.json")))

desc = load_descriptor("sphere_products.json")
s2s2 = desc.manifolds["S2xS2"]
print(s2s2.name, "c =", s2s2.tangent_chern, "flags:", sorted(f.value for f in s2s2.flags))
# serialised form of its tangent Chern classes
print(json.dumps(dump_descriptor(desc)["manifolds"][0]["tangent_chern"]))
print()

# same as running `acstruct classify yang_s5xs5.json --list l2` in a shell
code = cli.main(["classify", "yang_s5xs5.json", "--list", "l2"])
print("exit code", code)
print()

code = cli.main(["index", "yang_s5xs5.json", "--manifold", "S5xS5#S5xS5_candidate", "--format", "json"])
print("exit code", code)
