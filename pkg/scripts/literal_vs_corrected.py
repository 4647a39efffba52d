"""Show which commutator identities and semismall bounds fail as literally stated, with one witness each."""

import json

from cyclic_quiver.operators import ModuleParams
from cyclic_quiver.suites import comm_suite, semismall_suite

for n in (2, 3):
    params = ModuleParams.from_geometry(n, 0, 1)
    literal = comm_suite(params, 4, literal=True)
    corrected = comm_suite(params, 4)
    print(f"n={n} commutator lemmas: literal {literal.failures} failing tasks over "
          f"{len(literal.details['failing_relations'])} relations; corrected "
          f"{'pass' if corrected.passed else 'FAIL'}")
    for rid in literal.details["failing_relations"]:
        print("   ", rid)
    print("    first witness:", json.dumps(literal.witness.to_json()))
    ss = semismall_suite(n, 4)
    print(f"n={n} semismall: fiber-locus reading {'pass' if ss.passed else 'FAIL'}, "
          f"{ss.details['totals']['literal_violations']} rows violate the per-stratum bound")
