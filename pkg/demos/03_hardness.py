"""Why membership queries alone cannot be polynomial once conjunctions exist.

The family has 2**n members that pairwise disagree only on which full
sequence implies the marker.  Any single inclusion is either confirmed by
every member (learning nothing) or denied while eliminating at most one,
so a learner needs ~2**n queries to corner the adversary.

Run with: python3 demos/03_hardness.py
"""

from ellab import print_tbox
from ellab.hardness import build_family, classify_ci, run_lower_bound
from ellab.syntax import CI, Name, conjunction

fam = build_family(3)
print(f"family with n=3: {fam.member_count} members; shared clash axioms:")
print(print_tbox(fam.shared))

print("member 5 adds its own sequence axiom:")
print(print_tbox(fam.member(5)))

clash = CI(conjunction([Name("A1"), Name("nA1")]), Name("M"))
print("clash left side:", classify_ci(fam, clash).kind)

sequence = CI(conjunction([Name(n) for n in fam.sequence_names(5)]), Name("M"))
outcome = classify_ci(fam, sequence)
print("full sequence:", outcome.kind, "witness =", outcome.witness)

partial = CI(conjunction([Name("A1"), Name("A2")]), Name("M"))
print("partial sequence:", classify_ci(fam, partial).kind,
      "entailed by", classify_ci(fam, partial).entailed_count, "members")

print()
print("adversarial runs at n=10 (budget 2**10):")
print("learner            queries  remaining  outcome")
for learner_id in ("toy-mq", "dllite-mq", "conj-mq-exhaustive"):
    row = run_lower_bound(10, learner_id)
    print(f"{learner_id:18} {row.queries:7} {row.remaining:10}  {row.outcome}")
