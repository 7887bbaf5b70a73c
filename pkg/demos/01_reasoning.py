"""Tour of the ontology syntax and the two entailment routes.

Run with: python3 demos/01_reasoning.py
"""

from ellab import (
    CI,
    Exists,
    Name,
    canonical_check,
    entails,
    entails_tbox,
    iq_entails,
    parse_abox,
    parse_tbox,
    print_tbox,
    signature_of,
)

# TBox text is line-oriented: 'ci:' concept inclusions, 'ri:' role inclusions.
medical = parse_tbox(
    """
    # definitional knowledge, SNOMED-flavoured
    ci: PenicillamineNephropathy == RenalDisease
        & some(findingSite, KidneyStructure)
        & some(causativeAgent, Penicillamine)
    """.replace("\n        ", " ")
)
print("parsed and canonically printed:")
print(print_tbox(medical))
print("signature:", sorted(signature_of(medical).concept_names))

# Entailment is decided by normalization + completion-rule saturation.
chain = parse_tbox("ci: A <= B\nci: B <= C")
print("chain entails A <= C:", entails(chain, CI(Name("A"), Name("C"))))
print("chain entails C <= A:", entails(chain, CI(Name("C"), Name("A"))))

# A cyclic axiom entails arbitrarily deep existential chains.
loop = parse_tbox("ci: A <= some(r, A)")
deep = Name("A")
for _ in range(6):
    deep = Exists("r", deep)
print("loop entails the 6-deep chain:", entails(loop, CI(Name("A"), deep)))

# The canonical-model chase is an independent second opinion.
print("canonical model agrees:", canonical_check(loop, CI(Name("A"), deep)))

# TBox-level entailment is axiom-wise.
print("mutual entailment with the redundant version:",
      entails_tbox(chain, parse_tbox("ci: A <= C")),
      entails_tbox(parse_tbox("ci: A <= C"), chain))

# Instance queries run over an ABox saturated under the TBox.
t = parse_tbox("ci: Flu <= some(symptom, Fever)\nri: symptom <= finding")
abox = parse_abox("Flu(patient)")
from ellab import ConceptQuery

q = ConceptQuery(Exists("finding", Name("Fever")), "patient")
print("(t, {Flu(patient)}) |= some(finding, Fever)(patient):",
      iq_entails(t, abox, q))
