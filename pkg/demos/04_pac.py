"""From equivalence queries to sampling: the PAC conversion.

Each intercepted equivalence query is answered from a batch of labeled
samples; a disagreeing sample acts as the counterexample, and a clean batch
ends the run.  The output is then approximately correct with high
probability, which we verify here by computing the distribution error
exactly over the finite DL-Lite example space.

Run with: python3 demos/04_pac.py
"""

from ellab.frameworks import enumerate_examples, framework, is_member
from ellab.harness import GeneratorSpec, generate_target
from ellab.learners import PacParams, learn_dllite_eq, pac_sample_size, pac_wrap
from ellab.oracles import Teacher, TeacherConfig, Uniform
from ellab.syntax import Signature, print_tbox

DLLITE = framework("dllite")
sig = Signature.of({"A1", "A2"}, {"r1"})
space = list(enumerate_examples(DLLITE, sig))
params = PacParams(epsilon=0.2, delta=0.2)

print("axiom space size:", len(space))
print("sample batch sizes per intercepted round:",
      [pac_sample_size(params, i) for i in range(1, 6)])

failures = 0
trials = 50
for seed in range(trials):
    target = generate_target(
        GeneratorSpec("dllite", concept_count=2, role_count=1,
                      axiom_count=(seed % 3) + 1, seed=seed)
    )
    teacher = Teacher(TeacherConfig(
        target=target, framework=DLLITE,
        distribution=Uniform(3, 9), signature=sig, seed=seed,
    ))
    h = pac_wrap(learn_dllite_eq, teacher, sig, DLLITE, params)
    wrong = sum(1 for e in space
                if is_member(DLLITE, h, e) != is_member(DLLITE, target, e))
    error = wrong / len(space)
    if error > params.epsilon:
        failures += 1
        print(f"seed {seed}: error {error:.2f} above epsilon; target was:")
        print(print_tbox(target))

print(f"{failures}/{trials} runs exceeded epsilon "
      f"(delta allows up to {params.delta:.0%})")
