"""
Deciding inequalities level by level
====================================

``decide`` returns a verdict with evidence: a proof when the inequality
holds, a separating language with an assignment when it fails. From level
3/2 on it may answer unknown when the budget runs out.
"""

from omegaineq import Budget, check_proof, decide, parse_term, replay_witness

u, v = parse_term("(a b)^w"), parse_term("(a b)^w b (a b)^w")

for level in ("1/2", "1", "3/2", "2"):
    verdict = decide(u, v, level)
    print(f"level {level}: {verdict}")

# At 3/2 the evidence is a proof that an independent checker accepts.
proof = decide(u, v, "3/2").evidence
print(proof)
print("checks:", check_proof(proof).valid)

# Failing inequalities come with a witness that can be replayed.
verdict = decide(parse_term("(a b)^w"), parse_term("a^w b^w"), "3/2")
w = verdict.evidence
print("separating language:", w.language, "assignment:", w.assignment)
print("replays:", replay_witness(w, parse_term("(a b)^w"), parse_term("a^w b^w"), "3/2"))

# A tiny budget makes the search give up rather than guess.
starved = decide(u, v, "5/2", Budget(languages=4))
print("with a starved budget at 5/2:", starved, starved.spent)
