"""When are the squares of a few linear forms linearly dependent?

Walks through one three-coordinate example from raw forms to a certified
dependency, then contrasts it with the brute-force answer.
"""

from quadind import generic_independent, normalize, pair_matrix, s1_independent
from quadind.independence import k_products, s1_polynomials, witness_annihilates
from quadind.linalg import det, rank

# Six forms in three variables: the coordinates plus three mixtures.
forms = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [5, 8, 10]]
system, basis, order = normalize(forms)
print(f"normal form: r={system.r}, m={system.m}, A={[list(map(str, row)) for row in system.A]}")
print(f"the three mixtures are themselves independent: det = {det(system.A)}")

pm = pair_matrix(system)
print("\npair matrix (one row per coordinate pair, one column per mixture):")
print(pm)
print(f"rank {rank(pm)} < m = {system.m}, so the six squares must be dependent")

rep = s1_independent(system)
print(f"\nverdict: {rep.verdict}; witness {rep.witness}")
labels = ["z1^2", "z2^2", "z3^2", "f1^2", "f2^2", "f3^2"]
print("  " + " + ".join(f"({w})*{lab}" for w, lab in zip(rep.witness, labels)) + " = 0")
squares = s1_polynomials(system)
print(f"expands to zero: {witness_annihilates(squares, rep.witness)}")

brute = generic_independent(squares)
print(f"\nbrute force over all degree-2 monomials agrees: {brute.verdict}, rank {brute.rank}")

triples = k_products(squares, 3)
print(f"triple products: {len(triples)} sextics, span rank {generic_independent(triples).rank}")
