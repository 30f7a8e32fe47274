"""The combinatorial identities underpinning the Taylor theorem.

Both sides of every identity are computed by brute-force enumeration with
exact rationals; nothing is taken from a closed form.

Run:  python demos/02_combinatorial_anchors.py
"""

from logcalc import comb_identity_sides, lubell_refinement, lubell_sides, pascal_pair, vandermonde_pair
from logcalc.matrix import ExactMatrix
from logcalc.printer import scalar_str

print("== the word-expansion identity ==")
print("(j!/k!) * sum of products over increasing tuples  vs  sum over compositions of k")
for k in range(7):
    row = []
    for j in range(k + 1):
        left, right = comb_identity_sides(k, j)
        assert left == right
        row.append(str(left))
    print(f"  k={k}: " + "  ".join(row))

print()
print("== bounded-sum tuples vs distinct bounded tuples ==")
for n, j in [(4, 2), (6, 3), (5, 4)]:
    s, t = lubell_sides(n, j)
    print(f"  N={n}, j={j}: both sums equal {s}")
print("per-maximum refinement at N=5, j=2:")
for k, (a, b) in enumerate(lubell_refinement(5, 2), start=1):
    print(f"  k={k}: sum-exactly-k = {a}, distinct-max-k = {b}")

print()
print("== Pascal matrix and its signed inverse (K=4) ==")
p, pinv = pascal_pair(4)
for row in p.entries:
    print("  ", [scalar_str(e) for e in row])
print("inverse:")
for row in pinv.entries:
    print("  ", [scalar_str(e) for e in row])
assert (p @ pinv) == ExactMatrix.identity(4)

print()
print("== Vandermonde on the nodes 2p*Pi, inverted exactly over the Laurent ring ==")
v, vinv = vandermonde_pair(2)
print("V:")
for row in v.entries:
    print("  ", [scalar_str(e) for e in row])
print("V^-1 (entries live in Q[Pi, Pi^-1]):")
for row in vinv.entries:
    print("  ", [scalar_str(e) for e in row])
assert (v @ vinv) == ExactMatrix.identity(3)
print("V * V^-1 = identity, exactly.")
