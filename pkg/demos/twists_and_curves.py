# coding: utf-8

# # Dehn twists and the curve complex
#
# A proper face of the zonotope gives a Dehn twist, the square of its local
# Delta. Twists along two faces commute exactly when the faces are nested or
# orthogonal, and any conjugate of a twist can be brought back to a standard
# one.

from arrcurve import families, groupoid, parse_path
from arrcurve.zonotope import sign_string

a = families.braid(4)
g = groupoid(a)
z = g.z

edges = z.edges_at(0)
for e in edges:
    print("edge", sign_string(e.covector), "twist:", g.dehn_twist(0, e).to_json())

# Pairs of edges at c0: squares give commuting twists, hexagons do not.

for i in range(len(edges)):
    for j in range(i + 1, len(edges)):
        e1, e2 = edges[i], edges[j]
        same = g.commute(g.dehn_twist(0, e1), g.dehn_twist(0, e2))
        print(sign_string(e1.covector), sign_string(e2.covector), "commute:", same,
              "predicate:", g.commute_standard_predicate(e1, e2))

# Conjugating a twist by a loop and standardizing it again.

n = z.neighbor(0, z.wall_list(0)[1])
h = g.morphism(parse_path(z, f"c0>c{n},c{n}>c0"))
twisted = g.conjugate(h, g.dehn_twist(0, edges[0]))
b, face = g.standardize(twisted, edges[0])
print("standardized onto", sign_string(face.covector), "at vertex", b.target)
