# coding: utf-8

# # Chambers, the hexagon and its Salvetti complex
#
# Three lines through the origin of the plane (the braid arrangement on three
# strands, after removing the diagonal) cut it into six chambers. Their dual
# zonotope is a hexagon, and the Salvetti complex puts one cell above each
# pair (face, vertex of that face).

from arrcurve import families, salvetti_complex, zonotope
from arrcurve.zonotope import sign_string

a = families.braid(3)
z = zonotope(a)
print("normals:", a.normals)
print("f-vector of the hexagon:", z.f_vector())

# Chambers are stored by sign vector and indexed in sorted order.

for i, s in enumerate(z.chamber_signs):
    print(f"c{i}", sign_string(s), "walls:", z.wall_list(i))

# Walking from c0 across walls gives the cyclic order around the hexagon.

order = [0]
while len(order) < z.num_chambers:
    step = [z.neighbor(order[-1], j) for j in z.wall_list(order[-1])]
    order.append(min(c for c in step if c not in order))
print("cyclic order:", order)

# Gates: the vertex of a face nearest to a given chamber.

edge = next(f for f in z.faces_of_dim(1) if set(f.vertices) == {order[0], order[1]})
far = order[3]
print(f"gate of c{far} on edge {sign_string(edge.covector)}: c{z.gate(far, edge)}")

# One Salvetti cell per (face, vertex) pair: 6 + 12 + 6.

s = salvetti_complex(a)
print("Salvetti f-vector:", s.f_vector(), "euler characteristic:", s.euler_characteristic())

# The same counts for every regular polygon.

for m in range(3, 7):
    print(m, salvetti_complex(families.dihedral(m)).f_vector())
