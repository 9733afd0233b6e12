# coding: utf-8

# # Irreducible flats of A3 and the wedge of circles
#
# The irreducible flats of the braid arrangement on four strands form a
# simplicial complex through nested sets. Dropping the whole space leaves a
# graph whose homology is that of a wedge of six circles.

from arrcurve import blowup_faces, complex_of_irreducibles, families, homology, irreducible_flats
from arrcurve import verify_wedge

a = families.braid(4)
names = ["x1=x2", "x1=x3", "x1=x4", "x2=x3", "x2=x4", "x3=x4"]

for f in irreducible_flats(a):
    print("irreducible:", [names[i] for i in f.key])

full, i0 = complex_of_irreducibles(a)
print("nested complex:", full.f_vector(), "without the cone point:", i0.f_vector())

h = homology(i0)
print("homology:", h.to_json())
print("wedge check:", verify_wedge(a))

# Faces of the blown-up complement, counted by codimension.

print("blow-up faces:", blowup_faces(a).counts())
