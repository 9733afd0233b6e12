# coding: utf-8

# # Solving the word problem with greedy normal forms
#
# Paths in the chamber graph of a simplicial arrangement are morphisms of
# the Deligne groupoid. Two positive paths are equal when they have the
# same greedy normal form; general paths are compared through the
# Delta-power form Delta^(-2k) p.

from arrcurve import families, groupoid, parse_path

a = families.braid(4)
g = groupoid(a)
z = g.z
print("chambers:", z.num_chambers)

# Any two minimal galleries between the same chambers agree.

x, y = 0, z.antipodes[0]
print("distance c0 to its antipode:", z.distance(0, y))

def gallery(start, end, prefer):
    path = [start]
    while path[-1] != end:
        here = path[-1]
        steps = [z.neighbor(here, j) for j in z.wall_list(here)]
        steps = [c for c in steps if z.distance(c, end) < z.distance(here, end)]
        path.append(prefer(steps))
    return path

p1, p2 = gallery(x, y, min), gallery(x, y, max)
print("two minimal galleries:", p1, p2)
f1, f2 = g.morphism(p1), g.morphism(p2)
print("equal:", g.equal(f1, f2))
print("normal form:", f1.positive.to_json())

# Going around and back is not trivial: crossing a wall twice is a generator.

loop = parse_path(z, f"c0>c{z.neighbor(0, z.wall_list(0)[0])},c{z.neighbor(0, z.wall_list(0)[0])}>c0")
twice = g.morphism(loop)
print("crossing one wall out and back:", twice.to_json())

# Inverse letters are written with a leading minus sign.

back = parse_path(z, f"c0>c{z.neighbor(0, z.wall_list(0)[0])},-c0>c{z.neighbor(0, z.wall_list(0)[0])}")
print("a step followed by its inverse:", g.morphism(back).to_json())

# The pn form splits a morphism as a^-1 b with no common left divisor.

mixed = parse_path(z, f"-c0>c{p1[1]},c0>c{p2[1]}")
a_part, b_part = g.pn_normal_form(g.morphism(mixed))
print("pn form:", a_part.to_json(), b_part.to_json())
