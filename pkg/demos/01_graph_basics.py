"""Tour of the graph substrate: girth, shortest cycles, tree balls,
vertex expansion and the cycle-free-ball fraction."""

from scargraph import (ball, bs_cycle_fraction, cycle_graph, girth,
                       mcgee_graph, petersen_graph, shortest_cycle_through,
                       vertex_expansion)

g = petersen_graph()
print("Petersen graph:", g)
print("girth:", girth(g))
length, cycle = shortest_cycle_through(g, 0)
print("shortest cycle through vertex 0:", length, cycle)

# The McGee graph is the smallest 3-regular graph of girth 7, so every
# radius-2 ball is a tree of 1 + 3 + 6 vertices.
m = mcgee_graph()
b = ball(m, 0, 2)
print("\nMcGee 2-ball:", len(b.vertices), "vertices, tree:", b.is_tree)
print("layer sizes:", [len(layer) for layer in b.layers])

# Radius below half the girth means no ball sees a cycle.
print("fraction of McGee 2-balls containing a cycle:",
      bs_cycle_fraction(m, 2))
print("fraction of McGee 3-balls containing a cycle:",
      bs_cycle_fraction(m, 3))

# Vertex expansion of a single vertex on a cycle is exactly 2.
c = cycle_graph(12)
print("\nexpansion of {0} in C12:", vertex_expansion(c, [0]))
print("expansion of an arc of 4:", vertex_expansion(c, [0, 1, 2, 3]))
