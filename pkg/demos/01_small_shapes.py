"""A tour of the smallest O-shapes.

Run with ``python demos/01_small_shapes.py``.  Every picture is printed with
the text renderer, so the output doubles as a check that the constructions
are valid paths.
"""
from supergrid.conditions import check_o_forbidden
from supergrid.grid import ShapeSpec
from supergrid.oracle import brute_hamiltonian_exists
from supergrid.osolver import o_hamiltonian_cycle, o_hamiltonian_st_path
from supergrid.render import render_text

ring = ShapeSpec.oshape(3, 3, 1, 1, 1, 1, 1, 1)
print(f"{ring.label()} has {ring.vertex_count()} vertices around a one-cell hole.")
print(render_text(ring))

# Every O-shape has a Hamiltonian cycle.  Here it is just the ring.
cycle = o_hamiltonian_cycle(ring)
print("Hamiltonian cycle, numbered in visiting order:")
print(render_text(ring, list(cycle)))

# Paths depend on the endpoints.  Neighbours on the ring are easy,
# but some pairs split the ring into pieces that cannot both be covered.
for s, t in [((1, 1), (2, 1)), ((1, 1), (2, 3))]:
    path = o_hamiltonian_st_path(ring, s, t)
    verdict = check_o_forbidden(ring, s, t)
    print(f"s={s} t={t}: forbidden condition {verdict}, oracle says "
          f"{'yes' if brute_hamiltonian_exists(ring, s, t) else 'no'}")
    print(render_text(ring, list(path) if path else None, s, t))

# A wider shape with a thicker left margin and two endpoints on the top row.
wide = ShapeSpec.oshape(7, 3, 3, 1, 2, 2, 1, 1)
for s, t in [((1, 1), (5, 1)), ((1, 1), (7, 3))]:
    path = o_hamiltonian_st_path(wide, s, t)
    print(f"{wide.label()} s={s} t={t}: "
          + ("Hamiltonian" if path else f"blocked by {check_o_forbidden(wide, s, t)}"))
    print(render_text(wide, list(path) if path else None, s, t))
