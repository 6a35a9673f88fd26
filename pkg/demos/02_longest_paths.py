"""When no Hamiltonian path exists, how long can an (s, t)-path be?

The solver classifies the instance, computes an upper bound from the case
geometry and then builds a path that meets it.  The bitmask oracle confirms
the bound is exact on these small shapes.
"""
from supergrid.grid import ShapeSpec
from supergrid.oracle import dp_longest_lengths
from supergrid.osolver import o_longest_st_path
from supergrid.render import render_text

CASES = [
    (ShapeSpec.oshape(5, 3, 3, 1, 1, 1, 1, 1), (2, 1), (4, 1)),
    (ShapeSpec.oshape(3, 3, 1, 1, 1, 1, 1, 1), (1, 1), (2, 3)),
    (ShapeSpec.oshape(7, 3, 3, 1, 2, 2, 1, 1), (1, 1), (5, 1)),
    (ShapeSpec.oshape(6, 4, 2, 2, 2, 2, 1, 1), (3, 1), (3, 4)),
]

for spec, s, t in CASES:
    result = o_longest_st_path(spec, s, t)
    exact = dp_longest_lengths(spec, s)[t]
    print(f"{spec.label()} s={s} t={t}")
    print(f"  class {result.verdict.cls}, condition {result.verdict.condition}, "
          f"bound {result.bound} of {spec.vertex_count()}, built {len(result.path)}, oracle {exact}")
    for rec in result.subproblem_trace:
        print(f"  piece {rec.shape} {rec.endpoints} [{rec.role}]")
    print(render_text(spec, list(result.path), s, t))

# The construction is linear in the number of vertices, so large shapes are cheap.
big = ShapeSpec.oshape(120, 90, 40, 30, 40, 40, 30, 30)
result = o_longest_st_path(big, (2, 1), (119, 90))
print(f"{big.label()}: {len(result.path)} of {big.vertex_count()} vertices, class {result.verdict.cls}")
