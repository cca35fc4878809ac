# Mesh, level set, subcell triangulation and quadrature planning
