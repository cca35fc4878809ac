# Dof management, assembly, constraints and solvers
