# ------------ Built-in materials ------------
from pipeline.material.lamina import MaterialTable

GPA = 1.0e9

# Graphite/epoxy; mirrors config/data/graphite_epoxy.txt
GRAPHITE_EPOXY = MaterialTable(
    moisture_rows=(
        (0.00, 130.0 * GPA, 9.50 * GPA, 6.0 * GPA),
        (0.25, 130.0 * GPA, 9.25 * GPA, 6.0 * GPA),
        (0.50, 130.0 * GPA, 9.00 * GPA, 6.0 * GPA),
        (0.75, 130.0 * GPA, 8.75 * GPA, 6.0 * GPA),
        (1.00, 130.0 * GPA, 8.50 * GPA, 6.0 * GPA),
        (1.25, 130.0 * GPA, 8.50 * GPA, 6.0 * GPA),
        (1.50, 130.0 * GPA, 8.50 * GPA, 6.0 * GPA),
    ),
    temperature_rows=(
        (300.0, 130.0 * GPA, 9.50 * GPA, 6.00 * GPA),
        (325.0, 130.0 * GPA, 8.50 * GPA, 6.00 * GPA),
        (350.0, 130.0 * GPA, 8.00 * GPA, 5.50 * GPA),
        (375.0, 130.0 * GPA, 7.50 * GPA, 5.00 * GPA),
        (400.0, 130.0 * GPA, 7.00 * GPA, 4.75 * GPA),
        (425.0, 130.0 * GPA, 6.75 * GPA, 4.50 * GPA),
    ),
    nu12=0.3,
    alpha1=-0.3e-6,
    alpha2=28.1e-6,
    beta1m=0.0,
    beta2m=0.44,
    rho=1.0,
    g13_ratio=1.0,
    g23_ratio=0.5,
    name="graphite_epoxy",
)

# Isotropic reference material for the closed-form plate checks
ISOTROPIC_STEEL = MaterialTable.isotropic(E=210.0 * GPA, nu=0.3, rho=7850.0, name="isotropic_steel")

BUILTIN_MATERIALS = {
    GRAPHITE_EPOXY.name: GRAPHITE_EPOXY,
    ISOTROPIC_STEEL.name: ISOTROPIC_STEEL,
}
