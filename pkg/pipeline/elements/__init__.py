# Quadrilateral Mindlin element and Heaviside enrichment
