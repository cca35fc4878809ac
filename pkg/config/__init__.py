# Configuration package: material data, material registry and study files
