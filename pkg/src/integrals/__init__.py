# Solid-torus contour integrals, residues and pole lattices
