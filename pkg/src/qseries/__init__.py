# q-special functions: phi, theta, Pochhammer symbols and monomials
