# Central charges: level structures, H-function coefficients, Euler pairing and series
