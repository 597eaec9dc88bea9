# Quantum q-difference operators and residual checks
