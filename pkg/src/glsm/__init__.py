# Model data and combinatorics
