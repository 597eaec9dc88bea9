# Elliptic branes, restrictions and wall crossing
