# Reporting package
