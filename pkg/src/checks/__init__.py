# Acceptance checks with thresholds and pass/fail aggregation
